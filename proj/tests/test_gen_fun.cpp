#include <doctest.h>

#include "spinnet/errors.hpp"
#include "spinnet/exact_eval.hpp"
#include "spinnet/gen_fun.hpp"

using namespace spinnet;

TEST_CASE("theta series coefficients") {
  const TruncatedSeries s = spin_series_expand(theta_graph(), 6);
  CHECK(s.coefficient({0, 0, 0}) == 1);
  CHECK(s.coefficient({1, 1, 0}) == -2);
  CHECK(s.coefficient({2, 2, 2}) == -24);
  CHECK(s.coefficient({1, 1, 1}) == 0);
}

TEST_CASE("planar graphs have a single Fourier coefficient") {
  for (const RibbonGraph* g : {&theta_graph(), &tetrahedron_graph()}) {
    const auto f = fourier_coefficients(*g);
    REQUIRE(f.size() == 1);
    CHECK(f.begin()->first == 0);
    CHECK(f.begin()->second == 1);
  }
}

TEST_CASE("nonplanar Fourier coefficients sum to one at the empty system") {
  const RibbonGraph k33 = load_graph(std::string(SPINNET_DATA_DIR) + "/graphs/k33.graph");
  const auto f = fourier_coefficients(k33);
  CHECK(f.size() > 1);
  Rational total = 0;
  for (const auto& [mask, a] : f) total += a;
  CHECK(total == 1);
}

TEST_CASE("iota parity is additive on disjoint pairs") {
  const std::vector<std::vector<int>> cp{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
  CHECK(iota_parity(cp, 0b011) == 1);
  CHECK(iota_parity(cp, 0b101) == 0);
  CHECK(iota_parity(cp, 0b111) == 0);
}

TEST_CASE("diagonal series equals the scaled standard sequence") {
  const Coloring c = tet_coloring({2, 2, 2, 2, 2, 2});
  const auto d = diagonal_series(tetrahedron_graph(), c, 3);
  const auto s = scaled_sequence(tetrahedron_graph(), c, 3, Norm::standard);
  REQUIRE(d.size() == 4);
  for (std::size_t n = 0; n < d.size(); ++n) CHECK(d[n] == s[n].as_rational());
}

TEST_CASE("diagonal series needs an admissible direction") {
  CHECK_THROWS_AS(diagonal_series(theta_graph(), Coloring({1, 1, 1}), 2), ParseError);
}

TEST_CASE("series CSV has one row per monomial") {
  const TruncatedSeries s = spin_series_expand(theta_graph(), 2);
  const std::string csv = series_csv(s, theta_graph());
  CHECK(csv.rfind("t,m,b,coefficient\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == s.terms.size() + 1);
}
