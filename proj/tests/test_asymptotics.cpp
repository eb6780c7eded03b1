#include <doctest.h>

#include "spinnet/asymptotics.hpp"
#include "spinnet/errors.hpp"

using namespace spinnet;

TEST_CASE("binomial row sums") {
  const PrecisionGuard guard(40);
  const NilssonExpansion e = term_asymptotics_1d(binomial_sum_term(), 40);
  REQUIRE(e.branches.size() == 1);
  const auto& b = e.branches[0];
  CHECK(abs(b.growth - Complex(Real(2))) < Real("1e-30"));
  CHECK(b.alpha == 0);
  CHECK(abs(b.stokes - Complex(Real(1))) < Real("1e-30"));
  CHECK_FALSE(b.point->in_cut);
  CHECK_FALSE(e.selection_heuristic);
}

TEST_CASE("c_m") {
  const PrecisionGuard guard(30);
  CHECK(abs(c_m(1) - sqrt(2 * real_pi())) < Real("1e-25"));
}

TEST_CASE("balanced-term check") {
  BalancedTerm1D t;
  t.forms = {{1, 0, 0, 1}, {0, 1, 0, -1}};
  CHECK_FALSE(t.balanced());
  CHECK_THROWS_AS(critical_points_1d(t), ParseError);
}

TEST_CASE("growth rates of the 6j come in reciprocal pairs") {
  const PrecisionGuard guard(40);
  for (const char* labels : {"2,2,2,2,2,2", "4,4,4,4,6,6", "3,5,3,5,4,4", "6,4,6,4,4,6"}) {
    CAPTURE(labels);
    const SixjReport r = sixj_expansion(parse_labels(labels), 40);
    REQUIRE(r.expansion.branches.size() == 2);
    const Complex prod = r.expansion.branches[0].growth * r.expansion.branches[1].growth;
    CHECK(abs(prod - Complex(Real(1))) < Real("1e-30"));
    CHECK(r.route_gap < Real("1e-30"));
  }
}

TEST_CASE("exact growth for the regular tetrahedron") {
  const SixjReport r = sixj_expansion(parse_labels("2,2,2,2,2,2"));
  REQUIRE(r.expansion.branches[0].growth_exact);
  CHECK(r.expansion.branches[0].growth_exact->str() == "(329-460*sqrt(-2))/729");
  CHECK(r.expansion.field == -2);
  CHECK(r.contributing == -1);
}

TEST_CASE("Minkowskian selection keeps the decaying branch") {
  const SixjReport r = sixj_expansion(parse_labels("4,4,4,4,6,6"));
  REQUIRE(r.contributing >= 0);
  const auto& b = r.expansion.branches[r.contributing];
  CHECK(abs(b.growth) < 1);
  CHECK_FALSE(r.expansion.branches[1 - r.contributing].contributes);
}

TEST_CASE("theta-norm growth is the square root of its square") {
  const PrecisionGuard guard(40);
  for (const char* labels : {"2,2,2,2,2,2", "4,4,4,4,6,6"}) {
    const ThetaNormAsym a = theta_norm_asym(parse_labels(labels), 4, 40);
    REQUIRE(a.growth_exact);
    CHECK(*a.growth_exact * *a.growth_exact == a.growth_square);
    CHECK(a.mu.at(0) == 1);
  }
}

TEST_CASE("theta-norm expansion matches the exact ratio") {
  const PrecisionGuard guard(60);
  const TetColoring g{2, 2, 2, 2, 2, 2};
  const ThetaNormAsym a = theta_norm_asym(to_labels(g), 6, 60);
  auto ratio = [&](long n) {
    TetColoring s = g;
    for (auto& x : s) x *= n;
    return sixj_unitary(s).to_real() / to_real(closed_form_sixj(s));
  };
  auto model = [&](long n) {
    Real h = 0;
    for (std::size_t l = 0; l < a.mu.size(); ++l) h += to_real(a.mu[l]) / pow(Real(n), static_cast<long>(l));
    return a.prefactor * pow(a.growth, n) * h;
  };
  const Real q100 = ratio(100) / model(100);
  const Real q200 = ratio(200) / model(200);
  CHECK(abs(q200 / q100 - 1) < Real("1e-12"));
}

TEST_CASE("leading-order prediction for the regular tetrahedron") {
  const PrecisionGuard guard(64);
  const SixjReport r = sixj_expansion(parse_labels("2,2,2,2,2,2"));
  const auto rows = predict_and_compare(r, 60, 62);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.rel_error < Real("0.05"));
    CHECK(abs(ponzano_regge(r, row.n) - row.prediction.re) < Real("1e-40") * abs(row.prediction.re));
  }
  CHECK_THROWS_AS(ponzano_regge(sixj_expansion(parse_labels("4,4,4,4,6,6")), 10), DegenerateError);
}

TEST_CASE("inadmissible and degenerate 6j inputs") {
  CHECK_THROWS_AS(sixj_expansion(parse_labels("3,4,4,3,5,6")), ParseError);
  CHECK_THROWS_AS(sixj_expansion(parse_labels("1,1,1,1,2,2")), DegenerateError);
}

TEST_CASE("spectral radius of the central binomial sequence") {
  std::vector<ExactValue> seq;
  for (long n = 0; n <= 200; ++n) seq.push_back(ExactValue::rational(Norm::standard, Rational(binomial(BigInt(2 * n), n))));
  const RadiusEstimate r = spectral_radius_from(seq);
  CHECK(abs(r.estimate - 4) < Real("0.01"));
  CHECK_FALSE(r.oscillating);
}
