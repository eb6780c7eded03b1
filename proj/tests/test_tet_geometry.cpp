#include <doctest.h>

#include <random>

#include "spinnet/asymptotics.hpp"
#include "spinnet/errors.hpp"
#include "spinnet/tet_geometry.hpp"

using namespace spinnet;

namespace {

TetLabels random_admissible(std::mt19937_64& rng, bool strict) {
  std::uniform_int_distribution<long> pick(1, 12);
  for (;;) {
    TetColoring c;
    for (auto& x : c) x = pick(rng);
    const TetLabels t = to_labels(c);
    if (admissible(t) && (!strict || nondegenerate(t))) return t;
  }
}

}  // namespace

TEST_CASE("label parsing") {
  CHECK(to_string(parse_labels("(2, 2, 2, 2, 2, 2)")) == "2,2,2,2,2,2");
  CHECK_THROWS_AS(parse_labels("1,2,3"), ParseError);
  CHECK_THROWS_AS(cayley_menger(parse_labels("0,2,2,2,2,2")), ParseError);
}

TEST_CASE("reference classification") {
  CHECK(cayley_menger(parse_labels("2,2,2,2,2,2")).cls == GeometricClass::euclidean);
  CHECK(cayley_menger(parse_labels("3,4,4,3,5,5")).cls == GeometricClass::plane);
  CHECK(cayley_menger(parse_labels("4,4,4,4,6,6")).cls == GeometricClass::minkowskian);
  CHECK(cayley_menger(parse_labels("4,4,4,4,6,6")).volume.str() == "6*sqrt(2)");
}

TEST_CASE("Cayley-Menger determinant over reals matches the exact one") {
  const PrecisionGuard guard(60);
  const TetLabels t = parse_labels("3,5,4,6,5,7");
  BasicTetLabels<Real> r;
  for (int i = 0; i < 6; ++i) r.v[i] = to_real(t.v[i]);
  const Real approx = determinant(cayley_menger_matrix(r));
  CHECK(abs(approx - to_real(cayley_menger(t).det)) < Real("1e-40"));
}

TEST_CASE("discriminant is minus a quarter of the determinant") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    const TetLabels t = random_admissible(rng, false);
    CAPTURE(to_string(t));
    CHECK(variational_coefficients(t).D == -cayley_menger(t).det / 4);
  }
}

TEST_CASE("variational roots solve E and agree with the term's variational polynomial") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 100; ++k) {
    const TetLabels t = random_admissible(rng, true);
    CAPTURE(to_string(t));
    VariationalData v;
    try {
      v = variational_solve(t);
    } catch (const DegenerateError&) {
      continue;
    }
    const HalfSums h = half_sums(t);
    for (const auto& r : v.roots) CHECK(variational_E(h, r).is_zero());
    CHECK(v.A == variational_A(t));
    CHECK(v.B == variational_B(t));
    const auto p = variational_polynomial(sixj_term(t));
    REQUIRE(p.size() == 3);
    CHECK(p[1] / p[2] == v.B / v.A);
    CHECK(p[0] / p[2] == v.Cp / v.A);
  }
}

TEST_CASE("real variational roots lie outside the positivity interval") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    const TetLabels t = random_admissible(rng, true);
    VariationalData v;
    try {
      v = variational_solve(t);
    } catch (const DegenerateError&) {
      continue;
    }
    for (int s = 0; s < 2; ++s)
      if (is_real(v.roots[s])) CHECK(v.in_cut[s]);
  }
}

TEST_CASE("Euclidean dihedral angles are real") {
  const PrecisionGuard guard(50);
  std::mt19937_64 rng(14);
  int seen = 0;
  while (seen < 50) {
    const TetLabels t = random_admissible(rng, true);
    if (cayley_menger(t).cls != GeometricClass::euclidean) continue;
    ++seen;
    const DihedralAngles a = dihedral_angles(t, 50);
    for (int i = 0; i < 6; ++i) {
      CHECK(abs(abs(a.exp_i_theta[i]) - 1) < Real("1e-40"));
      CHECK(abs(a.theta[i].im) < Real("1e-40"));
    }
  }
}

TEST_CASE("regular tetrahedron angle") {
  const PrecisionGuard guard(40);
  const DihedralAngles a = dihedral_angles(parse_labels("2,2,2,2,2,2"), 40);
  CHECK(abs(a.theta[0].re - acos(Real(-1) / 3)) < Real("1e-35"));
}

TEST_CASE("degenerate labels are reported") {
  CHECK_THROWS_AS(dihedral_angles(parse_labels("1,1,1,1,2,2")), DegenerateError);
}
