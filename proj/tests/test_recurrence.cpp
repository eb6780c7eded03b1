#include <doctest.h>

#include "spinnet/asymptotics.hpp"
#include "spinnet/errors.hpp"
#include "spinnet/recurrence.hpp"

using namespace spinnet;

namespace {

std::vector<Rational> central_binomials(long count) {
  std::vector<Rational> s;
  for (long n = 0; n < count; ++n) s.emplace_back(binomial(BigInt(2 * n), n));
  return s;
}

}  // namespace

TEST_CASE("powers of two") {
  std::vector<Rational> s;
  for (long n = 0; n < 30; ++n) s.emplace_back(BigInt(1) << n);
  const PolyRecurrence r = guess_recurrence(s, 2, 4);
  CHECK(r.order() == 1);
  CHECK(r.degree() == 0);
  CHECK(r.annihilates(s));
}

TEST_CASE("factorials") {
  std::vector<Rational> s;
  for (long n = 0; n < 30; ++n) s.emplace_back(factorial(n));
  const PolyRecurrence r = guess_recurrence(s, 2, 4);
  CHECK(r.order() == 1);
  CHECK(r.degree() == 1);
  CHECK(r.eval(0, 3) == -r.eval(1, 3) * 4);
}

TEST_CASE("shifted first index") {
  std::vector<Rational> s;
  for (long n = 5; n < 40; ++n) s.emplace_back(factorial(n));
  const PolyRecurrence r = guess_recurrence(s, 1, 2, 5);
  CHECK(r.first_index == 5);
  CHECK(r.annihilates(s));
}

TEST_CASE("too few terms") {
  CHECK_THROWS_AS(guess_recurrence(central_binomials(6), 2, 4), NotFoundError);
  std::vector<Rational> noise;
  for (long n = 0; n < 40; ++n) noise.emplace_back((n * n * n * 7919 + 13) % 1009);
  CHECK_THROWS_AS(guess_recurrence(noise, 1, 2), NotFoundError);
}

TEST_CASE("terms needed includes the holdout") {
  CHECK(terms_needed(2, 7) == static_cast<std::size_t>(3 * 9 + 2 + holdout_terms));
}

TEST_CASE("formal solution of the central binomial recurrence") {
  const auto s = central_binomials(40);
  const PolyRecurrence r = guess_recurrence(s, 2, 4);
  const auto sols = formal_solutions(r, 3);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].growth == QuadNum(4));
  CHECK(sols[0].alpha == Rational(-1, 2));
  CHECK(sols[0].mu.at(1) == QuadNum(Rational(-1, 8)));
  CHECK(sols[0].mu.at(2) == QuadNum(Rational(1, 128)));
}

TEST_CASE("Stokes fit and residual for the central binomial") {
  const PrecisionGuard guard(60);
  const auto s = central_binomials(160);
  const auto sols = formal_solutions(guess_recurrence(s, 2, 4), 6);
  const auto st = fit_stokes(s, 0, sols, 100, 159, 6, 60);
  REQUIRE(st.size() == 1);
  CHECK(abs(st[0] - Complex(1 / sqrt(real_pi()))) < Real("1e-15"));
  std::vector<long> probes;
  for (long n = 40; n < 160; ++n) probes.push_back(n);
  const ResidualReport rr = expansion_residual(s, 0, sols, st, probes, 6, 60);
  CHECK(rr.expected_order == Rational(-15, 2));
  CHECK(abs(rr.observed_order - to_real(rr.expected_order)) < Real("0.3"));
}

TEST_CASE("residual of the zero sequence") {
  const PrecisionGuard guard(40);
  const std::vector<Rational> zeros(50, Rational(0));
  const std::vector<FormalSolution> sols{{QuadNum(2), Rational(0), {QuadNum(1)}}};
  const ResidualReport rr = expansion_residual(zeros, 0, sols, {Complex(Real(0))}, {10, 20, 30}, 0, 40);
  for (const auto& row : rr.rows) CHECK(row.residual == 0);
}

TEST_CASE("regular 6j sequence: order 2, degree 7, printed series") {
  const auto seq = sixj_rational_sequence({2, 2, 2, 2, 2, 2}, 60);
  const PolyRecurrence r = guess_recurrence(seq, 2, 10);
  CHECK(r.order() == 2);
  CHECK(r.degree() == 7);
  const auto sols = formal_solutions(r, 2);
  REQUIRE(sols.size() == 2);
  const QuadNum lam(Rational(329, 729), Rational(-460, 729), BigInt(-2));
  const bool paired = (sols[0].growth == lam && sols[1].growth == lam.conj()) ||
                      (sols[1].growth == lam && sols[0].growth == lam.conj());
  CHECK(paired);
  for (const auto& s : sols) {
    CHECK(s.alpha == Rational(-3, 2));
    const QuadNum mu1 = s.growth == lam ? QuadNum(Rational(-432, 576), Rational(31, 576), BigInt(-2))
                                        : QuadNum(Rational(-432, 576), Rational(-31, 576), BigInt(-2));
    CHECK(s.mu.at(1) == mu1);
  }
}
