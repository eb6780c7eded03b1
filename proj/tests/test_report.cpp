#include <doctest.h>

#include "spinnet/errors.hpp"
#include "spinnet/recurrence.hpp"
#include "spinnet/report.hpp"

using namespace spinnet;

TEST_CASE("QuadNum and Surd survive JSON") {
  const QuadNum x(parse_rational("-18649008/573308928"), parse_rational("4914305/573308928"), BigInt(-2));
  CHECK(quadnum_from_json(Json::parse(to_json(x).dump())) == x);
  CHECK(quadnum_from_json(to_json(QuadNum(Rational(7, 3)))) == QuadNum(Rational(7, 3)));
  const Surd s = Surd::make(Rational(-5, 12), BigInt(6));
  CHECK(surd_from_json(Json::parse(to_json(s).dump())) == s);
}

TEST_CASE("recurrences and formal solutions survive JSON") {
  std::vector<Rational> seq;
  for (long n = 0; n < 40; ++n) seq.emplace_back(binomial(BigInt(2 * n), n));
  const PolyRecurrence r = guess_recurrence(seq, 2, 4);
  const PolyRecurrence back = recurrence_from_json(Json::parse(to_json(r).dump()));
  CHECK(back.p == r.p);
  CHECK(back.first_index == r.first_index);
  const auto sols = formal_solutions(r, 4);
  const auto sols_back = solutions_from_json(Json::parse(to_json(sols).dump()));
  REQUIRE(sols_back.size() == sols.size());
  CHECK(sols_back[0].growth == sols[0].growth);
  CHECK(sols_back[0].alpha == sols[0].alpha);
  CHECK(sols_back[0].mu == sols[0].mu);
}

TEST_CASE("evaluation report") {
  const EvalResult r = evaluate_all(theta_graph(), Coloring({2, 2, 2}));
  CHECK(r.standard.as_rational() == -24);
  CHECK(r.B.as_rational() == -3);
  REQUIRE(r.U);
  const std::string csv = eval_csv(r);
  CHECK(csv.find("standard,-24") != std::string::npos);
  const Json j = to_json(r);
  CHECK(surd_from_json(j.at("P")) == r.P.value);
}

TEST_CASE("classification report") {
  const Json j = classify_json(parse_labels("4,4,4,4,6,6"), 30);
  CHECK(j.at("class") == "Minkowskian");
  CHECK(j.at("det") == "-2592");
  CHECK(classify_csv(parse_labels("2,2,2,2,2,2"), 30).find("labels,\"2,2,2,2,2,2\"") != std::string::npos);
}

TEST_CASE("malformed JSON values are rejected") {
  CHECK_THROWS(quadnum_from_json(Json{{"p", "1/x"}, {"q", "0"}, {"m", "0"}}));
}
