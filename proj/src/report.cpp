#include "spinnet/report.hpp"

#include <sstream>

#include "spinnet/errors.hpp"

namespace spinnet {

namespace {

BigInt parse_bigint(const std::string& s) {
  const Rational r = parse_rational(s);
  if (!is_integer(r)) throw ParseError("expected an integer, got " + s);
  return numerator_of(r);
}

std::string str(const Rational& x) { return to_string(x); }

Json exact_json(const ExactValue& v) {
  Json j = to_json(v.value);
  j["norm"] = std::string(norm_name(v.norm));
  j["value"] = v.str();
  return j;
}

}  // namespace

Json to_json(const QuadNum& x) {
  return Json{{"m", to_string(x.m())}, {"p", str(x.p())}, {"q", str(x.q())}};
}

QuadNum quadnum_from_json(const Json& j) {
  return QuadNum(parse_rational(j.at("p").get<std::string>()),
                 parse_rational(j.at("q").get<std::string>()),
                 parse_bigint(j.at("m").get<std::string>()));
}

Json to_json(const Surd& s) {
  return Json{{"coef", str(s.coef)}, {"radicand", to_string(s.radicand)}};
}

Surd surd_from_json(const Json& j) {
  return Surd::make(parse_rational(j.at("coef").get<std::string>()),
                    parse_bigint(j.at("radicand").get<std::string>()));
}

Json to_json(const Complex& z, unsigned digits) {
  return Json{{"re", format_real(z.re, digits)}, {"im", format_real(z.im, digits)}};
}

EvalResult evaluate_all(const RibbonGraph& g, const Coloring& gamma) {
  const ExactValue s = ExactValue::rational(Norm::standard, Rational(standard_value(g, gamma)));
  EvalResult r{s, convert_normalization(s, g, gamma, Norm::P),
               convert_normalization(s, g, gamma, Norm::B), std::nullopt};
  try {
    r.U = convert_normalization(s, g, gamma, Norm::U);
  } catch (const DegenerateError&) {
  }
  return r;
}

Json to_json(const EvalResult& r) {
  Json j;
  j["standard"] = exact_json(r.standard);
  j["P"] = exact_json(r.P);
  j["B"] = exact_json(r.B);
  j["U"] = r.U ? exact_json(*r.U) : Json("undefined-U");
  return j;
}

std::string eval_csv(const EvalResult& r) {
  std::ostringstream os;
  os << "norm,value\n";
  os << "standard," << r.standard.str() << "\nP," << r.P.str() << "\nB," << r.B.str() << "\nU,"
     << (r.U ? r.U->str() : std::string("undefined-U")) << '\n';
  return os.str();
}

std::string sequence_csv(const std::vector<ExactValue>& seq) {
  std::ostringstream os;
  os << "n,norm,coef,radicand\n";
  for (std::size_t n = 0; n < seq.size(); ++n)
    os << n << ',' << norm_name(seq[n].norm) << ',' << str(seq[n].value.coef) << ','
       << to_string(seq[n].value.radicand) << '\n';
  return os.str();
}

Json sequence_json(const std::vector<ExactValue>& seq) {
  Json arr = Json::array();
  for (std::size_t n = 0; n < seq.size(); ++n) {
    Json j = exact_json(seq[n]);
    j["n"] = n;
    arr.push_back(j);
  }
  return arr;
}

Json classify_json(const TetLabels& t, unsigned precision) {
  const CayleyMengerData cm = cayley_menger(t);
  Json j;
  j["labels"] = to_string(t);
  j["det"] = str(cm.det);
  j["class"] = std::string(class_name(cm.cls));
  j["volume"] = to_json(cm.volume);
  j["volume_text"] = cm.volume.str();
  j["degenerate"] = cm.degenerate;
  if (cm.degenerate) return j;
  const DihedralAngles ang = dihedral_angles(t, precision);
  Json angles = Json::array();
  for (const auto& th : ang.theta) angles.push_back(to_json(th, precision));
  j["angles"] = angles;
  const VariationalData v = variational_solve(t);
  j["A"] = str(v.A);
  j["B"] = str(v.B);
  j["C'"] = str(v.Cp);
  j["D"] = str(v.D);
  j["roots"] = Json::array({to_json(v.roots[0]), to_json(v.roots[1])});
  j["roots_text"] = Json::array({v.roots[0].str(), v.roots[1].str()});
  j["in_cut"] = Json::array({v.in_cut[0], v.in_cut[1]});
  j["cut"] = Json::array({str(v.cut_lo), str(v.cut_hi)});
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string classify_csv(const TetLabels& t, unsigned precision) {
  const Json j = classify_json(t, precision);
  std::ostringstream os;
  os << "field,value\n";
  for (const auto& [k, v] : j.items()) os << k << ',' << csv_field(v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  return os.str();
}

Json to_json(const SixjReport& r, unsigned digits) {
  Json j;
  j["labels"] = to_string(r.labels);
  j["class"] = std::string(class_name(r.geometry.cls));
  j["det"] = str(r.geometry.det);
  j["field"] = to_string(r.expansion.field);
  j["route_gap"] = format_real(r.route_gap, 6);
  j["contributing"] = r.contributing < 0 ? Json("both") : Json(r.expansion.branches[r.contributing].label);
  Json br = Json::array();
  for (std::size_t s = 0; s < r.expansion.branches.size(); ++s) {
    const auto& b = r.expansion.branches[s];
    Json x;
    x["label"] = b.label;
    x["growth"] = to_json(b.growth, digits);
    if (b.growth_exact) {
      x["growth_exact"] = to_json(*b.growth_exact);
      x["growth_text"] = b.growth_exact->str();
    }
    x["growth_angle_route"] = to_json(r.growth_angle_route[s], digits);
    x["alpha"] = str(b.alpha);
    x["stokes"] = to_json(b.stokes, digits);
    x["contributes"] = b.contributes;
    br.push_back(x);
  }
  j["branches"] = br;
  j["nilpotency"] = r.expansion.nilpotency;
  return j;
}

Json to_json(const std::vector<PredictionRow>& rows, unsigned digits) {
  Json arr = Json::array();
  for (const auto& r : rows)
    arr.push_back(Json{{"n", r.n},
                       {"exact", to_json(r.exact)},
                       {"value", format_real(r.value, digits)},
                       {"prediction", to_json(r.prediction, digits)},
                       {"abs_err", format_real(r.abs_error, digits)},
                       {"rel_err", format_real(r.rel_error, digits)}});
  return arr;
}

Json to_json(const PolyRecurrence& rec) {
  Json polys = Json::array();
  for (const auto& p : rec.p) {
    Json c = Json::array();
    for (const auto& x : p) c.push_back(to_string(x));
    polys.push_back(c);
  }
  return Json{{"order", rec.order()}, {"degree", rec.degree()}, {"first_index", rec.first_index},
              {"p", polys}};
}

PolyRecurrence recurrence_from_json(const Json& j) {
  PolyRecurrence rec;
  rec.first_index = j.at("first_index").get<long>();
  for (const auto& poly : j.at("p")) {
    std::vector<BigInt> c;
    for (const auto& x : poly) c.push_back(parse_bigint(x.get<std::string>()));
    rec.p.push_back(std::move(c));
  }
  return rec;
}

Json to_json(const std::vector<FormalSolution>& sols) {
  Json arr = Json::array();
  for (const auto& s : sols) {
    Json mu = Json::array();
    for (const auto& m : s.mu) mu.push_back(to_json(m));
    arr.push_back(Json{{"growth", to_json(s.growth)},
                       {"growth_text", s.growth.str()},
                       {"alpha", str(s.alpha)},
                       {"mu", mu}});
  }
  return arr;
}

std::vector<FormalSolution> solutions_from_json(const Json& j) {
  std::vector<FormalSolution> out;
  for (const auto& x : j) {
    FormalSolution s{quadnum_from_json(x.at("growth")), parse_rational(x.at("alpha").get<std::string>()), {}};
    for (const auto& m : x.at("mu")) s.mu.push_back(quadnum_from_json(m));
    out.push_back(std::move(s));
  }
  return out;
}

std::string solutions_csv(const std::vector<FormalSolution>& sols) {
  std::ostringstream os;
  os << "branch,growth,alpha,l,mu\n";
  for (std::size_t b = 0; b < sols.size(); ++b)
    for (std::size_t l = 0; l < sols[b].mu.size(); ++l)
      os << b << ',' << sols[b].growth.str() << ',' << str(sols[b].alpha) << ',' << l << ','
         << sols[b].mu[l].str() << '\n';
  return os.str();
}

Json to_json(const RadiusEstimate& r, unsigned digits) {
  return Json{{"estimate", format_real(r.estimate, digits)},
              {"naive", format_real(r.naive, digits)},
              {"richardson", format_real(r.richardson, digits)},
              {"points", r.points},
              {"sign_changes", r.sign_changes},
              {"oscillating", r.oscillating},
              {"residual_rms", format_real(r.residual_rms, 6)}};
}

}  // namespace spinnet
