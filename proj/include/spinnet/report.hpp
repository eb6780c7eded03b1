#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spinnet/asymptotics.hpp"
#include "spinnet/exact_eval.hpp"
#include "spinnet/recurrence.hpp"
#include "spinnet/tet_geometry.hpp"

namespace spinnet {

using Json = nlohmann::ordered_json;

// Big rationals travel as strings so that values round-trip exactly.
Json to_json(const QuadNum& x);  // {"m", "p", "q"}
QuadNum quadnum_from_json(const Json& j);
Json to_json(const Surd& s);  // {"coef", "radicand"}
Surd surd_from_json(const Json& j);
Json to_json(const Complex& z, unsigned digits);

struct EvalResult {
  ExactValue standard, P, B;
  std::optional<ExactValue> U;  // undefined when a vertex theta vanishes
};
EvalResult evaluate_all(const RibbonGraph& g, const Coloring& gamma);
Json to_json(const EvalResult& r);
std::string eval_csv(const EvalResult& r);

std::string sequence_csv(const std::vector<ExactValue>& seq);
Json sequence_json(const std::vector<ExactValue>& seq);

Json classify_json(const TetLabels& t, unsigned precision);
std::string classify_csv(const TetLabels& t, unsigned precision);

Json to_json(const SixjReport& r, unsigned digits);
Json to_json(const std::vector<PredictionRow>& rows, unsigned digits);

Json to_json(const PolyRecurrence& rec);
PolyRecurrence recurrence_from_json(const Json& j);
Json to_json(const std::vector<FormalSolution>& sols);
std::vector<FormalSolution> solutions_from_json(const Json& j);
std::string solutions_csv(const std::vector<FormalSolution>& sols);

Json to_json(const RadiusEstimate& r, unsigned digits);

}  // namespace spinnet
