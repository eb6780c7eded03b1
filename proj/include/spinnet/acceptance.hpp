#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "spinnet/exact_eval.hpp"
#include "spinnet/quadnum.hpp"

namespace spinnet {

struct AcceptanceOptions {
  unsigned jobs = 1;
  unsigned precision = default_precision_digits;
};

struct CriterionResult {
  int id = 0;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// The three reference tetrahedra: Euclidean, Plane, Minkowskian.
struct ReferenceSixj {
  std::string name;
  TetColoring coloring;
};
const std::array<ReferenceSixj, 3>& reference_sixj();

// Printed formal series of one branch of a reference sequence.
struct GoldenBranch {
  std::string sequence;  // "a", "b" or "c"
  QuadNum growth;
  Rational alpha;
  std::vector<QuadNum> mu;  // mu_0 .. mu_6
};
const std::vector<GoldenBranch>& golden_branches();

// Runs criteria 1..11, printing one line per criterion.
std::vector<CriterionResult> run_acceptance(std::ostream& out, const AcceptanceOptions& opt);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace spinnet
