#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spinnet/numbers.hpp"
#include "spinnet/quadnum.hpp"
#include "spinnet/ribbon_graph.hpp"

namespace spinnet {

enum class Norm { P, standard, B, U };

std::string_view norm_name(Norm n);
Norm parse_norm(std::string_view text);

// An evaluation tagged with its normalization. P, standard and B values are
// rational (radicand 1); U values are coef * sqrt(radicand).
struct ExactValue {
  Norm norm = Norm::standard;
  Surd value;

  static ExactValue rational(Norm n, const Rational& x) { return {n, Surd{x, BigInt(1)}}; }
  const Rational& as_rational() const;
  std::string str() const { return value.str(); }
  friend bool operator==(const ExactValue&, const ExactValue&) = default;
};

// (a, b, c, d, e, f) tetrahedron colors; a=d12, b=d23, c=d14, d=d34, e=d13, f=d24.
using TetColoring = std::array<long, 6>;

inline constexpr std::uint64_t default_state_budget = 10'000'000;
inline constexpr std::uint64_t default_config_budget = 100'000'000;

ExactValue penrose_state_sum(const RibbonGraph& g, const Coloring& gamma,
                             std::uint64_t budget = default_state_budget);

// Caches the curve list and pairwise crossing parities of one graph.
class ChromaticEvaluator {
 public:
  explicit ChromaticEvaluator(const RibbonGraph& g);

  // Sum over configurations grouped by |L|: size -> sum of (-1)^iota multinomial.
  std::map<long, BigInt> by_size(const Coloring& gamma,
                                 std::uint64_t budget = default_config_budget) const;
  BigInt evaluate(const Coloring& gamma, const BigInt& N = BigInt(-2),
                  std::uint64_t budget = default_config_budget) const;

  const RibbonGraph& graph() const { return g_; }
  const std::vector<Curve>& curve_list() const { return curves_; }  // nonempty curves
  const std::vector<std::vector<int>>& parity() const { return cp_; }

 private:
  RibbonGraph g_;
  std::vector<Curve> curves_;
  std::vector<std::vector<int>> cp_;
};

ExactValue chromatic_eval(const RibbonGraph& g, const Coloring& gamma, const BigInt& N = BigInt(-2),
                          std::uint64_t budget = default_config_budget);

BigInt closed_form_theta(long a, long b, long c);
BigInt closed_form_sixj(const TetColoring& gamma);

struct Family {
  enum class Kind { drum, k33 } kind = Kind::drum;
  int sides = 3;
};
ExactValue family_eval(const Family& family, long color);

// (-1)^{(a(a-1)+b(b-1)+c(c-1))/2}
int flip_sign(long a, long b, long c);

BigInt vertex_factorial(const RibbonGraph& g, const Coloring& gamma);  // I!
BigInt edge_factorial(const RibbonGraph& g, const Coloring& gamma);    // E!
// Theta(gamma) = prod_v sqrt(|theta^P_v|), exact.
Surd theta_product(const RibbonGraph& g, const Coloring& gamma);

ExactValue convert_normalization(const ExactValue& v, const RibbonGraph& g, const Coloring& gamma,
                                 Norm target);

// Standard evaluation by the fastest available route (closed forms for theta
// and tetrahedron shapes, chromatic evaluation otherwise).
BigInt standard_value(const RibbonGraph& g, const Coloring& gamma);

std::vector<ExactValue> scaled_sequence(const RibbonGraph& g, const Coloring& gamma, long n_max,
                                        Norm tag, unsigned jobs = 1);

// The planar graphs used throughout: strands (a,b,c,d,e,f) and (t,m,b).
const RibbonGraph& tetrahedron_graph();
const RibbonGraph& theta_graph();
Coloring tet_coloring(const TetColoring& gamma);

// Unitary tetrahedron value <tet, n gamma>^U for the planar tetrahedron.
Surd sixj_unitary(const TetColoring& gamma);

}  // namespace spinnet
