#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spinnet/complex.hpp"
#include "spinnet/exact_eval.hpp"
#include "spinnet/quadnum.hpp"
#include "spinnet/ribbon_graph.hpp"
#include "spinnet/tet_geometry.hpp"

namespace spinnet {

// A(n, k) = v0 n + v1 k + v, entering the term as A! ^ eps.
struct AffineForm {
  long v0 = 0;
  long v1 = 0;
  long v = 0;
  int eps = 1;
};

// t_{n,k} = C0^n C1^k prod_j A_j(n,k)!^eps_j
struct BalancedTerm1D {
  Rational C0{1};
  Rational C1{1};
  std::vector<AffineForm> forms;
  bool sixj_shape = false;  // selection rule validated for this shape

  Rational mu() const;  // sum(eps) / 2
  long nu() const;      // sum(eps * v)
  bool balanced() const;
  // Interval (lo, hi) on which every form with v1 != 0 is positive; nullopt = unbounded.
  std::optional<Rational> lower() const;
  std::optional<Rational> upper() const;
};

// binomial(n, k); sums to 2^n.
BalancedTerm1D binomial_sum_term();
// (-1)^k (k+1)! / (prod (n S_i - k)! prod (k - n T_j)!)
BalancedTerm1D sixj_term(const TetLabels& t);

struct CriticalPoint {
  Complex u;
  std::optional<QuadNum> exact;  // when the variational polynomial has degree <= 2
  int order = 1;                 // m: V^(j)(u) = 0 for j = 1..m
  bool in_cut = false;
};

// Ascending rational coefficients of the cleared variational equation.
std::vector<Rational> variational_polynomial(const BalancedTerm1D& t);
std::vector<CriticalPoint> critical_points_1d(const BalancedTerm1D& t,
                                              unsigned precision = default_precision_digits);

// V^(j)(u) for j >= 2.
Complex v_derivative(const BalancedTerm1D& t, const Complex& u, int j);
Complex w_function(const BalancedTerm1D& t, const Complex& u);
Complex lambda_function(const BalancedTerm1D& t, const Complex& u);
Real c_m(int m);

struct NilssonBranch {
  std::string label;
  Complex growth;
  std::optional<QuadNum> growth_exact;
  Rational alpha;
  Complex stokes;
  std::vector<QuadNum> mu{QuadNum(1)};
  bool contributes = true;
  std::optional<CriticalPoint> point;
};

struct NilssonExpansion {
  std::vector<NilssonBranch> branches;
  BigInt field{0};  // square-free m with K = Q(sqrt m); 0 or 1 for Q
  int nilpotency = 0;  // log-terms never arise in the implemented cases
  bool selection_heuristic = false;
};

NilssonExpansion term_asymptotics_1d(const BalancedTerm1D& t,
                                     unsigned precision = default_precision_digits);

// Asymptotics of the ratio <tet, n g>^U / <tet, n g>: growth^n * prefactor * sum mu_l n^-l.
struct ThetaNormAsym {
  Rational growth_square;
  std::optional<Rational> growth_exact;
  Real growth;
  Real prefactor;  // (2 pi)^2 prod s_abc
  std::vector<Rational> mu;
};
ThetaNormAsym theta_norm_asym(const TetLabels& t, int depth,
                              unsigned precision = default_precision_digits);

struct SixjReport {
  TetLabels labels;
  CayleyMengerData geometry;
  VariationalData variational;
  DihedralAngles angles;
  std::array<Complex, 2> growth_angle_route;    // exp(+-i sum theta_a a/2)
  std::array<Complex, 2> growth_product_route;  // lambda products at v+, v-
  Real route_gap;
  NilssonExpansion expansion;  // branches "+", "-"
  int contributing = 0;        // index of the single branch in the Minkowskian case, else -1
};

// <tet, n g>^U for n = 0..n_max.
std::vector<Surd> sixj_unitary_sequence(const TetColoring& g, long n_max, int jobs = 1);
// Same, requiring rational values.
std::vector<Rational> sixj_rational_sequence(const TetColoring& g, long n_max, int jobs = 1);

SixjReport sixj_expansion(const TetLabels& t, unsigned precision = default_precision_digits);

struct PredictionRow {
  long n = 0;
  Surd exact;
  Real value;
  Complex prediction;
  Real abs_error;
  Real rel_error;
};

// Leading-order prediction sum_b S_b Lambda_b^n n^alpha_b h_b(1/n); h_b uses the
// branch mu coefficients, which are {1} unless supplied by the caller.
std::vector<PredictionRow> predict_and_compare(const SixjReport& report, long n_lo, long n_hi,
                                               unsigned precision = default_precision_digits,
                                               int jobs = 1);
Complex predict(const SixjReport& report, long n);
Real ponzano_regge(const SixjReport& report, long n);
std::string prediction_csv(const std::vector<PredictionRow>& rows, unsigned digits = 20);

struct RadiusEstimate {
  Real estimate;
  Real naive;        // |a_N|^(1/N)
  Real richardson;   // from the last two envelope points
  long points = 0;
  long sign_changes = 0;
  bool oscillating = false;
  Real residual_rms;
};

RadiusEstimate spectral_radius_from(const std::vector<ExactValue>& seq);
RadiusEstimate spectral_radius_estimate(const RibbonGraph& g, long n_max, Norm tag = Norm::standard,
                                        int jobs = 1);

}  // namespace spinnet
