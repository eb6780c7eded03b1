#pragma once

#include <span>
#include <string>
#include <vector>

#include "spinnet/complex.hpp"
#include "spinnet/numbers.hpp"
#include "spinnet/quadnum.hpp"

namespace spinnet {

// sum_{i=0}^{r} p_i(n) a_{n+i} = 0, with n the sequence index of a_n.
struct PolyRecurrence {
  std::vector<std::vector<BigInt>> p;  // p[i][k] = coefficient of n^k in p_i
  long first_index = 0;                // index of the first data term

  int order() const { return static_cast<int>(p.size()) - 1; }
  int degree() const;
  BigInt eval(int i, long n) const;
  // Exact check on every window of the supplied data; seq[j] = a_{first_index + j}.
  bool annihilates(std::span<const Rational> seq) const;
  std::string str() const;
};

inline constexpr int holdout_terms = 8;

// Minimal (order, then degree) recurrence with at most r_max, d_max.
// Throws NotFoundError when none is found within the bounds and data length.
PolyRecurrence guess_recurrence(std::span<const Rational> seq, int r_max, int d_max,
                                long first_index = 0);
std::size_t terms_needed(int order, int degree);

struct FormalSolution {
  QuadNum growth;
  Rational alpha;
  std::vector<QuadNum> mu;  // mu[0] = 1
};

std::vector<FormalSolution> formal_solutions(const PolyRecurrence& rec, int depth);

// Truncated ansatz sum_b S_b Lambda_b^n n^alpha_b sum_{l<=depth} mu_l n^-l.
Complex evaluate_ansatz(const std::vector<FormalSolution>& sols, const std::vector<Complex>& stokes,
                        long n, int depth);

// Least-squares Stokes constants from data on [n_lo, n_hi].
std::vector<Complex> fit_stokes(std::span<const Rational> seq, long first_index,
                                const std::vector<FormalSolution>& sols, long n_lo, long n_hi,
                                int depth, unsigned precision = default_precision_digits);

struct ResidualRow {
  long n = 0;
  Real residual;  // |a_n - ansatz|
  Real scaled;    // residual / |Lambda|^n of the dominant branch
};

struct ResidualReport {
  std::vector<ResidualRow> rows;
  Real observed_order;  // slope of log(scaled) against log n over the upper envelope
  Rational expected_order;
};

ResidualReport expansion_residual(std::span<const Rational> seq, long first_index,
                                  const std::vector<FormalSolution>& sols,
                                  const std::vector<Complex>& stokes, const std::vector<long>& probes,
                                  int depth, unsigned precision = default_precision_digits);

}  // namespace spinnet
