#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spinnet/numbers.hpp"
#include "spinnet/ribbon_graph.hpp"

namespace spinnet {

using Exponent = std::vector<int>;  // one entry per strand

struct MultiPoly {
  int num_vars = 0;
  std::map<Exponent, Rational> terms;  // lexicographic, zero terms dropped
};

struct TruncatedSeries {
  int num_vars = 0;
  int degree = 0;  // total degree bound
  std::map<Exponent, Rational> terms;
  Rational coefficient(const Exponent& e) const;
};

// Bit i of a mask selects curves(g)[i] (curve 0 is the empty curve); mask 0 is X = {}.
using CurveMask = std::uint32_t;
inline constexpr int max_fourier_curves = 20;

MultiPoly curve_polynomial(const RibbonGraph& g, CurveMask X);

// iota(Y) mod 2 for a pairwise parity matrix.
int iota_parity(const std::vector<std::vector<int>>& cp, CurveMask Y);

// Nonzero a_X, keyed by curve mask.
std::map<CurveMask, Rational> fourier_coefficients(const RibbonGraph& g);

TruncatedSeries spin_series_expand(const RibbonGraph& g, int degree);

// Coefficients of z^{n gamma} of the spin generating series for n = 0..n_max.
std::vector<Rational> diagonal_series(const RibbonGraph& g, const Coloring& gamma, long n_max);

// One row per monomial: exponents then coefficient.
std::string series_csv(const TruncatedSeries& s, const RibbonGraph& g);

}  // namespace spinnet
