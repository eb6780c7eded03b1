#include "spinnet/recurrence.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "spinnet/errors.hpp"

namespace spinnet {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  for (b %= p; e; e >>= 1) {
    if (e & 1) r = mul_mod(r, b, p);
    b = mul_mod(b, b, p);
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
    if (n % q == 0) return n == q;
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

class PrimeStream {
 public:
  u64 next() {
    do cur_ -= 2;
    while (!is_prime(cur_));
    return cur_;
  }

 private:
  u64 cur_ = (u64{1} << 62) + 1;
};

u64 reduce(const BigInt& x, u64 p) {
  return mpz_fdiv_ui(x.backend().data(), p);  // nonnegative remainder
}

std::optional<u64> reduce(const Rational& x, u64 p) {
  const u64 den = reduce(denominator_of(x), p);
  if (den == 0) return std::nullopt;
  return mul_mod(reduce(numerator_of(x), p), pow_mod(den, p - 2, p), p);
}

struct ModNullspace {
  std::vector<int> pivots;
  std::vector<u64> vec;  // first free column set to 1, other free columns 0
  bool empty = true;
};

ModNullspace nullspace_mod(std::vector<std::vector<u64>> m, int cols, u64 p) {
  ModNullspace out;
  const int rows = static_cast<int>(m.size());
  int row = 0;
  for (int c = 0; c < cols && row < rows; ++c) {
    int piv = -1;
    for (int r = row; r < rows; ++r)
      if (m[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[row]);
    const u64 inv = pow_mod(m[row][c], p - 2, p);
    for (auto& x : m[row]) x = mul_mod(x, inv, p);
    for (int r = 0; r < rows; ++r) {
      if (r == row || m[r][c] == 0) continue;
      const u64 f = m[r][c];
      for (int k = c; k < cols; ++k)
        if (m[row][k]) m[r][k] = (m[r][k] + p - mul_mod(f, m[row][k], p)) % p;
    }
    out.pivots.push_back(c);
    ++row;
  }
  if (static_cast<int>(out.pivots.size()) == cols) return out;
  int free_col = 0;
  while (std::find(out.pivots.begin(), out.pivots.end(), free_col) != out.pivots.end()) ++free_col;
  out.vec.assign(cols, 0);
  out.vec[free_col] = 1;
  for (std::size_t r = 0; r < out.pivots.size(); ++r) out.vec[out.pivots[r]] = (p - m[r][free_col]) % p;
  out.empty = false;
  return out;
}

std::optional<Rational> rational_reconstruct(const BigInt& u, const BigInt& M) {
  BigInt bound;
  mpz_sqrt(bound.backend().data(), BigInt(M / 2).backend().data());
  BigInt r0 = M, r1 = u % M, s0 = 0, s1 = 1;
  while (r1 > bound) {
    const BigInt q = r0 / r1;
    BigInt t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  return Rational(r1) / Rational(s1);
}

BigInt ipow(long n, int k) {
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r *= n;
  return r;
}

std::optional<PolyRecurrence> try_fit(std::span<const Rational> seq, int r, int d, long n0) {
  const int cols = (r + 1) * (d + 1);
  const long eqs = static_cast<long>(seq.size()) - holdout_terms - r;
  PrimeStream primes;

  auto system = [&](u64 p) -> std::optional<std::vector<std::vector<u64>>> {
    std::vector<u64> red(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j) {
      const auto v = reduce(seq[j], p);
      if (!v) return std::nullopt;
      red[j] = *v;
    }
    std::vector<std::vector<u64>> m(eqs, std::vector<u64>(cols));
    for (long e = 0; e < eqs; ++e) {
      const long n = n0 + e;
      const u64 nm = reduce(BigInt(n), p);
      for (int i = 0; i <= r; ++i) {
        u64 pw = 1;
        for (int k = 0; k <= d; ++k) {
          m[e][i * (d + 1) + k] = mul_mod(pw, red[e + i], p);
          pw = mul_mod(pw, nm, p);
        }
      }
    }
    return m;
  };

  std::optional<ModNullspace> ref;
  std::vector<BigInt> crt;
  BigInt modulus = 1;
  std::size_t used = 0;
  std::size_t next_attempt = 2;
  for (int attempts = 0; attempts < 4000; ++attempts) {
    const u64 p = primes.next();
    auto m = system(p);
    if (!m) continue;
    ModNullspace ns = nullspace_mod(std::move(*m), cols, p);
    if (ns.empty) return std::nullopt;
    if (!ref) {
      ref = ns;
      crt.assign(cols, BigInt(0));
    } else if (ns.pivots != ref->pivots) {
      if (ns.pivots.size() > ref->pivots.size()) {  // earlier primes were unlucky
        ref = ns;
        crt.assign(cols, BigInt(0));
        modulus = 1;
        used = 0;
        next_attempt = 2;
      } else {
        continue;
      }
    }
    // CRT update
    const BigInt P(p);
    BigInt inv;
    const BigInt mmod = modulus % P;
    mpz_invert(inv.backend().data(), mmod.backend().data(), P.backend().data());
    for (int c = 0; c < cols; ++c) {
      BigInt diff = (BigInt(ns.vec[c]) - crt[c] % P) % P;
      if (diff < 0) diff += P;
      crt[c] += modulus * ((diff * inv) % P);
    }
    modulus *= P;
    ++used;
    if (used < next_attempt) continue;
    next_attempt = used + std::max<std::size_t>(1, used / 2);

    std::vector<Rational> q(cols);
    bool ok = true;
    for (int c = 0; c < cols && ok; ++c) {
      auto x = rational_reconstruct(crt[c], modulus);
      if (!x) ok = false;
      else q[c] = *x;
    }
    if (!ok) continue;
    BigInt l = 1;
    for (const auto& x : q) l = lcm(l, denominator_of(x));
    PolyRecurrence rec;
    rec.first_index = n0;
    rec.p.assign(r + 1, std::vector<BigInt>(d + 1));
    BigInt g = 0;
    for (int i = 0; i <= r; ++i)
      for (int k = 0; k <= d; ++k) {
        rec.p[i][k] = numerator_of(q[i * (d + 1) + k] * Rational(l));
        g = gcd(g, rec.p[i][k]);
      }
    if (g == 0) continue;
    for (auto& poly : rec.p)
      for (auto& x : poly) x /= g;
    for (auto& poly : rec.p)
      while (!poly.empty() && poly.back() == 0) poly.pop_back();
    if (rec.p.back().empty()) continue;
    if (rec.p.back().back() < 0)
      for (auto& poly : rec.p)
        for (auto& x : poly) x = -x;
    if (rec.annihilates(seq)) return rec;
  }
  return std::nullopt;
}

Rational binom_rational(const Rational& beta, int t) {
  Rational r = 1;
  for (int k = 0; k < t; ++k) r *= (beta - k) / Rational(k + 1);
  return r;
}

// Monomial coefficients of binom(beta, t).
std::vector<Rational> binom_poly(int t) {
  std::vector<Rational> poly{Rational(1)};
  for (int k = 0; k < t; ++k) {
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= Rational(k) * poly[i];
    }
    poly = std::move(next);
  }
  const Rational f(factorial(t));
  for (auto& c : poly) c /= f;
  return poly;
}

class Indicial {
 public:
  Indicial(const PolyRecurrence& rec, const QuadNum& lambda) : rec_(rec), d_(rec.degree()) {
    QuadNum pw(1);
    for (int i = 0; i <= rec.order(); ++i) {
      powers_.push_back(pw);
      pw *= lambda;
    }
  }

  // g_{s,t} = sum_i Lambda^i p_{i, d-(s-t)} i^t
  QuadNum g(int s, int t) const {
    const int k = d_ - (s - t);
    QuadNum acc(0);
    if (k < 0 || k > d_) return acc;
    for (int i = 0; i <= rec_.order(); ++i) {
      if (k >= static_cast<int>(rec_.p[i].size())) continue;
      acc += powers_[i] * QuadNum(Rational(rec_.p[i][k] * ipow(i, t)));
    }
    return acc;
  }

  bool vanishes(int s) const {
    for (int t = 0; t <= s; ++t)
      if (!g(s, t).is_zero()) return false;
    return true;
  }

  QuadNum at(int s, const Rational& beta) const {
    QuadNum acc(0);
    for (int t = 0; t <= s; ++t) {
      const QuadNum c = g(s, t);
      if (!c.is_zero()) acc += c * QuadNum(binom_rational(beta, t));
    }
    return acc;
  }

  std::vector<QuadNum> monomial(int s) const {
    std::vector<QuadNum> out(s + 1, QuadNum(0));
    for (int t = 0; t <= s; ++t) {
      const QuadNum c = g(s, t);
      if (c.is_zero()) continue;
      const auto bp = binom_poly(t);
      for (std::size_t k = 0; k < bp.size(); ++k) out[k] += c * QuadNum(bp[k]);
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
  }

 private:
  const PolyRecurrence& rec_;
  int d_;
  std::vector<QuadNum> powers_;
};

std::vector<QuadNum> quadratic_roots(const std::vector<QuadNum>& c) {
  // c ascending, all rational
  if (c.size() == 2) return {-c[0] / c[1]};
  if (c.size() != 3) return {};
  for (const auto& x : c)
    if (!x.is_rational()) return {};
  const Rational a = c[2].p(), b = c[1].p(), cc = c[0].p();
  const Rational D = b * b - 4 * a * cc;
  const QuadNum sq = QuadNum::sqrt_of(D);
  if (D == 0) return {QuadNum(-b / (2 * a))};
  return {(QuadNum(-b) - sq) / QuadNum(2 * a), (QuadNum(-b) + sq) / QuadNum(2 * a)};
}

}  // namespace

int PolyRecurrence::degree() const {
  int d = 0;
  for (const auto& poly : p) d = std::max(d, static_cast<int>(poly.size()) - 1);
  return d;
}

BigInt PolyRecurrence::eval(int i, long n) const {
  BigInt acc = 0;
  for (auto it = p[i].rbegin(); it != p[i].rend(); ++it) acc = acc * n + *it;
  return acc;
}

bool PolyRecurrence::annihilates(std::span<const Rational> seq) const {
  const long r = order();
  for (long j = 0; j + r < static_cast<long>(seq.size()); ++j) {
    const long n = first_index + j;
    Rational acc = 0;
    for (int i = 0; i <= r; ++i) acc += Rational(eval(i, n)) * seq[j + i];
    if (acc != 0) return false;
  }
  return true;
}

std::string PolyRecurrence::str() const {
  std::ostringstream os;
  for (int i = 0; i <= order(); ++i) {
    os << "p" << i << ":";
    for (std::size_t k = 0; k < p[i].size(); ++k) os << (k ? " " : " ") << to_string(p[i][k]);
    os << '\n';
  }
  return os.str();
}

std::size_t terms_needed(int order, int degree) {
  return static_cast<std::size_t>((order + 1) * (degree + 2) + order + holdout_terms);
}

PolyRecurrence guess_recurrence(std::span<const Rational> seq, int r_max, int d_max,
                                long first_index) {
  bool nonzero = false;
  for (const auto& x : seq) nonzero = nonzero || x != 0;
  if (!nonzero) throw NotFoundError("zero sequence has no canonical recurrence");
  for (int r = 1; r <= r_max; ++r)
    for (int d = 0; d <= d_max; ++d) {
      if (seq.size() < terms_needed(r, d)) break;
      if (auto rec = try_fit(seq, r, d, first_index)) return *rec;
    }
  throw NotFoundError("no recurrence with order <= " + std::to_string(r_max) +
                      " and degree <= " + std::to_string(d_max) + " fits " +
                      std::to_string(seq.size()) + " terms");
}

std::vector<FormalSolution> formal_solutions(const PolyRecurrence& rec, int depth) {
  if (rec.order() < 1 || rec.order() > 2)
    throw DegenerateError("formal solutions are implemented for orders 1 and 2");
  const int d = rec.degree();
  std::vector<QuadNum> chi;
  for (int i = 0; i <= rec.order(); ++i)
    chi.emplace_back(static_cast<int>(rec.p[i].size()) > d ? Rational(rec.p[i][d]) : Rational(0));
  while (!chi.empty() && chi.back().is_zero()) chi.pop_back();
  std::vector<QuadNum> lambdas;
  for (const auto& l : quadratic_roots(chi))
    if (!l.is_zero()) lambdas.push_back(l);

  std::vector<FormalSolution> out;
  for (const auto& lambda : lambdas) {
    const Indicial G(rec, lambda);
    int K = 0;
    while (K <= 3 * d + 8 && G.vanishes(K)) ++K;
    if (K > 3 * d + 8) throw DegenerateError("indicial polynomial vanishes identically");
    std::vector<Rational> alphas;
    auto add = [&](const Rational& a) {
      if (std::find(alphas.begin(), alphas.end(), a) == alphas.end() && G.at(K, a).is_zero())
        alphas.push_back(a);
    };
    for (const auto& a : quadratic_roots(G.monomial(K)))
      if (a.is_rational()) add(a.p());
    for (const auto& a : {Rational(-4, 3), Rational(-5, 3)}) add(a);
    if (alphas.empty())
      for (long q = 1; q <= 6; ++q)
        for (long p = -12 * q; p <= 12 * q; ++p) add(Rational(p, q));
    if (alphas.empty()) throw DegenerateError("no rational exponent solves the indicial equation");
    std::sort(alphas.begin(), alphas.end(), std::greater<>());
    for (const auto& alpha : alphas) {
      FormalSolution s{lambda, alpha, {QuadNum(1)}};
      for (int l = 1; l <= depth; ++l) {
        const QuadNum den = G.at(K, alpha - l);
        if (den.is_zero()) throw DegenerateError("resonant exponents (logarithmic terms)");
        QuadNum acc(0);
        for (int lp = 0; lp < l; ++lp) acc += s.mu[lp] * G.at(K + l - lp, alpha - lp);
        s.mu.push_back(-acc / den);
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

Complex branch_term(const FormalSolution& s, long n, int depth) {
  const Real nr(n);
  Complex h(Real(0));
  Real np(1);
  for (int l = 0; l <= depth && l < static_cast<int>(s.mu.size()); ++l) {
    h += s.mu[l].to_complex() * Complex(Real(1) / np);
    np *= nr;
  }
  return pow(s.growth.to_complex(), n) * Complex(exp(to_real(s.alpha) * log(nr))) * h;
}

}  // namespace

Complex evaluate_ansatz(const std::vector<FormalSolution>& sols, const std::vector<Complex>& stokes,
                        long n, int depth) {
  Complex acc(Real(0));
  for (std::size_t b = 0; b < sols.size(); ++b) acc += stokes[b] * branch_term(sols[b], n, depth);
  return acc;
}

std::vector<Complex> fit_stokes(std::span<const Rational> seq, long first_index,
                                const std::vector<FormalSolution>& sols, long n_lo, long n_hi,
                                int depth, unsigned precision) {
  const PrecisionGuard guard(precision);
  if (n_lo < std::max(1L, first_index) || n_hi - first_index >= static_cast<long>(seq.size()) ||
      n_hi < n_lo)
    throw ParseError("fit range outside the data");
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  const long rows = 2 * (n_hi - n_lo + 1);
  const long cols = 2 * static_cast<long>(sols.size());
  Mat X(rows, cols);
  Vec y(rows);
  for (long n = n_lo; n <= n_hi; ++n) {
    std::vector<Complex> f;
    Real scale(0);
    for (const auto& s : sols) {
      f.push_back(branch_term(s, n, depth));
      scale = std::max(scale, abs(f.back()));
    }
    const long r = 2 * (n - n_lo);
    for (std::size_t b = 0; b < sols.size(); ++b) {
      X(r, 2 * b) = f[b].re / scale;
      X(r, 2 * b + 1) = -f[b].im / scale;
      X(r + 1, 2 * b) = f[b].im / scale;
      X(r + 1, 2 * b + 1) = f[b].re / scale;
    }
    y(r) = to_real(seq[n - first_index]) / scale;
    y(r + 1) = 0;
  }
  const Vec sol = X.colPivHouseholderQr().solve(y);
  std::vector<Complex> out;
  for (std::size_t b = 0; b < sols.size(); ++b) out.emplace_back(sol(2 * b), sol(2 * b + 1));
  return out;
}

ResidualReport expansion_residual(std::span<const Rational> seq, long first_index,
                                  const std::vector<FormalSolution>& sols,
                                  const std::vector<Complex>& stokes, const std::vector<long>& probes,
                                  int depth, unsigned precision) {
  const PrecisionGuard guard(precision);
  if (probes.size() < 3) throw ParseError("need at least three probe points");
  ResidualReport out;
  Real dominant(0);
  bool first = true;
  for (std::size_t b = 0; b < sols.size(); ++b) {
    if (abs(stokes[b]) == 0) continue;
    const Real g = abs(sols[b].growth.to_complex());
    if (first || g > dominant) dominant = g;
    if (first || sols[b].alpha > out.expected_order) out.expected_order = sols[b].alpha;
    first = false;
  }
  out.expected_order -= depth + 1;
  if (first) dominant = 1;
  for (long n : probes) {
    if (n < 1 || n - first_index < 0 || n - first_index >= static_cast<long>(seq.size()))
      throw ParseError("probe index outside the data");
    ResidualRow row;
    row.n = n;
    row.residual = abs(Complex(to_real(seq[n - first_index])) - evaluate_ansatz(sols, stokes, n, depth));
    row.scaled = row.residual / exp(Real(n) * log(dominant));
    out.rows.push_back(row);
  }
  // Upper envelope: rows that dominate their two neighbours on each side.
  std::vector<std::size_t> env;
  const std::size_t m = out.rows.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (out.rows[i].scaled <= 0) continue;
    bool peak = true;
    for (std::size_t j = (i >= 2 ? i - 2 : 0); j < std::min(m, i + 3); ++j)
      if (j != i && out.rows[j].scaled > out.rows[i].scaled) peak = false;
    if (peak) env.push_back(i);
  }
  if (env.size() * 10 < m) {  // no oscillation: use every row
    env.clear();
    for (std::size_t i = 0; i < m; ++i)
      if (out.rows[i].scaled > 0) env.push_back(i);
  }
  if (env.size() < 2) {
    out.observed_order = 0;
    return out;
  }
  Real sx(0), sy(0), sxx(0), sxy(0);
  for (auto i : env) {
    const Real x = log(Real(out.rows[i].n));
    const Real y = log(out.rows[i].scaled);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const Real k(static_cast<long>(env.size()));
  out.observed_order = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return out;
}

}  // namespace spinnet
