#include "spinnet/asymptotics.hpp"

#include <algorithm>
#include <complex>
#include <exception>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "spinnet/errors.hpp"

namespace spinnet {

namespace {

using Poly = std::vector<Rational>;  // ascending coefficients

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly poly_pow(const Poly& a, long k) {
  Poly out{Rational(1)};
  for (long i = 0; i < k; ++i) out = poly_mul(out, a);
  return out;
}

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * Rational(static_cast<long>(i)));
  return out;
}

Complex horner(const Poly& p, const Complex& z) {
  Complex acc(Real(0));
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + Complex(to_real(*it));
  return acc;
}

Complex form_value(const AffineForm& f, const Complex& u) {
  return Complex(Real(f.v0)) + Complex(Real(f.v1)) * u;
}

QuadNum form_value(const AffineForm& f, const QuadNum& u) {
  return QuadNum(f.v0) + QuadNum(f.v1) * u;
}

Real two_pi() { return 2 * real_pi(); }

Real tolerance(unsigned precision) { return pow(Real(10), -static_cast<long>(precision / 2)); }

bool real_in_cut(const BalancedTerm1D& t, const Real& x) {
  const auto lo = t.lower();
  const auto hi = t.upper();
  return (lo && x <= to_real(*lo)) || (hi && x >= to_real(*hi));
}

std::vector<Rational> bernoulli_numbers(int n) {
  // Akiyama-Tanigawa; returns B_0..B_n with B_1 = +1/2 (only even indices are used).
  std::vector<Rational> a(n + 1), b(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
    b[m] = a[0];
  }
  return b;
}

std::array<std::array<Rational, 3>, 4> tet_vertices(const TetLabels& t) {
  return {{{t.a(), t.b(), t.e()}, {t.a(), t.c(), t.f()}, {t.c(), t.d(), t.e()}, {t.b(), t.d(), t.f()}}};
}

long to_long(const Rational& x) {
  if (!is_integer(x)) throw ParseError("expected an integral half-sum, got " + to_string(x));
  return numerator_of(x).convert_to<long>();
}

TetColoring integer_labels(const TetLabels& t) {
  TetColoring g{};
  for (int i = 0; i < 6; ++i) g[i] = to_long(t.v[i]);
  return g;
}

}  // namespace

Rational BalancedTerm1D::mu() const {
  long s = 0;
  for (const auto& f : forms) s += f.eps;
  return Rational(s, 2);
}

long BalancedTerm1D::nu() const {
  long s = 0;
  for (const auto& f : forms) s += f.eps * f.v;
  return s;
}

bool BalancedTerm1D::balanced() const {
  long s0 = 0, s1 = 0;
  for (const auto& f : forms) {
    s0 += f.eps * f.v0;
    s1 += f.eps * f.v1;
  }
  return s0 == 0 && s1 == 0;
}

std::optional<Rational> BalancedTerm1D::lower() const {
  std::optional<Rational> lo;
  for (const auto& f : forms)
    if (f.v1 > 0) {
      const Rational z = Rational(-f.v0) / f.v1;
      if (!lo || z > *lo) lo = z;
    }
  return lo;
}

std::optional<Rational> BalancedTerm1D::upper() const {
  std::optional<Rational> hi;
  for (const auto& f : forms)
    if (f.v1 < 0) {
      const Rational z = Rational(-f.v0) / f.v1;
      if (!hi || z < *hi) hi = z;
    }
  return hi;
}

BalancedTerm1D binomial_sum_term() {
  BalancedTerm1D t;
  t.forms = {{1, 0, 0, 1}, {0, 1, 0, -1}, {1, -1, 0, -1}};
  return t;
}

BalancedTerm1D sixj_term(const TetLabels& lab) {
  const HalfSums h = half_sums(lab);
  BalancedTerm1D t;
  t.C1 = -1;
  t.sixj_shape = true;
  t.forms.push_back({0, 1, 1, 1});
  for (const auto& s : h.S) t.forms.push_back({to_long(s), -1, 0, -1});
  for (const auto& x : h.T) t.forms.push_back({-to_long(x), 1, 0, -1});
  return t;
}

std::vector<Rational> variational_polynomial(const BalancedTerm1D& t) {
  Poly left{t.C1}, right{Rational(1)};
  for (const auto& f : t.forms) {
    const long e = f.eps * f.v1;
    if (e == 0) continue;
    const Poly lin{Rational(f.v0), Rational(f.v1)};
    if (e > 0) left = poly_mul(left, poly_pow(lin, e));
    else right = poly_mul(right, poly_pow(lin, -e));
  }
  Poly out(std::max(left.size(), right.size()), Rational(0));
  for (std::size_t i = 0; i < left.size(); ++i) out[i] += left[i];
  for (std::size_t i = 0; i < right.size(); ++i) out[i] -= right[i];
  trim(out);
  return out;
}

std::vector<CriticalPoint> critical_points_1d(const BalancedTerm1D& t, unsigned precision) {
  if (!t.balanced()) throw ParseError("balanced-term condition violated");
  const PrecisionGuard guard(precision);
  const Poly p = variational_polynomial(t);
  std::vector<CriticalPoint> out;
  const int deg = static_cast<int>(p.size()) - 1;
  if (deg <= 0) return out;

  auto classify_exact = [&](CriticalPoint& cp) {
    const QuadNum& u = *cp.exact;
    for (const auto& f : t.forms)
      if (f.v1 != 0 && form_value(f, u).is_zero())
        throw DegenerateError("critical point coincides with a zero of a factorial argument");
    if (is_real(u)) {
      const auto lo = t.lower();
      const auto hi = t.upper();
      cp.in_cut = (lo && real_sign(u - QuadNum(*lo)) <= 0) || (hi && real_sign(u - QuadNum(*hi)) >= 0);
    }
    cp.u = u.to_complex();
  };

  if (deg <= 2) {
    if (deg == 1) {
      CriticalPoint cp;
      cp.exact = QuadNum(-p[0] / p[1]);
      classify_exact(cp);
      out.push_back(cp);
      return out;
    }
    const Rational D = p[1] * p[1] - 4 * p[2] * p[0];
    const QuadNum sq = QuadNum::sqrt_of(D);
    for (int s : {1, -1}) {
      CriticalPoint cp;
      cp.exact = (QuadNum(-p[1]) + QuadNum(s) * sq) / QuadNum(2 * p[2]);
      cp.order = D == 0 ? 2 : 1;
      classify_exact(cp);
      out.push_back(cp);
      if (D == 0) break;
    }
    return out;
  }

  // Companion matrix in double precision, then Newton refinement at full precision.
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  const double lead = p.back().convert_to<double>();
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -p[i].convert_to<double>() / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  std::vector<std::complex<double>> seeds(solver.eigenvalues().data(),
                                          solver.eigenvalues().data() + deg);
  std::vector<bool> used(deg, false);
  const Real tol = tolerance(precision);
  for (int i = 0; i < deg; ++i) {
    if (used[i]) continue;
    int mult = 0;
    for (int j = i; j < deg; ++j)
      if (!used[j] && std::abs(seeds[j] - seeds[i]) < 1e-5 * std::max(1.0, std::abs(seeds[i]))) {
        used[j] = true;
        ++mult;
      }
    Poly q = p;
    for (int k = 1; k < mult; ++k) q = derivative(q);
    const Poly dq = derivative(q);
    Complex z(Real(seeds[i].real()), Real(seeds[i].imag()));
    for (int it = 0; it < 200; ++it) {
      const Complex step = horner(q, z) / horner(dq, z);
      z -= step;
      if (abs(step) <= tol * tol * (1 + abs(z))) break;
    }
    CriticalPoint cp;
    cp.u = z;
    cp.order = mult;
    for (const auto& f : t.forms)
      if (f.v1 != 0 && abs(form_value(f, z)) < tol)
        throw DegenerateError("critical point coincides with a zero of a factorial argument");
    cp.in_cut = abs(z.im) < tol && real_in_cut(t, z.re);
    out.push_back(cp);
  }
  return out;
}

Complex v_derivative(const BalancedTerm1D& t, const Complex& u, int j) {
  if (j < 2) throw std::invalid_argument("v_derivative needs j >= 2");
  Complex acc(Real(0));
  const Real fact = to_real(Rational(factorial(j - 2)));
  for (const auto& f : t.forms) {
    if (f.v1 == 0) continue;
    Real c = Real(f.eps) * pow(Real(f.v1), j) * fact;
    if (j % 2) c = -c;
    acc += Complex(c) / pow(form_value(f, u), static_cast<long>(j - 1));
  }
  return acc;
}

Complex w_function(const BalancedTerm1D& t, const Complex& u) {
  Complex acc(Real(1));
  for (const auto& f : t.forms) {
    const Complex a = form_value(f, u);
    const long twice = f.eps + 2 * f.eps * f.v;  // exponent * 2
    acc *= pow(a, twice / 2 - (twice < 0 && twice % 2 ? 1 : 0));
    if (twice % 2) acc *= sqrt(a);
  }
  return acc;
}

Complex lambda_function(const BalancedTerm1D& t, const Complex& u) {
  Complex acc(to_real(t.C0));
  for (const auto& f : t.forms) {
    const Complex a = form_value(f, u);
    if (a.re == 0 && a.im == 0) continue;
    acc *= pow(a, static_cast<long>(f.eps * f.v0));
  }
  return acc;
}

Real c_m(int m) {
  const Real m1(m + 1);
  return 2 * tgamma(Real(m + 2) / m1) * pow(to_real(Rational(factorial(m + 1))), 1 / m1);
}

NilssonExpansion term_asymptotics_1d(const BalancedTerm1D& t, unsigned precision) {
  const auto points = critical_points_1d(t, precision);
  const PrecisionGuard guard(precision);
  NilssonExpansion out;
  const Real tol = tolerance(precision);
  bool any_cut = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& cp = points[i];
    NilssonBranch b;
    b.label = "u" + std::to_string(i);
    b.point = cp;
    b.growth = lambda_function(t, cp.u);
    if (cp.exact) {
      QuadNum g(t.C0);
      for (const auto& f : t.forms) {
        const QuadNum a = form_value(f, *cp.exact);
        if (!a.is_zero()) g *= pow(a, static_cast<long>(f.eps * f.v0));
      }
      b.growth_exact = g;
      if (!cp.exact->is_rational()) out.field = cp.exact->m();
      else if (out.field == 0) out.field = 1;
    }
    const int m = cp.order;
    b.alpha = t.mu() + Rational(t.nu()) + 1 - Rational(1, m + 1);
    const Complex W = w_function(t, cp.u);
    const Complex Vm = v_derivative(t, cp.u, m + 1);
    if (abs(W) < tol) throw DegenerateError("W vanishes at a critical point");
    const Real pre = exp(to_real(t.mu()) * log(two_pi())) * c_m(m);
    const Real inv(Real(1) / Real(m + 1));
    if (cp.in_cut) {
      any_cut = true;
      b.stokes = Complex(pre * abs(W) / pow(abs(Vm), inv));
    } else {
      b.stokes = Complex(pre) * W / pow(-Vm, inv);
    }
    out.branches.push_back(std::move(b));
  }
  if (any_cut) {
    // Among cut points only the smallest growth contributes.
    Real best = -1;
    for (const auto& b : out.branches)
      if (b.point->in_cut && (best < 0 || abs(b.growth) < best)) best = abs(b.growth);
    for (auto& b : out.branches)
      if (b.point->in_cut) b.contributes = abs(abs(b.growth) - best) <= tol * (1 + best);
  }
  out.selection_heuristic = !t.sixj_shape && (points.size() > 1 || any_cut);
  return out;
}

ThetaNormAsym theta_norm_asym(const TetLabels& t, int depth, unsigned precision) {
  if (!admissible(t)) throw ParseError("theta_norm_asym needs an admissible coloring");
  if (!nondegenerate(t)) throw DegenerateError("a vertex theta degenerates (zero interior color)");
  const PrecisionGuard guard(precision);
  ThetaNormAsym out;
  out.growth_square = 1;
  Real pref = pow(two_pi(), 2);
  const auto bern = bernoulli_numbers(depth + 1);
  std::vector<Rational> L(depth + 1, Rational(0));
  for (const auto& v : tet_vertices(t)) {
    const Rational T = (v[0] + v[1] + v[2]) / 2;
    const long Ti = to_long(T);
    Rational ys_prod = 1;
    for (const auto& x : v) {
      const long y = to_long(T - x);
      out.growth_square *= Rational(mp::pow(BigInt(y), static_cast<unsigned>(y)));
      ys_prod *= y;
    }
    out.growth_square /= Rational(mp::pow(BigInt(Ti), static_cast<unsigned>(Ti)));
    pref *= pow(to_real(ys_prod * T), Real(0.25)) / to_real(T);
    for (int l = 1; l <= depth; ++l) {
      Rational c = 0;
      if (l % 2 == 1) {
        const int k = (l + 1) / 2;
        Rational s = -1 / Rational(mp::pow(BigInt(Ti), static_cast<unsigned>(l)));
        for (const auto& x : v)
          s += 1 / Rational(mp::pow(BigInt(to_long(T - x)), static_cast<unsigned>(l)));
        c += bern[2 * k] / Rational(2 * k * (2 * k - 1)) * s;
      }
      // log(1 + 1/(nT)) from (nT + 1)! = (nT + 1) (nT)!
      Rational lg = 1 / (Rational(l) * Rational(mp::pow(BigInt(Ti), static_cast<unsigned>(l))));
      c -= (l % 2 ? lg : -lg);
      L[l] += c / 2;
    }
  }
  out.mu.assign(depth + 1, Rational(0));
  out.mu[0] = 1;
  for (int l = 1; l <= depth; ++l) {
    Rational s = 0;
    for (int k = 1; k <= l; ++k) s += Rational(k) * L[k] * out.mu[l - k];
    out.mu[l] = s / l;
  }
  out.growth_exact = exact_sqrt(out.growth_square);
  out.growth = sqrt(to_real(out.growth_square));
  out.prefactor = pref;
  return out;
}

SixjReport sixj_expansion(const TetLabels& t, unsigned precision) {
  if (!admissible(t)) throw ParseError("6j asymptotics need an admissible integer coloring");
  SixjReport r;
  r.labels = t;
  r.geometry = cayley_menger(t);
  if (r.geometry.degenerate)
    throw DegenerateError("degenerate tetrahedron (class " +
                          std::string(class_name(r.geometry.cls)) + ")");
  r.variational = variational_solve(t);
  r.angles = dihedral_angles(t, precision);
  const PrecisionGuard guard(precision);
  const HalfSums h = half_sums(t);
  const ThetaNormAsym norm = theta_norm_asym(t, 0, precision);

  Complex weighted(Real(0)), plain(Real(0));
  for (int i = 0; i < 6; ++i) {
    weighted += r.angles.theta[i] * Complex(to_real(t.v[i] / 2));
    plain += r.angles.theta[i];
  }
  const Complex I(Real(0), Real(1));
  r.growth_angle_route = {exp(I * weighted), exp(-(I * weighted))};

  const auto cls = r.geometry.cls;
  const Real vol = r.geometry.volume.to_real();
  NilssonExpansion& ex = r.expansion;
  const BigInt mdc = -numerator_of(r.geometry.det) * denominator_of(r.geometry.det);
  ex.field = r.geometry.det == 0 ? BigInt(1) : square_free_part(mdc);
  r.route_gap = 0;
  for (int s = 0; s < 2; ++s) {
    NilssonBranch b;
    b.label = s == 0 ? "+" : "-";
    const QuadNum& v = r.variational.roots[s];
    QuadNum lv(1);
    for (const auto& x : h.T) lv *= pow(v - QuadNum(x), to_long(x));
    for (const auto& x : h.S) lv /= pow(QuadNum(x) - v, to_long(x));
    if (norm.growth_exact) {
      b.growth_exact = QuadNum(*norm.growth_exact) * lv;
      b.growth = b.growth_exact->to_complex();
    } else {
      b.growth = Complex(norm.growth) * lv.to_complex();
    }
    r.growth_product_route[s] = b.growth;
    r.route_gap = std::max(r.route_gap, abs(b.growth - r.growth_angle_route[s]));
    const Real sign = s == 0 ? Real(1) : Real(-1);
    switch (cls) {
      case GeometricClass::euclidean:
        b.alpha = Rational(-3, 2);
        b.stokes = exp(I * Complex(sign) * (plain / Complex(Real(2)) + Complex(real_pi() / 4))) /
                   Complex(sqrt(6 * real_pi() * vol));
        break;
      case GeometricClass::minkowskian:
        b.alpha = Rational(-3, 2);
        b.stokes = Complex(-sign) * exp(I * Complex(sign) * plain / Complex(Real(2))) /
                   Complex(sqrt(6 * real_pi() * vol));
        break;
      case GeometricClass::plane: {
        b.alpha = s == 0 ? Rational(-4, 3) : Rational(-5, 3);
        const Rational& A = r.variational.A;
        Real prod(1);
        for (const auto& x : h.T) prod *= abs(to_real(r.variational.B + 2 * A * x));
        b.stokes = Complex(tgamma(Real(4) / 3) * cbrt(to_real(12 * A)) /
                           (real_pi() * pow(prod, Real(1) / 6)));
        break;
      }
    }
    ex.branches.push_back(std::move(b));
  }
  r.contributing = -1;
  if (cls == GeometricClass::minkowskian) {
    auto inside = [&](int s) {
      const auto& b = ex.branches[s];
      if (b.growth_exact && is_real(*b.growth_exact)) {
        const QuadNum g = *b.growth_exact;
        const QuadNum mag = real_sign(g) < 0 ? -g : g;
        return real_sign(mag - QuadNum(1)) < 0;
      }
      return abs(b.growth) < 1;
    };
    r.contributing = inside(0) ? 0 : 1;
    if (inside(0) == inside(1))
      throw DegenerateError("Minkowskian growth rates are not separated by the unit circle");
    ex.branches[1 - r.contributing].contributes = false;
  }
  return r;
}

Complex predict(const SixjReport& report, long n) {
  Complex acc(Real(0));
  const Real nr(n);
  for (const auto& b : report.expansion.branches) {
    if (!b.contributes) continue;
    Complex h(Real(0));
    Real np(1);
    for (const auto& m : b.mu) {
      h += m.to_complex() * Complex(Real(1) / np);
      np *= nr;
    }
    acc += b.stokes * pow(b.growth, n) * Complex(exp(to_real(b.alpha) * log(nr))) * h;
  }
  return acc;
}

Real ponzano_regge(const SixjReport& report, long n) {
  if (report.geometry.cls != GeometricClass::euclidean)
    throw DegenerateError("the cosine formula applies to Euclidean tetrahedra only");
  Real weighted(0), plain(0);
  for (int i = 0; i < 6; ++i) {
    weighted += report.angles.theta[i].re * to_real(report.labels.v[i] / 2);
    plain += report.angles.theta[i].re;
  }
  const Real nr(n);
  const Real vol = report.geometry.volume.to_real();
  return sqrt(Real(2)) / sqrt(3 * real_pi() * nr * nr * nr * vol) *
         cos(nr * weighted + plain / 2 + real_pi() / 4);
}

std::vector<Surd> sixj_unitary_sequence(const TetColoring& g, long n_max, int jobs) {
  std::vector<Surd> out(std::max(0L, n_max + 1));
  auto work = [&](long n) {
    TetColoring s = g;
    for (auto& x : s) x *= n;
    out[n] = sixj_unitary(s);
  };
  const long workers = std::max(1L, std::min<long>(jobs, n_max + 1));
  if (workers == 1) {
    for (long n = 0; n <= n_max; ++n) work(n);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (long w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (long n = w; n <= n_max; n += workers) work(n);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<Rational> sixj_rational_sequence(const TetColoring& g, long n_max, int jobs) {
  std::vector<Rational> out;
  for (const auto& s : sixj_unitary_sequence(g, n_max, jobs)) {
    if (!s.is_rational()) throw DegenerateError("unitary 6j values are irrational for this coloring");
    out.push_back(s.coef);
  }
  return out;
}

std::vector<PredictionRow> predict_and_compare(const SixjReport& report, long n_lo, long n_hi,
                                               unsigned precision, int jobs) {
  if (n_lo < 0 || n_hi < n_lo) throw ParseError("bad n range");
  const TetColoring base = integer_labels(report.labels);
  std::vector<PredictionRow> rows(n_hi - n_lo + 1);
  auto work = [&](long n) {
    const PrecisionGuard guard(precision);
    TetColoring g = base;
    for (auto& x : g) x *= n;
    PredictionRow& row = rows[n - n_lo];
    row.n = n;
    row.exact = sixj_unitary(g);
    row.value = row.exact.to_real();
    if (n == 0) {
      row.prediction = Complex(Real(0));
    } else {
      row.prediction = predict(report, n);
    }
    row.abs_error = abs(Complex(row.value) - row.prediction);
    row.rel_error = row.value == 0 ? Real(0) : row.abs_error / abs(row.value);
  };
  const long count = n_hi - n_lo + 1;
  const long workers = std::max(1L, std::min<long>(jobs, count));
  if (workers == 1) {
    for (long n = n_lo; n <= n_hi; ++n) work(n);
    return rows;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (long w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (long n = n_lo + w; n <= n_hi; n += workers) work(n);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string prediction_csv(const std::vector<PredictionRow>& rows, unsigned digits) {
  std::ostringstream os;
  os << "n,exact_num,exact_den,radicand,value,prediction_re,prediction_im,abs_err,rel_err\n";
  for (const auto& r : rows) {
    os << r.n << ',' << to_string(numerator_of(r.exact.coef)) << ','
       << to_string(denominator_of(r.exact.coef)) << ',' << to_string(r.exact.radicand) << ','
       << format_real(r.value, digits) << ',' << format_real(r.prediction.re, digits) << ','
       << format_real(r.prediction.im, digits) << ',' << format_real(r.abs_error, digits) << ','
       << format_real(r.rel_error, digits) << '\n';
  }
  return os.str();
}

RadiusEstimate spectral_radius_from(const std::vector<ExactValue>& seq) {
  std::vector<long> ns;
  std::vector<double> logs;
  RadiusEstimate out;
  int last_sign = 0;
  for (std::size_t n = 1; n < seq.size(); ++n) {
    const Surd& v = seq[n].value;
    if (v.coef == 0) continue;
    const int sg = v.coef > 0 ? 1 : -1;
    if (last_sign != 0 && sg != last_sign) ++out.sign_changes;
    last_sign = sg;
    ns.push_back(static_cast<long>(n));
    logs.push_back(static_cast<double>(log(abs(v.to_real()))));
  }
  if (ns.size() < 4) throw NotFoundError("too few nonzero terms for a growth estimate");
  out.oscillating = out.sign_changes * 4 > static_cast<long>(ns.size());

  // Upper envelope over the tail: points that dominate their neighbours.
  const std::size_t start = ns.size() / 5;
  constexpr std::size_t w = 4;
  std::vector<std::size_t> env;
  for (std::size_t i = start; i < ns.size(); ++i) {
    bool peak = true;
    for (std::size_t j = (i >= w ? i - w : 0); j <= std::min(ns.size() - 1, i + w); ++j)
      if (logs[j] - logs[i] > 1e-12 * std::abs(logs[i]) && j != i &&
          std::abs(ns[j] - ns[i]) <= static_cast<long>(w))
        peak = false;
    if (peak) env.push_back(i);
  }
  if (env.size() < 4) {
    env.clear();
    for (std::size_t i = start; i < ns.size(); ++i) env.push_back(i);
  }
  Eigen::MatrixXd X(env.size(), 3);
  Eigen::VectorXd y(env.size());
  for (std::size_t r = 0; r < env.size(); ++r) {
    const double n = static_cast<double>(ns[env[r]]);
    X(r, 0) = n;
    X(r, 1) = std::log(n);
    X(r, 2) = 1.0;
    y(r) = logs[env[r]];
  }
  const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd res = X * beta - y;
  out.points = static_cast<long>(env.size());
  out.estimate = exp(Real(beta(0)));
  out.residual_rms = Real(std::sqrt(res.squaredNorm() / static_cast<double>(env.size())));
  out.naive = exp(Real(logs.back() / static_cast<double>(ns.back())));
  const std::size_t i1 = env[env.size() - 2], i2 = env.back();
  out.richardson = exp(Real((logs[i2] - logs[i1]) / static_cast<double>(ns[i2] - ns[i1])));
  return out;
}

RadiusEstimate spectral_radius_estimate(const RibbonGraph& g, long n_max, Norm tag, int jobs) {
  Coloring twos(std::vector<long>(g.num_strands(), 2));
  if (!admissible(g, twos)) throw ParseError("the all-2 coloring is not admissible on this graph");
  return spectral_radius_from(scaled_sequence(g, twos, n_max, tag, static_cast<unsigned>(jobs)));
}

}  // namespace spinnet
