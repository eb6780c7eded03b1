#include "spinnet/tet_geometry.hpp"

#include <sstream>

#include "spinnet/errors.hpp"

namespace spinnet {

namespace {

// Ascending coefficients of prod(x - r_i) * sign.
std::vector<Rational> linear_product(const std::vector<Rational>& roots, int sign) {
  std::vector<Rational> poly{Rational(sign)};
  for (const auto& r : roots) {
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= r * poly[i];
    }
    poly = std::move(next);
  }
  return poly;
}

bool strict_triangle(const Rational& x, const Rational& y, const Rational& z) {
  return x < y + z && y < x + z && z < x + y;
}

}  // namespace

TetLabels to_labels(const TetColoring& gamma) {
  TetLabels t;
  for (int i = 0; i < 6; ++i) t.v[i] = Rational(gamma[i]);
  return t;
}

TetLabels parse_labels(std::string_view text) {
  std::string s(text);
  for (char& ch : s)
    if (ch == ',' || ch == '(' || ch == ')') ch = ' ';
  std::istringstream is(s);
  std::vector<std::string> tok;
  for (std::string x; is >> x;) tok.push_back(x);
  if (tok.size() != 6) throw ParseError("expected six labels a,b,c,d,e,f");
  TetLabels t;
  for (int i = 0; i < 6; ++i) t.v[i] = parse_rational(tok[i]);
  return t;
}

std::string to_string(const TetLabels& t) {
  std::string s;
  for (int i = 0; i < 6; ++i) s += (i ? "," : "") + to_string(t.v[i]);
  return s;
}

bool nondegenerate(const TetLabels& t) {
  return strict_triangle(t.a(), t.b(), t.e()) && strict_triangle(t.a(), t.c(), t.f()) &&
         strict_triangle(t.c(), t.d(), t.e()) && strict_triangle(t.b(), t.d(), t.f());
}

bool admissible(const TetLabels& t) {
  TetColoring g{};
  for (int i = 0; i < 6; ++i) {
    if (!is_integer(t.v[i])) return false;
    g[i] = numerator_of(t.v[i]).convert_to<long>();
  }
  return admissible_triple(g[0], g[1], g[4]) && admissible_triple(g[0], g[2], g[5]) &&
         admissible_triple(g[2], g[3], g[4]) && admissible_triple(g[1], g[3], g[5]);
}

std::string_view class_name(GeometricClass c) {
  switch (c) {
    case GeometricClass::euclidean: return "Euclidean";
    case GeometricClass::plane: return "Plane";
    case GeometricClass::minkowskian: return "Minkowskian";
  }
  return "?";
}

CayleyMengerData cayley_menger(const TetLabels& t) {
  for (const auto& x : t.v)
    if (x <= 0) throw ParseError("Cayley-Menger data needs positive labels");
  CayleyMengerData data;
  data.C = cayley_menger_matrix(t);
  data.det = determinant(data.C);
  data.cls = data.det > 0   ? GeometricClass::euclidean
             : data.det == 0 ? GeometricClass::plane
                             : GeometricClass::minkowskian;
  data.volume = Surd::sqrt_of(abs(data.det) / 36);
  data.degenerate = !nondegenerate(t);
  return data;
}

DihedralAngles dihedral_angles(const TetLabels& t, unsigned precision) {
  if (!nondegenerate(t))
    throw DegenerateError("degenerate tetrahedron: dihedral angles are undefined");
  const PrecisionGuard guard(precision);
  const auto C = cayley_menger_matrix(t);
  const Rational det = determinant(C);
  const auto ad = cofactor_matrix(C);
  // label index -> (i, j) with label = d_ij
  static constexpr int ends[6][2] = {{1, 2}, {2, 3}, {1, 4}, {3, 4}, {1, 3}, {2, 4}};
  DihedralAngles out;
  for (int x = 0; x < 6; ++x) {
    int kl[2], n = 0;
    for (int v = 1; v <= 4; ++v)
      if (v != ends[x][0] && v != ends[x][1]) kl[n++] = v;
    const int k = kl[0], l = kl[1];
    const auto minor = delete_row_col(delete_row_col(C, l, l), k, k);
    const Rational det_kkll = determinant(minor);
    const Complex num =
        Complex(to_real(ad(k, l))) + sqrt(Complex(to_real(Rational(-det * det_kkll))));
    const Complex den = sqrt(Complex(to_real(Rational(ad(k, k) * ad(l, l)))));
    const Complex z = num / den;
    out.exp_i_theta[x] = z;
    const Complex lg = log(z);
    out.theta[x] = Complex(lg.im, -lg.re);
  }
  return out;
}

HalfSums half_sums(const TetLabels& t) {
  HalfSums h;
  h.S = {(t.a() + t.d() + t.b() + t.c()) / 2, (t.a() + t.d() + t.e() + t.f()) / 2,
         (t.b() + t.c() + t.e() + t.f()) / 2};
  h.T = {(t.a() + t.b() + t.e()) / 2, (t.a() + t.c() + t.f()) / 2, (t.c() + t.d() + t.e()) / 2,
         (t.b() + t.d() + t.f()) / 2};
  return h;
}

Rational variational_A(const TetLabels& t) {
  return (t.a() * t.d() + t.b() * t.c() + t.e() * t.f()) / 2;
}

Rational variational_B(const TetLabels& t) {
  const Rational &a = t.a(), &b = t.b(), &c = t.c(), &d = t.d(), &e = t.e(), &f = t.f();
  const Rational sum = b * c * (b + c) + a * d * (a + d) + e * f * (e + f) + a * b * c +
                       a * b * d + a * c * d + b * c * d + a * b * e + b * c * e + a * d * e +
                       c * d * e + a * c * f + b * c * f + a * d * f + b * d * f + a * e * f +
                       b * e * f + c * e * f + d * e * f;
  return -sum / 4;
}

QuadNum variational_E(const HalfSums& h, const QuadNum& u) {
  QuadNum left = h.S4 - u;
  for (const auto& s : h.S) left *= QuadNum(s) - u;
  QuadNum right(1);
  for (const auto& t : h.T) right *= u - QuadNum(t);
  return right - left;
}

VariationalData variational_coefficients(const TetLabels& t) {
  const HalfSums h = half_sums(t);
  // -prod_{i<=4}(S_i - u) = -prod(u - S_i) since there are four factors
  auto left = linear_product({h.S[0], h.S[1], h.S[2], h.S4}, -1);
  auto right = linear_product({h.T[0], h.T[1], h.T[2], h.T[3]}, 1);
  std::vector<Rational> E(5);
  for (int i = 0; i < 5; ++i) E[i] = left[i] + right[i];
  if (E[4] != 0 || E[3] != 0) throw std::logic_error("variational equation is not quadratic");
  VariationalData v;
  v.A = E[2];
  v.B = E[1];
  v.Cp = E[0];
  v.D = v.B * v.B - 4 * v.A * v.Cp;
  return v;
}

VariationalData variational_solve(const TetLabels& t) {
  if (!nondegenerate(t)) throw DegenerateError("degenerate tetrahedron (a face is flat)");
  const HalfSums h = half_sums(t);
  VariationalData v = variational_coefficients(t);
  const QuadNum sqrtD = QuadNum::sqrt_of(v.D);
  v.roots[0] = (QuadNum(-v.B) + sqrtD) / QuadNum(2 * v.A);
  v.roots[1] = (QuadNum(-v.B) - sqrtD) / QuadNum(2 * v.A);
  v.double_root = v.D == 0;
  v.cut_lo = 0;
  for (const auto& x : h.T) v.cut_lo = std::max(v.cut_lo, x);
  v.cut_hi = std::min({h.S[0], h.S[1], h.S[2]});
  for (int i = 0; i < 2; ++i) {
    const QuadNum& r = v.roots[i];
    if (!is_real(r)) continue;
    v.in_cut[i] = real_sign(r - QuadNum(v.cut_lo)) <= 0 || real_sign(r - QuadNum(v.cut_hi)) >= 0;
  }
  for (const auto& r : v.roots)
    for (const auto& x : {h.S[0], h.S[1], h.S[2], h.T[0], h.T[1], h.T[2], h.T[3]})
      if (r == QuadNum(x)) throw DegenerateError("variational root coincides with a half-sum");
  return v;
}

}  // namespace spinnet
