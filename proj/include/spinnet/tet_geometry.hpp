#pragma once

#include <array>
#include <string>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "spinnet/complex.hpp"
#include "spinnet/exact_eval.hpp"
#include "spinnet/numbers.hpp"
#include "spinnet/quadnum.hpp"

namespace spinnet {

// Tetrahedron labels (a, b, c, d, e, f) = (d12, d23, d14, d34, d13, d24).
template <class Scalar>
struct BasicTetLabels {
  std::array<Scalar, 6> v;

  const Scalar& a() const { return v[0]; }
  const Scalar& b() const { return v[1]; }
  const Scalar& c() const { return v[2]; }
  const Scalar& d() const { return v[3]; }
  const Scalar& e() const { return v[4]; }
  const Scalar& f() const { return v[5]; }

  // Distance between dual vertices i, j in 1..4.
  const Scalar& dist(int i, int j) const {
    if (i > j) std::swap(i, j);
    static constexpr int index[5][5] = {{-1, -1, -1, -1, -1},
                                        {-1, -1, 0, 4, 2},
                                        {-1, -1, -1, 1, 5},
                                        {-1, -1, -1, -1, 3},
                                        {-1, -1, -1, -1, -1}};
    return v[index[i][j]];
  }
};

using TetLabels = BasicTetLabels<Rational>;

TetLabels to_labels(const TetColoring& gamma);
TetLabels parse_labels(std::string_view text);  // "a,b,c,d,e,f"
std::string to_string(const TetLabels& t);

// Strict triangle inequalities on the four faces of the dual tetrahedron.
bool nondegenerate(const TetLabels& t);
// Integer labels with even vertex sums and triangle inequalities.
bool admissible(const TetLabels& t);

template <class Scalar>
using Matrix5 = Eigen::Matrix<Scalar, 5, 5>;

// Border row -1, border column +1, C_ij = 1 - d_ij^2 / 2.
template <class Scalar>
Matrix5<Scalar> cayley_menger_matrix(const BasicTetLabels<Scalar>& t) {
  Matrix5<Scalar> C;
  C(0, 0) = Scalar(0);
  for (int i = 1; i < 5; ++i) {
    C(0, i) = Scalar(-1);
    C(i, 0) = Scalar(1);
    for (int j = 1; j < 5; ++j) {
      if (i == j) {
        C(i, j) = Scalar(1);
      } else {
        const Scalar& d = t.dist(i, j);
        C(i, j) = Scalar(1) - d * d / Scalar(2);
      }
    }
  }
  return C;
}

// Gaussian elimination with largest-magnitude pivots; exact for Rational.
template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = m;
  const Eigen::Index n = a.rows();
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (abs(a(r, col)) > abs(a(piv, col))) piv = r;
    if (a(piv, col) == Scalar(0)) return Scalar(0);
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Scalar factor = a(r, col) / a(col, col);
      if (factor == Scalar(0)) continue;
      for (Eigen::Index k = col; k < n; ++k) a(r, k) -= factor * a(col, k);
    }
  }
  return det;
}

template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> delete_row_col(
    const Eigen::MatrixBase<Derived>& m, Eigen::Index row, Eigen::Index col) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n - 1, m.cols() - 1);
  for (Eigen::Index i = 0, oi = 0; i < n; ++i) {
    if (i == row) continue;
    for (Eigen::Index j = 0, oj = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

// Entry (i, j) is (-1)^{i+j} times the minor deleting row i and column j.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> cofactor_matrix(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Scalar minor = determinant(delete_row_col(m, i, j));
      out(i, j) = (i + j) % 2 ? Scalar(-minor) : minor;
    }
  return out;
}

enum class GeometricClass { euclidean, plane, minkowskian };
std::string_view class_name(GeometricClass c);

struct CayleyMengerData {
  Matrix5<Rational> C;
  Rational det;
  GeometricClass cls = GeometricClass::euclidean;
  Surd volume;  // sqrt(|det|) / 6
  bool degenerate = false;
};

CayleyMengerData cayley_menger(const TetLabels& t);

struct DihedralAngles {
  // theta for edges a..f; edge label x = d_ij carries the angle at the opposite pair kl.
  std::array<Complex, 6> theta;
  std::array<Complex, 6> exp_i_theta;
};

DihedralAngles dihedral_angles(const TetLabels& t, unsigned precision = default_precision_digits);

struct HalfSums {
  std::array<Rational, 3> S;
  std::array<Rational, 4> T;
  Rational S4 = 0;
};

HalfSums half_sums(const TetLabels& t);

struct VariationalData {
  Rational A, B, Cp, D;
  std::array<QuadNum, 2> roots;  // v+ = (-B + sqrt D)/2A, v- = (-B - sqrt D)/2A
  std::array<bool, 2> in_cut{false, false};
  Rational cut_lo, cut_hi;  // (max{0, T_j}, min S_i)
  bool double_root = false;
};

// Closed forms for the variational coefficients.
Rational variational_A(const TetLabels& t);
Rational variational_B(const TetLabels& t);

// A, B, C', D only; defined for degenerate labels too.
VariationalData variational_coefficients(const TetLabels& t);
VariationalData variational_solve(const TetLabels& t);

// E(u) = -prod(S_i - u) + prod(u - T_j), with S_4 = 0.
QuadNum variational_E(const HalfSums& h, const QuadNum& u);

}  // namespace spinnet
