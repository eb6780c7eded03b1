#pragma once

#include <string>

#include "spinnet/complex.hpp"
#include "spinnet/numbers.hpp"

namespace spinnet {

// p + q*sqrt(m) with p, q rational and m a square-free integer. Rational values
// are normalized to q = 0, m = 0, so they combine with any field.
class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(Rational p);  // NOLINT(google-explicit-constructor)
  QuadNum(long p) : QuadNum(Rational(p)) {}  // NOLINT(google-explicit-constructor)
  // m need not be square-free; square factors are moved into q.
  QuadNum(Rational p, Rational q, const BigInt& m);

  // sqrt(x) for rational x, exact.
  static QuadNum sqrt_of(const Rational& x);

  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }
  const BigInt& m() const { return m_; }
  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }

  QuadNum conj() const;
  Rational norm() const;  // p^2 - m q^2
  Rational trace() const { return 2 * p_; }

  QuadNum& operator+=(const QuadNum& o);
  QuadNum& operator-=(const QuadNum& o);
  QuadNum& operator*=(const QuadNum& o);
  QuadNum& operator/=(const QuadNum& o);
  QuadNum operator-() const;

  friend QuadNum operator+(QuadNum a, const QuadNum& b) { return a += b; }
  friend QuadNum operator-(QuadNum a, const QuadNum& b) { return a -= b; }
  friend QuadNum operator*(QuadNum a, const QuadNum& b) { return a *= b; }
  friend QuadNum operator/(QuadNum a, const QuadNum& b) { return a /= b; }
  friend bool operator==(const QuadNum& a, const QuadNum& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.m_ == b.m_;
  }

  Complex to_complex() const;
  // "(P+Q*sqrt(m))/den" with a common positive denominator, or "p" when rational.
  std::string str() const;

 private:
  void check_field(const QuadNum& o) const;
  void normalize();

  Rational p_{0};
  Rational q_{0};
  BigInt m_{0};
};

QuadNum pow(QuadNum x, long k);

// Sign of a real element (m > 0 or rational); exact.
int real_sign(const QuadNum& x);
bool is_real(const QuadNum& x);

// coef * sqrt(radicand), radicand a square-free positive integer (1 when rational).
struct Surd {
  Rational coef{0};
  BigInt radicand{1};

  static Surd sqrt_of(const Rational& x);  // x >= 0
  static Surd make(const Rational& coef, const BigInt& radicand);
  bool is_rational() const { return radicand == 1 || coef == 0; }
  Real to_real() const;
  Rational square() const { return coef * coef * Rational(radicand); }
  std::string str() const;
  friend bool operator==(const Surd& a, const Surd& b) {
    return a.coef == b.coef && a.radicand == b.radicand;
  }
};

}  // namespace spinnet
