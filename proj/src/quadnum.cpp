#include "spinnet/quadnum.hpp"

#include <stdexcept>

namespace spinnet {

QuadNum::QuadNum(Rational p) : p_(std::move(p)) {}

QuadNum::QuadNum(Rational p, Rational q, const BigInt& m) : p_(std::move(p)), q_(std::move(q)) {
  if (m == 0 || q_ == 0) {
    q_ = 0;
    return;
  }
  const auto split = square_free_split(abs(m));
  q_ *= Rational(split.root);
  m_ = m < 0 ? BigInt(-split.free) : split.free;
  normalize();
}

QuadNum QuadNum::sqrt_of(const Rational& x) {
  if (x == 0) return {};
  // sqrt(n/d) = sqrt(n d) / d
  const BigInt d = denominator_of(x);
  return QuadNum(Rational(0), Rational(BigInt(1), d), numerator_of(x) * d);
}

void QuadNum::normalize() {
  if (m_ == 1) {
    p_ += q_;
    q_ = 0;
  }
  if (q_ == 0) m_ = 0;
}

void QuadNum::check_field(const QuadNum& o) const {
  if (q_ != 0 && o.q_ != 0 && m_ != o.m_)
    throw std::domain_error("QuadNum: operands lie in different quadratic fields");
}

QuadNum QuadNum::conj() const {
  QuadNum r = *this;
  r.q_ = -r.q_;
  return r;
}

Rational QuadNum::norm() const { return p_ * p_ - Rational(m_) * q_ * q_; }

QuadNum& QuadNum::operator+=(const QuadNum& o) {
  check_field(o);
  if (q_ == 0) m_ = o.m_;
  p_ += o.p_;
  q_ += o.q_;
  normalize();
  return *this;
}

QuadNum& QuadNum::operator-=(const QuadNum& o) { return *this += -o; }

QuadNum& QuadNum::operator*=(const QuadNum& o) {
  check_field(o);
  const BigInt m = q_ != 0 ? m_ : o.m_;
  Rational p = p_ * o.p_ + Rational(m) * q_ * o.q_;
  Rational q = p_ * o.q_ + q_ * o.p_;
  p_ = std::move(p);
  q_ = std::move(q);
  m_ = m;
  normalize();
  return *this;
}

QuadNum& QuadNum::operator/=(const QuadNum& o) {
  check_field(o);
  const Rational n = o.norm();
  if (n == 0) throw std::domain_error("QuadNum: division by zero");
  QuadNum inv = o.conj();
  inv.p_ /= n;
  inv.q_ /= n;
  return *this *= inv;
}

QuadNum QuadNum::operator-() const {
  QuadNum r = *this;
  r.p_ = -r.p_;
  r.q_ = -r.q_;
  return r;
}

Complex QuadNum::to_complex() const {
  Complex r(to_real(p_));
  if (q_ == 0) return r;
  const Real s = sqrt(to_real(Rational(abs(m_))));
  const Real qs = to_real(q_) * s;
  if (m_ > 0) {
    r.re += qs;
  } else {
    r.im = qs;
  }
  return r;
}

std::string QuadNum::str() const {
  if (q_ == 0) return to_string(p_);
  const BigInt den = lcm(denominator_of(p_), denominator_of(q_));
  const BigInt P = numerator_of(p_ * Rational(den));
  const BigInt Q = numerator_of(q_ * Rational(den));
  std::string s = P == 0 ? std::string() : P.str();
  if (P == 0) {
    s += Q.str();
  } else {
    s += Q < 0 ? "-" + BigInt(-Q).str() : "+" + Q.str();
  }
  s += "*sqrt(" + m_.str() + ")";
  if (den == 1) return s;
  return "(" + s + ")/" + den.str();
}

QuadNum pow(QuadNum x, long k) {
  if (k < 0) return QuadNum(1) / pow(x, -k);
  QuadNum r(1);
  while (k > 0) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

bool is_real(const QuadNum& x) { return x.q() == 0 || x.m() > 0; }

int real_sign(const QuadNum& x) {
  if (!is_real(x)) throw std::domain_error("real_sign of a non-real quadratic number");
  const int sp = x.p() > 0 ? 1 : (x.p() < 0 ? -1 : 0);
  const int sq = x.q() > 0 ? 1 : (x.q() < 0 ? -1 : 0);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  const Rational pp = x.p() * x.p();
  const Rational qq = x.q() * x.q() * Rational(x.m());
  if (pp == qq) return 0;
  return pp > qq ? sp : sq;
}

Surd Surd::make(const Rational& coef, const BigInt& radicand) {
  if (radicand < 0) throw std::domain_error("Surd: negative radicand");
  if (coef == 0 || radicand == 0) return Surd{Rational(0), BigInt(1)};
  const auto split = square_free_split(radicand);
  return Surd{coef * Rational(split.root), split.free};
}

Surd Surd::sqrt_of(const Rational& x) {
  if (x < 0) throw std::domain_error("Surd: negative square");
  const BigInt d = denominator_of(x);
  return make(Rational(BigInt(1), d), numerator_of(x) * d);
}

Real Surd::to_real() const { return spinnet::to_real(coef) * sqrt(spinnet::to_real(radicand)); }

std::string Surd::str() const {
  if (is_rational()) return to_string(coef);
  return to_string(coef) + "*sqrt(" + radicand.str() + ")";
}

}  // namespace spinnet
