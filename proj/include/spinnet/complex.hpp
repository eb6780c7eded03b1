#pragma once

#include <cmath>
#include <ostream>

#include "spinnet/numbers.hpp"

namespace spinnet {

// Minimal complex arithmetic over an arbitrary real scalar (double or Real).
template <class T>
struct BasicComplex {
  T re{0};
  T im{0};

  BasicComplex() = default;
  BasicComplex(T r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  BasicComplex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  BasicComplex& operator+=(const BasicComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  BasicComplex& operator-=(const BasicComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  BasicComplex& operator*=(const BasicComplex& o) {
    T r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  BasicComplex& operator/=(const BasicComplex& o) {
    T d = o.re * o.re + o.im * o.im;
    T r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
  BasicComplex operator-() const { return {-re, -im}; }

  friend BasicComplex operator+(BasicComplex a, const BasicComplex& b) { return a += b; }
  friend BasicComplex operator-(BasicComplex a, const BasicComplex& b) { return a -= b; }
  friend BasicComplex operator*(BasicComplex a, const BasicComplex& b) { return a *= b; }
  friend BasicComplex operator/(BasicComplex a, const BasicComplex& b) { return a /= b; }
  friend bool operator==(const BasicComplex& a, const BasicComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend std::ostream& operator<<(std::ostream& os, const BasicComplex& z) {
    return os << '(' << z.re << ',' << z.im << ')';
  }
};

using Complex = BasicComplex<Real>;

template <class T>
BasicComplex<T> conj(const BasicComplex<T>& z) {
  return {z.re, -z.im};
}

template <class T>
T abs(const BasicComplex<T>& z) {
  using std::hypot;
  return hypot(z.re, z.im);
}

template <class T>
T arg(const BasicComplex<T>& z) {
  using std::atan2;
  return atan2(z.im, z.re);
}

template <class T>
BasicComplex<T> exp(const BasicComplex<T>& z) {
  using std::cos;
  using std::exp;
  using std::sin;
  T m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

// Principal branch.
template <class T>
BasicComplex<T> log(const BasicComplex<T>& z) {
  using std::log;
  return {log(abs(z)), arg(z)};
}

// Principal branch; the result has nonnegative real part.
template <class T>
BasicComplex<T> sqrt(const BasicComplex<T>& z) {
  using std::sqrt;
  if (z.im == 0) {
    if (z.re >= 0) return {sqrt(z.re), T(0)};
    return {T(0), sqrt(-z.re)};
  }
  T r = abs(z);
  T x = sqrt((r + z.re) / 2);
  T y = sqrt((r - z.re) / 2);
  if (z.im < 0) y = -y;
  return {x, y};
}

template <class T>
BasicComplex<T> pow(const BasicComplex<T>& z, const T& p) {
  if (z.re == 0 && z.im == 0) return z;
  return exp(log(z) * BasicComplex<T>(p));
}

template <class T>
BasicComplex<T> pow(BasicComplex<T> z, long k) {
  if (k < 0) return BasicComplex<T>(T(1)) / pow(z, -k);
  BasicComplex<T> r(T(1));
  while (k > 0) {
    if (k & 1) r *= z;
    z *= z;
    k >>= 1;
  }
  return r;
}

}  // namespace spinnet
