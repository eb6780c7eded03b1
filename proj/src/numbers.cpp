#include "spinnet/numbers.hpp"

#include <boost/math/constants/constants.hpp>

#include <cctype>
#include <sstream>

#include "spinnet/errors.hpp"

namespace spinnet {

PrecisionGuard::PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
  Real::default_precision(digits);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.backend().data(), n);
  return r;
}

BigInt binomial(const BigInt& n, unsigned long k) {
  BigInt r;
  mpz_bin_ui(r.backend().data(), n.backend().data(), k);
  return r;
}

BigInt multinomial(std::span<const long> parts) {
  BigInt r = 1;
  long total = 0;
  for (long p : parts) {
    total += p;
    r *= binomial(BigInt(total), static_cast<unsigned long>(p));
  }
  return r;
}

bool is_integer(const Rational& x) { return denominator_of(x) == 1; }

BigInt numerator_of(const Rational& x) { return mp::numerator(x); }

BigInt denominator_of(const Rational& x) { return mp::denominator(x); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  s = s.substr(i);
  if (!s.empty() && s[0] == '+') s = s.substr(1);
  auto valid_int = [](std::string_view t, bool allow_sign) {
    std::size_t j = 0;
    if (allow_sign && !t.empty() && t[0] == '-') j = 1;
    if (j >= t.size()) return false;
    for (; j < t.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(t[j]))) return false;
    return true;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(s, true)) throw ParseError("not a rational number: '" + std::string(text) + "'");
    return Rational(BigInt(s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  BigInt d(den);
  if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  return Rational(BigInt(num), d);
}

std::string to_string(const Rational& x) { return x.str(); }

std::string to_string(const BigInt& x) { return x.str(); }

SquareFreeSplit square_free_split(const BigInt& n) {
  if (n <= 0) throw std::domain_error("square_free_split needs a positive integer");
  BigInt rest = n;
  BigInt root = 1;
  BigInt free = 1;
  BigInt cube_root;
  mpz_root(cube_root.backend().data(), n.backend().data(), 3);
  constexpr unsigned long cap = 2000000;
  const unsigned long limit =
      cube_root < cap ? static_cast<unsigned long>(cube_root) + 1 : cap;
  auto strip = [&](unsigned long p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.backend().data(), p)) {
      mpz_divexact_ui(rest.backend().data(), rest.backend().data(), p);
      ++e;
    }
    for (unsigned k = 0; k < e / 2; ++k) root *= p;
    if (e % 2) free *= p;
  };
  strip(2);
  for (unsigned long p = 3; p <= limit && rest > 1; p += 2) {
    if (BigInt(p) * p > rest) break;
    strip(p);
  }
  if (rest > 1) {
    if (auto r = exact_isqrt(rest)) {
      root *= *r;
    } else {
      free *= rest;
    }
  }
  return {root, free};
}

BigInt square_free_part(const BigInt& n) {
  if (n == 0) return 0;
  const BigInt f = square_free_split(abs(n)).free;
  return n < 0 ? BigInt(-f) : f;
}

std::optional<BigInt> exact_isqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  if (!mpz_perfect_square_p(n.backend().data())) return std::nullopt;
  return sqrt(n);
}

std::optional<Rational> exact_sqrt(const Rational& x) {
  auto n = exact_isqrt(numerator_of(x));
  auto d = exact_isqrt(denominator_of(x));
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

Real to_real(const Rational& x) { return static_cast<Real>(x); }

Real to_real(const BigInt& x) { return static_cast<Real>(x); }

Real real_pi() { return boost::math::constants::pi<Real>(); }

std::string format_real(const Real& x, unsigned digits) {
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

}  // namespace spinnet
