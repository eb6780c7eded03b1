#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace spinnet {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

inline constexpr unsigned default_precision_digits = 64;

// Sets the working precision (decimal digits) of Real until destruction.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

BigInt factorial(unsigned long n);
// Generalized binomial coefficient; n may be negative.
BigInt binomial(const BigInt& n, unsigned long k);
// (sum parts)! / prod(parts!)
BigInt multinomial(std::span<const long> parts);

bool is_integer(const Rational& x);
BigInt numerator_of(const Rational& x);
BigInt denominator_of(const Rational& x);

// Accepts "p" or "p/q" with an optional sign.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);
std::string to_string(const BigInt& x);

// n = root^2 * free with free square-free, for n > 0. Trial division is capped
// at 2*10^6, beyond which `free` may retain a square factor of two huge primes.
struct SquareFreeSplit {
  BigInt root;
  BigInt free;
};
SquareFreeSplit square_free_split(const BigInt& n);
BigInt square_free_part(const BigInt& n);  // sign preserved, 0 -> 0

std::optional<BigInt> exact_isqrt(const BigInt& n);
std::optional<Rational> exact_sqrt(const Rational& x);

Real to_real(const Rational& x);
Real to_real(const BigInt& x);
Real real_pi();
std::string format_real(const Real& x, unsigned digits);

}  // namespace spinnet
