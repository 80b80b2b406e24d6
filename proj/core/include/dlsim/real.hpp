#pragma once

// Extended-precision real numbers backed by MPFR.
//
// Every Real carries its own mantissa size. Newly created values take the
// calling thread's working precision, which is scoped with PrecisionGuard.
// Compound assignment keeps the precision of the left operand; all
// rounding is to nearest.

#include <mpfr.h>

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace dlsim {

inline constexpr int kDefaultPrecisionBits = 192;

/// Working precision (mantissa bits) for new Real values on this thread.
int working_precision();

/// Sets the working precision for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(int bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  int saved_;
};

class Real {
 public:
  Real();
  Real(long value);  // NOLINT(google-explicit-constructor)
  Real(int value) : Real(static_cast<long>(value)) {}  // NOLINT
  Real(double value);  // NOLINT
  explicit Real(const mpz_class& value);
  explicit Real(const mpq_class& value);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a decimal or scientific literal at the working precision.
  static Real parse(std::string_view text);

  int precision() const { return static_cast<int>(mpfr_get_prec(value_)); }
  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant decimal digits.
  std::string to_string(int digits) const;
  /// Fixed notation with `decimals` digits after the point.
  std::string to_fixed(int decimals) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real operator-() const;

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqr(const Real& x);
Real sqrt(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
/// x * 2^e, exact.
Real ldexp(const Real& x, long e);
Real pi();
/// Copy of x rounded to the working precision.
Real to_working(const Real& x);
/// sin(x)^2, the building block for 1 - cos(2x) = 2 sin^2(x).
Real sin_squared(const Real& x);

}  // namespace dlsim
