#include "dlsim/real.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlsim {
namespace {

thread_local int t_precision = kDefaultPrecisionBits;

std::string format(const char* spec, int digits, mpfr_srcptr value) {
  int size = mpfr_snprintf(nullptr, 0, spec, digits, value);
  std::vector<char> buffer(static_cast<std::size_t>(size) + 1);
  mpfr_snprintf(buffer.data(), buffer.size(), spec, digits, value);
  return std::string(buffer.data(), static_cast<std::size_t>(size));
}

}  // namespace

int working_precision() { return t_precision; }

PrecisionGuard::PrecisionGuard(int bits) : saved_(t_precision) {
  if (bits < MPFR_PREC_MIN || bits > 1 << 20) {
    throw std::invalid_argument("precision out of range: " + std::to_string(bits));
  }
  t_precision = bits;
}

PrecisionGuard::~PrecisionGuard() { t_precision = saved_; }

Real::Real() {
  mpfr_init2(value_, t_precision);
  mpfr_set_zero(value_, 1);
}

Real::Real(long value) {
  mpfr_init2(value_, t_precision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(double value) {
  mpfr_init2(value_, t_precision);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const mpz_class& value) {
  mpfr_init2(value_, t_precision);
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const mpq_class& value) {
  mpfr_init2(value_, t_precision);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::parse(std::string_view text) {
  Real out;
  std::string s(text);
  char* end = nullptr;
  if (mpfr_strtofr(out.value_, s.c_str(), &end, 10, MPFR_RNDN) != 0 && end == s.c_str()) {
    throw std::invalid_argument("not a real number: " + s);
  }
  if (end == s.c_str() || *end != '\0') {
    throw std::invalid_argument("not a real number: " + s);
  }
  return out;
}

std::string Real::to_string(int digits) const {
  return format("%.*Re", digits - 1, value_);
}

std::string Real::to_fixed(int decimals) const {
  return format("%.*Rf", decimals, value_);
}

Real& Real::operator+=(const Real& rhs) {
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

#define DLSIM_UNARY(name, fn)            \
  Real name(const Real& x) {             \
    Real out;                            \
    fn(out.get(), x.get(), MPFR_RNDN);   \
    return out;                          \
  }

DLSIM_UNARY(abs, mpfr_abs)
DLSIM_UNARY(sqr, mpfr_sqr)
DLSIM_UNARY(sqrt, mpfr_sqrt)
DLSIM_UNARY(sin, mpfr_sin)
DLSIM_UNARY(cos, mpfr_cos)
DLSIM_UNARY(atan, mpfr_atan)
DLSIM_UNARY(exp, mpfr_exp)
DLSIM_UNARY(log, mpfr_log)

#undef DLSIM_UNARY

Real ldexp(const Real& x, long e) {
  Real out;
  mpfr_mul_2si(out.get(), x.get(), e, MPFR_RNDN);
  return out;
}

Real pi() {
  Real out;
  mpfr_const_pi(out.get(), MPFR_RNDN);
  return out;
}

Real to_working(const Real& x) {
  Real out;
  mpfr_set(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Real sin_squared(const Real& x) {
  Real out;
  mpfr_sin(out.get(), x.get(), MPFR_RNDN);
  mpfr_sqr(out.get(), out.get(), MPFR_RNDN);
  return out;
}

}  // namespace dlsim
