#include "dlsim/numtheory.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <stdexcept>

#include "dlsim/errors.hpp"

namespace dlsim {
namespace {

void require_positive_modulus(const Integer& n) {
  if (sgn(n) <= 0) throw InvalidModulus("modulus must be positive, got " + n.get_str());
}

// Brent's variant of Pollard rho; n must be odd and composite.
Integer pollard_rho(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, ys, q = 1, g = 1;
    const unsigned long batch = 128;
    unsigned long r = 1;
    auto step = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(batch, r - k); ++i) {
          step(y);
          Integer diff = abs(x - y);
          q = (q * diff) % n;
        }
        g = gcd(q, n);
        k += batch;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        step(ys);
        g = gcd(Integer(abs(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Integer f = pollard_rho(n);
  factor_into(f, out);
  factor_into(Integer(n / f), out);
}

}  // namespace

Integer reduce_mod(const Integer& u, const Integer& n) {
  require_positive_modulus(n);
  Integer v;
  mpz_fdiv_r(v.get_mpz_t(), u.get_mpz_t(), n.get_mpz_t());
  return v;
}

Integer reduce_signed(const Integer& u, const Integer& n) {
  Integer v = reduce_mod(u, n);
  if (2 * v >= n) v -= n;
  return v;
}

unsigned kappa(const Integer& r) {
  if (sgn(r) <= 0) throw std::invalid_argument("kappa requires r >= 1, got " + r.get_str());
  return static_cast<unsigned>(mpz_scan1(r.get_mpz_t(), 0));
}

std::optional<Integer> mod_inverse(const Integer& z, const Integer& n) {
  if (n < 2) throw InvalidModulus("mod_inverse requires n >= 2, got " + n.get_str());
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), z.get_mpz_t(), n.get_mpz_t()) == 0) return std::nullopt;
  return reduce_mod(inv, n);
}

Integer mod_pow(const Integer& g, const Integer& e, const Integer& n) {
  require_positive_modulus(n);
  if (sgn(e) < 0) throw std::invalid_argument("mod_pow requires a non-negative exponent");
  Integer out;
  mpz_powm(out.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
  return out;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer pow2(unsigned e) {
  Integer out;
  mpz_setbit(out.get_mpz_t(), e);
  return out;
}

Rational ratio(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw std::invalid_argument("zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Integer round_nearest(const Rational& x) {
  // ceil(x - 1/2) = ceil((2p - q) / 2q)
  Integer num = 2 * x.get_num() - x.get_den();
  Integer den = 2 * x.get_den();
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

std::vector<PrimePower> factorize(const Integer& n, std::uint64_t trial_bound) {
  if (sgn(n) <= 0) throw std::invalid_argument("factorize requires n >= 1");
  std::map<Integer, unsigned> found;
  Integer rest = n;
  for (std::uint64_t p = 2; p <= trial_bound && p * p <= rest; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      ++found[Integer(static_cast<unsigned long>(p))];
      rest /= static_cast<unsigned long>(p);
    }
  }
  factor_into(rest, found);
  std::vector<PrimePower> out;
  for (auto& [p, e] : found) out.push_back({p, e});
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const auto& [p, e] : factorize(n)) {
    std::size_t base = out.size();
    Integer power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= p;
      for (std::size_t k = 0; k < base; ++k) out.push_back(out[k] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer smallest_tau(const Integer& z, const Integer& r) {
  if (r < 2) throw std::invalid_argument("smallest_tau requires r >= 2");
  if (gcd(z, r) == 1) return 1;
  for (const Integer& tau : divisors(r)) {
    if (gcd(z, Integer(r / tau)) == 1) return tau;
  }
  return r;  // unreachable: gcd(z, 1) = 1
}

bool is_probable_prime(const Integer& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Integer next_prime(const Integer& n) {
  if (n <= 2) return 2;
  if (is_probable_prime(n)) return n;
  Integer out;
  mpz_nextprime(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  bool negative = false;
  std::size_t pos = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    pos = 1;
  }
  int base = 10;
  if (s.size() >= pos + 2 && s[pos] == '0' && (s[pos + 1] == 'x' || s[pos + 1] == 'X')) {
    base = 16;
    pos += 2;
  }
  std::string digits = s.substr(pos);
  if (digits.empty()) throw std::invalid_argument("not an integer: '" + s + "'");
  for (char c : digits) {
    bool ok = base == 16 ? std::isxdigit(static_cast<unsigned char>(c)) != 0
                         : std::isdigit(static_cast<unsigned char>(c)) != 0;
    if (!ok) throw std::invalid_argument("not an integer: '" + s + "'");
  }
  Integer out(digits, base);
  return negative ? Integer(-out) : out;
}

std::string to_hex(const Integer& n) {
  if (sgn(n) < 0) return "-0x" + Integer(-n).get_str(16);
  return "0x" + n.get_str(16);
}

std::string to_decimal(const Integer& n) { return n.get_str(10); }

std::vector<std::uint8_t> to_bytes(const Integer& n) {
  std::size_t count = 0;
  if (sgn(n) == 0) return {};
  std::vector<std::uint8_t> out((mpz_sizeinbase(n.get_mpz_t(), 2) + 7) / 8);
  mpz_export(out.data(), &count, 1, 1, 1, 0, n.get_mpz_t());
  out.resize(count);
  return out;
}

Integer from_bytes(const std::uint8_t* data, std::size_t size) {
  Integer out;
  if (size > 0) mpz_import(out.get_mpz_t(), size, 1, 1, 1, 0, data);
  return out;
}

std::int64_t to_int64(const Integer& n) {
  if (!n.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + n.get_str());
  return n.get_si();
}

}  // namespace dlsim
