#pragma once

// Exact integer arithmetic used throughout the toolkit.
//
// Two reduction conventions are in play. reduce_mod() returns the
// representative in [0, n); reduce_signed() returns the representative in
// [-n/2, n/2), which for odd n is [-(n-1)/2, (n-1)/2].

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dlsim {

using Integer = mpz_class;
using Rational = mpq_class;

Integer reduce_mod(const Integer& u, const Integer& n);
Integer reduce_signed(const Integer& u, const Integer& n);

/// Exponent of the largest power of two dividing r.
unsigned kappa(const Integer& r);

/// z^-1 mod n, or nullopt when gcd(z, n) != 1. Requires n >= 2.
std::optional<Integer> mod_inverse(const Integer& z, const Integer& n);

Integer mod_pow(const Integer& g, const Integer& e, const Integer& n);

Integer gcd(const Integer& a, const Integer& b);

/// 2^e.
Integer pow2(unsigned e);

/// num / den in canonical form; den must be non-zero.
Rational ratio(const Integer& num, const Integer& den);

/// Nearest integer to x; ties go toward minus infinity so that
/// round_nearest(x) - x always lies in [-1/2, 1/2).
Integer round_nearest(const Rational& x);

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
};

/// Prime factorization by trial division up to `trial_bound`, then Pollard rho.
/// Factors are returned in increasing order.
std::vector<PrimePower> factorize(const Integer& n, std::uint64_t trial_bound = 1u << 16);

/// All positive divisors of n in increasing order.
std::vector<Integer> divisors(const Integer& n);

/// Least divisor tau of r with gcd(z, r / tau) = 1.
Integer smallest_tau(const Integer& z, const Integer& r);

bool is_probable_prime(const Integer& n);
Integer next_prime(const Integer& n);

/// Parses a decimal or 0x-prefixed hexadecimal integer (optionally signed).
Integer parse_integer(std::string_view text);
std::string to_hex(const Integer& n);
std::string to_decimal(const Integer& n);

/// Magnitude as big-endian bytes; zero encodes as an empty string.
std::vector<std::uint8_t> to_bytes(const Integer& n);
Integer from_bytes(const std::uint8_t* data, std::size_t size);

/// Conversion helper for values known to fit.
std::int64_t to_int64(const Integer& n);

}  // namespace dlsim
