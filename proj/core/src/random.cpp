#include "dlsim/random.hpp"

#include <stdexcept>

namespace dlsim {

Integer uniform_below(const Integer& n, Rng& rng) {
  if (sgn(n) <= 0) throw std::invalid_argument("uniform_below requires n >= 1");
  if (n == 1) return 0;
  const std::size_t bits = mpz_sizeinbase(Integer(n - 1).get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  Integer candidate;
  do {
    candidate = 0;
    for (std::size_t w = 0; w < words; ++w) {
      candidate <<= 64;
      std::uint64_t word = rng();
      Integer part;
      mpz_import(part.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
      candidate += part;
    }
    mpz_tdiv_r_2exp(candidate.get_mpz_t(), candidate.get_mpz_t(), bits);
  } while (candidate >= n);
  return candidate;
}

Integer uniform_between(const Integer& lo, const Integer& hi, Rng& rng) {
  if (lo > hi) throw std::invalid_argument("uniform_between requires lo <= hi");
  return lo + uniform_below(Integer(hi - lo + 1), rng);
}

double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace dlsim
