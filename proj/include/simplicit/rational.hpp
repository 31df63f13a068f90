#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "simplicit/error.hpp"

namespace simplicit {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline int sign_of(const Rat& q) { return q.sign(); }
inline int sign_of(const Int& z) { return z.sign(); }

inline double rat_to_double(const Rat& q) { return q.convert_to<double>(); }

/* q^e with e >= 0; exponentiates numerator and denominator separately so the
 * result is already canonical. */
inline Rat rat_pow(const Rat& q, unsigned e) {
  using boost::multiprecision::pow;
  if (e == 0) return Rat(1);
  Int n = pow(numerator(q), e);
  Int d = pow(denominator(q), e);
  return Rat(n, d);
}

// Accepts "p", "p/q", and decimal literals like "2.5"; leading sign allowed.
Rat rat_from_string(std::string_view text);

// "p" when the denominator is 1, otherwise "p/q".
std::string rat_to_string(const Rat& q);

/* Deterministic 64-bit generator (splitmix64).  The standard library
 * distributions are not specified bit-for-bit across platforms, so sampling
 * goes through this instead. */
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n > 0.  Modulo bias is irrelevant for n << 2^64.
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace simplicit
