#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qlag {

// Canonical exact rationals. mpq_class keeps gcd(num, den) = 1 and den > 0
// after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline Rat sign_rat(int parity) { return (parity & 1) ? Rat(-1) : Rat(1); }

inline int parity_sign(long p) { return (p & 1) ? -1 : 1; }

inline Int binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

inline Int factorial(long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace qlag
