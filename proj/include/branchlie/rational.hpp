/*
  rational.hpp

  Exact scalar types for the whole library. Everything downstream computes over
  Q, Z, or F_p; no floating point is used anywhere.
*/
#ifndef BRANCHLIE_RATIONAL_HPP
#define BRANCHLIE_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace branchlie {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class(num, den) keeps the fraction unreduced; route all two-argument
// constructions through here so canonical form is an invariant everywhere.
inline Rat frac(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Exact conversion Q -> Z, refusing silent truncation.
inline Int to_int(const Rat& q) {
  if (!is_integer(q))
    throw std::logic_error("expected integral rational, got " + q.get_str());
  return q.get_num();
}

// Nonnegative representative of z mod p.
inline long long mod_p(const Int& z, long long p) {
  Int r = z % Int(static_cast<long>(p));
  if (r < 0) r += Int(static_cast<long>(p));
  return r.get_si();
}

// Image of q in F_p; throws if the denominator vanishes mod p.
inline long long mod_p(const Rat& q, long long p) {
  long long den = mod_p(Int(q.get_den()), p);
  if (den == 0)
    throw std::domain_error("denominator of " + q.get_str() + " vanishes mod " +
                            std::to_string(p));
  // modular inverse by Fermat (p prime)
  auto mulmod = [p](long long a, long long b) {
    return static_cast<long long>(static_cast<__int128>(a) * b % p);
  };
  long long inv = 1, base = den, e = p - 2;
  while (e > 0) {
    if (e & 1) inv = mulmod(inv, base);
    base = mulmod(base, base);
    e >>= 1;
  }
  return mulmod(mod_p(Int(q.get_num()), p), inv);
}

}  // namespace branchlie

#endif
