#ifndef QLINDEP_NUMBERS_HPP_
#define QLINDEP_NUMBERS_HPP_

#include <gmpxx.h>

#include <optional>
#include <string>

#include "qlindep/errors.hpp"

namespace qlindep {

/* GMP supplies canonical arbitrary-precision integers and rationals.
 * mpq_class values are kept canonical (lowest terms, denominator >= 1);
 * every constructor from raw parts must go through rat_make / rat_parse. */
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat_make(const Int& num, const Int& den) {
  if (den == 0) throw input_error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_make(long num, long den = 1) {
  return rat_make(Int(num), Int(den));
}

/* Accepts "p", "-p", "p/q" with optional sign; rejects anything else. */
Rat rat_parse(const std::string& text);

/* "p" when the denominator is 1, else "p/q". */
std::string rat_str(const Rat& r);

inline bool rat_is_int(const Rat& r) { return r.get_den() == 1; }

/* Floor / ceil of a rational as big integers (exact). */
inline Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Int rat_ceil(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

/* Nearest integer, ties toward +infinity (floor(r + 1/2)); used by lattice
 * size reduction where any consistent tie rule works. */
inline Int rat_round(const Rat& r) {
  return rat_floor(r + Rat(1, 2));
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/* r^e for signed e (e < 0 requires r != 0). */
Rat rat_pow(const Rat& r, long e);

inline Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/* Exact integer d-th root: the unique n >= 0 with n^d = a, or nullopt.
 * GMP's mpz_root reports exactness; the result is re-exponentiated anyway so
 * the answer never depends on that flag alone. */
std::optional<Int> int_dth_root(const Int& a, unsigned long d);

}  // namespace qlindep

#endif
