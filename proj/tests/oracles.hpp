#ifndef QLINDEP_TESTS_ORACLES_HPP_
#define QLINDEP_TESTS_ORACLES_HPP_

/* Brute-force reference implementations used to cross-check the symbolic
 * paths. Deliberately dumb: enumerate and compare. */

#include <random>
#include <set>
#include <vector>

#include "qlindep/ratpoly.hpp"

namespace qlindep::oracles {

/* Box bounds shared by the shift oracle and the certificate audits:
 * |A|, |C|, |D| <= 20 and B = p/q with 1 <= p, q <= 8. */
inline constexpr long kBoxBound = 20;
inline constexpr long kBoxRatMax = 8;

inline std::vector<Rat> box_ratios() {
  std::set<Rat> seen;
  std::vector<Rat> out;
  for (long p = 1; p <= kBoxRatMax; ++p)
    for (long q = 1; q <= kBoxRatMax; ++q) {
      Rat b = rat_make(p, q);
      if (seen.insert(b).second) out.push_back(b);
    }
  return out;
}

/* True iff some (B, C, D) inside the box satisfies
 * f_i(x+a) == f_j(B x + C) + D identically. */
inline bool box_has_witness(const RatPoly& f_i, const RatPoly& f_j, long a) {
  const RatPoly fa = affine_compose(f_i, AffineMap(Rat(1), Rat(a)));
  for (const Rat& b : box_ratios()) {
    // Leading coefficients must match; cheap necessary filter.
    const Rat blead = f_j.lead() * rat_pow(b, f_j.degree());
    if (blead != fa.lead()) continue;
    for (long c = -kBoxBound; c <= kBoxBound; ++c) {
      const RatPoly g = affine_compose(f_j, AffineMap(b, Rat(c)));
      bool same_above_const = fa.degree() == g.degree();
      for (int k = 1; same_above_const && k <= fa.degree(); ++k)
        same_above_const = fa.coeff(static_cast<std::size_t>(k)) ==
                           g.coeff(static_cast<std::size_t>(k));
      if (!same_above_const) continue;
      const Rat d = fa.coeff(0) - g.coeff(0);
      if (rat_is_int(d) && rat_abs(d) <= kBoxBound) return true;
    }
  }
  return false;
}

/* All shifts |A| <= bound the box oracle accepts. */
inline std::set<long> box_shift_set(const RatPoly& f_i, const RatPoly& f_j,
                                    long bound = kBoxBound) {
  std::set<long> out;
  for (long a = -bound; a <= bound; ++a)
    if (box_has_witness(f_i, f_j, a)) out.insert(a);
  return out;
}

/* Random integer-valued polynomial: integer coefficients in the forward
 * difference basis, leading one positive. */
inline RatPoly random_integer_valued(std::mt19937_64& rng, int degree, long coeff_bound = 10) {
  std::uniform_int_distribution<long> pick(-coeff_bound, coeff_bound);
  std::uniform_int_distribution<long> pos(1, coeff_bound);
  std::vector<Rat> basis(static_cast<std::size_t>(degree) + 1);
  for (auto& c : basis) c = Rat(pick(rng));
  basis.back() = Rat(pos(rng));  // positive leading coefficient
  return from_binomial_basis(basis);
}

inline Rat random_rat(std::mt19937_64& rng, long num_bound, long den_bound) {
  std::uniform_int_distribution<long> num(-num_bound, num_bound);
  std::uniform_int_distribution<long> den(1, den_bound);
  return rat_make(num(rng), den(rng));
}

inline Rat random_positive_rat(std::mt19937_64& rng, long num_bound, long den_bound) {
  std::uniform_int_distribution<long> num(1, num_bound);
  std::uniform_int_distribution<long> den(1, den_bound);
  return rat_make(num(rng), den(rng));
}

}  // namespace qlindep::oracles

#endif
