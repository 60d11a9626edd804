#ifndef QLINDEP_EQUIV_HPP_
#define QLINDEP_EQUIV_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "qlindep/ratpoly.hpp"

namespace qlindep {

/* Witness for the equivalence F(x) == G(b*x + c) + d with b > 0 rational,
 * c rational, d an integer. Checkable by recomposition. */
struct EquivWitness {
  Rat b;
  Rat c;
  Int d;
};

/* The set of integer shifts A for which some (B > 0 rational, C, D integers)
 * satisfy f_i(x+A) == f_j(B*x+C) + D identically. Closed form: always one of
 * nothing / finitely many / a single residue class / everything. The set-union
 * views needed by the certificate search keep lists of these. */
class ShiftSolutionSet {
 public:
  enum class Kind { Empty, Finite, Progressions, All };

  static ShiftSolutionSet empty();
  static ShiftSolutionSet all();
  static ShiftSolutionSet finite(std::vector<Int> shifts);
  static ShiftSolutionSet progression(Int modulus, Int residue);

  Kind kind() const { return kind_; }
  const std::vector<Int>& finite_shifts() const { return finite_; }
  const Int& modulus() const { return modulus_; }
  const std::vector<Int>& residues() const { return residues_; }

  bool contains(const Int& a) const;

 private:
  ShiftSolutionSet() = default;
  Kind kind_ = Kind::Empty;
  std::vector<Int> finite_;   // sorted, Kind::Finite only
  Int modulus_ = 1;           // >= 1, Kind::Progressions only
  std::vector<Int> residues_; // sorted, in [0, modulus), nonempty for Progressions
};

/* Certificate that shift A avoids every pairwise solution set against the
 * chosen family member. The per-opponent sets are kept for audit. */
struct ShiftCertificate {
  std::size_t index;
  Int shift;
  std::vector<std::pair<std::size_t, ShiftSolutionSet>> checked;
};

/* Restricts certificate shifts A to a set of residues (used when the series
 * numerator carries a periodic twist that must not vanish at A). */
struct ResidueConstraint {
  Int modulus;                // >= 1
  std::vector<Int> allowed;   // residues in [0, modulus)
};

/* Decides F ~ G. Inputs must be nonconstant with positive leading
 * coefficients. Degrees must agree; b is forced by the leading coefficients,
 * c by the next one, and the residual must be an integer constant. */
std::optional<EquivWitness> decide_equiv(const RatPoly& F, const RatPoly& G);

/* Exact recheck of a witness (recompose and compare). */
bool verify_equiv(const RatPoly& F, const RatPoly& G, const EquivWitness& w);

/* Full solution set in A of "exists B,C,D with f_i(x+A) == f_j(Bx+C)+D".
 * Inputs integer-valued, degree >= 2, positive lead. B is forced by the
 * leading coefficients and C is an affine function of A; the remaining
 * x-coefficients either vanish identically (congruence case, from C(A) in Z)
 * or pin A to the integer roots of a nonzero polynomial (finite case).
 * The constant difference D is automatically an integer whenever C is: B*x+C
 * then walks an unbounded integer progression where both sides take integer
 * values, so no explicit congruence for D is added. */
ShiftSolutionSet shift_solutions(const RatPoly& f_i, const RatPoly& f_j);

/* Searches for (i, A) such that A lies outside shift_solutions(f_i, f_j) for
 * every j != i. Candidates i are tried in ascending degree then input order;
 * A is the smallest-magnitude admissible integer, ties broken toward the
 * positive one. constraints (parallel to family, optional per entry) restrict
 * A by residue when index i is the chosen one. Returns nullopt iff no member
 * admits a shift. */
std::optional<ShiftCertificate> find_exclusive_shift(
    const std::vector<RatPoly>& family,
    const std::vector<std::optional<ResidueConstraint>>& constraints = {});

/* Runs the same search on every nonempty subset of the family (cap: 20
 * members). Returns the first failing subset (ordered by size, then bitmask)
 * as index list, or nullopt when every subset has a certificate. */
std::optional<std::vector<std::size_t>> first_failing_subset(
    const std::vector<RatPoly>& family,
    const std::vector<std::optional<ResidueConstraint>>& constraints = {});

/* Member of the family {scale * g(x)^power + offset}; offsets must keep
 * deg(offset) <= deg(g)*power - 2. */
struct ScaledPowerMember {
  Int scale;               // >= 1
  unsigned long power;     // >= 1, and deg(g)*power >= 2
  RatPoly offset;
};

/* For families scale*g^power + offset there is one shift that works for every
 * subset: A = -floor(u/(t*d)) - 1 with t, u the two top coefficients of g and
 * d its degree. Verified here against shift_solutions for every ordered pair
 * whose first member has the smaller (or equal) scale, which covers the
 * minimal-scale choice in any subset. */
Int scaled_power_family_shift(const RatPoly& g, const std::vector<ScaledPowerMember>& family);

/* Partition by ~ using decide_equiv against class representatives; returns
 * classes as lists of input indices, in order of first appearance. */
std::vector<std::vector<std::size_t>> partition_classes(const std::vector<RatPoly>& polys);

/* One polynomial g plus per-member triples (B_j >= 1, C_j, D_j integers)
 * with g(x) == f_j((x + C_j)/B_j) + D_j exactly. */
struct CanonicalClassForm {
  struct Triple {
    Int B, C, D;
  };
  RatPoly g;
  std::vector<Triple> triples;  // aligned with the member order passed in
};

/* Builds the shared form for one equivalence class: witnesses against the
 * first member are scaled to integer maps (r_j = lcm of the denominators),
 * K = lcm of the s_j, g = f_1(x/K). Every identity is rechecked exactly
 * before returning. */
CanonicalClassForm canonical_form(const std::vector<RatPoly>& cls);

}  // namespace qlindep

#endif
