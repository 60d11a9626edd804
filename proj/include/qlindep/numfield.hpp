#ifndef QLINDEP_NUMFIELD_HPP_
#define QLINDEP_NUMFIELD_HPP_

#include <cstddef>
#include <vector>

#include "qlindep/ball.hpp"
#include "qlindep/ratpoly.hpp"

namespace qlindep {

/* Element of Q(q) in the power basis 1, q, ..., q^(D-1).  Plain data; all
   arithmetic goes through the field-aware free functions below. */
struct FieldElem {
  std::vector<Rat> coords;

  bool operator==(const FieldElem &o) const = default;
};

/* Certified disk around one root of min_poly.  The disk is proven to contain
   exactly one root (pairwise-disjoint disks, each holding at least one root
   by the D*|p/p'| counting bound). */
struct RootEnclosure {
  Real center_re;
  Real center_im;
  Real radius;
};

struct ConjugateEvidence {
  enum class Magnitude { less_one, equal_one, greater_one, undecided };
  RootEnclosure root;
  Magnitude magnitude;
  bool distinguished;
};

struct BaseClass {
  enum class Kind { pisot, salem, neither };
  Kind kind;
  std::vector<ConjugateEvidence> evidence;
  long certified_bits;  /* precision at which the verdict was certified */
};

/* Real algebraic field Q(q), q the unique root of min_poly inside the
   certified isolating interval (lo, hi], q > 1. */
class NumberField {
 public:
  const RatPoly &min_poly() const { return poly_; }
  size_t degree() const { return static_cast<size_t>(poly_.degree()); }
  const Rat &hint_lo() const { return lo_; }
  const Rat &hint_hi() const { return hi_; }
  const std::vector<Int> &int_coeffs() const { return icoeffs_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem gen() const;
  FieldElem from_rat(const Rat &r) const;
  /* residue of p(q) modulo min_poly */
  FieldElem reduce(const RatPoly &p) const;

 private:
  NumberField(RatPoly p, Rat lo, Rat hi, std::vector<Int> ic);
  friend NumberField field_new(const RatPoly &min_poly, const Rat &hint_lo,
                               const Rat &hint_hi);

  RatPoly poly_;
  Rat lo_, hi_;
  std::vector<Int> icoeffs_;
};

/* Verifies monic integer coefficients, irreducibility (certified roots plus
   exact trial division of every near-integer subset factor) and that the
   hint interval isolates exactly one real root > 1. */
NumberField field_new(const RatPoly &min_poly, const Rat &hint_lo,
                      const Rat &hint_hi);

bool elem_is_zero(const FieldElem &a);
bool elem_is_rational(const FieldElem &a);
FieldElem elem_add(const NumberField &F, const FieldElem &a, const FieldElem &b);
FieldElem elem_sub(const NumberField &F, const FieldElem &a, const FieldElem &b);
FieldElem elem_neg(const NumberField &F, const FieldElem &a);
FieldElem elem_mul(const NumberField &F, const FieldElem &a, const FieldElem &b);
FieldElem elem_div(const NumberField &F, const FieldElem &a, const FieldElem &b);
FieldElem elem_scale(const NumberField &F, const Rat &c, const FieldElem &a);
FieldElem elem_pow(const NumberField &F, const FieldElem &a, const Int &e);

/* Characteristic polynomial of the multiplication-by-a map has integer
   coefficients exactly when a is an algebraic integer. */
bool is_algebraic_integer(const NumberField &F, const FieldElem &a);

/* One certified enclosure per root of min_poly, radius <= 2^(-bits/2),
   deterministic order (by center, real part first). */
std::vector<RootEnclosure> embeddings(const NumberField &F, long precision_bits);

/* Same engine for a bare squarefree integer polynomial (monic leading
   coefficient not required, real root > 1 not required). */
std::vector<RootEnclosure> certified_roots(const std::vector<Int> &coeffs,
                                           long precision_bits);

/* Index of the enclosure containing the distinguished root q. */
size_t distinguished_index(const NumberField &F,
                           const std::vector<RootEnclosure> &encs);

BaseClass classify_base(const NumberField &F);
BaseClass classify_base(const NumberField &F, long start_bits, long cap_bits);

/* Dense polynomial with FieldElem coefficients, low degree first. */
struct FieldPoly {
  std::vector<FieldElem> coeffs;
};

FieldPoly fp_make(const NumberField &F, std::vector<FieldElem> coeffs);
long fp_degree(const FieldPoly &p);
bool fp_is_zero(const FieldPoly &p);
FieldPoly fp_add(const NumberField &F, const FieldPoly &a, const FieldPoly &b);
FieldPoly fp_sub(const NumberField &F, const FieldPoly &a, const FieldPoly &b);
FieldPoly fp_mul(const NumberField &F, const FieldPoly &a, const FieldPoly &b);
FieldPoly fp_scale(const NumberField &F, const FieldElem &c, const FieldPoly &a);
FieldElem fp_eval(const NumberField &F, const FieldPoly &p, const FieldElem &x);
/* p(a x + b) for rational a, b */
FieldPoly fp_compose_linear(const NumberField &F, const FieldPoly &p,
                            const Rat &a, const Rat &b);
/* lift of a rational polynomial */
FieldPoly fp_from_ratpoly(const NumberField &F, const RatPoly &p);

}  // namespace qlindep

#endif  // QLINDEP_NUMFIELD_HPP_
