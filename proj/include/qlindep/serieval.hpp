#ifndef QLINDEP_SERIEVAL_HPP_
#define QLINDEP_SERIEVAL_HPP_

#include "qlindep/ball.hpp"
#include "qlindep/numfield.hpp"
#include "qlindep/series.hpp"

namespace qlindep {

/* Certified enclosure of the defining root q, radius <= 2^-prec.
   Newton refinement inside the stored isolating interval, certified by an
   exact sign change across the final enclosure.  prec >= 64. */
RealBall eval_base(const NumberField &F, long prec);

/* Horner evaluation of an element's coordinates at a precomputed enclosure
   of q.  The second form recomputes the base enclosure itself. */
RealBall eval_field_elem_at(const FieldElem &a, const RealBall &qball);
RealBall eval_field_elem(const FieldElem &a, const NumberField &F, long prec);

/* Certified enclosure of sum_{n>=1} chi(n) P(n) / q^{f(n)}, radius
   <= 2^-prec.  The truncation point is chosen so that the term bounds decay
   geometrically (ratio <= 1/2) and the tail is enclosed by twice the first
   omitted bound.  A zero numerator (or identically zero twist) gives an
   exact zero.  If truncation_out is non-null it receives the index of the
   last summed term. */
RealBall eval_series(const SeriesSpec &s, const NumberField &F, long prec,
                     long *truncation_out = nullptr);

/* Jacobi theta values along the positive real axis, z = 1/q^power.
     m = 2: the normalized value q^{power/4} * theta2(1/q^power)
            = 2 sum_{n>=0} q^{-power n(n+1)}
     m = 3: 1 + 2 sum_{n>=1} q^{-power n^2}
     m = 4: 1 + 2 sum_{n>=1} (-1)^n q^{-power n^2} */
RealBall eval_theta(int m, const NumberField &F, long power, long prec);

/* k-th derivative in z, evaluated at z = 1/q.  For m = 2 the differentiated
   function is z^{-1/4} theta2(z) (the normalization above with power 1);
   for m = 3, 4 it is the plain theta series.  k = 0 reproduces eval_theta
   with power 1. */
RealBall eval_theta_derivative(int m, long k, const NumberField &F, long prec);

}  // namespace qlindep

#endif  // QLINDEP_SERIEVAL_HPP_
