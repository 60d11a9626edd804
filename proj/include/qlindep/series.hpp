#ifndef QLINDEP_SERIES_HPP_
#define QLINDEP_SERIES_HPP_

#include <optional>
#include <vector>

#include "qlindep/numfield.hpp"
#include "qlindep/ratpoly.hpp"

namespace qlindep {

/* Periodic coefficient twist chi: the factor applied to the n-th term is
   values[n mod period].  A trivial twist is represented by absence. */
struct Twist {
  long period;
  std::vector<FieldElem> values;
};

/* One lacunary series  sum_{n>=1} chi(n) P(n) / q^{f(n)}  with an
   integer-valued order polynomial f of degree >= 2 and positive lead. */
struct SeriesSpec {
  RatPoly f;
  FieldPoly numerator;
  std::optional<Twist> twist;
};

/* Shape checks shared by the evaluator and the decision engine.  Violations
   of the analytic hypotheses (integer-valued f of degree >= 2 with positive
   lead) raise hypothesis_error; malformed twists or coordinate vectors of
   the wrong length raise input_error.  A zero numerator is legal here; the
   decision engine rejects it separately. */
void validate_series(const NumberField &F, const SeriesSpec &s);

}  // namespace qlindep

#endif  // QLINDEP_SERIES_HPP_
