#include "qlindep/serieval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstddef>
#include <vector>

#include "qlindep/errors.hpp"

namespace qlindep {

namespace {

long ceil_log2_long(long n) {
  long k = 0;
  while ((1L << k) < n) ++k;
  return k;
}

/* p(x) and p'(x) by joint Horner, round-to-nearest; refinement only, the
   certification below never trusts these values. */
void horner_pd(const std::vector<Int> &c, mpfr_srcptr x, mpfr_ptr pv,
               mpfr_ptr dv) {
  mpfr_set_z(pv, c.back().get_mpz_t(), MPFR_RNDN);
  mpfr_set_ui(dv, 0, MPFR_RNDN);
  for (size_t k = c.size() - 1; k-- > 0;) {
    mpfr_mul(dv, dv, x, MPFR_RNDN);
    mpfr_add(dv, dv, pv, MPFR_RNDN);
    mpfr_mul(pv, pv, x, MPFR_RNDN);
    mpfr_add_z(pv, pv, c[k].get_mpz_t(), MPFR_RNDN);
  }
}

/* Rigorous enclosure of p at an exact point. */
RealBall ball_poly_eval(const std::vector<Int> &c, const Real &x, long w) {
  RealBall bx(x, Real::of_long(0, 64));
  RealBall acc = RealBall::of_int(c.back(), w);
  for (size_t k = c.size() - 1; k-- > 0;)
    acc = acc * bx + RealBall::of_int(c[k], w);
  return acc;
}

/* Smallest integer strictly beyond every real root: 1 for (near-)constant
   polynomials, else ceil of the Cauchy bound plus one. */
long beyond_roots(const RatPoly &p) {
  if (p.degree() < 1) return 1;
  Int b = rat_ceil(cauchy_root_bound(p)) + 1;
  if (!b.fits_slong_p()) throw internal_error("root bound out of range");
  return std::max(1L, b.get_si());
}

/* Lower / upper bounds for q^e (e >= 0) at 64 bits, from a base enclosure
   whose lower endpoint is > 1. */
Real qpow_low(const RealBall &qb, const Int &e) {
  Real base = qb.lower();
  Real r(64);
  mpfr_pow_z(r.get(), base.get(), e.get_mpz_t(), MPFR_RNDD);
  return r;
}

Real qpow_up(const RealBall &qb, const Int &e) {
  Real base = qb.upper();
  Real r(64);
  mpfr_pow_z(r.get(), base.get(), e.get_mpz_t(), MPFR_RNDU);
  return r;
}

/* Upper bound on  ms * n^e / q^{fn},  every rounding outward. */
Real term_bound_up(const Real &ms, long e, long n, const RealBall &qb,
                   const Int &fn) {
  Real t(64);
  Int np = int_pow(Int(n), static_cast<unsigned long>(e));
  mpfr_mul_z(t.get(), ms.get(), np.get_mpz_t(), MPFR_RNDU);
  if (fn >= 0) {
    Real d = qpow_low(qb, fn);
    mpfr_div(t.get(), t.get(), d.get(), MPFR_RNDU);
  } else {
    Real d = qpow_up(qb, -fn);
    mpfr_mul(t.get(), t.get(), d.get(), MPFR_RNDU);
  }
  return t;
}

struct TailPlan {
  long trunc;     /* sum runs n = 1 .. trunc */
  Real tail_rad;  /* certified bound on the absolute tail beyond trunc */
};

/* Base enclosure tight enough that its lower endpoint exceeds 1. */
RealBall planning_base(const NumberField &F) {
  for (long pb = 128; pb <= (1L << 16); pb *= 2) {
    RealBall qb = eval_base(F, pb);
    if (mpfr_cmp_ui(qb.lower().get(), 1) > 0) return qb;
  }
  throw precision_error("base is too close to 1 to separate");
}

/* Truncation point with a certified geometric tail.  Writes an upper bound
   b(n) = ms * n^e / q^{f(n)} for the n-th term, picks N so that beyond it f
   and its forward difference increase and q^{f(n+1)-f(n)} >= 2^{e+2} (term
   bound ratio <= 1/4), then walks to the first b(T+1) <= 2^-(prec+3).  The
   omitted tail is then at most 2 b(T+1). */
TailPlan plan_tail(const SeriesSpec &s, const NumberField &F, long prec) {
  RealBall qb = planning_base(F);
  long e = fp_degree(s.numerator);

  Real sum_abs = Real::of_long(0, 64);
  for (const FieldElem &c : s.numerator.coeffs) {
    Real u = eval_field_elem_at(c, qb).abs_ball().upper();
    mpfr_add(sum_abs.get(), sum_abs.get(), u.get(), MPFR_RNDU);
  }
  Real ms = Real::of_long(1, 64);
  if (s.twist) {
    mpfr_set_ui(ms.get(), 0, MPFR_RNDU);
    for (const FieldElem &v : s.twist->values) {
      Real u = eval_field_elem_at(v, qb).abs_ball().upper();
      mpfr_max(ms.get(), ms.get(), u.get(), MPFR_RNDU);
    }
  }
  mpfr_mul(ms.get(), ms.get(), sum_abs.get(), MPFR_RNDU);

  AffineMap step(Rat(1), Rat(1));
  RatPoly df = affine_compose(s.f, step) - s.f;
  long n0 = std::max(beyond_roots(s.f.derivative()),
                     beyond_roots(df.derivative()));

  Real target = Real::pow2(e + 2, 64);
  long start = n0;
  for (;; ++start) {
    if (start > 1000000L)
      throw precision_error("no geometric domination point for the tail");
    Rat d = df.eval(Rat(start));
    if (d < 1) continue;
    Real qp = qpow_low(qb, rat_floor(d));
    if (mpfr_cmp(qp.get(), target.get()) >= 0) break;
  }

  Real thresh = Real::pow2(-(prec + 3), 64);
  long trunc = std::max(start, 1L);
  Real bnext(64);
  for (;; ++trunc) {
    if (trunc > 4000000L) throw precision_error("series truncation overflow");
    Rat fr = s.f.eval(Rat(trunc + 1));
    if (!rat_is_int(fr))
      throw internal_error("integer-valued order produced a fraction");
    bnext = term_bound_up(ms, e, trunc + 1, qb, fr.get_num());
    if (mpfr_cmp(bnext.get(), thresh.get()) <= 0) break;
  }
  Real tail(64);
  mpfr_mul_2si(tail.get(), bnext.get(), 1, MPFR_RNDU);
  return TailPlan{trunc, tail};
}

}  // namespace

void validate_series(const NumberField &F, const SeriesSpec &s) {
  if (s.f.degree() < 2)
    throw hypothesis_error("order polynomial must have degree at least 2");
  if (sgn(s.f.lead()) <= 0)
    throw hypothesis_error("order polynomial needs a positive leading coefficient");
  if (!is_integer_valued(s.f))
    throw hypothesis_error("order polynomial is not integer-valued");
  for (const FieldElem &c : s.numerator.coeffs)
    if (c.coords.size() != F.degree())
      throw input_error("numerator coefficient with wrong coordinate count");
  if (s.twist) {
    if (s.twist->period < 1) throw input_error("twist period must be positive");
    if (s.twist->values.size() != static_cast<size_t>(s.twist->period))
      throw input_error("twist must supply one value per residue");
    for (const FieldElem &v : s.twist->values)
      if (v.coords.size() != F.degree())
        throw input_error("twist value with wrong coordinate count");
  }
}

RealBall eval_base(const NumberField &F, long prec) {
  if (prec < 64) throw input_error("base evaluation needs at least 64 bits");
  const std::vector<Int> &ic = F.int_coeffs();
  if (F.degree() == 1) return RealBall::of_rat(Rat(-ic[0]), prec);

  const RatPoly &p = F.min_poly();
  Rat lo = F.hint_lo(), hi = F.hint_hi();
  int slo = sgn(p.eval(lo));
  if (slo == 0) throw internal_error("rational root of an irreducible polynomial");

  long w = prec + 64;
  for (int attempt = 0; attempt < 7; ++attempt, w *= 2) {
    /* exact bisection keeps the bracket; Newton then converges from the
       midpoint and the final interval is certified by a sign change */
    for (int i = 0; i < 24 * (attempt + 1); ++i) {
      Rat mid = (lo + hi) / 2;
      int sm = sgn(p.eval(mid));
      if (sm == 0)
        throw internal_error("rational root of an irreducible polynomial");
      (sm == slo ? lo : hi) = mid;
    }

    Real x = Real::of_rat((lo + hi) / 2, w, MPFR_RNDN);
    Real pv(w), dv(w), delta(w);
    for (int it = 0; it < 128; ++it) {
      horner_pd(ic, x.get(), pv.get(), dv.get());
      if (mpfr_zero_p(dv.get())) break;
      mpfr_div(delta.get(), pv.get(), dv.get(), MPFR_RNDN);
      mpfr_sub(x.get(), x.get(), delta.get(), MPFR_RNDN);
      if (mpfr_zero_p(delta.get())) break;
      if (!mpfr_zero_p(x.get()) &&
          mpfr_get_exp(delta.get()) <= mpfr_get_exp(x.get()) - (prec + 12))
        break;
    }

    Real r = Real::pow2(-(prec + 2), 64);
    Real xm(w), xp(w);
    mpfr_sub(xm.get(), x.get(), r.get(), MPFR_RNDD);
    mpfr_add(xp.get(), x.get(), r.get(), MPFR_RNDU);
    if (!(mpfr_cmp_q(xm.get(), lo.get_mpq_t()) > 0 &&
          mpfr_cmp_q(xp.get(), hi.get_mpq_t()) < 0))
      continue;  /* drifted outside the isolating bracket, tighten and retry */
    RealBall vm = ball_poly_eval(ic, xm, w);
    RealBall vp = ball_poly_eval(ic, xp, w);
    if (vm.contains_zero() || vp.contains_zero() ||
        vm.is_positive() == vp.is_positive())
      continue;
    Real rm(64), rp(64), rr(64);
    mpfr_sub(rm.get(), x.get(), xm.get(), MPFR_RNDU);
    mpfr_sub(rp.get(), xp.get(), x.get(), MPFR_RNDU);
    mpfr_max(rr.get(), rm.get(), rp.get(), MPFR_RNDU);
    return RealBall(x, rr);
  }
  throw precision_error("base enclosure certification failed at precision cap");
}

RealBall eval_field_elem_at(const FieldElem &a, const RealBall &qball) {
  long w = qball.prec();
  RealBall acc = RealBall::exact_zero(w);
  for (size_t k = a.coords.size(); k-- > 0;)
    acc = acc * qball + RealBall::of_rat(a.coords[k], w);
  return acc;
}

RealBall eval_field_elem(const FieldElem &a, const NumberField &F, long prec) {
  if (prec < 64) throw input_error("element evaluation needs at least 64 bits");
  if (a.coords.size() != F.degree())
    throw input_error("element with wrong coordinate count");
  return eval_field_elem_at(a, eval_base(F, prec + 32));
}

RealBall eval_series(const SeriesSpec &s, const NumberField &F, long prec,
                     long *truncation_out) {
  if (prec < 64) throw input_error("series evaluation needs at least 64 bits");
  validate_series(F, s);

  bool dead = fp_is_zero(s.numerator);
  if (!dead && s.twist)
    dead = std::all_of(s.twist->values.begin(), s.twist->values.end(),
                       elem_is_zero);
  if (dead) {
    if (truncation_out) *truncation_out = 0;
    return RealBall::exact_zero(prec);
  }

  TailPlan plan = plan_tail(s, F, prec);
  long wp = prec + 40 + ceil_log2_long(plan.trunc + 1);
  for (int attempt = 0; attempt < 4; ++attempt, wp *= 2) {
    RealBall qb = eval_base(F, wp);
    RealBall acc = RealBall::exact_zero(wp);
    for (long n = 1; n <= plan.trunc; ++n) {
      FieldElem chi =
          s.twist ? s.twist->values[static_cast<size_t>(n % s.twist->period)]
                  : F.one();
      if (elem_is_zero(chi)) continue;
      FieldElem an = elem_mul(F, chi, fp_eval(F, s.numerator, F.from_rat(Rat(n))));
      if (elem_is_zero(an)) continue;
      Rat fr = s.f.eval(Rat(n));
      if (!rat_is_int(fr))
        throw internal_error("integer-valued order produced a fraction");
      RealBall term = eval_field_elem_at(an, qb) * qb.pow_int(-fr.get_num());
      acc = acc + term;
    }
    acc = acc + RealBall(Real::of_long(0, wp), plan.tail_rad);
    if (acc.radius_exponent() <= -prec) {
      if (truncation_out) *truncation_out = plan.trunc;
      return acc;
    }
  }
  throw precision_error("series evaluation could not reach the target radius");
}

RealBall eval_theta(int m, const NumberField &F, long power, long prec) {
  if (m < 2 || m > 4) throw input_error("theta index must be 2, 3 or 4");
  if (power < 1) throw input_error("theta power must be positive");
  if (prec < 64) throw input_error("theta evaluation needs at least 64 bits");

  long wp = prec + 16;
  SeriesSpec s;
  s.numerator = fp_from_ratpoly(F, RatPoly::constant(Rat(1)));
  if (m == 2) {
    /* 2 sum_{n>=0} q^{-power n(n+1)}, reindexed to start at 1 */
    s.f = RatPoly{Rat(0), Rat(-power), Rat(power)};
    RealBall sum = eval_series(s, F, wp);
    return RealBall::of_int(Int(2), wp) * sum;
  }
  s.f = RatPoly{Rat(0), Rat(0), Rat(power)};
  if (m == 4)
    s.twist = Twist{2, {F.one(), elem_neg(F, F.one())}};
  RealBall sum = eval_series(s, F, wp);
  return RealBall::of_int(Int(1), wp) +
         RealBall::of_int(Int(2), wp) * sum;
}

RealBall eval_theta_derivative(int m, long k, const NumberField &F, long prec) {
  if (m < 2 || m > 4) throw input_error("theta index must be 2, 3 or 4");
  if (k < 0) throw input_error("derivative order must be nonnegative");
  if (prec < 64) throw input_error("theta evaluation needs at least 64 bits");

  /* exponent polynomial E with the series sum_{n>=1} z^{E(n)}; the k-th
     z-derivative has terms falling(E(n), k) z^{E(n)-k} */
  RatPoly expo = (m == 2) ? RatPoly{Rat(0), Rat(-1), Rat(1)}
                          : RatPoly{Rat(0), Rat(0), Rat(1)};
  RatPoly numer = RatPoly::constant(Rat(1));
  for (long j = 0; j < k; ++j) numer = numer * (expo - RatPoly::constant(Rat(j)));

  long wp = prec + 16;
  SeriesSpec s;
  s.f = expo - RatPoly::constant(Rat(k));
  s.numerator = fp_from_ratpoly(F, numer);
  if (m == 4)
    s.twist = Twist{2, {F.one(), elem_neg(F, F.one())}};
  RealBall sum = eval_series(s, F, wp);
  RealBall out = RealBall::of_int(Int(2), wp) * sum;
  if (m != 2 && k == 0) out = RealBall::of_int(Int(1), wp) + out;
  return out;
}

}  // namespace qlindep
