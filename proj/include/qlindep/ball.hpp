#ifndef QLINDEP_BALL_HPP_
#define QLINDEP_BALL_HPP_

#include <mpfr.h>

#include <string>
#include <utility>

#include "qlindep/numbers.hpp"

namespace qlindep {

/* Thin RAII handle around one mpfr_t.  Arithmetic is done through the raw
   mpfr API at call sites; this class only manages storage, conversions and
   deterministic printing. */
class Real {
 public:
  explicit Real(mpfr_prec_t prec);
  Real(const Real &o);
  Real(Real &&o) noexcept;
  Real &operator=(const Real &o);
  Real &operator=(Real &&o) noexcept;
  ~Real();

  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

  int sign() const { return mpfr_sgn(x_); }
  bool is_zero() const { return mpfr_zero_p(x_) != 0; }
  /* mpfr_get_exp convention: |x| in [2^(e-1), 2^e). Requires x != 0. */
  long exponent() const;
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

  static Real of_long(long v, mpfr_prec_t prec);
  static Real of_int(const Int &v, mpfr_prec_t prec, mpfr_rnd_t rnd);
  static Real of_rat(const Rat &v, mpfr_prec_t prec, mpfr_rnd_t rnd);
  static Real pow2(long e, mpfr_prec_t prec);

  /* Decimal with a fixed digit count; deterministic for fixed input bits. */
  std::string str(size_t digits) const;
  /* Bit-exact form "s0.<hex mantissa>@<exp>" meaning sign * 0.m * 16^exp. */
  std::string hex() const;

 private:
  mpfr_t x_;
};

/* Midpoint-radius enclosure.  The radius lives at a fixed small precision and
   every radius operation rounds up, so the invariant
   "true value in [mid - rad, mid + rad]" survives all arithmetic below. */
class RealBall {
 public:
  RealBall(Real mid, Real rad);

  static RealBall exact_zero(mpfr_prec_t prec);
  static RealBall of_int(const Int &v, mpfr_prec_t prec);
  static RealBall of_rat(const Rat &v, mpfr_prec_t prec);

  const Real &mid() const { return mid_; }
  const Real &rad() const { return rad_; }
  mpfr_prec_t prec() const { return mid_.prec(); }

  bool is_exact() const { return rad_.is_zero(); }
  bool contains_zero() const;
  bool is_positive() const;  /* the whole enclosure is > 0 */
  bool is_negative() const;
  bool contains(const Rat &v) const;
  /* Smallest stored e with radius <= 2^e; meaningless (LONG_MIN) if exact. */
  long radius_exponent() const;

  Real lower() const;  /* rounded down */
  Real upper() const;  /* rounded up */

  friend RealBall operator+(const RealBall &a, const RealBall &b);
  friend RealBall operator-(const RealBall &a, const RealBall &b);
  friend RealBall operator*(const RealBall &a, const RealBall &b);
  RealBall operator-() const;
  RealBall abs_ball() const;
  RealBall inv() const;  /* throws precision_error if 0 may be inside */
  friend RealBall div(const RealBall &a, const RealBall &b);
  RealBall nth_root(unsigned long n) const;  /* enclosure must be > 0 */
  RealBall pow_int(const Int &e) const;
  RealBall mul_2exp(long e) const;

  static bool disjoint(const RealBall &a, const RealBall &b);

  std::string str(size_t digits = 30) const;

 private:
  Real mid_, rad_;
};

/* Axis-aligned rectangle in C: re + i*im with both parts enclosed. */
struct ComplexBall {
  RealBall re, im;

  ComplexBall(RealBall r, RealBall i) : re(std::move(r)), im(std::move(i)) {}
  static ComplexBall of_real(RealBall r);

  ComplexBall conj() const;
  ComplexBall operator-() const;
  friend ComplexBall operator+(const ComplexBall &a, const ComplexBall &b);
  friend ComplexBall operator-(const ComplexBall &a, const ComplexBall &b);
  friend ComplexBall operator*(const ComplexBall &a, const ComplexBall &b);
  ComplexBall inv() const;

  RealBall abs_sq() const;
  Real abs_upper() const;  /* >= |z| over the box */
  Real abs_lower() const;  /* <= |z| over the box, clamped at 0 */
  bool contains_zero() const;
};

}  // namespace qlindep

#endif  // QLINDEP_BALL_HPP_
