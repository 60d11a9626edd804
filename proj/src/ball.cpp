#include "qlindep/ball.hpp"

#include <algorithm>
#include <climits>
#include <utility>

#include "qlindep/errors.hpp"

namespace qlindep {

/* ------------------------------------------------------------------ Real */

Real::Real(mpfr_prec_t prec) { mpfr_init2(x_, prec); }

Real::Real(const Real &o) {
  mpfr_init2(x_, mpfr_get_prec(o.x_));
  mpfr_set(x_, o.x_, MPFR_RNDN);
}

Real::Real(Real &&o) noexcept {
  mpfr_init2(x_, MPFR_PREC_MIN);
  mpfr_swap(x_, o.x_);
}

Real &Real::operator=(const Real &o) {
  if (this != &o) {
    mpfr_set_prec(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }
  return *this;
}

Real &Real::operator=(Real &&o) noexcept {
  if (this != &o) mpfr_swap(x_, o.x_);
  return *this;
}

Real::~Real() { mpfr_clear(x_); }

long Real::exponent() const {
  if (mpfr_zero_p(x_)) throw internal_error("exponent of zero");
  return static_cast<long>(mpfr_get_exp(x_));
}

Real Real::of_long(long v, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_si(r.x_, v, MPFR_RNDN);
  return r;
}

Real Real::of_int(const Int &v, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  Real r(prec);
  mpfr_set_z(r.x_, v.get_mpz_t(), rnd);
  return r;
}

Real Real::of_rat(const Rat &v, mpfr_prec_t prec, mpfr_rnd_t rnd) {
  Real r(prec);
  mpfr_set_q(r.x_, v.get_mpq_t(), rnd);
  return r;
}

Real Real::pow2(long e, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_si_2exp(r.x_, 1, e, MPFR_RNDU);
  return r;
}

std::string Real::str(size_t digits) const {
  if (mpfr_nan_p(x_)) return "nan";
  if (mpfr_inf_p(x_)) return mpfr_sgn(x_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(x_)) return "0";
  mpfr_exp_t e;
  char *s = mpfr_get_str(nullptr, &e, 10, digits, x_, MPFR_RNDN);
  std::string digs(s);
  mpfr_free_str(s);
  std::string sign;
  if (digs[0] == '-') {
    sign = "-";
    digs.erase(0, 1);
  }
  /* value = 0.digs * 10^e; print as d.igs e(e-1) */
  std::string out = sign + digs.substr(0, 1);
  if (digs.size() > 1) out += "." + digs.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

std::string Real::hex() const {
  if (mpfr_nan_p(x_)) return "nan";
  if (mpfr_inf_p(x_)) return mpfr_sgn(x_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(x_)) return "+0.0@0";
  mpfr_exp_t e;
  char *s = mpfr_get_str(nullptr, &e, 16, 0, x_, MPFR_RNDN);
  std::string digs(s);
  mpfr_free_str(s);
  std::string sign = "+";
  if (digs[0] == '-') {
    sign = "-";
    digs.erase(0, 1);
  }
  /* mpfr base-16 exponent e: value = sign * 0.digs * 16^e */
  return sign + "0." + digs + "@" + std::to_string(static_cast<long>(e));
}

/* -------------------------------------------------------------- RealBall */

namespace {

constexpr mpfr_prec_t kRadPrec = 64;

/* Upper bound on the rounding error of the op that produced m with ternary
   value t: zero if exact, else 2^(exp(m) - prec) which dominates one ulp. */
Real round_error(mpfr_srcptr m, int t) {
  Real e(kRadPrec);
  if (t == 0) {
    mpfr_set_zero(e.get(), 1);
    return e;
  }
  long ex = mpfr_zero_p(m) ? static_cast<long>(mpfr_get_emin())
                           : static_cast<long>(mpfr_get_exp(m));
  mpfr_set_si_2exp(e.get(), 1, ex - mpfr_get_prec(m), MPFR_RNDU);
  return e;
}

Real rad_zero() {
  Real r(kRadPrec);
  mpfr_set_zero(r.get(), 1);
  return r;
}

/* |x| rounded up into radius precision. */
Real abs_up(mpfr_srcptr x) {
  Real r(kRadPrec);
  mpfr_abs(r.get(), x, MPFR_RNDU);
  return r;
}

}  // namespace

RealBall::RealBall(Real mid, Real rad) : mid_(std::move(mid)), rad_(std::move(rad)) {
  if (mpfr_sgn(rad_.get()) < 0 || mpfr_nan_p(rad_.get()))
    throw internal_error("negative ball radius");
}

RealBall RealBall::exact_zero(mpfr_prec_t prec) {
  Real m(prec);
  mpfr_set_zero(m.get(), 1);
  return RealBall(std::move(m), rad_zero());
}

RealBall RealBall::of_int(const Int &v, mpfr_prec_t prec) {
  Real m(prec);
  int t = mpfr_set_z(m.get(), v.get_mpz_t(), MPFR_RNDN);
  Real r = round_error(m.get(), t);
  return RealBall(std::move(m), std::move(r));
}

RealBall RealBall::of_rat(const Rat &v, mpfr_prec_t prec) {
  Real m(prec);
  int t = mpfr_set_q(m.get(), v.get_mpq_t(), MPFR_RNDN);
  Real r = round_error(m.get(), t);
  return RealBall(std::move(m), std::move(r));
}

bool RealBall::contains_zero() const {
  return mpfr_cmpabs(mid_.get(), rad_.get()) <= 0;
}

bool RealBall::is_positive() const {
  return mpfr_sgn(mid_.get()) > 0 && mpfr_cmpabs(mid_.get(), rad_.get()) > 0;
}

bool RealBall::is_negative() const {
  return mpfr_sgn(mid_.get()) < 0 && mpfr_cmpabs(mid_.get(), rad_.get()) > 0;
}

bool RealBall::contains(const Rat &v) const {
  /* v in [mid - rad, mid + rad], decided with directed endpoints and an
     exact mpfr/mpq comparison. */
  Real lo = lower();
  Real hi = upper();
  return mpfr_cmp_q(lo.get(), v.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi.get(), v.get_mpq_t()) >= 0;
}

long RealBall::radius_exponent() const {
  if (rad_.is_zero()) return LONG_MIN;
  /* rad < 2^e by the mpfr exponent convention; if rad == 2^(e-1) exactly the
     tighter e-1 also works. */
  long e = rad_.exponent();
  Real p = Real::pow2(e - 1, kRadPrec);
  if (mpfr_cmp(rad_.get(), p.get()) == 0) return e - 1;
  return e;
}

Real RealBall::lower() const {
  Real r(mid_.prec());
  mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return r;
}

Real RealBall::upper() const {
  Real r(mid_.prec());
  mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return r;
}

RealBall operator+(const RealBall &a, const RealBall &b) {
  Real m(std::max(a.prec(), b.prec()));
  int t = mpfr_add(m.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  Real r(kRadPrec);
  mpfr_add(r.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  Real e = round_error(m.get(), t);
  mpfr_add(r.get(), r.get(), e.get(), MPFR_RNDU);
  return RealBall(std::move(m), std::move(r));
}

RealBall operator-(const RealBall &a, const RealBall &b) {
  Real m(std::max(a.prec(), b.prec()));
  int t = mpfr_sub(m.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  Real r(kRadPrec);
  mpfr_add(r.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  Real e = round_error(m.get(), t);
  mpfr_add(r.get(), r.get(), e.get(), MPFR_RNDU);
  return RealBall(std::move(m), std::move(r));
}

RealBall operator*(const RealBall &a, const RealBall &b) {
  Real m(std::max(a.prec(), b.prec()));
  int t = mpfr_mul(m.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  /* |m1| r2 + |m2| r1 + r1 r2 + rounding */
  Real r(kRadPrec), tmp(kRadPrec);
  Real a1 = abs_up(a.mid_.get());
  Real a2 = abs_up(b.mid_.get());
  mpfr_mul(r.get(), a1.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_mul(tmp.get(), a2.get(), a.rad_.get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), tmp.get(), MPFR_RNDU);
  mpfr_mul(tmp.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), tmp.get(), MPFR_RNDU);
  Real e = round_error(m.get(), t);
  mpfr_add(r.get(), r.get(), e.get(), MPFR_RNDU);
  return RealBall(std::move(m), std::move(r));
}

RealBall RealBall::operator-() const {
  Real m(mid_.prec());
  mpfr_neg(m.get(), mid_.get(), MPFR_RNDN); /* exact */
  return RealBall(std::move(m), rad_);
}

RealBall RealBall::abs_ball() const {
  Real m(mid_.prec());
  mpfr_abs(m.get(), mid_.get(), MPFR_RNDN); /* exact */
  return RealBall(std::move(m), rad_);
}

RealBall div(const RealBall &a, const RealBall &b) {
  /* denominator must be bounded away from zero */
  Real den_low(kRadPrec);
  mpfr_abs(den_low.get(), b.mid().get(), MPFR_RNDD);
  mpfr_sub(den_low.get(), den_low.get(), b.rad().get(), MPFR_RNDD);
  if (mpfr_sgn(den_low.get()) <= 0)
    throw precision_error("division by an enclosure containing zero");

  Real m(std::max(a.prec(), b.prec()));
  int t = mpfr_div(m.get(), a.mid().get(), b.mid().get(), MPFR_RNDN);
  Real e = round_error(m.get(), t);

  /* |x/y - m1/m2| <= (r1 + |m1/m2| r2) / (|m2| - r2), and |m1/m2| <= |m| + e */
  Real qa = abs_up(m.get());
  mpfr_add(qa.get(), qa.get(), e.get(), MPFR_RNDU);
  Real r(kRadPrec);
  mpfr_mul(r.get(), qa.get(), b.rad().get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), a.rad().get(), MPFR_RNDU);
  mpfr_div(r.get(), r.get(), den_low.get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), e.get(), MPFR_RNDU);
  return RealBall(std::move(m), std::move(r));
}

RealBall RealBall::inv() const {
  RealBall one = RealBall::of_int(Int(1), prec());
  return div(one, *this);
}

RealBall RealBall::nth_root(unsigned long n) const {
  if (n == 0) throw internal_error("0th root");
  Real low(kRadPrec);
  mpfr_sub(low.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(low.get()) <= 0)
    throw precision_error("root of an enclosure not certified positive");

  Real m(mid_.prec());
  int t = mpfr_rootn_ui(m.get(), mid_.get(), n, MPFR_RNDN);
  Real e = round_error(m.get(), t);

  /* slope bound: d/dt t^(1/n) = t^(1/n) / (n t), maximal at t = low */
  Real num(kRadPrec), den(kRadPrec), r(kRadPrec);
  mpfr_rootn_ui(num.get(), low.get(), n, MPFR_RNDU);
  mpfr_mul_ui(den.get(), low.get(), n, MPFR_RNDD);
  mpfr_div(r.get(), num.get(), den.get(), MPFR_RNDU);
  mpfr_mul(r.get(), r.get(), rad_.get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), e.get(), MPFR_RNDU);
  return RealBall(std::move(m), std::move(r));
}

RealBall RealBall::pow_int(const Int &e) const {
  if (sgn(e) == 0) return RealBall::of_int(Int(1), prec());
  if (sgn(e) < 0) {
    Int p(-e);
    return inv().pow_int(p);
  }
  RealBall acc = RealBall::of_int(Int(1), prec());
  RealBall base = *this;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    acc = acc * acc;
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * base;
  }
  return acc;
}

RealBall RealBall::mul_2exp(long e) const {
  Real m(mid_.prec());
  mpfr_mul_2si(m.get(), mid_.get(), e, MPFR_RNDN); /* exact */
  Real r(kRadPrec);
  mpfr_mul_2si(r.get(), rad_.get(), e, MPFR_RNDU);
  return RealBall(std::move(m), std::move(r));
}

bool RealBall::disjoint(const RealBall &a, const RealBall &b) {
  Real au = a.upper(), bu = b.upper();
  Real al = a.lower(), bl = b.lower();
  return mpfr_cmp(au.get(), bl.get()) < 0 || mpfr_cmp(bu.get(), al.get()) < 0;
}

std::string RealBall::str(size_t digits) const {
  std::string out = "[" + mid_.str(digits);
  if (rad_.is_zero())
    out += " +/- 0]";
  else
    out += " +/- 2^" + std::to_string(radius_exponent()) + "]";
  return out;
}

/* ----------------------------------------------------------- ComplexBall */

ComplexBall ComplexBall::of_real(RealBall r) {
  mpfr_prec_t p = r.prec();
  return ComplexBall(std::move(r), RealBall::exact_zero(p));
}

ComplexBall ComplexBall::conj() const { return ComplexBall(re, -im); }

ComplexBall ComplexBall::operator-() const { return ComplexBall(-re, -im); }

ComplexBall operator+(const ComplexBall &a, const ComplexBall &b) {
  return ComplexBall(a.re + b.re, a.im + b.im);
}

ComplexBall operator-(const ComplexBall &a, const ComplexBall &b) {
  return ComplexBall(a.re - b.re, a.im - b.im);
}

ComplexBall operator*(const ComplexBall &a, const ComplexBall &b) {
  return ComplexBall(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

ComplexBall ComplexBall::inv() const {
  RealBall d = abs_sq();
  return ComplexBall(div(re, d), div(-im, d));
}

RealBall ComplexBall::abs_sq() const { return re * re + im * im; }

Real ComplexBall::abs_upper() const {
  RealBall s = abs_sq();
  Real u = s.upper();
  Real r(kRadPrec);
  mpfr_sqrt(r.get(), u.get(), MPFR_RNDU);
  return r;
}

Real ComplexBall::abs_lower() const {
  RealBall s = abs_sq();
  Real l = s.lower();
  Real r(kRadPrec);
  if (mpfr_sgn(l.get()) <= 0) {
    mpfr_set_zero(r.get(), 1);
    return r;
  }
  mpfr_sqrt(r.get(), l.get(), MPFR_RNDD);
  return r;
}

bool ComplexBall::contains_zero() const {
  return re.contains_zero() && im.contains_zero();
}

}  // namespace qlindep
