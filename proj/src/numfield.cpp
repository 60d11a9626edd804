#include "qlindep/numfield.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "qlindep/errors.hpp"

namespace qlindep {

namespace {

constexpr long kIrredDegreeCap = 24;
constexpr mpfr_prec_t kRadPrec = 64;

Real rad_zero() {
  Real r(kRadPrec);
  mpfr_set_zero(r.get(), 1);
  return r;
}

/* ---------------- approximate complex arithmetic (iteration only) ------ */

struct Cx {
  Real re, im;
  explicit Cx(mpfr_prec_t w) : re(w), im(w) {
    mpfr_set_zero(re.get(), 1);
    mpfr_set_zero(im.get(), 1);
  }
};

void c_sub(Cx &r, const Cx &a, const Cx &b) {
  mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

void c_mul(Cx &r, const Cx &a, const Cx &b, mpfr_prec_t w) {
  Real t1(w), t2(w), rr(w);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(rr.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_set(r.re.get(), rr.get(), MPFR_RNDN);
}

void c_div(Cx &r, const Cx &a, const Cx &b, mpfr_prec_t w) {
  Real d(w), t1(w), t2(w), rr(w);
  mpfr_mul(t1.get(), b.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(d.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(rr.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(rr.get(), rr.get(), d.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), r.im.get(), d.get(), MPFR_RNDN);
  mpfr_set(r.re.get(), rr.get(), MPFR_RNDN);
}

bool c_is_zero(const Cx &a) { return a.re.is_zero() && a.im.is_zero(); }

/* p(z) and p'(z) by a joint Horner pass */
void eval_p_dp(const std::vector<Int> &a, const Cx &z, Cx &p, Cx &dp,
               mpfr_prec_t w) {
  size_t d = a.size() - 1;
  mpfr_set_z(p.re.get(), a[d].get_mpz_t(), MPFR_RNDN);
  mpfr_set_zero(p.im.get(), 1);
  mpfr_set_zero(dp.re.get(), 1);
  mpfr_set_zero(dp.im.get(), 1);
  for (size_t k = d; k-- > 0;) {
    c_mul(dp, dp, z, w);
    mpfr_add(dp.re.get(), dp.re.get(), p.re.get(), MPFR_RNDN);
    mpfr_add(dp.im.get(), dp.im.get(), p.im.get(), MPFR_RNDN);
    c_mul(p, p, z, w);
    Real c(w);
    mpfr_set_z(c.get(), a[k].get_mpz_t(), MPFR_RNDN);
    mpfr_add(p.re.get(), p.re.get(), c.get(), MPFR_RNDN);
  }
}

/* Aberth-Ehrlich with immediate (Gauss-Seidel) updates. */
std::vector<Cx> aberth(const std::vector<Int> &a, mpfr_prec_t w,
                       const std::vector<Cx> *warm) {
  size_t d = a.size() - 1;
  std::vector<Cx> z;
  z.reserve(d);
  if (warm != nullptr && warm->size() == d) {
    for (const Cx &zz : *warm) {
      Cx c(w);
      mpfr_set(c.re.get(), zz.re.get(), MPFR_RNDN);
      mpfr_set(c.im.get(), zz.im.get(), MPFR_RNDN);
      z.push_back(std::move(c));
    }
  } else {
    /* perturbed circle of the Cauchy bound radius */
    Real r(w), pi(w), ang(w), s(w), c(w), amax(w), tmp(w);
    mpfr_set_zero(amax.get(), 1);
    for (size_t k = 0; k < d; ++k) {
      mpfr_set_z(tmp.get(), a[k].get_mpz_t(), MPFR_RNDN);
      mpfr_abs(tmp.get(), tmp.get(), MPFR_RNDN);
      mpfr_max(amax.get(), amax.get(), tmp.get(), MPFR_RNDN);
    }
    mpfr_set_z(tmp.get(), a[d].get_mpz_t(), MPFR_RNDN);
    mpfr_abs(tmp.get(), tmp.get(), MPFR_RNDN);
    mpfr_div(r.get(), amax.get(), tmp.get(), MPFR_RNDN);
    mpfr_add_ui(r.get(), r.get(), 1, MPFR_RNDN);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    for (size_t k = 0; k < d; ++k) {
      /* angle = pi (4k + 1) / (2d) */
      mpfr_mul_ui(ang.get(), pi.get(), 4 * k + 1, MPFR_RNDN);
      mpfr_div_ui(ang.get(), ang.get(), 2 * d, MPFR_RNDN);
      mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
      Cx zz(w);
      mpfr_mul(zz.re.get(), r.get(), c.get(), MPFR_RNDN);
      mpfr_mul(zz.im.get(), r.get(), s.get(), MPFR_RNDN);
      z.push_back(std::move(zz));
    }
  }

  const long maxit = 80 + 10 * static_cast<long>(d);
  Real thresh(kRadPrec);
  mpfr_set_si_2exp(thresh.get(), 1, -2 * (static_cast<long>(w) - 24), MPFR_RNDN);
  for (long it = 0; it < maxit; ++it) {
    bool converged = true;
    for (size_t i = 0; i < d; ++i) {
      Cx p(w), dp(w), n(w), ssum(w), diff(w), inv(w), corr(w), one(w);
      eval_p_dp(a, z[i], p, dp, w);
      if (c_is_zero(p)) continue;
      if (c_is_zero(dp)) {
        /* nudge off the critical point, deterministically */
        Real eps(w);
        mpfr_set_si_2exp(eps.get(), 1, -static_cast<long>(w) / 4, MPFR_RNDN);
        mpfr_add(z[i].re.get(), z[i].re.get(), eps.get(), MPFR_RNDN);
        converged = false;
        continue;
      }
      c_div(n, p, dp, w);
      for (size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        c_sub(diff, z[i], z[j]);
        if (c_is_zero(diff)) {
          mpfr_set_si_2exp(diff.re.get(), 1, -static_cast<long>(w) / 4,
                           MPFR_RNDN);
        }
        mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
        mpfr_set_zero(one.im.get(), 1);
        c_div(inv, one, diff, w);
        mpfr_add(ssum.re.get(), ssum.re.get(), inv.re.get(), MPFR_RNDN);
        mpfr_add(ssum.im.get(), ssum.im.get(), inv.im.get(), MPFR_RNDN);
      }
      c_mul(corr, n, ssum, w);
      mpfr_ui_sub(corr.re.get(), 1, corr.re.get(), MPFR_RNDN);
      mpfr_neg(corr.im.get(), corr.im.get(), MPFR_RNDN);
      if (c_is_zero(corr)) {
        mpfr_set_ui(corr.re.get(), 1, MPFR_RNDN);
      }
      c_div(corr, n, corr, w);
      mpfr_sub(z[i].re.get(), z[i].re.get(), corr.re.get(), MPFR_RNDN);
      mpfr_sub(z[i].im.get(), z[i].im.get(), corr.im.get(), MPFR_RNDN);
      /* relative convergence: |corr|^2 <= (1 + |z|^2) 2^(-2(w-24)) */
      Real c2(w), z2(w), t(w);
      mpfr_mul(c2.get(), corr.re.get(), corr.re.get(), MPFR_RNDN);
      mpfr_mul(t.get(), corr.im.get(), corr.im.get(), MPFR_RNDN);
      mpfr_add(c2.get(), c2.get(), t.get(), MPFR_RNDN);
      mpfr_mul(z2.get(), z[i].re.get(), z[i].re.get(), MPFR_RNDN);
      mpfr_mul(t.get(), z[i].im.get(), z[i].im.get(), MPFR_RNDN);
      mpfr_add(z2.get(), z2.get(), t.get(), MPFR_RNDN);
      mpfr_add_ui(z2.get(), z2.get(), 1, MPFR_RNDN);
      mpfr_mul(z2.get(), z2.get(), thresh.get(), MPFR_RNDN);
      if (mpfr_cmp(c2.get(), z2.get()) > 0) converged = false;
    }
    if (converged) break;
  }
  return z;
}

/* Horner evaluation of p and p' at an exact center, in ball arithmetic. */
void ball_eval_p_dp(const std::vector<Int> &a, const ComplexBall &z,
                    mpfr_prec_t w, std::optional<ComplexBall> &p,
                    std::optional<ComplexBall> &dp) {
  size_t d = a.size() - 1;
  ComplexBall pv = ComplexBall::of_real(RealBall::of_int(a[d], w));
  ComplexBall dv =
      ComplexBall(RealBall::exact_zero(w), RealBall::exact_zero(w));
  for (size_t k = d; k-- > 0;) {
    dv = dv * z + pv;
    pv = pv * z + ComplexBall::of_real(RealBall::of_int(a[k], w));
  }
  p = std::move(pv);
  dp = std::move(dv);
}

/* Disk of radius d*|p(z)/p'(z)| centered at z contains at least one root;
   pairwise-disjoint disks therefore contain exactly one root each. */
std::optional<std::vector<RootEnclosure>> certify_roots(
    const std::vector<Int> &a, const std::vector<Cx> &z, mpfr_prec_t w,
    long target_bits) {
  size_t d = a.size() - 1;
  std::vector<RootEnclosure> encs;
  Real cap = Real::pow2(-target_bits / 2, kRadPrec);
  for (size_t i = 0; i < d; ++i) {
    Real cre(w), cim(w);
    mpfr_set(cre.get(), z[i].re.get(), MPFR_RNDN);
    mpfr_set(cim.get(), z[i].im.get(), MPFR_RNDN);
    ComplexBall zb(RealBall(cre, rad_zero()), RealBall(cim, rad_zero()));
    std::optional<ComplexBall> p, dp;
    ball_eval_p_dp(a, zb, w, p, dp);
    Real num = p->abs_upper();
    Real den = dp->abs_lower();
    if (mpfr_sgn(den.get()) <= 0) return std::nullopt;
    Real r(kRadPrec);
    mpfr_mul_ui(r.get(), num.get(), static_cast<unsigned long>(d), MPFR_RNDU);
    mpfr_div(r.get(), r.get(), den.get(), MPFR_RNDU);
    if (mpfr_cmp(r.get(), cap.get()) > 0) return std::nullopt;
    encs.push_back(RootEnclosure{std::move(cre), std::move(cim), std::move(r)});
  }
  /* pairwise disjointness, certified */
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = i + 1; j < d; ++j) {
      RealBall rei(encs[i].center_re, rad_zero());
      RealBall imi(encs[i].center_im, rad_zero());
      RealBall rej(encs[j].center_re, rad_zero());
      RealBall imj(encs[j].center_im, rad_zero());
      RealBall dre = rei - rej;
      RealBall dim = imi - imj;
      RealBall dsq = dre * dre + dim * dim;
      Real rsum(kRadPrec), rsq(kRadPrec);
      mpfr_add(rsum.get(), encs[i].radius.get(), encs[j].radius.get(),
               MPFR_RNDU);
      mpfr_mul(rsq.get(), rsum.get(), rsum.get(), MPFR_RNDU);
      Real dlow = dsq.lower();
      if (mpfr_cmp(dlow.get(), rsq.get()) <= 0) return std::nullopt;
    }
  }
  return encs;
}

/* All roots of the (squarefree) integer polynomial, as certified disks of
   radius <= 2^(-bits/2), deterministically ordered. */
std::vector<RootEnclosure> certified_roots_of(const std::vector<Int> &a,
                                              long bits) {
  size_t d = a.size() - 1;
  if (d == 1) {
    /* root = -a0/a1 exactly (a1 = 1 for monic callers) */
    Rat root = Rat(-a[0]) / Rat(a[1]);
    Real cre = Real::of_rat(root, std::max<long>(bits, 64), MPFR_RNDN);
    Real cim(std::max<long>(bits, 64));
    mpfr_set_zero(cim.get(), 1);
    /* of_rat at this precision is exact for the integers we accept; keep a
       one-ulp radius if mpfr had to round */
    Real r(kRadPrec);
    if (mpfr_cmp_q(cre.get(), root.get_mpq_t()) == 0) {
      mpfr_set_zero(r.get(), 1);
    } else {
      mpfr_set_si_2exp(r.get(), 1, cre.exponent() - cre.prec(), MPFR_RNDU);
    }
    std::vector<RootEnclosure> one;
    one.push_back(RootEnclosure{std::move(cre), std::move(cim), std::move(r)});
    return one;
  }

  mpfr_prec_t w = static_cast<mpfr_prec_t>(bits + 128);
  const mpfr_prec_t wcap = static_cast<mpfr_prec_t>(64 * (bits + 128));
  std::vector<Cx> warm;
  bool have_warm = false;
  while (true) {
    std::vector<Cx> z = aberth(a, w, have_warm ? &warm : nullptr);
    auto encs = certify_roots(a, z, w, bits);
    if (encs.has_value()) {
      std::stable_sort(encs->begin(), encs->end(),
                       [](const RootEnclosure &x, const RootEnclosure &y) {
                         int c = mpfr_cmp(x.center_re.get(), y.center_re.get());
                         if (c != 0) return c < 0;
                         return mpfr_cmp(x.center_im.get(), y.center_im.get()) <
                                0;
                       });
      return std::move(*encs);
    }
    warm = std::move(z);
    have_warm = true;
    w *= 2;
    if (w > wcap)
      throw precision_error(
          "root enclosures of the requested quality unattainable");
  }
}

ComplexBall disk_box(const RootEnclosure &e) {
  Real r(kRadPrec);
  mpfr_set(r.get(), e.radius.get(), MPFR_RNDU);
  return ComplexBall(RealBall(e.center_re, r), RealBall(e.center_im, r));
}

bool boxes_overlap(const ComplexBall &a, const ComplexBall &b) {
  return !RealBall::disjoint(a.re, b.re) && !RealBall::disjoint(a.im, b.im);
}

/* DFS over root subsets of size <= d/2; returns an exact integer factor if
   one exists, sets ambiguous if some subset could not be resolved. */
struct FactorSearch {
  const RatPoly &poly;
  const std::vector<ComplexBall> &boxes;
  size_t half;
  bool ambiguous = false;
  std::optional<RatPoly> factor;

  void run() {
    std::vector<ComplexBall> prod;
    prod.push_back(ComplexBall::of_real(
        RealBall::of_int(Int(1), boxes.empty() ? 64 : boxes[0].re.prec())));
    dfs(0, 0, prod);
  }

  void dfs(size_t idx, size_t size, const std::vector<ComplexBall> &prod) {
    if (factor.has_value()) return;
    if (size >= 1) test(prod, size);
    if (factor.has_value() || idx == boxes.size()) return;
    dfs(idx + 1, size, prod);
    if (factor.has_value() || size + 1 > half) return;
    /* multiply by (x - z_idx) */
    std::vector<ComplexBall> next;
    next.reserve(prod.size() + 1);
    ComplexBall mz = -boxes[idx];
    next.push_back(prod[0] * mz);
    for (size_t k = 1; k < prod.size(); ++k)
      next.push_back(prod[k - 1] + prod[k] * mz);
    next.push_back(prod.back());
    dfs(idx + 1, size + 1, next);
  }

  void test(const std::vector<ComplexBall> &prod, size_t size) {
    std::vector<Int> cand(size);
    for (size_t k = 0; k < size; ++k) {
      const ComplexBall &c = prod[k];
      if (!c.im.contains_zero()) return; /* not a real factor */
      Real lo = c.re.lower();
      Real hi = c.re.upper();
      Int ilo, ihi;
      mpfr_get_z(ilo.get_mpz_t(), lo.get(), MPFR_RNDU); /* ceil */
      mpfr_get_z(ihi.get_mpz_t(), hi.get(), MPFR_RNDD); /* floor */
      if (ilo > ihi) return; /* no integer in range: rigorously rejected */
      if (ilo < ihi) {
        ambiguous = true;
        return;
      }
      cand[k] = ilo;
    }
    std::vector<Rat> cs(size + 1);
    for (size_t k = 0; k < size; ++k) cs[k] = Rat(cand[k]);
    cs[size] = Rat(1);
    RatPoly g(std::move(cs));
    auto qr = poly_divmod(poly, g);
    if (qr.second.degree() < 0) factor = g;
  }
};

void verify_irreducible(const RatPoly &p, const std::vector<Int> &a) {
  size_t d = a.size() - 1;
  if (d <= 1) return;
  for (long bits = 192; bits <= 12288; bits *= 2) {
    std::vector<RootEnclosure> encs;
    try {
      encs = certified_roots_of(a, bits);
    } catch (const precision_error &) {
      continue;
    }
    std::vector<ComplexBall> boxes;
    boxes.reserve(d);
    for (const RootEnclosure &e : encs) boxes.push_back(disk_box(e));
    FactorSearch fs{p, boxes, d / 2, false, std::nullopt};
    fs.run();
    if (fs.factor.has_value())
      throw input_error("min_poly is reducible over the integers");
    if (!fs.ambiguous) return;
  }
  throw precision_error("irreducibility undecided at precision cap");
}

}  // namespace

/* ----------------------------------------------------------- NumberField */

NumberField::NumberField(RatPoly p, Rat lo, Rat hi, std::vector<Int> ic)
    : poly_(std::move(p)), lo_(std::move(lo)), hi_(std::move(hi)),
      icoeffs_(std::move(ic)) {}

NumberField field_new(const RatPoly &min_poly, const Rat &hint_lo,
                      const Rat &hint_hi) {
  long d = min_poly.degree();
  if (d < 1) throw input_error("min_poly must be nonconstant");
  if (d > kIrredDegreeCap) throw input_error("min_poly degree above cap");
  if (min_poly.coeff(d) != 1) throw input_error("min_poly must be monic");
  std::vector<Int> ic;
  ic.reserve(static_cast<size_t>(d) + 1);
  for (long k = 0; k <= d; ++k) {
    const Rat &c = min_poly.coeff(k);
    if (!rat_is_int(c)) throw input_error("min_poly must have integer coefficients");
    ic.push_back(c.get_num());
  }
  if (hint_lo >= hint_hi) throw input_error("empty root hint interval");

  if (d >= 2) {
    RatPoly g = poly_gcd(min_poly, min_poly.derivative());
    if (g.degree() > 0)
      throw input_error("min_poly is reducible over the integers");
  }

  SturmChain chain(min_poly);
  if (chain.count(hint_lo, hint_hi) != 1)
    throw input_error("root hint must isolate exactly one real root");
  Rat lo = hint_lo;
  if (lo < 1) {
    if (!(hint_hi > 1) || chain.count(Rat(1), hint_hi) != 1)
      throw input_error("no real root greater than one in hint");
    lo = Rat(1);
  }

  verify_irreducible(min_poly, ic);
  return NumberField(min_poly, lo, hint_hi, std::move(ic));
}

FieldElem NumberField::zero() const {
  return FieldElem{std::vector<Rat>(degree())};
}

FieldElem NumberField::one() const { return from_rat(Rat(1)); }

FieldElem NumberField::from_rat(const Rat &r) const {
  std::vector<Rat> c(degree());
  c[0] = r;
  return FieldElem{std::move(c)};
}

FieldElem NumberField::gen() const { return reduce(RatPoly{Rat(0), Rat(1)}); }

FieldElem NumberField::reduce(const RatPoly &p) const {
  RatPoly r = poly_divmod(p, poly_).second;
  std::vector<Rat> c(degree());
  for (long k = 0; k <= r.degree(); ++k) c[static_cast<size_t>(k)] = r.coeff(k);
  return FieldElem{std::move(c)};
}

/* ------------------------------------------------------- element algebra */

namespace {

void check_elem(const NumberField &F, const FieldElem &a) {
  if (a.coords.size() != F.degree())
    throw internal_error("field element of wrong degree");
}

RatPoly elem_to_poly(const FieldElem &a) {
  return RatPoly(std::vector<Rat>(a.coords.begin(), a.coords.end()));
}

}  // namespace

bool elem_is_zero(const FieldElem &a) {
  for (const Rat &c : a.coords)
    if (c != 0) return false;
  return true;
}

bool elem_is_rational(const FieldElem &a) {
  for (size_t k = 1; k < a.coords.size(); ++k)
    if (a.coords[k] != 0) return false;
  return true;
}

FieldElem elem_add(const NumberField &F, const FieldElem &a, const FieldElem &b) {
  check_elem(F, a);
  check_elem(F, b);
  FieldElem r = a;
  for (size_t k = 0; k < r.coords.size(); ++k) r.coords[k] += b.coords[k];
  return r;
}

FieldElem elem_sub(const NumberField &F, const FieldElem &a, const FieldElem &b) {
  check_elem(F, a);
  check_elem(F, b);
  FieldElem r = a;
  for (size_t k = 0; k < r.coords.size(); ++k) r.coords[k] -= b.coords[k];
  return r;
}

FieldElem elem_neg(const NumberField &F, const FieldElem &a) {
  check_elem(F, a);
  FieldElem r = a;
  for (Rat &c : r.coords) c = -c;
  return r;
}

FieldElem elem_scale(const NumberField &F, const Rat &c, const FieldElem &a) {
  check_elem(F, a);
  FieldElem r = a;
  for (Rat &x : r.coords) x *= c;
  return r;
}

FieldElem elem_mul(const NumberField &F, const FieldElem &a, const FieldElem &b) {
  check_elem(F, a);
  check_elem(F, b);
  return F.reduce(elem_to_poly(a) * elem_to_poly(b));
}

FieldElem elem_div(const NumberField &F, const FieldElem &a, const FieldElem &b) {
  check_elem(F, a);
  check_elem(F, b);
  if (elem_is_zero(b)) throw input_error("field division by zero");
  ExtGcd eg = poly_ext_gcd(elem_to_poly(b), F.min_poly());
  if (eg.g.degree() != 0)
    throw internal_error("nontrivial gcd with an irreducible modulus");
  RatPoly inv = eg.u * (Rat(1) / eg.g.coeff(0));
  return F.reduce(elem_to_poly(a) * inv);
}

FieldElem elem_pow(const NumberField &F, const FieldElem &a, const Int &e) {
  check_elem(F, a);
  if (sgn(e) == 0) return F.one();
  if (sgn(e) < 0) {
    Int p(-e);
    return elem_pow(F, elem_div(F, F.one(), a), p);
  }
  FieldElem acc = F.one();
  FieldElem base = a;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    acc = elem_mul(F, acc, acc);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = elem_mul(F, acc, base);
  }
  return acc;
}

/* --------------------------------------------- algebraic integer check */

bool is_algebraic_integer(const NumberField &F, const FieldElem &a) {
  check_elem(F, a);
  size_t d = F.degree();
  /* multiplication-by-a matrix in the power basis, column j = a * q^j */
  std::vector<std::vector<Rat>> m(d, std::vector<Rat>(d));
  FieldElem col = a;
  for (size_t j = 0; j < d; ++j) {
    for (size_t i = 0; i < d; ++i) m[i][j] = col.coords[i];
    if (j + 1 < d) col = elem_mul(F, col, F.gen());
  }
  /* Faddeev-LeVerrier: B_0 = I; A_k = M B_{k-1}; c_{d-k} = -tr(A_k)/k;
     B_k = A_k + c_{d-k} I.  Char poly x^d + c_{d-1} x^{d-1} + ... + c_0. */
  std::vector<std::vector<Rat>> b(d, std::vector<Rat>(d));
  for (size_t i = 0; i < d; ++i) b[i][i] = 1;
  bool all_int = true;
  for (size_t k = 1; k <= d; ++k) {
    std::vector<std::vector<Rat>> ak(d, std::vector<Rat>(d));
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) {
        Rat s(0);
        for (size_t t = 0; t < d; ++t) s += m[i][t] * b[t][j];
        ak[i][j] = s;
      }
    Rat tr(0);
    for (size_t i = 0; i < d; ++i) tr += ak[i][i];
    Rat c = -tr / Rat(static_cast<long>(k));
    if (!rat_is_int(c)) all_int = false;
    for (size_t i = 0; i < d; ++i) ak[i][i] += c;
    b = std::move(ak);
  }
  return all_int;
}

/* ------------------------------------------------------------ embeddings */

std::vector<RootEnclosure> embeddings(const NumberField &F,
                                      long precision_bits) {
  if (precision_bits < 64) throw input_error("embedding precision below 64");
  return certified_roots_of(F.int_coeffs(), precision_bits);
}

std::vector<RootEnclosure> certified_roots(const std::vector<Int> &coeffs,
                                           long precision_bits) {
  if (precision_bits < 64) throw input_error("embedding precision below 64");
  if (coeffs.size() < 2 || coeffs.back() == 0)
    throw input_error("need a nonconstant polynomial with nonzero lead");
  std::vector<Rat> rc;
  rc.reserve(coeffs.size());
  for (const Int &c : coeffs) rc.emplace_back(c);
  RatPoly p(std::move(rc));
  if (p.degree() >= 2 && poly_gcd(p, p.derivative()).degree() > 0)
    throw input_error("polynomial must be squarefree");
  return certified_roots_of(coeffs, precision_bits);
}

size_t distinguished_index(const NumberField &F,
                           const std::vector<RootEnclosure> &encs) {
  if (encs.size() == 1) return 0;
  Rat lo = F.hint_lo();
  Rat hi = F.hint_hi();
  SturmChain chain(F.min_poly());
  for (int round = 0; round < 512; ++round) {
    std::vector<size_t> cand;
    for (size_t i = 0; i < encs.size(); ++i) {
      const RootEnclosure &e = encs[i];
      if (mpfr_cmpabs(e.center_im.get(), e.radius.get()) > 0) continue;
      Real relo(e.center_re.prec()), rehi(e.center_re.prec());
      mpfr_sub(relo.get(), e.center_re.get(), e.radius.get(), MPFR_RNDD);
      mpfr_add(rehi.get(), e.center_re.get(), e.radius.get(), MPFR_RNDU);
      /* [relo, rehi] must meet (lo, hi] */
      if (mpfr_cmp_q(relo.get(), hi.get_mpq_t()) > 0) continue;
      if (mpfr_cmp_q(rehi.get(), lo.get_mpq_t()) <= 0) continue;
      cand.push_back(i);
    }
    if (cand.size() == 1) return cand[0];
    if (cand.empty())
      throw internal_error("distinguished root escaped every enclosure");
    /* shrink the isolating interval and retry */
    Rat mid = (lo + hi) / 2;
    if (chain.count(mid, hi) == 1)
      lo = mid;
    else
      hi = mid;
  }
  throw precision_error("could not separate the distinguished enclosure");
}

/* -------------------------------------------------------- classification */

namespace {

using Mag = ConjugateEvidence::Magnitude;

bool is_palindromic(const std::vector<Int> &a) {
  size_t n = a.size();
  for (size_t k = 0; k < n; ++k)
    if (a[k] != a[n - 1 - k]) return false;
  return true;
}

/* magnitude of every point of the disk vs 1, when decidable */
Mag disk_magnitude(const RootEnclosure &e) {
  ComplexBall box = disk_box(e);
  Real up = box.abs_upper();
  Real lo = box.abs_lower();
  if (mpfr_cmp_ui(up.get(), 1) < 0) return Mag::less_one;
  if (mpfr_cmp_ui(lo.get(), 1) > 0) return Mag::greater_one;
  return Mag::undecided;
}

/* index of the unique enclosure whose box overlaps `target`, or nullopt */
std::optional<size_t> unique_partner(const ComplexBall &target,
                                     const std::vector<ComplexBall> &boxes) {
  std::optional<size_t> hit;
  for (size_t j = 0; j < boxes.size(); ++j) {
    if (!boxes_overlap(target, boxes[j])) continue;
    if (hit.has_value()) return std::nullopt;
    hit = j;
  }
  return hit;
}

}  // namespace

BaseClass classify_base(const NumberField &F) {
  return classify_base(F, 128, 8192);
}

BaseClass classify_base(const NumberField &F, long start_bits, long cap_bits) {
  const bool palin = is_palindromic(F.int_coeffs());
  for (long bits = start_bits; bits <= cap_bits; bits *= 2) {
    std::vector<RootEnclosure> encs;
    size_t di;
    try {
      encs = embeddings(F, bits);
      di = distinguished_index(F, encs);
    } catch (const precision_error &) {
      continue;
    }
    size_t d = encs.size();
    std::vector<Mag> mag(d);
    for (size_t i = 0; i < d; ++i) mag[i] = disk_magnitude(encs[i]);
    if (mag[di] != Mag::greater_one) continue; /* q > 1 not yet visible */

    if (palin) {
      /* self-reciprocal pairing: if the reciprocal partner of a root equals
         its conjugate partner then 1/z = conj(z), hence |z| = 1 exactly */
      std::vector<ComplexBall> boxes;
      boxes.reserve(d);
      for (const RootEnclosure &e : encs) boxes.push_back(disk_box(e));
      for (size_t i = 0; i < d; ++i) {
        if (mag[i] != Mag::undecided) continue;
        std::optional<size_t> cp = unique_partner(boxes[i].conj(), boxes);
        std::optional<size_t> rp;
        try {
          rp = unique_partner(boxes[i].inv(), boxes);
        } catch (const precision_error &) {
          rp = std::nullopt;
        }
        if (cp.has_value() && rp.has_value() && *cp == *rp)
          mag[i] = Mag::equal_one;
      }
    }

    bool all_less = true, any_greater = false, any_equal = false,
         any_undecided = false;
    for (size_t i = 0; i < d; ++i) {
      if (i == di) continue;
      if (mag[i] != Mag::less_one) all_less = false;
      if (mag[i] == Mag::greater_one) any_greater = true;
      if (mag[i] == Mag::equal_one) any_equal = true;
      if (mag[i] == Mag::undecided) any_undecided = true;
    }

    auto evidence = [&]() {
      std::vector<ConjugateEvidence> ev;
      ev.reserve(d);
      for (size_t i = 0; i < d; ++i)
        ev.push_back(ConjugateEvidence{encs[i], mag[i], i == di});
      return ev;
    };

    if (all_less) return BaseClass{BaseClass::Kind::pisot, evidence(), bits};
    if (any_greater)
      return BaseClass{BaseClass::Kind::neither, evidence(), bits};
    if (palin && !any_undecided && any_equal)
      return BaseClass{BaseClass::Kind::salem, evidence(), bits};
    /* some conjugate still straddles the unit circle: refine */
  }
  throw precision_error("base classification undecided at precision cap");
}

/* -------------------------------------------------- field polynomials */

FieldPoly fp_make(const NumberField &F, std::vector<FieldElem> coeffs) {
  for (const FieldElem &c : coeffs) check_elem(F, c);
  while (!coeffs.empty() && elem_is_zero(coeffs.back())) coeffs.pop_back();
  return FieldPoly{std::move(coeffs)};
}

long fp_degree(const FieldPoly &p) {
  long d = static_cast<long>(p.coeffs.size()) - 1;
  while (d >= 0 && elem_is_zero(p.coeffs[static_cast<size_t>(d)])) --d;
  return d;
}

bool fp_is_zero(const FieldPoly &p) { return fp_degree(p) < 0; }

FieldPoly fp_add(const NumberField &F, const FieldPoly &a, const FieldPoly &b) {
  std::vector<FieldElem> c(std::max(a.coeffs.size(), b.coeffs.size()),
                           F.zero());
  for (size_t k = 0; k < a.coeffs.size(); ++k)
    c[k] = elem_add(F, c[k], a.coeffs[k]);
  for (size_t k = 0; k < b.coeffs.size(); ++k)
    c[k] = elem_add(F, c[k], b.coeffs[k]);
  return fp_make(F, std::move(c));
}

FieldPoly fp_sub(const NumberField &F, const FieldPoly &a, const FieldPoly &b) {
  std::vector<FieldElem> c(std::max(a.coeffs.size(), b.coeffs.size()),
                           F.zero());
  for (size_t k = 0; k < a.coeffs.size(); ++k)
    c[k] = elem_add(F, c[k], a.coeffs[k]);
  for (size_t k = 0; k < b.coeffs.size(); ++k)
    c[k] = elem_sub(F, c[k], b.coeffs[k]);
  return fp_make(F, std::move(c));
}

FieldPoly fp_mul(const NumberField &F, const FieldPoly &a, const FieldPoly &b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return FieldPoly{};
  std::vector<FieldElem> c(a.coeffs.size() + b.coeffs.size() - 1, F.zero());
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j)
      c[i + j] = elem_add(F, c[i + j], elem_mul(F, a.coeffs[i], b.coeffs[j]));
  return fp_make(F, std::move(c));
}

FieldPoly fp_scale(const NumberField &F, const FieldElem &c, const FieldPoly &a) {
  std::vector<FieldElem> r;
  r.reserve(a.coeffs.size());
  for (const FieldElem &x : a.coeffs) r.push_back(elem_mul(F, c, x));
  return fp_make(F, std::move(r));
}

FieldElem fp_eval(const NumberField &F, const FieldPoly &p, const FieldElem &x) {
  FieldElem acc = F.zero();
  for (size_t k = p.coeffs.size(); k-- > 0;)
    acc = elem_add(F, elem_mul(F, acc, x), p.coeffs[k]);
  return acc;
}

FieldPoly fp_compose_linear(const NumberField &F, const FieldPoly &p,
                            const Rat &a, const Rat &b) {
  /* Horner in the argument a x + b */
  std::vector<FieldElem> acc;
  for (size_t k = p.coeffs.size(); k-- > 0;) {
    /* acc <- acc * (a x + b) + p_k */
    std::vector<FieldElem> next(acc.size() + 1, F.zero());
    for (size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] = elem_add(F, next[i + 1], elem_scale(F, a, acc[i]));
      next[i] = elem_add(F, next[i], elem_scale(F, b, acc[i]));
    }
    if (next.empty()) next.push_back(F.zero());
    next[0] = elem_add(F, next[0], p.coeffs[k]);
    acc = std::move(next);
  }
  return fp_make(F, std::move(acc));
}

FieldPoly fp_from_ratpoly(const NumberField &F, const RatPoly &p) {
  std::vector<FieldElem> c;
  for (long k = 0; k <= p.degree(); ++k) c.push_back(F.from_rat(p.coeff(k)));
  return fp_make(F, std::move(c));
}

}  // namespace qlindep
