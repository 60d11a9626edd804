#include "qlindep/ratpoly.hpp"

#include <algorithm>

namespace qlindep {

namespace {
const Rat kZero(0);
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::monomial(const Rat& a, std::size_t k) {
  if (a == 0) return RatPoly();
  std::vector<Rat> c(k + 1, Rat(0));
  c[k] = a;
  return RatPoly(std::move(c));
}

const Rat& RatPoly::lead() const {
  if (c_.empty()) return kZero;
  return c_.back();
}

const Rat& RatPoly::coeff(std::size_t k) const {
  if (k >= c_.size()) return kZero;
  return c_[k];
}

Rat RatPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return RatPoly();
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rat(static_cast<long>(k));
  return RatPoly(std::move(d));
}

RatPoly RatPoly::operator-() const {
  std::vector<Rat> c(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) c[k] = -c_[k];
  return RatPoly(std::move(c));
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t k = 0; k < c_.size(); ++k) c[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) c[k] += o.c_[k];
  return RatPoly(std::move(c));
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
  std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t k = 0; k < c_.size(); ++k) c[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) c[k] -= o.c_[k];
  return RatPoly(std::move(c));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (c_.empty() || o.c_.empty()) return RatPoly();
  std::vector<Rat> c(c_.size() + o.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return RatPoly(std::move(c));
}

RatPoly RatPoly::operator*(const Rat& s) const {
  if (s == 0) return RatPoly();
  std::vector<Rat> c(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) c[k] = c_[k] * s;
  return RatPoly(std::move(c));
}

AffineMap::AffineMap(Rat scale_, Rat shift_) : scale(std::move(scale_)), shift(std::move(shift_)) {
  if (scale <= 0) throw input_error("affine map needs scale > 0");
}

AffineMap AffineMap::composed(const AffineMap& outer, const AffineMap& inner) {
  return AffineMap(outer.scale * inner.scale, outer.scale * inner.shift + outer.shift);
}

RatPoly affine_compose(const RatPoly& f, const AffineMap& m) {
  // Horner in the polynomial ring: acc <- acc*(scale*x + shift) + coeff.
  RatPoly acc;
  const RatPoly lin{m.shift, m.scale};
  for (int k = f.degree(); k >= 0; --k) {
    acc = acc * lin + RatPoly::constant(f.coeff(static_cast<std::size_t>(k)));
  }
  return acc;
}

std::vector<Rat> binomial_basis(const RatPoly& f) {
  if (f.is_zero()) return {};
  const std::size_t n = static_cast<std::size_t>(f.degree()) + 1;
  std::vector<Rat> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f.eval(Rat(static_cast<long>(i)));
  // Forward differences at 0: after k rounds v[0] holds Delta^k f(0).
  std::vector<Rat> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = v[0];
    for (std::size_t i = 0; i + k + 1 < n; ++i) v[i] = v[i + 1] - v[i];
  }
  return out;
}

RatPoly from_binomial_basis(const std::vector<Rat>& basis_coeffs) {
  RatPoly acc;
  RatPoly binom = RatPoly::constant(Rat(1));  // C(x,0)
  for (std::size_t k = 0; k < basis_coeffs.size(); ++k) {
    if (k > 0) {
      // C(x,k) = C(x,k-1) * (x-(k-1)) / k
      binom = binom * RatPoly{Rat(-static_cast<long>(k - 1)), Rat(1)} * Rat(1, static_cast<long>(k));
    }
    acc = acc + binom * basis_coeffs[k];
  }
  return acc;
}

bool is_integer_valued(const RatPoly& f) {
  for (const Rat& c : binomial_basis(f))
    if (!rat_is_int(c)) return false;
  return true;
}

std::optional<Rat> rational_dth_root(const Rat& r, unsigned long d) {
  if (r <= 0) throw input_error("rational_dth_root needs r > 0");
  if (d == 0) throw input_error("rational_dth_root needs d >= 1");
  auto nr = int_dth_root(r.get_num(), d);
  if (!nr) return std::nullopt;
  auto dr = int_dth_root(r.get_den(), d);
  if (!dr) return std::nullopt;
  return rat_make(*nr, *dr);  // lowest terms already, roots of coprime parts
}

std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw input_error("polynomial division by zero");
  RatPoly r = a;
  if (a.degree() < b.degree()) return {RatPoly(), r};
  std::vector<Rat> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rat(0));
  const Rat inv_lead = 1 / b.lead();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
    const Rat f = r.lead() * inv_lead;
    q[shift] = f;
    r = r - b * RatPoly::monomial(f, shift);
  }
  return {RatPoly(std::move(q)), r};
}

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  while (!y.is_zero()) {
    RatPoly r = poly_divmod(x, y).second;
    x = y;
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x * (1 / x.lead());
}

ExtGcd poly_ext_gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly r0 = a, r1 = b;
  RatPoly u0 = RatPoly::constant(Rat(1)), u1;
  RatPoly v0, v1 = RatPoly::constant(Rat(1));
  while (!r1.is_zero()) {
    auto [q, r2] = poly_divmod(r0, r1);
    RatPoly u2 = u0 - q * u1;
    RatPoly v2 = v0 - q * v1;
    r0 = std::move(r1); r1 = std::move(r2);
    u0 = std::move(u1); u1 = std::move(u2);
    v0 = std::move(v1); v1 = std::move(v2);
  }
  if (r0.is_zero()) return {r0, u0, v0};
  const Rat s = 1 / r0.lead();
  return {r0 * s, u0 * s, v0 * s};
}

std::vector<Int> primitive_integer_coeffs(const RatPoly& p) {
  if (p.is_zero()) return {};
  Int den_lcm(1);
  for (const Rat& c : p.coeffs()) den_lcm = int_lcm(den_lcm, c.get_den());
  std::vector<Int> out(p.coeffs().size());
  Int content(0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    Rat scaled = p.coeff(k) * Rat(den_lcm);
    out[k] = scaled.get_num();  // denominator is 1 by construction
    content = int_gcd(content, out[k]);
  }
  for (auto& c : out) c /= content;
  return out;
}

// ---------------------------------------------------------------------------
// Sturm chains

SturmChain::SturmChain(const RatPoly& p) {
  if (p.is_zero()) return;
  // Squarefree part so the classic variation count applies.
  RatPoly sf = p;
  RatPoly g = poly_gcd(p, p.derivative());
  if (g.degree() > 0) sf = poly_divmod(p, g).first;
  chain_.push_back(sf);
  if (sf.degree() >= 1) chain_.push_back(sf.derivative());
  while (chain_.back().degree() >= 1) {
    RatPoly r = poly_divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.is_zero()) break;  // cannot happen for squarefree input; guard anyway
    // Normalize to a primitive integer polynomial; the scaling factor is
    // positive, so every sign evaluation is preserved while coefficient
    // growth stays bounded.
    std::vector<Int> prim = primitive_integer_coeffs(-r);
    std::vector<Rat> c(prim.size());
    for (std::size_t k = 0; k < prim.size(); ++k) c[k] = Rat(prim[k]);
    chain_.push_back(RatPoly(std::move(c)));
  }
}

int SturmChain::variations(const Rat& x) const {
  int var = 0, prev = 0;
  for (const RatPoly& s : chain_) {
    const Rat v = s.eval(x);
    const int sg = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (sg != 0) {
      if (prev != 0 && sg != prev) ++var;
      prev = sg;
    }
  }
  return var;
}

int SturmChain::variations_at_inf(int sign_dir) const {
  int var = 0, prev = 0;
  for (const RatPoly& s : chain_) {
    if (s.is_zero()) continue;
    int sg = s.lead() > 0 ? 1 : -1;
    if (sign_dir < 0 && s.degree() % 2 == 1) sg = -sg;
    if (prev != 0 && sg != prev) ++var;
    prev = sg;
  }
  return var;
}

int SturmChain::count(const Rat& a, const Rat& b) const {
  if (!(a < b)) throw input_error("SturmChain::count needs a < b");
  if (chain_.empty()) return 0;
  return variations(a) - variations(b);
}

int SturmChain::count_all() const {
  if (chain_.empty()) return 0;
  return variations_at_inf(-1) - variations_at_inf(+1);
}

// ---------------------------------------------------------------------------
// Integer roots

namespace {

void sturm_bisect(const SturmChain& chain, const RatPoly& p, const Int& lo, const Int& hi,
                  std::vector<Int>& out) {
  // Invariant: endpoints are integers, interval is (lo, hi].
  const int n = chain.count(Rat(lo), Rat(hi));
  if (n == 0) return;
  if (hi - lo == 1) {
    if (p.eval(Rat(hi)) == 0) out.push_back(hi);
    return;
  }
  Int mid = (lo + hi);
  mpz_fdiv_q_2exp(mid.get_mpz_t(), mid.get_mpz_t(), 1);
  sturm_bisect(chain, p, lo, mid, out);
  sturm_bisect(chain, p, mid, hi, out);
}

}  // namespace

Rat cauchy_root_bound(const RatPoly& p) {
  if (p.degree() < 0) throw input_error("root bound of zero polynomial");
  Rat m(0);
  for (int k = 0; k < p.degree(); ++k) {
    Rat a = rat_abs(p.coeff(static_cast<std::size_t>(k)) / p.lead());
    if (a > m) m = a;
  }
  return m + 1;
}

std::vector<Int> integer_roots(const RatPoly& p) {
  if (p.is_zero()) throw input_error("integer_roots of zero polynomial");
  std::vector<Int> out;
  // Strip the x^k factor: 0 is a root iff the trailing coefficient vanishes.
  std::size_t low = 0;
  while (low < p.coeffs().size() && p.coeff(low) == 0) ++low;
  RatPoly q;
  {
    std::vector<Rat> c(p.coeffs().begin() + static_cast<long>(low), p.coeffs().end());
    q = RatPoly(std::move(c));
  }
  if (low > 0) out.push_back(Int(0));
  if (q.degree() >= 1) {
    std::vector<Int> ic = primitive_integer_coeffs(q);
    Int a0 = ic[0];
    if (a0 < 0) a0 = -a0;
    static const Int kScanLimit("1000000000000");
    if (a0 <= kScanLimit) {
      auto try_root = [&](const Int& r) {
        if (q.eval(Rat(r)) == 0) out.push_back(r);
      };
      Int t(1);
      for (; t * t <= a0; ++t) {
        if (a0 % t != 0) continue;
        Int u = a0 / t;
        try_root(t);
        try_root(-t);
        if (u != t) {
          try_root(u);
          try_root(-u);
        }
      }
    } else {
      SturmChain chain(q);
      Int bound = rat_ceil(cauchy_root_bound(q));
      sturm_bisect(chain, q, -bound - 1, bound + 1, out);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace qlindep
