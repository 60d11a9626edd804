#include "qlindep/equiv.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>

namespace qlindep {

// ---------------------------------------------------------------------------
// ShiftSolutionSet

ShiftSolutionSet ShiftSolutionSet::empty() { return ShiftSolutionSet(); }

ShiftSolutionSet ShiftSolutionSet::all() {
  ShiftSolutionSet s;
  s.kind_ = Kind::All;
  return s;
}

ShiftSolutionSet ShiftSolutionSet::finite(std::vector<Int> shifts) {
  if (shifts.empty()) return empty();
  std::sort(shifts.begin(), shifts.end());
  shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
  ShiftSolutionSet s;
  s.kind_ = Kind::Finite;
  s.finite_ = std::move(shifts);
  return s;
}

ShiftSolutionSet ShiftSolutionSet::progression(Int modulus, Int residue) {
  if (modulus < 1) throw input_error("progression modulus must be >= 1");
  if (modulus == 1) return all();
  ShiftSolutionSet s;
  s.kind_ = Kind::Progressions;
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
  s.modulus_ = std::move(modulus);
  s.residues_ = {r};
  return s;
}

bool ShiftSolutionSet::contains(const Int& a) const {
  switch (kind_) {
    case Kind::All:
      return true;
    case Kind::Empty:
      return false;
    case Kind::Finite:
      return std::binary_search(finite_.begin(), finite_.end(), a);
    case Kind::Progressions: {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), modulus_.get_mpz_t());
      return std::binary_search(residues_.begin(), residues_.end(), r);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// decide_equiv

namespace {

void require_equiv_input(const RatPoly& p, const char* side) {
  if (p.degree() < 1) throw input_error(std::string(side) + ": nonconstant polynomial required");
  if (p.lead() <= 0) throw input_error(std::string(side) + ": positive leading coefficient required");
}

void require_order_poly(const RatPoly& p, const char* side) {
  if (p.degree() < 2) throw input_error(std::string(side) + ": degree >= 2 required");
  if (p.lead() <= 0) throw input_error(std::string(side) + ": positive leading coefficient required");
  if (!is_integer_valued(p)) throw input_error(std::string(side) + ": integer-valued polynomial required");
}

}  // namespace

std::optional<EquivWitness> decide_equiv(const RatPoly& F, const RatPoly& G) {
  require_equiv_input(F, "decide_equiv F");
  require_equiv_input(G, "decide_equiv G");
  if (F.degree() != G.degree()) return std::nullopt;
  const unsigned long d = static_cast<unsigned long>(F.degree());
  auto b = rational_dth_root(F.lead() / G.lead(), d);
  if (!b) return std::nullopt;
  // x^{d-1} of G(bx+c): G_d * d * b^{d-1} * c + G_{d-1} * b^{d-1}.
  const Rat bd1 = rat_pow(*b, static_cast<long>(d) - 1);
  const Rat c = (F.coeff(d - 1) - G.coeff(d - 1) * bd1) /
                (Rat(static_cast<long>(d)) * G.lead() * bd1);
  const RatPoly resid = F - affine_compose(G, AffineMap(*b, c));
  if (!resid.is_constant()) return std::nullopt;
  const Rat dv = resid.coeff(0);
  if (!rat_is_int(dv)) return std::nullopt;
  return EquivWitness{*b, c, dv.get_num()};
}

bool verify_equiv(const RatPoly& F, const RatPoly& G, const EquivWitness& w) {
  if (w.b <= 0) return false;
  return F == affine_compose(G, AffineMap(w.b, w.c)) + RatPoly::constant(Rat(w.d));
}

// ---------------------------------------------------------------------------
// shift_solutions

namespace {

/* Polynomials in x whose coefficients are polynomials in A. Only used here,
 * only multiplication by a linear factor and subtraction are needed. */
using BiPoly = std::vector<RatPoly>;  // index = power of x, entry = poly in A

void bipoly_trim(BiPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/* acc <- acc * (xcoef * x + acoef(A)) + (k-constant). */
BiPoly bipoly_mul_linear(const BiPoly& acc, const Rat& xcoef, const RatPoly& acoef) {
  BiPoly out(acc.size() + 1);
  for (std::size_t k = 0; k < acc.size(); ++k) {
    out[k + 1] = out[k + 1] + acc[k] * xcoef;
    out[k] = out[k] + acc[k] * acoef;
  }
  bipoly_trim(out);
  return out;
}

BiPoly bipoly_sub(const BiPoly& a, const BiPoly& b) {
  BiPoly out(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = out[k] + a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] = out[k] - b[k];
  bipoly_trim(out);
  return out;
}

/* f(xcoef*x + acoef(A)) via Horner, coefficients become polynomials in A. */
BiPoly bipoly_compose(const RatPoly& f, const Rat& xcoef, const RatPoly& acoef) {
  BiPoly acc;
  for (int k = f.degree(); k >= 0; --k) {
    acc = bipoly_mul_linear(acc, xcoef, acoef);
    if (acc.empty()) acc.resize(1);
    acc[0] = acc[0] + RatPoly::constant(f.coeff(static_cast<std::size_t>(k)));
    bipoly_trim(acc);
  }
  return acc;
}

/* Solves a*x == r (mod m), m >= 1. Returns (modulus, residue) of the solution
 * class, or nullopt when unsolvable. */
std::optional<std::pair<Int, Int>> solve_linear_congruence(const Int& a, const Int& r, const Int& m) {
  Int am, rm;
  mpz_fdiv_r(am.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  mpz_fdiv_r(rm.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  const Int g = int_gcd(am, m);
  if (g == 0) return rm == 0 ? std::make_optional(std::pair<Int, Int>{Int(1), Int(0)}) : std::nullopt;
  if (rm % g != 0) return std::nullopt;
  const Int m2 = m / g;
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), Int(am / g).get_mpz_t(), m2.get_mpz_t()) == 0) {
    if (m2 == 1) return std::pair<Int, Int>{Int(1), Int(0)};
    throw internal_error("congruence inverse failed");
  }
  Int res = ((rm / g) * inv) % m2;
  if (res < 0) res += m2;
  return std::pair<Int, Int>{m2, res};
}

}  // namespace

ShiftSolutionSet shift_solutions(const RatPoly& f_i, const RatPoly& f_j) {
  require_order_poly(f_i, "shift_solutions f_i");
  require_order_poly(f_j, "shift_solutions f_j");
  if (f_i.degree() != f_j.degree()) return ShiftSolutionSet::empty();
  const unsigned long d = static_cast<unsigned long>(f_i.degree());
  auto broot = rational_dth_root(f_i.lead() / f_j.lead(), d);
  if (!broot) return ShiftSolutionSet::empty();
  const Rat B = *broot;
  const Rat bd1 = rat_pow(B, static_cast<long>(d) - 1);
  // C as a function of A: C(A) = B*A + delta.
  const Rat delta = (f_i.coeff(d - 1) - f_j.coeff(d - 1) * bd1) /
                    (Rat(static_cast<long>(d)) * f_j.lead() * bd1);

  // Phi(x, A) = f_i(x + A) - f_j(B*x + C(A)).
  const BiPoly lhs = bipoly_compose(f_i, Rat(1), RatPoly{Rat(0), Rat(1)});
  const BiPoly rhs = bipoly_compose(f_j, B, RatPoly{delta, B});
  const BiPoly phi = bipoly_sub(lhs, rhs);
  // x^d and x^{d-1} vanish by the choice of B and C(A).
  if (phi.size() > d || (phi.size() == d && !phi[d - 1].is_zero()))
    throw internal_error("shift_solutions: leading coefficients did not cancel");

  const RatPoly* blocking = nullptr;
  for (std::size_t k = 1; k + 1 < d; ++k) {
    if (k < phi.size() && !phi[k].is_zero()) {
      blocking = &phi[k];
      break;
    }
  }

  if (blocking == nullptr) {
    // Identity holds in x for every A; membership reduces to C(A) in Z:
    // (p/q)*A + u/v in Z  <=>  p*v*A == -u*q (mod q*v).
    const Int p = B.get_num(), q = B.get_den();
    const Int u = delta.get_num(), v = delta.get_den();
    auto sol = solve_linear_congruence(p * v, -(u * q), q * v);
    if (!sol) return ShiftSolutionSet::empty();
    return ShiftSolutionSet::progression(sol->first, sol->second);
  }

  // Finitely many candidates: integer roots of the first nonzero coefficient,
  // each verified against the full identity with C(A) integral.
  std::vector<Int> accepted;
  for (const Int& a : integer_roots(*blocking)) {
    const Rat c = B * Rat(a) + delta;
    if (!rat_is_int(c)) continue;
    const RatPoly diff =
        affine_compose(f_i, AffineMap(Rat(1), Rat(a))) - affine_compose(f_j, AffineMap(B, c));
    if (diff.is_constant()) accepted.push_back(a);
  }
  return ShiftSolutionSet::finite(std::move(accepted));
}

// ---------------------------------------------------------------------------
// certificate search

namespace {

Int mod_nonneg(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

using PairSetCache = std::map<std::pair<std::size_t, std::size_t>, ShiftSolutionSet>;

const ShiftSolutionSet& cached_set(PairSetCache& cache, const std::vector<RatPoly>& family,
                                   std::size_t i, std::size_t j) {
  auto key = std::make_pair(i, j);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, shift_solutions(family[i], family[j])).first;
  return it->second;
}

/* Search one candidate i within the chosen member indices. */
std::optional<Int> search_candidate(PairSetCache& cache, const std::vector<RatPoly>& family,
                                    const std::vector<std::size_t>& members, std::size_t i,
                                    const std::optional<ResidueConstraint>& constraint) {
  std::vector<const ShiftSolutionSet*> sets;
  for (std::size_t j : members) {
    if (j == i) continue;
    const ShiftSolutionSet& s = cached_set(cache, family, i, j);
    if (s.kind() == ShiftSolutionSet::Kind::All) return std::nullopt;
    sets.push_back(&s);
  }

  // Modulus of the combined residue picture.
  Int m(1);
  for (const auto* s : sets)
    if (s->kind() == ShiftSolutionSet::Kind::Progressions) m = int_lcm(m, s->modulus());
  if (constraint) m = int_lcm(m, constraint->modulus);

  if (m.fits_ulong_p() == 0) throw internal_error("combined modulus out of range");
  const unsigned long mu = m.get_ui();
  std::vector<char> covered(mu, 0), allowed(mu, 1);
  for (const auto* s : sets) {
    if (s->kind() != ShiftSolutionSet::Kind::Progressions) continue;
    const unsigned long sm = s->modulus().get_ui();
    for (const Int& r : s->residues())
      for (unsigned long t = r.get_ui(); t < mu; t += sm) covered[t] = 1;
  }
  if (constraint) {
    std::fill(allowed.begin(), allowed.end(), 0);
    const unsigned long cm = constraint->modulus.get_ui();
    for (const Int& r : constraint->allowed)
      for (unsigned long t = mod_nonneg(r, constraint->modulus).get_ui(); t < mu; t += cm)
        allowed[t] = 1;
  }
  bool feasible = false;
  for (unsigned long t = 0; t < mu; ++t)
    if (allowed[t] && !covered[t]) {
      feasible = true;
      break;
    }
  if (!feasible) return std::nullopt;

  // Smallest |A| admissible, ties toward positive: 0, 1, -1, 2, -2, ...
  auto admissible = [&](const Int& a) {
    const unsigned long t = mod_nonneg(a, m).get_ui();
    if (!allowed[t] || covered[t]) return false;
    for (const auto* s : sets)
      if (s->kind() == ShiftSolutionSet::Kind::Finite && s->contains(a)) return false;
    return true;
  };
  // Every m-th step hits an uncovered allowed residue, so a scan of
  // (finite-set size + 2) * m steps must succeed.
  Int total_finite(2);
  for (const auto* s : sets)
    total_finite += static_cast<long>(s->finite_shifts().size());
  const Int scan_bound = total_finite * m + m;
  if (admissible(Int(0))) return Int(0);
  for (Int k(1); k <= scan_bound; ++k) {
    if (admissible(k)) return k;
    if (admissible(-k)) return Int(-k);
  }
  throw internal_error("certificate scan failed to terminate");
}

std::optional<ShiftCertificate> search_members(
    PairSetCache& cache, const std::vector<RatPoly>& family,
    const std::vector<std::size_t>& members,
    const std::vector<std::optional<ResidueConstraint>>& constraints) {
  // Ascending degree, then input order.
  std::vector<std::size_t> order = members;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return family[a].degree() < family[b].degree();
  });
  for (std::size_t i : order) {
    const auto& cons =
        i < constraints.size() ? constraints[i] : std::optional<ResidueConstraint>();
    auto shift = search_candidate(cache, family, members, i, cons);
    if (!shift) continue;
    ShiftCertificate cert;
    cert.index = i;
    cert.shift = *shift;
    for (std::size_t j : members) {
      if (j == i) continue;
      cert.checked.emplace_back(j, cached_set(cache, family, i, j));
    }
    return cert;
  }
  return std::nullopt;
}

void validate_constraints(const std::vector<RatPoly>& family,
                          const std::vector<std::optional<ResidueConstraint>>& constraints) {
  if (!constraints.empty() && constraints.size() != family.size())
    throw input_error("constraint list must be empty or match the family size");
  for (const auto& c : constraints) {
    if (!c) continue;
    if (c->modulus < 1) throw input_error("constraint modulus must be >= 1");
    if (c->allowed.empty()) throw input_error("constraint with no allowed residues");
  }
}

}  // namespace

std::optional<ShiftCertificate> find_exclusive_shift(
    const std::vector<RatPoly>& family,
    const std::vector<std::optional<ResidueConstraint>>& constraints) {
  if (family.empty()) throw input_error("empty family");
  for (const RatPoly& f : family) require_order_poly(f, "find_exclusive_shift");
  validate_constraints(family, constraints);
  PairSetCache cache;
  std::vector<std::size_t> members(family.size());
  std::iota(members.begin(), members.end(), 0);
  return search_members(cache, family, members, constraints);
}

std::optional<std::vector<std::size_t>> first_failing_subset(
    const std::vector<RatPoly>& family,
    const std::vector<std::optional<ResidueConstraint>>& constraints) {
  if (family.empty()) throw input_error("empty family");
  if (family.size() > 20) throw input_error("subset sweep capped at 20 members");
  for (const RatPoly& f : family) require_order_poly(f, "first_failing_subset");
  validate_constraints(family, constraints);
  PairSetCache cache;
  const std::size_t n = family.size();
  // Size-major order so the reported failure is a smallest one.
  std::vector<std::uint32_t> masks;
  masks.reserve((1u << n) - 1);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (std::uint32_t mask : masks) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1u << k)) members.push_back(k);
    if (members.size() == 1) {
      // Singleton: only the residue constraint can block, and it never can
      // (nonempty allowed set, no opposing sets).
      continue;
    }
    if (!search_members(cache, family, members, constraints)) return members;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// scaled power families

Int scaled_power_family_shift(const RatPoly& g, const std::vector<ScaledPowerMember>& family) {
  if (g.degree() < 1) throw input_error("family base must be nonconstant");
  if (g.lead() <= 0) throw input_error("family base needs positive lead");
  if (!is_integer_valued(g)) throw input_error("family base must be integer-valued");
  if (family.empty()) throw input_error("empty family");
  const unsigned long d = static_cast<unsigned long>(g.degree());

  std::set<std::pair<Int, unsigned long>> seen;
  std::vector<RatPoly> polys;
  for (const auto& m : family) {
    if (m.scale < 1) throw input_error("family scale must be >= 1");
    if (m.power < 1 || d * m.power < 2)
      throw input_error("family power must satisfy deg(g)*power >= 2");
    if (!m.offset.is_zero()) {
      if (static_cast<unsigned long>(m.offset.degree()) + 2 > d * m.power)
        throw input_error("family offset degree exceeds deg(g)*power - 2");
      if (!is_integer_valued(m.offset)) throw input_error("family offset must be integer-valued");
    }
    if (!seen.emplace(m.scale, m.power).second)
      throw input_error("family has duplicate (scale, power)");
    RatPoly pw = RatPoly::constant(Rat(1));
    for (unsigned long k = 0; k < m.power; ++k) pw = pw * g;
    polys.push_back(pw * Rat(m.scale) + m.offset);
  }

  const Rat t = g.lead();
  const Rat u = g.coeff(d - 1);
  const Int a0 = -rat_floor(u / (t * Rat(static_cast<long>(d)))) - 1;

  // The shift must avoid the pairwise set whenever the left member's scale is
  // minimal in a subset containing both; checking all ordered pairs with
  // scale_left <= scale_right covers every subset's minimal choice.
  for (std::size_t a = 0; a < polys.size(); ++a) {
    for (std::size_t b = 0; b < polys.size(); ++b) {
      if (a == b || family[a].scale > family[b].scale) continue;
      if (shift_solutions(polys[a], polys[b]).contains(a0))
        throw internal_error("family shift failed pairwise exclusion");
    }
  }
  return a0;
}

// ---------------------------------------------------------------------------
// classes and canonical forms

std::vector<std::vector<std::size_t>> partition_classes(const std::vector<RatPoly>& polys) {
  for (const RatPoly& p : polys) require_order_poly(p, "partition_classes");
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t k = 0; k < polys.size(); ++k) {
    bool placed = false;
    for (auto& cls : classes) {
      if (decide_equiv(polys[cls.front()], polys[k])) {
        cls.push_back(k);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({k});
  }
  return classes;
}

CanonicalClassForm canonical_form(const std::vector<RatPoly>& cls) {
  if (cls.empty()) throw input_error("empty class");
  for (const RatPoly& p : cls) require_order_poly(p, "canonical_form");
  const RatPoly& f1 = cls.front();

  // f_1(x) == f_j((s_j x + t_j)/r_j) + u_j with integer r_j, s_j >= 1.
  std::vector<Int> r(cls.size()), s(cls.size()), t(cls.size()), u(cls.size());
  for (std::size_t j = 0; j < cls.size(); ++j) {
    auto w = decide_equiv(f1, cls[j]);
    if (!w) throw input_error("canonical_form: members are not equivalent");
    r[j] = int_lcm(w->b.get_den(), w->c.get_den());
    s[j] = Rat(w->b * Rat(r[j])).get_num();
    t[j] = Rat(w->c * Rat(r[j])).get_num();
    u[j] = w->d;
  }

  Int K(1);
  for (const Int& sj : s) K = int_lcm(K, sj);

  CanonicalClassForm out;
  out.g = affine_compose(f1, AffineMap(Rat(Int(1), K), Rat(0)));
  for (std::size_t j = 0; j < cls.size(); ++j) {
    const Int v = K / s[j];
    out.triples.push_back({r[j] * v, t[j] * v, u[j]});
  }

  // Exact identity recheck: g(x) == f_j((x + C_j)/B_j) + D_j.
  for (std::size_t j = 0; j < cls.size(); ++j) {
    const auto& tr = out.triples[j];
    const Rat binv(Int(1), tr.B);
    const RatPoly rhs = affine_compose(cls[j], AffineMap(binv, Rat(tr.C) * binv)) +
                        RatPoly::constant(Rat(tr.D));
    if (out.g != rhs) throw internal_error("canonical_form identity recheck failed");
  }
  if (!is_integer_valued(out.g))
    throw internal_error("canonical_form produced a non-integer-valued base");
  return out;
}

}  // namespace qlindep
