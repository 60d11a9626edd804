#ifndef QLINDEP_RATPOLY_HPP_
#define QLINDEP_RATPOLY_HPP_

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "qlindep/numbers.hpp"

namespace qlindep {

/* Dense univariate polynomial over Q. coeffs[k] multiplies x^k; the vector
 * never ends in a zero, so the zero polynomial is the empty vector and
 * degree() is size-1 otherwise. Degrees in scope stay small (<= ~16), which
 * is why dense was chosen. */
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  RatPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

  static RatPoly constant(const Rat& v) { return RatPoly{std::vector<Rat>{v}}; }
  /* x^k with coefficient a. */
  static RatPoly monomial(const Rat& a, std::size_t k);

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  /* -1 for the zero polynomial. */
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& lead() const;
  /* Safe: zero for k beyond the stored coefficients. */
  const Rat& coeff(std::size_t k) const;
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat eval(const Rat& x) const;
  RatPoly derivative() const;

  RatPoly operator-() const;
  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly operator*(const Rat& s) const;
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }
  bool operator!=(const RatPoly& o) const { return c_ != o.c_; }

 private:
  void trim();
  std::vector<Rat> c_;
};

inline RatPoly operator*(const Rat& s, const RatPoly& p) { return p * s; }

/* x |-> scale*x + shift with scale > 0 (enforced). */
struct AffineMap {
  Rat scale;
  Rat shift;
  AffineMap(Rat scale_, Rat shift_);
  /* outer o inner: x |-> outer(inner(x)). */
  static AffineMap composed(const AffineMap& outer, const AffineMap& inner);
};

/* x |-> f(scale*x + shift), exact Horner. */
RatPoly affine_compose(const RatPoly& f, const AffineMap& m);

/* Coefficients c_0..c_d with f(x) = sum c_k * C(x,k), by forward differences
 * at 0..d. Empty for the zero polynomial. */
std::vector<Rat> binomial_basis(const RatPoly& f);

/* Inverse of binomial_basis (round-trip exact). */
RatPoly from_binomial_basis(const std::vector<Rat>& basis_coeffs);

/* f(n) in Z for every positive integer n, decided exactly: all binomial-basis
 * coefficients integral. A proof, not a sample. */
bool is_integer_valued(const RatPoly& f);

/* Unique positive rational s with s^d = r, if the numerator and denominator
 * of r are both perfect d-th powers; errors when r <= 0. */
std::optional<Rat> rational_dth_root(const Rat& r, unsigned long d);

/* Quotient and remainder in Q[x], divisor nonzero. */
std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b);

/* Monic gcd in Q[x] (gcd(0,0) = 0). */
RatPoly poly_gcd(const RatPoly& a, const RatPoly& b);

/* g = gcd(a,b) monic together with u,v satisfying u*a + v*b = g. */
struct ExtGcd {
  RatPoly g, u, v;
};
ExtGcd poly_ext_gcd(const RatPoly& a, const RatPoly& b);

/* The coefficients scaled to a primitive integer vector (positive leading
 * sign preserved); zero polynomial maps to the empty vector. */
std::vector<Int> primitive_integer_coeffs(const RatPoly& p);

/* Sturm chain of the squarefree part; counts distinct real roots in (a, b]
 * with exact rational arithmetic. */
class SturmChain {
 public:
  explicit SturmChain(const RatPoly& p);
  /* Number of distinct real roots of p in (a, b]; requires a < b. */
  int count(const Rat& a, const Rat& b) const;
  /* Number of distinct real roots of p in all of R. */
  int count_all() const;

 private:
  int variations(const Rat& x) const;
  int variations_at_inf(int sign_dir) const;
  std::vector<RatPoly> chain_;
};

/* All integer roots of p (p nonzero), sorted ascending. Rational root test
 * over the divisors of the trailing coefficient after clearing denominators;
 * falls back to Sturm bisection when the trailing coefficient is too large
 * to scan for divisors. */
std::vector<Int> integer_roots(const RatPoly& p);

/* 1 + max |a_k / a_d|: every complex root has magnitude below this. */
Rat cauchy_root_bound(const RatPoly& p);

}  // namespace qlindep

#endif
