#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qlindep/ratpoly.hpp"

using namespace qlindep;

namespace {
const RatPoly x2{Rat(0), Rat(0), Rat(1)};          // x^2
const RatPoly xx1{Rat(0), Rat(1), Rat(1)};         // x(x+1)
const RatPoly four_x2{Rat(0), Rat(0), Rat(4)};     // (2x)^2
}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(rat_parse("3/6") == Rat(1, 2));
  CHECK(rat_parse("-4/2") == Rat(-2));
  CHECK(rat_parse("0") == 0);
  CHECK(rat_str(rat_make(10, -4)) == "-5/2");
  CHECK(rat_str(Rat(7)) == "7");
  CHECK_THROWS_AS(rat_parse("1/0"), input_error);
  CHECK_THROWS_AS(rat_parse("a"), input_error);
  CHECK_THROWS_AS(rat_parse("1/2/3"), input_error);
  CHECK_THROWS_AS(rat_parse("1.5"), input_error);
  CHECK_THROWS_AS(rat_parse(""), input_error);
}

TEST_CASE("rational floor, ceil, round, pow") {
  CHECK(rat_floor(Rat(7, 2)) == 3);
  CHECK(rat_floor(Rat(-7, 2)) == -4);
  CHECK(rat_ceil(Rat(7, 2)) == 4);
  CHECK(rat_round(Rat(5, 2)) == 3);
  CHECK(rat_round(Rat(-5, 2)) == -2);
  CHECK(rat_pow(Rat(2, 3), 3) == Rat(8, 27));
  CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
  CHECK(rat_pow(Rat(5), 0) == 1);
}

TEST_CASE("polynomial degree and normalization") {
  CHECK(RatPoly{}.degree() == -1);
  CHECK(RatPoly{Rat(0), Rat(0)}.is_zero());
  CHECK(x2.degree() == 2);
  CHECK((x2 - x2).is_zero());
  CHECK(RatPoly{Rat(1), Rat(2), Rat(0)}.degree() == 1);
}

TEST_CASE("evaluation") {
  CHECK(x2.eval(Rat(3)) == 9);
  CHECK(xx1.eval(Rat(2)) == 6);
  CHECK(RatPoly{}.eval(Rat(17, 3)) == 0);
}

TEST_CASE("affine composition fixed cases") {
  CHECK(affine_compose(x2, AffineMap(Rat(1), Rat(1))) == RatPoly{Rat(1), Rat(2), Rat(1)});
  CHECK(affine_compose(four_x2, AffineMap(Rat(1, 2), Rat(0))) == x2);
  CHECK(affine_compose(xx1, AffineMap(Rat(1), Rat(-1))) == RatPoly{Rat(0), Rat(-1), Rat(1)});
  CHECK_THROWS_AS(AffineMap(Rat(0), Rat(1)), input_error);
  CHECK_THROWS_AS(AffineMap(Rat(-1, 2), Rat(1)), input_error);
}

TEST_CASE("affine composition associates with map composition") {
  std::mt19937_64 rng(20260824);
  for (int iter = 0; iter < 300; ++iter) {
    std::uniform_int_distribution<int> deg(0, 6);
    std::vector<Rat> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : c) v = oracles::random_rat(rng, 9, 5);
    const RatPoly f{std::vector<Rat>(c)};
    const AffineMap m1(oracles::random_positive_rat(rng, 6, 6), oracles::random_rat(rng, 9, 5));
    const AffineMap m2(oracles::random_positive_rat(rng, 6, 6), oracles::random_rat(rng, 9, 5));
    CHECK(affine_compose(affine_compose(f, m2), m1) ==
          affine_compose(f, AffineMap::composed(m2, m1)));
  }
}

TEST_CASE("binomial basis fixed cases") {
  CHECK(binomial_basis(x2) == std::vector<Rat>{Rat(0), Rat(1), Rat(2)});
  CHECK(binomial_basis(RatPoly::constant(Rat(5))) == std::vector<Rat>{Rat(5)});
  const RatPoly tri{Rat(0), Rat(1, 2), Rat(1, 2)};  // x(x+1)/2
  CHECK(binomial_basis(tri) == std::vector<Rat>{Rat(0), Rat(1), Rat(1)});
  CHECK(binomial_basis(RatPoly{}).empty());
}

TEST_CASE("binomial basis round-trips") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    std::uniform_int_distribution<int> deg(0, 6);
    std::vector<Rat> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : c) v = oracles::random_rat(rng, 12, 6);
    const RatPoly f{std::vector<Rat>(c)};
    CHECK(from_binomial_basis(binomial_basis(f)) == f);
  }
}

TEST_CASE("integer-valuedness fixed cases") {
  CHECK(is_integer_valued(RatPoly{Rat(0), Rat(1, 2), Rat(1, 2)}));
  CHECK_FALSE(is_integer_valued(RatPoly{Rat(0), Rat(1, 2)}));
  CHECK(is_integer_valued(x2));
  CHECK(is_integer_valued(RatPoly{}));
}

TEST_CASE("integer-valuedness agrees with sampling") {
  // Integrality at deg+1 consecutive integers is equivalent to the basis
  // criterion; sample at 1..deg+1 as the reference.
  std::mt19937_64 rng(99);
  int integral_seen = 0;
  for (int iter = 0; iter < 500; ++iter) {
    RatPoly f;
    if (iter % 2 == 0) {
      f = oracles::random_integer_valued(rng, 2 + static_cast<int>(iter % 5));
    } else {
      std::uniform_int_distribution<int> deg(0, 6);
      std::vector<Rat> c(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& v : c) v = oracles::random_rat(rng, 10, 4);
      f = RatPoly{std::move(c)};
    }
    bool sampled = true;
    for (long n = 1; n <= f.degree() + 1; ++n)
      if (!rat_is_int(f.eval(Rat(n)))) {
        sampled = false;
        break;
      }
    CHECK(is_integer_valued(f) == sampled);
    if (sampled) ++integral_seen;
  }
  CHECK(integral_seen >= 250);  // the constructed half guarantees coverage
}

TEST_CASE("rational d-th roots") {
  CHECK(rational_dth_root(Rat(1, 4), 2) == Rat(1, 2));
  CHECK(rational_dth_root(Rat(1), 7) == Rat(1));
  CHECK_FALSE(rational_dth_root(Rat(2), 2).has_value());
  CHECK_FALSE(rational_dth_root(Rat(8, 27), 2).has_value());
  CHECK(rational_dth_root(Rat(8, 27), 3) == Rat(2, 3));
  CHECK_THROWS_AS(rational_dth_root(Rat(0), 2), input_error);
  CHECK_THROWS_AS(rational_dth_root(Rat(-4), 2), input_error);

  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 200; ++iter) {
    const Rat s = oracles::random_positive_rat(rng, 30, 30);
    std::uniform_int_distribution<unsigned long> dd(1, 8);
    const unsigned long d = dd(rng);
    CHECK(rational_dth_root(rat_pow(s, static_cast<long>(d)), d) == s);
  }
}

TEST_CASE("division, gcd, extended gcd") {
  const RatPoly a = x2 * xx1 + RatPoly{Rat(3), Rat(1)};
  auto [q, r] = poly_divmod(a, xx1);
  CHECK(q * xx1 + r == a);
  CHECK(r.degree() < xx1.degree());
  CHECK_THROWS_AS(poly_divmod(a, RatPoly{}), input_error);

  const RatPoly p1{Rat(-1), Rat(0), Rat(1)};  // x^2-1
  const RatPoly p2{Rat(-1), Rat(1)};          // x-1
  CHECK(poly_gcd(p1 * p2, p2) == p2);
  CHECK(poly_gcd(p1, RatPoly{}) == p1 * (1 / p1.lead()));

  auto eg = poly_ext_gcd(p1, RatPoly{Rat(1), Rat(1)});  // gcd(x^2-1, x+1) = x+1
  CHECK(eg.g == RatPoly{Rat(1), Rat(1)});
  CHECK(eg.u * p1 + eg.v * RatPoly{Rat(1), Rat(1)} == eg.g);
}

TEST_CASE("Sturm chain root counts") {
  const RatPoly p{Rat(-2), Rat(0), Rat(1)};  // x^2 - 2
  SturmChain chain(p);
  CHECK(chain.count(Rat(1), Rat(2)) == 1);
  CHECK(chain.count(Rat(0), Rat(1)) == 0);
  CHECK(chain.count(Rat(-2), Rat(2)) == 2);
  CHECK(chain.count_all() == 2);

  // Root exactly at the right endpoint is counted, at the left it is not.
  const RatPoly q{Rat(-1), Rat(0), Rat(1)};  // x^2 - 1
  SturmChain cq(q);
  CHECK(cq.count(Rat(0), Rat(1)) == 1);
  CHECK(cq.count(Rat(1), Rat(2)) == 0);

  // Repeated roots are counted once (squarefree reduction).
  const RatPoly sq = q * q;
  CHECK(SturmChain(sq).count_all() == 2);
  CHECK(SturmChain(RatPoly{Rat(0), Rat(-1), Rat(0), Rat(1)}).count_all() == 3);  // x^3-x
  CHECK(SturmChain(RatPoly::constant(Rat(3))).count_all() == 0);
}

TEST_CASE("integer roots") {
  // (x-3)(x+5)(2x-1)
  const RatPoly p = RatPoly{Rat(-3), Rat(1)} * RatPoly{Rat(5), Rat(1)} * RatPoly{Rat(-1), Rat(2)};
  CHECK(integer_roots(p) == std::vector<Int>{Int(-5), Int(3)});
  // x^2 (x-2): stripping the power of x keeps 0 as a root
  const RatPoly q = x2 * RatPoly{Rat(-2), Rat(1)};
  CHECK(integer_roots(q) == std::vector<Int>{Int(0), Int(2)});
  // no integer roots
  CHECK(integer_roots(RatPoly{Rat(1), Rat(0), Rat(1)}).empty());
  CHECK_THROWS_AS(integer_roots(RatPoly{}), input_error);

  // Trailing coefficient too large for the divisor scan: Sturm fallback.
  const Int big = int_pow(Int(10), 13) + 37;
  const RatPoly r = RatPoly{Rat(-big), Rat(1)} * RatPoly{Rat(7), Rat(1)};
  CHECK(integer_roots(r) == std::vector<Int>{Int(-7), big});
}

TEST_CASE("Cauchy root bound") {
  const RatPoly p{Rat(-8), Rat(0), Rat(2)};  // 2x^2 - 8, roots +-2
  CHECK(cauchy_root_bound(p) == 5);
  CHECK_THROWS_AS(cauchy_root_bound(RatPoly{}), input_error);
}
