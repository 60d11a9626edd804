#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qlindep/equiv.hpp"

using namespace qlindep;

namespace {
const RatPoly x2{Rat(0), Rat(0), Rat(1)};           // x^2
const RatPoly xp1_sq{Rat(1), Rat(2), Rat(1)};       // (x+1)^2
const RatPoly xx1{Rat(0), Rat(1), Rat(1)};          // x(x+1)
const RatPoly four_x2{Rat(0), Rat(0), Rat(4)};      // (2x)^2
const RatPoly two_xm1_sq{Rat(1), Rat(-4), Rat(4)};  // (2x-1)^2
const RatPoly x3{Rat(0), Rat(0), Rat(0), Rat(1)};   // x^3

bool set_matches_box(const ShiftSolutionSet& sym, const RatPoly& fi, const RatPoly& fj) {
  const auto oracle = oracles::box_shift_set(fi, fj);
  for (long a = -oracles::kBoxBound; a <= oracles::kBoxBound; ++a) {
    const bool in_oracle = oracle.count(a) > 0;
    const bool in_sym = sym.contains(Int(a));
    if (in_oracle && !in_sym) return false;
    if (in_sym && !in_oracle) {
      // The symbolic witness can fall outside the box; cross-check that it
      // really does before excusing the oracle miss.
      const unsigned long d = static_cast<unsigned long>(fi.degree());
      auto b = rational_dth_root(fi.lead() / fj.lead(), d);
      if (!b) return false;
      const Rat bd1 = rat_pow(*b, static_cast<long>(d) - 1);
      const Rat delta = (fi.coeff(d - 1) - fj.coeff(d - 1) * bd1) /
                        (Rat(static_cast<long>(d)) * fj.lead() * bd1);
      const Rat c = *b * Rat(a) + delta;
      if (!rat_is_int(c)) return false;
      const RatPoly diff = affine_compose(fi, AffineMap(Rat(1), Rat(a))) -
                           affine_compose(fj, AffineMap(*b, c));
      if (!diff.is_constant()) return false;
      const bool outside_box = b->get_num() > oracles::kBoxRatMax ||
                               b->get_den() > oracles::kBoxRatMax ||
                               rat_abs(c) > oracles::kBoxBound ||
                               rat_abs(diff.coeff(0)) > oracles::kBoxBound;
      if (!outside_box) return false;
    }
  }
  return true;
}
}  // namespace

TEST_CASE("equivalence witnesses on the shifted and scaled squares") {
  auto w = decide_equiv(x2, xp1_sq);
  REQUIRE(w.has_value());
  CHECK(w->b == 1);
  CHECK(w->c == -1);
  CHECK(w->d == 0);
  CHECK(verify_equiv(x2, xp1_sq, *w));

  auto back = decide_equiv(xp1_sq, x2);
  REQUIRE(back.has_value());
  CHECK(back->b == 1);
  CHECK(back->c == 1);
  CHECK(back->d == 0);

  auto scaled = decide_equiv(x2, four_x2);
  REQUIRE(scaled.has_value());
  CHECK(scaled->b == Rat(1, 2));
  CHECK(scaled->c == 0);
  CHECK(scaled->d == 0);

  CHECK_FALSE(decide_equiv(x2, x3).has_value());
  CHECK_FALSE(decide_equiv(x2, xx1).has_value());  // residual -1/4 not integral
  CHECK_THROWS_AS(decide_equiv(RatPoly::constant(Rat(2)), x2), input_error);
  CHECK_THROWS_AS(decide_equiv(x2, RatPoly{Rat(0), Rat(0), Rat(-1)}), input_error);
}

TEST_CASE("equivalence laws on constructed instances") {
  std::mt19937_64 rng(424242);
  for (int iter = 0; iter < 300; ++iter) {
    // Degree >= 2 keeps the witness unique; degree 1 is covered separately.
    std::uniform_int_distribution<int> deg(2, 5);
    std::uniform_int_distribution<long> ints(-9, 9);
    const RatPoly f = oracles::random_integer_valued(rng, deg(rng));
    const Rat b = oracles::random_positive_rat(rng, 5, 5);
    const Rat c = oracles::random_rat(rng, 6, 4);
    const Int d(ints(rng));
    // G(y) := F((y-c)/b) - d  gives  F(x) == G(b x + c) + d.
    const RatPoly g = affine_compose(f, AffineMap(1 / b, -c / b)) - RatPoly::constant(Rat(d));

    auto w = decide_equiv(f, g);
    REQUIRE(w.has_value());
    CHECK(w->b == b);
    CHECK(w->c == c);
    CHECK(w->d == d);
    CHECK(verify_equiv(f, g, *w));

    auto back = decide_equiv(g, f);
    REQUIRE(back.has_value());
    CHECK(back->b == 1 / b);
    CHECK(back->c == -c / b);
    CHECK(back->d == -d);

    // Transitivity through a third polynomial, with witness composition.
    const Rat b2 = oracles::random_positive_rat(rng, 5, 5);
    const Rat c2 = oracles::random_rat(rng, 6, 4);
    const Int d2(ints(rng));
    const RatPoly h = affine_compose(g, AffineMap(1 / b2, -c2 / b2)) - RatPoly::constant(Rat(d2));
    auto w2 = decide_equiv(f, h);
    REQUIRE(w2.has_value());
    CHECK(w2->b == b * b2);
    CHECK(w2->c == b2 * c + c2);
    CHECK(w2->d == d + d2);
  }
}

TEST_CASE("degree one pairs pick the witness with zero constant") {
  // For linear polynomials only b and the combination lead(g)*c + d are
  // forced, so the resolver folds the whole constant difference into c.
  const RatPoly f{Rat(7), Rat(3)};
  const RatPoly g{Rat(-2), Rat(5)};
  auto w = decide_equiv(f, g);
  REQUIRE(w.has_value());
  CHECK(w->b == Rat(3, 5));
  CHECK(w->d == 0);
  CHECK(verify_equiv(f, g, *w));
}

TEST_CASE("shift solution sets for the square family") {
  const auto all = shift_solutions(x2, xp1_sq);
  CHECK(all.kind() == ShiftSolutionSet::Kind::All);
  CHECK(all.contains(Int(-1000)));

  const auto even = shift_solutions(x2, four_x2);
  REQUIRE(even.kind() == ShiftSolutionSet::Kind::Progressions);
  CHECK(even.modulus() == 2);
  CHECK(even.residues() == std::vector<Int>{Int(0)});
  CHECK(even.contains(Int(4)));
  CHECK_FALSE(even.contains(Int(1)));

  CHECK(shift_solutions(xx1, four_x2).kind() == ShiftSolutionSet::Kind::Empty);
  CHECK(shift_solutions(x2, x3).kind() == ShiftSolutionSet::Kind::Empty);

  // Blocking coefficient with no surviving candidate.
  const RatPoly x3px{Rat(0), Rat(1), Rat(0), Rat(1)};  // x^3 + x
  CHECK(shift_solutions(x3, x3px).kind() == ShiftSolutionSet::Kind::Empty);

  CHECK_THROWS_AS(shift_solutions(RatPoly{Rat(0), Rat(1, 2)}, x2), input_error);
  CHECK_THROWS_AS(shift_solutions(RatPoly{Rat(0), Rat(1)}, x2), input_error);
  CHECK_THROWS_AS(shift_solutions(x2, RatPoly{Rat(0), Rat(1, 2), Rat(1, 2)} * Rat(-1)),
                  input_error);
}

TEST_CASE("shift solution sets match the box oracle") {
  CHECK(set_matches_box(shift_solutions(x2, xp1_sq), x2, xp1_sq));
  CHECK(set_matches_box(shift_solutions(x2, four_x2), x2, four_x2));
  CHECK(set_matches_box(shift_solutions(xx1, four_x2), xx1, four_x2));
  CHECK(set_matches_box(shift_solutions(xx1, two_xm1_sq), xx1, two_xm1_sq));

  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> deg(2, 4);
  for (int iter = 0; iter < 40; ++iter) {
    const RatPoly fi = oracles::random_integer_valued(rng, deg(rng), 6);
    RatPoly fj = oracles::random_integer_valued(rng, deg(rng), 6);
    if (iter % 3 == 0) {
      // Force related pairs so nonempty sets actually occur.
      std::uniform_int_distribution<long> shift(-3, 3);
      fj = affine_compose(fi, AffineMap(Rat(2), Rat(shift(rng))));
    }
    CHECK(set_matches_box(shift_solutions(fi, fj), fi, fj));
  }
}

TEST_CASE("exclusive shift certificates") {
  const std::vector<RatPoly> trio{xx1, four_x2, two_xm1_sq};
  auto cert = find_exclusive_shift(trio);
  REQUIRE(cert.has_value());
  CHECK(cert->index == 0);
  CHECK(cert->shift == 0);
  CHECK(cert->checked.size() == 2);
  // Audit against the brute-force box: no witness at the certified shift.
  for (const auto& [j, set] : cert->checked) {
    CHECK_FALSE(set.contains(cert->shift));
    CHECK_FALSE(oracles::box_has_witness(trio[cert->index], trio[j],
                                         cert->shift.get_si()));
  }

  CHECK_FALSE(find_exclusive_shift({x2, xp1_sq}).has_value());

  auto singleton = find_exclusive_shift({x2});
  REQUIRE(singleton.has_value());
  CHECK(singleton->index == 0);
  CHECK(singleton->shift == 0);

  // Smallest-magnitude tie-break: for {x^2, (2x)^2} the even shifts are bad,
  // so the first admissible is +1.
  auto odd = find_exclusive_shift({x2, four_x2});
  REQUIRE(odd.has_value());
  CHECK(odd->index == 0);
  CHECK(odd->shift == 1);
}

TEST_CASE("exclusive shift with residue constraints") {
  // Constraining the first member to even shifts blocks it; the second
  // member has an all-shifts bad set, so the search fails outright.
  std::vector<std::optional<ResidueConstraint>> cons(2);
  cons[0] = ResidueConstraint{Int(2), {Int(0)}};
  CHECK_FALSE(find_exclusive_shift({x2, four_x2}, cons).has_value());

  // An allowed residue that dodges the bad progression is found.  The
  // candidate scan runs 0, 1, -1, 2, -2, ... and -1 is the first value
  // congruent to 3 mod 4, so it wins over 3 itself.
  cons[0] = ResidueConstraint{Int(4), {Int(3)}};
  auto cert = find_exclusive_shift({x2, four_x2}, cons);
  REQUIRE(cert.has_value());
  CHECK(cert->index == 0);
  CHECK(cert->shift == -1);

  std::vector<std::optional<ResidueConstraint>> bad(1);
  bad[0] = ResidueConstraint{Int(2), {}};
  CHECK_THROWS_AS(find_exclusive_shift({x2}, bad), input_error);
}

TEST_CASE("subset sweep") {
  CHECK_FALSE(first_failing_subset({xx1, four_x2, two_xm1_sq}).has_value());
  auto failing = first_failing_subset({x2, xp1_sq});
  REQUIRE(failing.has_value());
  CHECK(*failing == std::vector<std::size_t>{0, 1});

  // {x^2, (x+1)^2, x^3}: the pair subset {0,1} still fails even though the
  // full set is rescued by the degree-3 member.
  auto f2 = first_failing_subset({x2, xp1_sq, x3});
  REQUIRE(f2.has_value());
  CHECK(*f2 == std::vector<std::size_t>{0, 1});

  std::vector<RatPoly> big(21, x2);
  CHECK_THROWS_AS(first_failing_subset(big), input_error);
}

TEST_CASE("shift witness for scaled power families") {
  // Base x: members scale * x^power.
  std::vector<ScaledPowerMember> fam;
  for (long i = 1; i <= 3; ++i)
    for (unsigned long j = 2; j <= 3; ++j) fam.push_back({Int(i), j, RatPoly{}});
  CHECK(scaled_power_family_shift(RatPoly{Rat(0), Rat(1)}, fam) == -1);

  // Base x(x+1): top coefficients t=1, u=1, degree 2.
  std::vector<ScaledPowerMember> fam2{{Int(1), 1, RatPoly{}},
                                      {Int(2), 1, RatPoly{Rat(7)}},
                                      {Int(5), 2, RatPoly{Rat(0), Rat(3)}}};
  CHECK(scaled_power_family_shift(xx1, fam2) == -1);

  // Base 3x^2+7x: floor(7/6) = 1, witness -2.
  const RatPoly g{Rat(0), Rat(7), Rat(3)};
  CHECK(scaled_power_family_shift(g, {{Int(1), 1, RatPoly{}}, {Int(2), 1, RatPoly{}}}) == -2);

  CHECK_THROWS_AS(scaled_power_family_shift(RatPoly{Rat(0), Rat(1)},
                                            {{Int(1), 1, RatPoly{}}}),
                  input_error);  // degree * power < 2
  CHECK_THROWS_AS(scaled_power_family_shift(xx1, {{Int(1), 1, RatPoly{Rat(0), Rat(1)}}}),
                  input_error);  // offset degree too large
  CHECK_THROWS_AS(scaled_power_family_shift(xx1, {{Int(1), 1, RatPoly{}},
                                                  {Int(1), 1, RatPoly{Rat(3)}}}),
                  input_error);  // duplicate (scale, power)
  CHECK_THROWS_AS(scaled_power_family_shift(xx1, {{Int(0), 1, RatPoly{}}}), input_error);
}

TEST_CASE("partitioning into equivalence classes") {
  auto classes = partition_classes({x2, four_x2, two_xm1_sq, x3});
  REQUIRE(classes.size() == 2);
  CHECK(classes[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(classes[1] == std::vector<std::size_t>{3});

  CHECK(partition_classes({x2, xp1_sq}).size() == 1);
  CHECK(partition_classes({x2}).size() == 1);
  CHECK(partition_classes({}).empty());
}

TEST_CASE("canonical class forms") {
  auto form = canonical_form({x2, two_xm1_sq, four_x2});
  CHECK(form.g == x2);
  REQUIRE(form.triples.size() == 3);
  CHECK(form.triples[0].B == 1);
  CHECK(form.triples[0].C == 0);
  CHECK(form.triples[0].D == 0);
  CHECK(form.triples[1].B == 2);
  CHECK(form.triples[1].C == 1);
  CHECK(form.triples[1].D == 0);
  CHECK(form.triples[2].B == 2);
  CHECK(form.triples[2].C == 0);
  CHECK(form.triples[2].D == 0);

  auto single = canonical_form({x2});
  CHECK(single.g == x2);
  CHECK(single.triples[0].B == 1);

  auto shifted = canonical_form({x2, xp1_sq});
  CHECK(shifted.g == x2);
  CHECK(shifted.triples[1].B == 1);
  CHECK(shifted.triples[1].C == -1);
  CHECK(shifted.triples[1].D == 0);

  CHECK_THROWS_AS(canonical_form({x2, x3}), input_error);
  CHECK_THROWS_AS(canonical_form({}), input_error);
}

TEST_CASE("canonical form identities hold for random classes") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> deg(2, 4);
  std::uniform_int_distribution<long> ishift(-4, 4);
  std::uniform_int_distribution<long> iscale(1, 3);
  std::uniform_int_distribution<long> ioff(-5, 5);
  for (int iter = 0; iter < 50; ++iter) {
    const RatPoly f1 = oracles::random_integer_valued(rng, deg(rng), 5);
    std::vector<RatPoly> cls{f1};
    for (int j = 0; j < 3; ++j) {
      // Members of the form f(scale*x + shift) + offset stay integer-valued.
      const RatPoly fj = affine_compose(f1, AffineMap(Rat(iscale(rng)), Rat(ishift(rng)))) +
                         RatPoly::constant(Rat(ioff(rng)));
      cls.push_back(fj);
    }
    auto form = canonical_form(cls);
    for (std::size_t j = 0; j < cls.size(); ++j) {
      const auto& tr = form.triples[j];
      const Rat binv(Int(1), tr.B);
      CHECK(form.g == affine_compose(cls[j], AffineMap(binv, Rat(tr.C) * binv)) +
                          RatPoly::constant(Rat(tr.D)));
    }
    CHECK(is_integer_valued(form.g));
  }
}
