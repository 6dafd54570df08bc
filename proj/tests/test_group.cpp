#include <catch2/catch_amalgamated.hpp>

#include "mvkit/group.hpp"
#include "mvkit/rng.hpp"
#include "mvkit/sampling.hpp"
#include "oracles.hpp"

using namespace mvkit;

namespace {
GroupElem zz(long long a, long long b) { return g_tuple({g_int(a), g_int(b)}); }
}

TEST_CASE("lex arithmetic on Z x Z against the pair oracle") {
  auto G = lex_product(integers(), integers());
  CHECK(group_add(G, zz(1, -5), zz(1, -5)) == zz(2, -10));

  SplitMix64 rng(11);
  for (int i = 0; i < 500; ++i) {
    oracle::ZZ x{rng.range(-30, 30), rng.range(-30, 30)};
    oracle::ZZ y{rng.range(-30, 30), rng.range(-30, 30)};
    GroupElem gx = zz(x.a, x.b), gy = zz(y.a, y.b);
    CHECK(group_add(G, gx, gy) == zz(zz_add(x, y).a, zz_add(x, y).b));
    auto c = group_cmp(G, gx, gy);
    int oc = oracle::zz_cmp(x, y);
    CHECK((c == std::partial_ordering::less) == (oc < 0));
    CHECK((c == std::partial_ordering::greater) == (oc > 0));
    auto ab = oracle::zz_abs(x);
    CHECK(group_abs(G, gx) == zz(ab.a, ab.b));
  }
}

TEST_CASE("lex order and absolute value examples") {
  auto G = lex_product(integers(), integers());
  CHECK(group_cmp(G, zz(0, 100), zz(1, -100)) == std::partial_ordering::less);
  CHECK(group_abs(G, zz(1, -5)) == zz(1, -5)); // lex abs, not componentwise

  auto GQ = lex_product(integers(), rationals());
  GroupElem x = g_tuple({g_int(0), g_rat(Rat(Int(-3), Int(2)))});
  CHECK(group_abs(GQ, x) == g_tuple({g_int(0), g_rat(Rat(Int(3), Int(2)))}));
}

TEST_CASE("group laws hold on sampled triples") {
  std::vector<OrderedGroupDesc> gs = {
      integers(), rationals(), lex_product(integers(), rationals()),
      direct_product({integers(), integers()}),
      lex_product({rationals(), rationals()})};
  for (const auto &G : gs) {
    SplitMix64 rng(3);
    GroupElem zero = group_zero(G);
    for (int i = 0; i < 200; ++i) {
      GroupElem x = sample_group_elem(G, rng);
      GroupElem y = sample_group_elem(G, rng);
      GroupElem z = sample_group_elem(G, rng);
      CHECK(group_add(G, x, group_add(G, y, z)) == group_add(G, group_add(G, x, y), z));
      CHECK(group_add(G, x, y) == group_add(G, y, x));
      CHECK(group_add(G, x, zero) == x);
      CHECK(group_add(G, x, group_neg(G, x)) == zero);
      // translation invariance
      if (group_leq(G, x, y))
        CHECK(group_leq(G, group_add(G, x, z), group_add(G, y, z)));
    }
  }
}

TEST_CASE("direct products are only partially ordered") {
  auto G = direct_product({integers(), integers()});
  CHECK(group_cmp(G, zz(1, 0), zz(0, 1)) == std::partial_ordering::unordered);
  CHECK(group_meet(G, zz(1, 0), zz(0, 1)) == zz(0, 0));
  CHECK(group_join(G, zz(1, 0), zz(0, 1)) == zz(1, 1));
}

TEST_CASE("lex products require totally ordered components") {
  std::vector<OrderedGroupDesc> comps = {direct_product({integers(), integers()}),
                                         integers()};
  CHECK_THROWS_AS(
      [&] {
        auto g = lex_product(comps);
        validate_group(g);
        return g;
      }(),
      Error);
}

TEST_CASE("strong unit criterion") {
  auto GQ = lex_product(integers(), rationals());
  auto r1 = is_strong_unit(GQ, g_tuple({g_int(1), g_rat(Rat(0))}));
  CHECK(r1.is_strong);
  CHECK(r1.mode == "exact");

  auto r2 = is_strong_unit(integers(), g_int(0));
  CHECK_FALSE(r2.is_strong);
  CHECK(*r2.witness == g_int(1));

  auto ZZl = lex_product(integers(), integers());
  auto r3 = is_strong_unit(ZZl, zz(0, 1));
  CHECK_FALSE(r3.is_strong);
  CHECK(*r3.witness == zz(1, 0));

  // direct product: every component must be strong
  auto D = direct_product({integers(), integers()});
  CHECK(is_strong_unit(D, zz(1, 1)).is_strong);
  CHECK_FALSE(is_strong_unit(D, zz(1, 0)).is_strong);
}

TEST_CASE("the surrogate Lex(Q, Q) is totally ordered and divisible") {
  auto S = nonstandard_reals(2);
  CHECK(is_totally_ordered(S));
  SplitMix64 rng(5);
  for (int i = 0; i < 300; ++i) {
    GroupElem x = sample_group_elem(S, rng);
    for (long long n = 1; n <= 16; ++n) {
      auto y = group_div_exact(S, x, Int(n));
      REQUIRE(y.has_value());
      CHECK(scalar_mul(S, Int(n), *y) == x);
    }
  }
}

TEST_CASE("l-ideal posets of the catalog groups") {
  CHECK(lideal_poset(integers()).size() == 2);

  auto ZZl = lex_product(integers(), integers());
  auto p = lideal_poset(ZZl);
  REQUIRE(p.size() == 3);
  CHECK(p[0].kind == LIdeal::Kind::Zero);
  CHECK(p[1].kind == LIdeal::Kind::TailKernel);
  CHECK(p[1].tail == 1);
  CHECK(p[2].kind == LIdeal::Kind::Whole);
  CHECK(lideal_member(ZZl, p[1], zz(0, 7)));
  CHECK_FALSE(lideal_member(ZZl, p[1], zz(1, 0)));
  CHECK(lideal_subset(ZZl, p[0], p[1]));
  CHECK(lideal_subset(ZZl, p[1], p[2]));
  CHECK_FALSE(lideal_subset(ZZl, p[1], p[0]));

  auto D = direct_product({integers(), integers()});
  CHECK(lideal_poset(D).size() == 4);

  // depth-3 tower
  auto T = lex_product({integers(), integers(), integers()});
  CHECK(lideal_poset(T).size() == 4);
}

TEST_CASE("quasi-constant group membership") {
  auto S = nonstandard_reals(2);
  GroupElem unit = g_tuple({g_rat(Rat(1)), g_rat(Rat(0))});
  auto K = quasi_constant_group(S, unit, 2);
  auto site = [](Rat a, Rat b) { return g_tuple({g_rat(a), g_rat(b)}); };
  // same head, different tails: one class
  CHECK(group_contains(K, g_tuple({site(Rat(1), Rat(3)), site(Rat(1), Rat(-2))})));
  // different heads: not quasi-constant
  CHECK_FALSE(group_contains(K, g_tuple({site(Rat(1), Rat(0)), site(Rat(2), Rat(0))})));
  // sampled members really are members
  SplitMix64 rng(9);
  for (int i = 0; i < 200; ++i)
    CHECK(group_contains(K, sample_group_elem(K, rng)));
}
