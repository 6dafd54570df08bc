#include <catch2/catch_amalgamated.hpp>

#include "mvkit/rational.hpp"

using namespace mvkit;

TEST_CASE("rationals normalize to lowest terms with positive denominator") {
  Rat r(Int(6), Int(4));
  CHECK(r.num() == 3);
  CHECK(r.den() == 2);

  Rat s(Int(2), Int(-4));
  CHECK(s.num() == -1);
  CHECK(s.den() == 2);

  CHECK(Rat(Int(0), Int(7)) == Rat(0));
  CHECK(Rat(Int(0), Int(7)).den() == 1);
  CHECK_THROWS_AS(Rat(Int(1), Int(0)), Error);
}

TEST_CASE("arithmetic is exact") {
  Rat third(Int(1), Int(3));
  Rat sixth(Int(1), Int(6));
  CHECK(third + sixth == Rat(Int(1), Int(2)));
  CHECK(third - sixth == sixth);
  CHECK(third * Rat(3) == Rat(1));
  CHECK(Rat(1) / Rat(3) == third);
  CHECK(-third == Rat(Int(-1), Int(3)));

  // a sum that would lose precision in floating point
  Rat tiny(Int(1), Int("1000000000000000000000000"));
  CHECK(tiny + Rat(1) - Rat(1) == tiny);
}

TEST_CASE("comparison, min, max, abs") {
  Rat a(Int(3), Int(10)), b(Int(7), Int(10));
  CHECK(a < b);
  CHECK(rat_min(a, b) == a);
  CHECK(rat_max(a, b) == b);
  CHECK(rat_abs(-b) == b);
}

TEST_CASE("floor and ceil on negatives") {
  CHECK(Rat(Int(7), Int(2)).floor() == 3);
  CHECK(Rat(Int(7), Int(2)).ceil() == 4);
  CHECK(Rat(Int(-7), Int(2)).floor() == -4);
  CHECK(Rat(Int(-7), Int(2)).ceil() == -3);
  CHECK(Rat(5).floor() == 5);
  CHECK(Rat(5).ceil() == 5);
}

TEST_CASE("printing") {
  CHECK(Rat(Int(3), Int(10)).str() == "3/10");
  CHECK(Rat(4).str() == "4");
  CHECK(Rat(Int(-1), Int(2)).str() == "-1/2");
}
