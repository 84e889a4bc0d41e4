#include <doctest.h>

#include "ffm/rational.hpp"

using ffm::Rat;

TEST_SUITE_BEGIN("rational");

TEST_CASE("normalization and equality") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, 4) == Rat(1, -2));
  CHECK(Rat(0, 7) == Rat(0));
  CHECK(Rat(6, 3).is_integer());
  CHECK(Rat(6, 3).num() == 2);
}

TEST_CASE("arithmetic") {
  CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
  CHECK(Rat(1, 2) - Rat(1, 3) == Rat(1, 6));
  CHECK(Rat(3, 4) * Rat(2, 9) == Rat(1, 6));
  CHECK(Rat(3, 4) / Rat(3, 2) == Rat(1, 2));
  CHECK(-Rat(3, 4) == Rat(-3, 4));
  CHECK(Rat(-5, 3).abs() == Rat(5, 3));
  CHECK_THROWS_AS(Rat(1, 2) / Rat(0), std::domain_error);
  CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
}

TEST_CASE("ordering") {
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 2) < Rat(-1, 3));
  CHECK(Rat(7, 4) <= Rat(7, 4));
  CHECK(Rat(2) > Rat(3, 2));
}

TEST_CASE("power") {
  CHECK(Rat::power(2, 5) == Rat(32));
  CHECK(Rat::power(2, -3) == Rat(1, 8));
  CHECK(Rat::power(3, 0) == Rat(1));
}

TEST_CASE("overflow detection") {
  const Rat big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_SUITE_END();
