#include <doctest.h>

#include <complex>

#include "ffm/errors.hpp"
#include "ffm/fqarith.hpp"

using namespace ffm;

TEST_SUITE_BEGIN("fqarith");

TEST_CASE("canonical fields construct and validate") {
  for (const int q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32}) {
    const FieldCtx F = FieldCtx::make(q);
    CHECK(F.q() == q);
    // Nonzero inverses round-trip.
    for (int a = 1; a < q; ++a)
      CHECK(F.mul(F.element(a), F.inv(F.element(a))) == F.one());
  }
  CHECK_THROWS_AS(FieldCtx::make(6), std::domain_error);
  CHECK_THROWS_AS(FieldCtx::make(128), std::domain_error);
}

TEST_CASE("reducible modulus and cap are rejected") {
  // x^2 + 1 = (x+1)^2 over F_2.
  CHECK_THROWS_AS(FieldCtx(2, 2, {1, 0, 1}), std::domain_error);
  CHECK_THROWS_AS(FieldCtx(2, 7, {1, 1, 0, 0, 0, 0, 0, 1}), resource_error);
}

TEST_CASE("trace on the prime field is the identity") {
  for (const int q : {2, 3, 5, 7}) {
    const FieldCtx F = FieldCtx::make(q);
    for (int c = 0; c < q; ++c) CHECK(F.trace(F.element(c)) == c);
  }
}

TEST_CASE("trace in F_4") {
  const FieldCtx F = FieldCtx::make(4);
  CHECK(F.trace(F.zero()) == 0);
  CHECK(F.trace(F.one()) == 0);  // 1 + 1 = 0 in characteristic 2
  // w and w+1 (the two elements outside F_2) have trace 1: w + w^2 = 1.
  CHECK(F.trace(F.element(2)) == 1);
  CHECK(F.trace(F.element(3)) == 1);
}

TEST_CASE("character exponent is additive and non-trivial") {
  for (const int q : {2, 3, 4, 5, 8, 9, 16, 25, 27, 32}) {
    const FieldCtx F = FieldCtx::make(q);
    bool nontrivial = false;
    for (int a = 0; a < q; ++a) {
      for (int b = 0; b < q; ++b) {
        const int lhs = F.char_exponent(F.add(F.element(a), F.element(b))).value;
        const int rhs = (F.char_exponent(F.element(a)).value + F.char_exponent(F.element(b)).value) % F.p();
        CHECK(lhs == rhs);
      }
      if (F.char_exponent(F.element(a)).value != 0) nontrivial = true;
    }
    CHECK(nontrivial);
  }
}

TEST_CASE("full character sum vanishes exactly") {
  for (const int q : {2, 3, 4, 5, 8, 9, 27}) {
    const FieldCtx F = FieldCtx::make(q);
    SumValue sum(F.p());
    for (int a = 0; a < q; ++a) sum += char_value(F.p(), F.char_exponent(F.element(a)));
    CHECK(sum.is_zero());
  }
}

TEST_CASE("char_value basics") {
  CHECK(char_value(2, CharExponent{1}).to_complex().real() == doctest::Approx(-1.0));
  CHECK(char_value(3, CharExponent{0}).to_complex().real() == doctest::Approx(1.0));
  SumValue s(3);
  for (int n = 0; n < 3; ++n) s += char_value(3, CharExponent{n});
  CHECK(s.is_zero());
}

TEST_CASE("SumValue reduction, conjugation, products") {
  SumValue ones(3);
  for (int i = 0; i < 3; ++i) ones.coeff(i) = 5;
  CHECK(ones.is_zero());  // 5(1 + z + z^2) = 0

  const SumValue z = SumValue::unit(3, CharExponent{1});
  CHECK(z.conj() == SumValue::unit(3, CharExponent{2}));
  CHECK(z * z.conj() == SumValue::unit(3, CharExponent{0}));

  // (1 + z)(1 + z^2) = 2 + z + z^2 = 1.
  SumValue a = SumValue::unit(3, CharExponent{0});
  a += SumValue::unit(3, CharExponent{1});
  const SumValue prod = a * a.conj();
  const auto rat = prod.as_rational();
  REQUIRE(rat.has_value());
  CHECK(*rat == Rat(1));
}

TEST_CASE("as_rational rejects irrational values") {
  const SumValue z = SumValue::unit(5, CharExponent{1});
  CHECK_FALSE(z.as_rational().has_value());
}

TEST_CASE("exact accumulations convert to double within 1e-12") {
  // Accumulate a large alternating value near 2^40 and compare conversions.
  SumValue v(2);
  const std::int64_t big = (std::int64_t{1} << 40) - 12345;
  v.coeff(0) = big;
  v.coeff(1) = 98765;
  const std::complex<double> z = v.to_complex();
  const double expect = static_cast<double>(big - 98765);
  CHECK(std::abs(z.real() - expect) <= 1e-12 * std::abs(expect));
  CHECK(std::abs(z.imag()) <= 1e-12 * std::abs(expect));
}

TEST_CASE("pair_exp matches trace of products") {
  const FieldCtx F = FieldCtx::make(9);
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      CHECK(F.pair_exp(F.element(a), F.element(b)) ==
            F.trace(F.mul(F.element(a), F.element(b))));
}

TEST_SUITE_END();
