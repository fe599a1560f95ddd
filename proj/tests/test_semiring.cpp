#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "permatrellis/semiring.hpp"

using namespace permatrellis;

TEST_CASE("op counter arithmetic") {
    OpCounter a{3, 2, 1}, b{1, 1, 1};
    a += b;
    CHECK(a == OpCounter{4, 3, 2});
    a.reset();
    CHECK(a == OpCounter{});
}

TEST_CASE("sum-product exact semiring") {
    OpCounter ctr;
    Rational x(1, 2), y(1, 3);
    CHECK(counted_add<SumProductExact>(ctr, x, y) == Rational(5, 6));
    CHECK(counted_mul<SumProductExact>(ctr, x, y) == Rational(1, 6));
    CHECK(ctr.adds == 1);
    CHECK(ctr.mults == 1);
    CHECK(ctr.comparisons == 0);
    CHECK(SumProductExact::zero() == 0);
    CHECK(SumProductExact::one() == 1);
}

TEST_CASE("min-plus counts comparisons and additions") {
    OpCounter ctr;
    CHECK(counted_add<MinPlus>(ctr, 3.0, 5.0) == 3.0);
    CHECK(counted_mul<MinPlus>(ctr, 3.0, 5.0) == 8.0);
    CHECK(ctr.comparisons == 1);
    CHECK(ctr.adds == 1);
    CHECK(ctr.mults == 0);
    CHECK(MinPlus::add(MinPlus::zero(), 7.0) == 7.0);
    CHECK(MinPlus::mul(MinPlus::one(), 7.0) == 7.0);
}

TEST_CASE("min-plus ties keep the first operand") {
    // add(x, y) returns x unless y is strictly smaller; signed zeros make
    // the choice observable.
    CHECK(std::signbit(MinPlus::add(0.0, -0.0)) == false);
    CHECK(std::signbit(MinPlus::add(-0.0, 0.0)) == true);
}
