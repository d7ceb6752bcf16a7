#include <doctest.h>

#include "fqflats/gf.hpp"

using fqflats::errc;
using fqflats::error;
using fqflats::Field;

namespace {

// Exhaustive field-axiom sweep; q^3 triples stay tiny at test scale.
void check_axioms(const Field& f) {
    const int q = f.q();
    for (int a = 0; a < q; ++a) {
        CHECK(f.add(a, 0) == a);
        CHECK(f.mul(a, 1) == a);
        CHECK(f.mul(a, 0) == 0);
        CHECK(f.add(a, f.neg(a)) == 0);
        if (a != 0) {
            CHECK(f.mul(a, f.inv(a)) == 1);
        }
        for (int b = 0; b < q; ++b) {
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
            for (int c = 0; c < q; ++c) {
                CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
    // no zero divisors
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b) CHECK(f.mul(a, b) != 0);
}

} // namespace

TEST_SUITE("gf") {

TEST_CASE("axioms hold for the supported orders") {
    for (int q : {3, 5, 7, 9, 11, 25, 27}) {
        CAPTURE(q);
        check_axioms(Field(q));
    }
}

TEST_CASE("prime field values") {
    const Field f3(3);
    CHECK(f3.p() == 3);
    CHECK(f3.e() == 1);
    CHECK(f3.add(2, 2) == 1);
    CHECK(f3.neg(1) == 2);
    CHECK(f3.mul(2, 2) == 1);

    const Field f5(5);
    CHECK(f5.inv(2) == 3);
    CHECK(f5.inv(4) == 4);
    CHECK(f5.pow(2, 4) == 1);
    CHECK(f5.pow(3, 0) == 1);
}

TEST_CASE("GF(9) extension structure") {
    const Field f(9);
    CHECK(f.p() == 3);
    CHECK(f.e() == 2);
    // modulus x^2 + 1, constant term first
    CHECK(f.modulus() == std::vector<int>{1, 0, 1});
    // the generator digit x (element 3) squares to -1 = 2
    CHECK(f.mul(3, 3) == 2);
    // multiplicative group has order 8
    for (int a = 1; a < 9; ++a) {
        CHECK(f.pow(a, 8) == 1);
        CHECK(f.mul(a, f.inv(a)) == 1);
    }
    // additive structure is digit-wise mod 3: (1 + 2x) + (2 + x) = 0
    CHECK(f.add(7, 5) == 0);
}

TEST_CASE("GF(27) and GF(81) are consistent") {
    const Field f27(27);
    CHECK(f27.e() == 3);
    for (int a = 1; a < 27; ++a) CHECK(f27.pow(a, 26) == 1);

    const Field f81(81);
    CHECK(f81.e() == 4);
    for (int a = 1; a < 81; ++a) CHECK(f81.mul(a, f81.inv(a)) == 1);
}

TEST_CASE("rejects bad orders") {
    CHECK_THROWS_AS(Field(6), error);
    CHECK_THROWS_AS(Field(12), error);
    CHECK_THROWS_AS(Field(1), error);
    CHECK_THROWS_AS(Field(2), error);
    try {
        Field(6);
    } catch (const error& e) {
        CHECK(e.code() == errc::order_not_prime_power);
    }
    try {
        Field(4);
    } catch (const error& e) {
        CHECK(e.code() == errc::even_characteristic);
    }
}

TEST_CASE("even orders work behind the override") {
    const Field f4(4, /*allow_even=*/true);
    CHECK(f4.p() == 2);
    CHECK(f4.e() == 2);
    check_axioms(f4);
    const Field f8(8, /*allow_even=*/true);
    check_axioms(f8);
}

TEST_CASE("division by zero raises") {
    const Field f(5);
    CHECK_THROWS_AS((void)f.inv(0), error);
    try {
        (void)f.inv(0);
    } catch (const error& e) {
        CHECK(e.code() == errc::division_by_zero);
    }
}

} // TEST_SUITE
