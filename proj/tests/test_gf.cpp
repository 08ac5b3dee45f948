#include <doctest.h>

#include <vector>

#include "projforce/gf.hpp"

using namespace projforce;

namespace {

const std::vector<int> supported_orders = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32};

} // namespace

TEST_CASE("prime field tables match modular arithmetic") {
    for (int q : {2, 3, 5, 7, 11, 31}) {
        Field f(q);
        CHECK(f.characteristic() == q);
        CHECK(f.degree() == 1);
        CHECK(f.modulus().empty());
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                CHECK(f.add(static_cast<FieldElement>(a), static_cast<FieldElement>(b)) == (a + b) % q);
                CHECK(f.mul(static_cast<FieldElement>(a), static_cast<FieldElement>(b)) == (a * b) % q);
            }
    }
}

TEST_CASE("field axioms hold for every supported order") {
    for (int q : supported_orders) {
        CAPTURE(q);
        Field f(q);
        CHECK(f.q() == q);
        for (int a = 0; a < q; ++a) {
            const auto x = static_cast<FieldElement>(a);
            CHECK(f.add(x, 0) == x);
            CHECK(f.mul(x, 1) == x);
            CHECK(f.mul(x, 0) == 0);
            CHECK(f.add(x, f.neg(x)) == 0);
            if (a != 0) CHECK(f.mul(x, f.inv(x)) == 1);
            for (int b = 0; b < q; ++b) {
                const auto y = static_cast<FieldElement>(b);
                CHECK(f.add(x, y) == f.add(y, x));
                CHECK(f.mul(x, y) == f.mul(y, x));
                CHECK(f.sub(f.add(x, y), y) == x);
            }
        }
    }
}

TEST_CASE("distributivity and associativity on small orders") {
    for (int q : {2, 3, 4, 5, 8, 9}) {
        Field f(q);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                for (int c = 0; c < q; ++c) {
                    const auto x = static_cast<FieldElement>(a);
                    const auto y = static_cast<FieldElement>(b);
                    const auto z = static_cast<FieldElement>(c);
                    CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
                    CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
                    CHECK(f.add(f.add(x, y), z) == f.add(x, f.add(y, z)));
                }
    }
}

TEST_CASE("extension fields report characteristic, degree, and pinned modulus") {
    struct Expected {
        int q, p, e;
        std::vector<FieldElement> modulus; // c_0..c_{e-1} of the monic modulus
    };
    // Least monic irreducible by integer encoding of the non-leading coefficients.
    const std::vector<Expected> table = {
        {4, 2, 2, {1, 1}},        // x^2 + x + 1
        {8, 2, 3, {1, 1, 0}},     // x^3 + x + 1
        {9, 3, 2, {1, 0}},        // x^2 + 1
        {16, 2, 4, {1, 1, 0, 0}}, // x^4 + x + 1
        {25, 5, 2, {2, 0}},       // x^2 + 2
        {27, 3, 3, {1, 2, 0}},    // x^3 + 2x + 1
        {32, 2, 5, {1, 0, 1, 0, 0}}, // x^5 + x^2 + 1
    };
    for (const auto& e : table) {
        CAPTURE(e.q);
        Field f(e.q);
        CHECK(f.characteristic() == e.p);
        CHECK(f.degree() == e.e);
        CHECK(f.modulus() == e.modulus);
    }
}

TEST_CASE("frobenius endomorphism is additive") {
    for (int q : {4, 8, 9, 16, 25, 27, 32}) {
        Field f(q);
        const int p = f.characteristic();
        auto pow_p = [&](FieldElement x) {
            FieldElement r = 1;
            for (int i = 0; i < p; ++i) r = f.mul(r, x);
            return r;
        };
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                const auto x = static_cast<FieldElement>(a);
                const auto y = static_cast<FieldElement>(b);
                CHECK(pow_p(f.add(x, y)) == f.add(pow_p(x), pow_p(y)));
            }
    }
}

TEST_CASE("invalid orders are rejected") {
    CHECK_THROWS_AS(Field(0), NotPrimePowerError);
    CHECK_THROWS_AS(Field(1), NotPrimePowerError);
    CHECK_THROWS_AS(Field(6), NotPrimePowerError);
    CHECK_THROWS_AS(Field(12), NotPrimePowerError);
    CHECK_THROWS_AS(Field(33), NotPrimePowerError); // 3 * 11
    CHECK_THROWS_AS(Field(49), UnsupportedOrderError);
    CHECK_THROWS_AS(Field(64), UnsupportedOrderError);
    CHECK_THROWS_AS(Field(81), UnsupportedOrderError);
}

TEST_CASE("inverse of zero is rejected") {
    Field f(5);
    CHECK_THROWS_AS(f.inv(0), DivisionByZeroError);
}

TEST_CASE("dot products") {
    Field f(2);
    const std::vector<FieldElement> a = {1, 1, 1};
    const std::vector<FieldElement> b = {1, 1, 0};
    CHECK(f.dot(a, b) == 0);
    CHECK(f.dot(a, a) == 1);

    Field f3(3);
    const std::vector<FieldElement> c = {1, 2};
    const std::vector<FieldElement> d = {2, 1};
    CHECK(f3.dot(c, d) == 1); // 2 + 2 = 4 = 1 mod 3

    const std::vector<FieldElement> short_v = {1};
    CHECK_THROWS_AS(f.dot(a, short_v), LengthMismatchError);
}

TEST_CASE("fields compare by order") {
    CHECK(Field(4) == Field(4));
    CHECK_FALSE(Field(4) == Field(5));
}
