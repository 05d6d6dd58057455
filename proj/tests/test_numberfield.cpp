#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "betagibbs/numberfield.hpp"

using namespace betagibbs;

namespace {
FieldElement fe(long a, long b = 0, long c = 0) { return {Rational(a), Rational(b), Rational(c)}; }
}  // namespace

TEST_CASE("field arithmetic reduces modulo the minimal polynomial") {
    const FieldElement beta = FieldElement::beta();
    CHECK(beta * beta_pow(2) == fe(1, -1, 2));
    CHECK((fe(-1, 1) * fe(1, -1, 2)) == fe(1, 0, 1));  // (beta-1)(2 beta^2 - beta + 1) = beta^2 + 1
    const FieldElement x = fe(3, -7, 2);
    CHECK((x + (-x)).is_zero());
    // beta^3 - 2 beta^2 + beta - 1 collapses to zero
    CHECK((beta_pow(3) - fe(1, -1, 2)).is_zero());
}

TEST_CASE("inverse") {
    const FieldElement beta = FieldElement::beta();
    CHECK(inverse(beta) == fe(1, -2, 1));
    CHECK(inverse(fe(1)) == fe(1));
    CHECK(inverse(beta_pow(2)) == inverse(beta) * inverse(beta));
    CHECK_THROWS_AS(inverse(fe(0)), std::domain_error);

    std::mt19937 rng(42);
    std::uniform_int_distribution<long> coef(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const FieldElement x = fe(coef(rng), coef(rng), coef(rng));
        if (x.is_zero()) continue;
        CHECK(x * inverse(x) == fe(1));
    }
}

TEST_CASE("sign under the real embedding with beta > 1") {
    const FieldElement beta = FieldElement::beta();
    CHECK(sign(beta_pow(3) - fe(1, -1, 2)) == 0);
    CHECK(sign(beta_pow(2) - fe(3)) == 1);
    CHECK(sign(fe(-1755, 1000)) == -1);  // 1000 beta < 1755

    std::mt19937 rng(7);
    std::uniform_int_distribution<long> coef(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        const FieldElement x = fe(coef(rng), coef(rng), coef(rng));
        const FieldElement y = fe(coef(rng), coef(rng), coef(rng));
        CHECK(sign(x) * sign(y) == sign(x * y));
    }
}

TEST_CASE("floor") {
    const FieldElement beta = FieldElement::beta();
    CHECK(floor(beta) == 1);
    CHECK(floor(beta_pow(2)) == 3);
    CHECK(floor(fe(0)) == 0);
    CHECK(floor(fe(-1) * beta) == -2);
    CHECK(floor(FieldElement(Rational(-7, 2))) == -4);
    CHECK(floor(FieldElement(Rational(7, 2))) == 3);
}

TEST_CASE("approximate is certified by the enclosure") {
    const FieldElement beta = FieldElement::beta();
    const Rational eps(1, 1000000);
    const Rational b = approximate(beta, eps);
    CHECK(abs(b - Rational(17548776662LL, 10000000000LL)) < Rational(2, 1000000));
    CHECK(approximate(FieldElement(0), Rational(1, 10)) == 0);
    const Rational ib = approximate(inverse(beta), eps);
    CHECK(abs(ib - Rational(5698402910LL, 10000000000LL)) < Rational(2, 1000000));

    // sign and approximate never disagree
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> coef(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const FieldElement x = fe(coef(rng), coef(rng), coef(rng));
        const Rational q = approximate(x, eps);
        if (sign(x) > 0) CHECK(q + eps > 0);
        if (sign(x) < 0) CHECK(q - eps < 0);
    }
}

TEST_CASE("root enclosure brackets and halves") {
    RootEnclosure enc = RootEnclosure::initial();
    CHECK(RootEnclosure::poly(enc.lo) < 0);
    CHECK(RootEnclosure::poly(enc.hi) > 0);
    for (int i = 0; i < 20; ++i) {
        const Rational before = enc.width();
        enc.refine();
        CHECK(enc.width() * 2 <= before);
        CHECK(RootEnclosure::poly(enc.lo) < 0);
        CHECK(RootEnclosure::poly(enc.hi) > 0);
    }
}
