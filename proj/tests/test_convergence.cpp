#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "betagibbs/convergence.hpp"

using namespace betagibbs;

TEST_CASE("normalized products") {
    const Vec7r p_empty = P_n("");
    const Vec7r expected{Rational(12, 59), Rational(8, 59),  Rational(13, 59), Rational(4, 59),
                         Rational(12, 59), Rational(6, 59),  Rational(4, 59)};
    CHECK(p_empty == expected);

    const Vec7r p2 = P_n("2");
    const Vec7r expected2{Rational(7, 18), 0, Rational(2, 9), Rational(2, 9),
                          Rational(1, 6),  0, 0};
    CHECK(p2 == expected2);

    CHECK(P_n("100100") == P_n("100100100"));
    CHECK(P_n("01", stationary_V()) == P_n("01"));
}

TEST_CASE("products compose through the shifted start vector") {
    // P_{n+m}(uv, V) = P_n(u, P_m(v, V)): normalization cancels.
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> len(0, 8), letter(0, 2);
    for (int trial = 0; trial < 100; ++trial) {
        TernaryWord u, v;
        for (int i = len(rng); i > 0; --i) u += char('0' + letter(rng));
        for (int i = len(rng); i > 0; --i) v += char('0' + letter(rng));
        CHECK(P_n(u + v) == P_n(u, P_n(v)));
    }
}

TEST_CASE("every normalized product has norm-sum one") {
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> len(0, 14), letter(0, 2);
    for (int trial = 0; trial < 100; ++trial) {
        TernaryWord w;
        for (int i = len(rng); i > 0; --i) w += char('0' + letter(rng));
        CHECK(P_n(w).sum() == 1);
    }
}

TEST_CASE("cauchy modulus") {
    const Rational d0 = cauchy_modulus("", 4);
    CHECK(d0 > 0);
    const Rational d4 = cauchy_modulus("0120", 8);
    CHECK(d4 < d0);
    // the all-(100) branch contributes zero oscillation beyond n0 + 6
    CHECK(P_n("100100") == P_n("100100100100"));
    CHECK(cauchy_modulus("", 0) == 0);
    CHECK_THROWS_AS(cauchy_modulus("", 14), BudgetExceededError);
    CHECK_THROWS_AS(cauchy_modulus("0", 0), std::domain_error);
}

TEST_CASE("limits along the three slow tails are exact") {
    const LimitResult zeros = limit_vector({"", "0"});
    CHECK(zeros.status == LimitResult::Status::ClosedForm);
    CHECK(zeros.support == make_support({2, 3, 5, 6, 7}));
    CHECK(zeros.limit == Vec7r{0, Rational(1, 5), Rational(1, 5), 0, Rational(1, 5),
                               Rational(1, 5), Rational(1, 5)});

    const LimitResult twos = limit_vector({"", "2"});
    CHECK(twos.support == make_support({1, 3, 4}));
    CHECK(twos.limit == Vec7r{Rational(1, 3), 0, Rational(1, 3), Rational(1, 3), 0, 0, 0});

    const LimitResult hundred = limit_vector({"", "100"});
    CHECK(hundred.support == make_support({1, 2, 3, 4, 5}));
    CHECK(hundred.limit == Vec7r{Rational(1, 6), Rational(1, 6), Rational(1, 3), Rational(1, 6),
                                 Rational(1, 6), 0, 0});

    // rotated phases of the same tail canonicalize
    const LimitResult rotated = limit_vector({"1", "010"});
    CHECK(rotated.status == LimitResult::Status::ClosedForm);

    const LimitResult with_pre = limit_vector({"1", "0"});
    CHECK(with_pre.status == LimitResult::Status::ClosedForm);
    CHECK(with_pre.support == make_support({1, 2, 3, 5}));
}

TEST_CASE("support classification stays inside the seven admissible sets") {
    for (int len = 1; len <= 3; ++len) {
        long count = 1;
        for (int i = 0; i < len; ++i) count *= 3;
        for (long code = 0; code < count; ++code) {
            TernaryWord period;
            long c = code;
            for (int i = 0; i < len; ++i) {
                period += char('0' + c % 3);
                c /= 3;
            }
            const ClassifyResult res = classify_support({"", period});
            INFO("period " << period);
            CHECK(res.limit.status != LimitResult::Status::Inconclusive);
            CHECK(res.support_admissible);
        }
    }
    const ClassifyResult pre = classify_support({"1", "0"});
    const SupportMask allowed[5] = {make_support({1, 2, 3, 4, 5}), make_support({1, 2, 3, 5, 6, 7}),
                                    make_support({1, 2, 3, 5, 6}), make_support({1, 2, 3, 5}),
                                    make_support({1, 3, 4, 5})};
    CHECK(std::count(std::begin(allowed), std::end(allowed), pre.limit.support) == 1);
}

TEST_CASE("falsification sweep over all period-8 words") {
    for (long code = 0; code < 6561; ++code) {
        TernaryWord period;
        long c = code;
        for (int i = 0; i < 8; ++i) {
            period += char('0' + c % 3);
            c /= 3;
        }
        const ClassifyResult res = classify_support({"", period}, 1200);
        if (res.limit.status == LimitResult::Status::Inconclusive || !res.support_admissible) {
            INFO("period " << period);
            CHECK(false);
        }
    }
    SUCCEED("all 6561 period-8 supports admissible");
}

TEST_CASE("eventual support cycles are single sets for mixed periods") {
    for (const char* period : {"01", "12", "20", "102", "0012"}) {
        const auto cycle = eventual_support_cycle({"", period});
        CHECK(cycle.size() == 1);
    }
}

TEST_CASE("generic-family engine and the 3x3 fixture") {
    const MatrixFamily<3>& fam = example_3x3();
    for (int n = 1; n <= 6; ++n) {
        const auto p = generic_P_n(fam, std::string(std::size_t(n - 1), '0') + "1");
        CHECK(p == (Vector<Rational, 3>{Rational(4, 5), Rational(1, 5), 0}));
    }
    CHECK(generic_P_n(fam, "000000000000") ==
          (Vector<Rational, 3>{Rational(2, 3), Rational(1, 3), 0}));

    MatrixFamily<2> identity_family;
    identity_family.letters.push_back(Matrix<Rational, 2>::identity());
    identity_family.start = Vector<Rational, 2>{Rational(3), Rational(1)};
    CHECK(generic_P_n(identity_family, "000") ==
          (Vector<Rational, 2>{Rational(3, 4), Rational(1, 4)}));

    MatrixFamily<2> killing;
    killing.letters.push_back(Matrix<Rational, 2>{{0, 0}, {0, 0}});
    killing.start = Vector<Rational, 2>{1, 1};
    CHECK_THROWS_AS(generic_P_n(killing, "0"), NotInOmegaAV);

    // non-uniformity witness: the modulus over prefixes 0^n never drops
    for (int n = 1; n <= 10; ++n) {
        const Rational m =
            generic_cauchy_modulus(fam, std::string(std::size_t(n), '0'), std::size_t(n) + 2);
        CHECK(m == Rational(4, 15));
    }
    CHECK(generic_cauchy_modulus(fam, "1", 5) >= Rational(4, 15));
}
