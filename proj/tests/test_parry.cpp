#include <catch2/catch_amalgamated.hpp>

#include "betagibbs/parry.hpp"

using namespace betagibbs;

TEST_CASE("expand") {
    CHECK(expand(FieldElement(0), 5) == "00000");
    CHECK(expand(inverse(FieldElement::beta()), 4) == "1000");
    CHECK(expand(FieldElement::beta() - FieldElement(1), 5) == "10100");
    CHECK_THROWS_AS(expand(FieldElement(-1), 3), std::domain_error);
    CHECK_THROWS_AS(expand(FieldElement(1), 3), std::domain_error);
    CHECK_THROWS_AS(expand(FieldElement::beta(), 3), std::domain_error);
}

TEST_CASE("word admissibility") {
    CHECK(is_admissible_word("1100"));
    CHECK(!is_admissible_word("111"));
    CHECK(!is_admissible_word("110110"));
    CHECK(is_admissible_word("11"));
    CHECK(is_admissible_word("110"));
    CHECK(is_admissible_word(""));
    CHECK_THROWS_AS(is_admissible_word("102"), std::domain_error);
}

TEST_CASE("tail admissibility excludes the infinite 1100 repetition") {
    CHECK(!is_admissible_tail("", "1100"));
    CHECK(is_admissible_tail("10", "0"));
    CHECK(is_admissible_tail("", "10"));
    CHECK(!is_admissible_tail("0", "1001"));   // tail of (1001)* from position 2 is (0110)*... contains 1100 phase
    CHECK(!is_admissible_tail("11", "0011"));  // aligns to the forbidden tail
    CHECK(is_admissible_tail("", "110010"));   // 1100 occurs but not as the whole tail
    CHECK(!is_admissible_tail("", "111"));     // automaton rejects
    CHECK_THROWS_AS(is_admissible_tail("0", ""), std::domain_error);
}

TEST_CASE("block decomposition over {0, 10, 1100}") {
    CHECK(decompose_blocks("1100") == BlockWord{Block::ElevenHundred});
    CHECK(decompose_blocks("0101100") == BlockWord{Block::Zero, Block::Ten, Block::ElevenHundred});
    CHECK(decompose_blocks("") == BlockWord{});
    try {
        decompose_blocks("11");
        FAIL("expected IncompleteBlockError");
    } catch (const IncompleteBlockError& e) {
        CHECK(e.residue == "11");
    }
    const BlockParse parse = parse_blocks("010110");
    CHECK(parse.blocks == BlockWord{Block::Zero, Block::Ten});
    CHECK(parse.residue == Residue::OneOneZero);
}

TEST_CASE("enumeration") {
    CHECK(enumerate_admissible(2) == std::vector<BinaryWord>{"00", "01", "10", "11"});
    CHECK(enumerate_admissible(3).size() == 7);
    CHECK(enumerate_admissible(4).size() == 12);
    CHECK(count_admissible(7) == 65);
    for (std::size_t n = 1; n <= 10; ++n) {
        const auto words = enumerate_admissible(n);
        CHECK(Int(words.size()) == count_admissible(n));
        for (const auto& w : words) {
            // prefix closure
            CHECK(is_admissible_word(std::string_view(w).substr(0, n - 1)));
        }
    }
}

TEST_CASE("admissible count growth follows the transfer-matrix recurrence") {
    // Independent oracle: the characteristic polynomial of the 4-state
    // transfer matrix equals (x+1)(x^3-2x^2+x-1) = x^4-x^3-x^2-1, checked by
    // exact determinant evaluation at five points.
    const long M[4][4] = {{1, 1, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}};
    auto det4 = [](Int a[4][4]) {
        Int det = 0;
        int idx[4] = {0, 1, 2, 3};
        // permutation expansion of a 4x4 determinant
        std::sort(idx, idx + 4);
        do {
            int inv = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (idx[i] > idx[j]) ++inv;
            Int term = (inv % 2 == 0) ? 1 : -1;
            for (int i = 0; i < 4; ++i) term *= a[i][idx[i]];
            det += term;
        } while (std::next_permutation(idx, idx + 4));
        return det;
    };
    for (long x = 0; x <= 4; ++x) {
        Int a[4][4];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a[i][j] = (i == j ? x : 0) - M[i][j];
        const Int expected = Int(x) * x * x * x - Int(x) * x * x - Int(x) * x - 1;
        CHECK(det4(a) == expected);
    }

    // a(n+4) = a(n+3) + a(n+2) + a(n), and the ratio tends to beta.
    for (std::size_t n = 1; n <= 16; ++n)
        CHECK(count_admissible(n + 4) == count_admissible(n + 3) + count_admissible(n + 2) + count_admissible(n));
    const double ratio = Rational(count_admissible(21), count_admissible(20)).convert_to<double>();
    const double beta = to_double(approximate(FieldElement::beta(), Rational(1, 1 << 30)));
    CHECK(std::abs(ratio - beta) < 0.02);
}

TEST_CASE("cylinders") {
    const FieldElement one(1);
    SECTION("spec endpoints") {
        const BetaInterval i0 = interval_of("0");
        CHECK(i0.left == FieldElement(0));
        CHECK(i0.upper == beta_pow(-1));
        const BetaInterval i10 = interval_of("10");
        CHECK(i10.left == beta_pow(-1));
        CHECK(i10.upper == beta_pow(-1) + beta_pow(-2));
        const BetaInterval i1100 = interval_of("1100");
        CHECK(i1100.left == beta_pow(-1) + beta_pow(-2));
        CHECK(i1100.upper == one);  // s_4 + beta^-4 = 1 exactly
    }
    SECTION("the binding rank can be a strict prefix") {
        const BetaInterval i01 = interval_of("01");
        CHECK(i01.left == beta_pow(-2));
        CHECK(i01.upper == beta_pow(-1));  // rank-1 constraint, not s_2 + beta^-2
        const BetaInterval i11 = interval_of("11");
        CHECK(i11.upper == one);
    }
    SECTION("inadmissible word rejected") { CHECK_THROWS_AS(interval_of("111"), std::domain_error); }
}

TEST_CASE("cylinders of fixed order tile [0,1) with shared endpoints") {
    for (std::size_t n : {1ul, 2ul, 3ul, 6ul, 9ul, 12ul, 14ul}) {
        // DFS keeps endpoint computation shared along prefixes.
        std::vector<BetaInterval> cells;
        auto rec = [&](auto&& self, const BetaInterval& iv) -> void {
            if (iv.order() == n) {
                cells.push_back(iv);
                return;
            }
            for (char d : {'0', '1'})
                if (is_admissible_word(iv.word + d)) self(self, child_interval(iv, d));
        };
        rec(rec, unit_interval());
        REQUIRE(Int(cells.size()) == count_admissible(n));
        CHECK(cells.front().left == FieldElement(0));
        for (std::size_t i = 0; i + 1 < cells.size(); ++i) CHECK(cells[i].upper == cells[i + 1].left);
        CHECK(cells.back().upper == FieldElement(1));
    }
}

TEST_CASE("round trip: expansion of the cylinder midpoint returns the word") {
    for (std::size_t n : {1ul, 4ul, 8ul, 12ul}) {
        for (const BinaryWord& w : enumerate_admissible(n)) {
            const BetaInterval iv = interval_of(w);
            CHECK(expand(iv.midpoint(), n) == w);
        }
    }
}
