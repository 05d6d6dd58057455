#include <catch2/catch_amalgamated.hpp>

#include "betagibbs/measure.hpp"

using namespace betagibbs;

TEST_CASE("stationary vector") {
    const Vec7r V = stationary_V();
    const Vec7r expected{Rational(3, 5), Rational(2, 5),  Rational(13, 20), Rational(1, 5),
                         Rational(3, 5), Rational(3, 10), Rational(1, 5)};
    CHECK(V == expected);
    CHECK(V.sum() == Rational(59, 20));
    const Mat7r S =
        block_matrix(Block::Zero) + block_matrix(Block::Ten) + block_matrix(Block::ElevenHundred);
    CHECK((S * V) == V);
}

TEST_CASE("translated cylinder masses") {
    CHECK(translated_measures({}) == stationary_V());
    const Vec7r m0v = translated_measures({Block::Zero});
    const Vec7r expected0{Rational(3, 10), Rational(13, 40), Rational(2, 5), 0,
                          Rational(2, 5),  Rational(3, 10),  Rational(1, 5)};
    CHECK(m0v == expected0);
    const Vec7r m2v = translated_measures({Block::ElevenHundred});
    const Vec7r expected2{Rational(7, 80), 0, Rational(1, 20), Rational(1, 20),
                          Rational(3, 80), 0, 0};
    CHECK(m2v == expected2);
}

TEST_CASE("cylinder masses of mu") {
    CHECK(mu_interval("0") == Rational(3, 5));
    CHECK(mu_interval("10") == Rational(13, 40));
    CHECK(mu_interval("1100") == Rational(3, 40));
    CHECK(mu_interval("0") + mu_interval("10") + mu_interval("1100") == 1);
    CHECK(mu_interval("1") == Rational(2, 5));
    CHECK(mu_interval("11") == Rational(3, 40));
    CHECK(mu_interval("110") == Rational(3, 40));
    CHECK(mu_interval("") == 1);
    CHECK_THROWS_AS(mu_interval("111"), std::domain_error);
}

TEST_CASE("cylinder masses of mu'") {
    CHECK(mu_prime_interval("") == Rational(59, 20));
    CHECK(mu_prime_interval("0") == Rational(77, 40));
    CHECK(mu_prime_interval("1100") == Rational(9, 40));
    CHECK(mu_prime_interval("1") == Rational(41, 40));
}

TEST_CASE("gibbs ratio") {
    CHECK(gibbs_ratio("0") == Rational(77, 24));
    CHECK(gibbs_ratio("1100") == 3);
    CHECK(gibbs_ratio("1") == Rational(41, 16));
}

TEST_CASE("additivity over children") {
    for (std::size_t n = 0; n <= 10; ++n) {
        for (const BinaryWord& w : enumerate_admissible(n)) {
            const bool left = is_admissible_word(w + "0");
            const bool right = is_admissible_word(w + "1");
            REQUIRE(left);  // appending 0 never rejects
            Rational mu_children = mu_interval(w + "0");
            Rational mup_children = mu_prime_interval(w + "0");
            if (right) {
                mu_children += mu_interval(w + "1");
                mup_children += mu_prime_interval(w + "1");
            }
            CHECK(mu_interval(w) == mu_children);
            CHECK(mu_prime_interval(w) == mup_children);
        }
    }
}

TEST_CASE("partition of unity") {
    for (std::size_t n = 1; n <= 12; ++n) {
        Rational total = 0;
        std::size_t count = 0;
        for_each_admissible(n, [&](const std::string& w, const Rational& mu, const Rational& mup) {
            total += mu;
            ++count;
            CHECK(mu == mu_interval(w));
            CHECK(mup == mu_prime_interval(w));
        });
        CHECK(total == 1);
        CHECK(Int(count) == count_admissible(n));
    }
}

TEST_CASE("scan emits words in lexicographic order") {
    std::vector<std::string> words;
    for_each_admissible(5, [&](const std::string& w, const Rational&, const Rational&) {
        words.push_back(w);
    });
    CHECK(std::is_sorted(words.begin(), words.end()));
    CHECK(words == enumerate_admissible(5));
}

TEST_CASE("three-shape decomposition and the 21 nu m+/m- bound") {
    const GibbsDecomposition d1 = gibbs_decompose(decompose_blocks("000010"));
    CHECK(d1.shape == GibbsShape::ZeroRun);
    CHECK(d1.nu == 4);
    CHECK(d1.mid == Block::Ten);
    CHECK(d1.tail.empty());

    const GibbsDecomposition d2 = gibbs_decompose(decompose_blocks("100"));
    CHECK(d2.shape == GibbsShape::Ten);
    CHECK(d2.nu == 1);
    CHECK(d2.tail == BlockWord{Block::Zero});

    const GibbsDecomposition d3 = gibbs_decompose(decompose_blocks("11001100010"));
    CHECK(d3.shape == GibbsShape::ElevenHundredRun);
    CHECK(d3.nu == 2);
    CHECK(d3.mid == Block::Zero);

    // ratio <= bound on every full-block word up to length 10 (the acceptance
    // suite pushes this to 14)
    BlockWord blocks;
    auto rec = [&](auto&& self, std::size_t len) -> void {
        if (!blocks.empty())
            CHECK(gibbs_ratio(blocks_to_digits(blocks)) <= gibbs_bound(blocks));
        for (Block b : {Block::Zero, Block::Ten, Block::ElevenHundred}) {
            if (len + block_length(b) > 10) continue;
            blocks.push_back(b);
            self(self, len + block_length(b));
            blocks.pop_back();
        }
    };
    rec(rec, 0);

    // words 0^n: ratio grows at most linearly, against the fixed K = m+/m-
    const Rational K(13, 4);
    for (int n = 1; n <= 20; ++n)
        CHECK(gibbs_ratio(std::string(std::size_t(n), '0')) <= Rational(21 * n) * K);
}

TEST_CASE("n-step potential of mu' and its closed forms") {
    const PotentialValue p0 = n_step_potential_mu_prime("0");
    CHECK(2 * p0.ratio == Rational(77, 59));
    CHECK(p0.ratio == p0.closed_form);
    for (const char* w : {"100", "11000", "00", "0101100", "110010"}) {
        const PotentialValue pv = n_step_potential_mu_prime(w);
        INFO(w);
        CHECK(pv.ratio == pv.closed_form);
    }
    CHECK_THROWS_AS(n_step_potential_mu_prime("01"), std::domain_error);
    CHECK_THROWS_AS(n_step_potential_mu_prime(""), std::domain_error);
}

TEST_CASE("weak-Gibbs scan decreases at desk scale") {
    const auto rows = weak_gibbs_scan(8);
    REQUIRE(rows.size() == 8);
    for (const auto& row : rows) CHECK(std::isfinite(row.delta));
    CHECK(rows[7].delta < rows[3].delta);
    CHECK(rows[0].argmax == "0");
}
