#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "betagibbs/numberfield.hpp"
#include "betagibbs/words.hpp"

namespace betagibbs {

// Admissible binary words: every "11" is followed by "00" (equivalently, no
// factor 111 or 1101).  All four automaton states accept; -1 rejects.
struct AdmissibilityAutomaton {
    static constexpr int kStart = 0;
    // state x digit -> state; q2 = just read "11", q3 = read "110".
    static constexpr int table[4][2] = {{0, 1}, {0, 2}, {3, -1}, {0, -1}};

    static int step(int state, char digit) {
        if (state < 0) return -1;
        return table[state][digit - '0'];
    }

    static int run(int state, std::string_view w) {
        for (char ch : w) {
            state = step(state, ch);
            if (state < 0) return -1;
        }
        return state;
    }
};

inline bool is_admissible_word(std::string_view w) {
    require_binary(w);
    return AdmissibilityAutomaton::run(AdmissibilityAutomaton::kStart, w) >= 0;
}

// Eventually periodic sequence preperiod (period)^inf.  Admissible iff the
// automaton never rejects and no tail equals the infinite repetition of 1100.
inline bool is_admissible_tail(std::string_view preperiod, std::string_view period) {
    require_binary(preperiod);
    require_binary(period);
    if (period.empty()) throw std::domain_error("is_admissible_tail: empty period");

    int state = AdmissibilityAutomaton::run(AdmissibilityAutomaton::kStart, preperiod);
    if (state < 0) return false;
    // The state after k periods cycles within at most 5 period traversals.
    std::vector<int> seen;
    while (std::find(seen.begin(), seen.end(), state) == seen.end()) {
        seen.push_back(state);
        state = AdmissibilityAutomaton::run(state, period);
        if (state < 0) return false;
    }

    // Tail == conj(1100) test: if some tail matches, a tail starting within
    // the first |preperiod| + |period| positions matches; two periodic words
    // with periods p and 4 agreeing on p + 4 letters agree forever.
    const std::size_t p = period.size();
    auto letter = [&](std::size_t i) -> char {
        if (i < preperiod.size()) return preperiod[i];
        return period[(i - preperiod.size()) % p];
    };
    static constexpr std::string_view cycle = "1100";
    for (std::size_t start = 0; start < preperiod.size() + p; ++start) {
        bool match = true;
        for (std::size_t k = 0; k < p + 4 && match; ++k)
            if (letter(start + k) != cycle[k % 4]) match = false;
        if (match) return false;
    }
    return true;
}

struct BlockParse {
    BlockWord blocks;
    Residue residue = Residue::None;
};

// Greedy left-to-right parse over the prefix code {0, 10, 1100}.
// Total on admissible words; the residue records a mid-block ending.
inline BlockParse parse_blocks(std::string_view w) {
    if (!is_admissible_word(w)) throw std::domain_error("parse_blocks: inadmissible word");
    BlockParse out;
    std::size_t i = 0;
    while (i < w.size()) {
        if (w[i] == '0') {
            out.blocks.push_back(Block::Zero);
            i += 1;
        } else if (i + 1 < w.size() && w[i + 1] == '0') {
            out.blocks.push_back(Block::Ten);
            i += 2;
        } else if (i + 3 < w.size()) {
            // admissibility forces "1100" here
            out.blocks.push_back(Block::ElevenHundred);
            i += 4;
        } else {
            const std::size_t left = w.size() - i;
            out.residue = left == 1 ? Residue::One : (left == 2 ? Residue::OneOne : Residue::OneOneZero);
            break;
        }
    }
    return out;
}

struct IncompleteBlockError : std::runtime_error {
    std::string residue;
    explicit IncompleteBlockError(std::string res)
        : std::runtime_error("word ends mid-block with residue '" + res + "'"),
          residue(std::move(res)) {}
};

inline BlockWord decompose_blocks(std::string_view w) {
    BlockParse parse = parse_blocks(w);
    if (parse.residue != Residue::None)
        throw IncompleteBlockError(std::string(residue_digits(parse.residue)));
    return std::move(parse.blocks);
}

// All automaton-accepted words of length n, lexicographic.
inline std::vector<BinaryWord> enumerate_admissible(std::size_t n) {
    if (n == 0) return {""};
    std::vector<BinaryWord> out;
    std::string word;
    auto rec = [&](auto&& self, int state, std::size_t depth) -> void {
        if (depth == n) {
            out.push_back(word);
            return;
        }
        for (char d : {'0', '1'}) {
            const int next = AdmissibilityAutomaton::step(state, d);
            if (next < 0) continue;
            word.push_back(d);
            self(self, next, depth + 1);
            word.pop_back();
        }
    };
    rec(rec, AdmissibilityAutomaton::kStart, 0);
    return out;
}

// Word counts via the automaton transfer matrix (no enumeration).
inline Int count_admissible(std::size_t n) {
    std::array<Int, 4> state_count{1, 0, 0, 0};
    for (std::size_t k = 0; k < n; ++k) {
        std::array<Int, 4> next{};
        for (int s = 0; s < 4; ++s) {
            if (state_count[s] == 0) continue;
            for (char d : {'0', '1'}) {
                const int t = AdmissibilityAutomaton::step(s, d);
                if (t >= 0) next[t] += state_count[s];
            }
        }
        state_count = next;
    }
    Int total = 0;
    for (const Int& v : state_count) total += v;
    return total;
}

// The cylinder of an admissible word: all x in [0,1) whose expansion starts
// with it.  The left endpoint is s_n; the right endpoint is the binding rank
// constraint min_k (s_k + beta^-k), which can be strictly below s_n + beta^-n
// for residue endings ("01" ends at 1/beta, not at s_2 + beta^-2).
struct BetaInterval {
    BinaryWord word;
    FieldElement left;
    FieldElement upper;

    std::size_t order() const { return word.size(); }
    FieldElement length() const { return upper - left; }
    FieldElement midpoint() const { return (left + upper) * FieldElement(Rational(1, 2)); }
    bool contains(const FieldElement& x) const { return sign(x - left) >= 0 && sign(x - upper) < 0; }
};

// Extend a cylinder by one digit; keeps the running min over ranks.
inline BetaInterval child_interval(const BetaInterval& iv, char digit) {
    BetaInterval out;
    out.word = iv.word + digit;
    const std::size_t n = out.word.size();
    const FieldElement scale = beta_pow(-static_cast<long>(n));
    out.left = digit == '1' ? iv.left + scale : iv.left;
    const FieldElement candidate = out.left + scale;
    out.upper = candidate < iv.upper ? candidate : iv.upper;
    return out;
}

inline BetaInterval unit_interval() { return {"", FieldElement(0), FieldElement(1)}; }

inline BetaInterval interval_of(std::string_view w) {
    if (!is_admissible_word(w)) throw std::domain_error("interval_of: inadmissible word");
    BetaInterval iv = unit_interval();
    for (char d : w) iv = child_interval(iv, d);
    return iv;
}

// First n Parry digits of x in [0,1): r0 = x, eps_k = floor(beta*r), r' = beta*r - eps_k.
inline BinaryWord expand(const FieldElement& x, std::size_t n) {
    if (sign(x) < 0 || sign(FieldElement(1) - x) <= 0)
        throw std::domain_error("expand: x outside [0,1)");
    BinaryWord digits;
    digits.reserve(n);
    FieldElement r = x;
    const FieldElement beta = FieldElement::beta();
    for (std::size_t k = 0; k < n; ++k) {
        const FieldElement y = beta * r;
        const Int eps = floor(y);
        if (eps < 0 || eps > 1) throw std::logic_error("expand: digit out of range");
        digits.push_back(eps == 0 ? '0' : '1');
        r = y - FieldElement(Rational(eps));
    }
    return digits;
}

}  // namespace betagibbs
