#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "betagibbs/matrix.hpp"
#include "betagibbs/words.hpp"

namespace betagibbs {

using Mat7 = Matrix<Int, 7>;
using Vec7i = Vector<Int, 7>;

// Coordinate subsets of {1,...,7} as bit masks (bit i-1 = coordinate i).
using SupportMask = std::uint8_t;

inline SupportMask support_of(const Vec7i& v) {
    SupportMask m = 0;
    for (int i = 0; i < 7; ++i)
        if (v.e[i] != 0) m |= SupportMask(1u << i);
    return m;
}

inline SupportMask make_support(std::initializer_list<int> coords) {
    SupportMask m = 0;
    for (int c : coords) m |= SupportMask(1u << (c - 1));
    return m;
}

inline std::vector<int> support_coords(SupportMask m) {
    std::vector<int> out;
    for (int i = 0; i < 7; ++i)
        if (m & (1u << i)) out.push_back(i + 1);
    return out;
}

inline const Mat7& letter_matrix(char letter) {
    static const Mat7 A{{1, 0, 0, 0, 0, 0, 0},
                        {0, 0, 1, 0, 0, 0, 0},
                        {0, 0, 0, 1, 1, 0, 0},
                        {0, 0, 0, 0, 0, 0, 0},
                        {1, 0, 0, 0, 0, 0, 1},
                        {0, 0, 0, 0, 1, 0, 0},
                        {0, 1, 0, 0, 0, 0, 0}};
    static const Mat7 B{{0, 0, 1, 1, 0, 0, 0},
                        {0, 0, 0, 0, 0, 1, 0},
                        {0, 0, 0, 1, 1, 0, 0},
                        {1, 0, 0, 0, 0, 0, 0},
                        {0, 0, 1, 0, 0, 0, 0},
                        {0, 0, 0, 0, 0, 0, 0},
                        {0, 0, 0, 0, 0, 0, 0}};
    static const Mat7 C{{1, 0, 0, 0, 1, 0, 1},
                        {0, 0, 0, 0, 0, 0, 0},
                        {1, 0, 0, 0, 0, 0, 1},
                        {0, 0, 0, 1, 1, 0, 0},
                        {0, 0, 0, 0, 1, 0, 0},
                        {0, 0, 0, 0, 0, 0, 0},
                        {0, 0, 0, 0, 0, 0, 0}};
    switch (letter) {
        case '0': return A;
        case '1': return B;
        case '2': return C;
    }
    throw std::domain_error("letter_matrix: letter must be 0, 1 or 2");
}

// A(w) = A(w_1) ... A(w_n), identity for the empty word.
inline Mat7 product(std::string_view w) {
    require_ternary(w);
    Mat7 out = Mat7::identity();
    for (char ch : w) out = out * letter_matrix(ch);
    return out;
}

inline std::array<SupportMask, 7> column_supports(const Mat7& M) {
    std::array<SupportMask, 7> cols{};
    for (int j = 0; j < 7; ++j)
        for (int i = 0; i < 7; ++i)
            if (M(i, j) != 0) cols[j] |= SupportMask(1u << i);
    return cols;
}

// Property (P): the nonempty column supports are all equal, or take exactly
// two values c and c' with c >= c' union {1,3,5}.
inline bool has_property_P(const Mat7& M) {
    std::vector<SupportMask> values;
    for (SupportMask s : column_supports(M)) {
        if (s == 0) continue;
        if (std::find(values.begin(), values.end(), s) == values.end()) values.push_back(s);
    }
    if (values.size() <= 1) return !values.empty();
    if (values.size() != 2) return false;
    const SupportMask required = make_support({1, 3, 5});
    const SupportMask a = values[0], b = values[1];
    const SupportMask big = (a | b) == a ? a : ((a | b) == b ? b : 0);
    if (big == 0) return false;
    const SupportMask small = big == a ? b : a;
    return (big & (small | required)) == (small | required);
}

// ---------------------------------------------------------------------------
// Column-pattern abstraction {0, 1, >=2}^7.  Because A, B, C are 0-1 matrices
// the pattern of M*v is a function of the pattern of v, so the induced step is
// exact for nonnegative integer vectors.

struct AbstractState {
    std::array<std::uint8_t, 7> v{};  // 0, 1, or 2 (meaning >= 2)

    friend bool operator==(const AbstractState&, const AbstractState&) = default;
    friend auto operator<=>(const AbstractState&, const AbstractState&) = default;

    SupportMask support() const {
        SupportMask m = 0;
        for (int i = 0; i < 7; ++i)
            if (v[i] != 0) m |= SupportMask(1u << i);
        return m;
    }

    std::string label() const {
        std::string out;
        for (int i = 0; i < 7; ++i) {
            if (v[i] == 0) continue;
            out += char('1' + i);
            if (v[i] >= 2) out += '*';
        }
        return out.empty() ? "0" : out;
    }

    std::uint16_t code() const {
        std::uint16_t c = 0;
        for (int i = 6; i >= 0; --i) c = std::uint16_t(c * 3 + v[i]);
        return c;
    }
};

inline AbstractState abstract(const Vec7i& x) {
    AbstractState s;
    for (int i = 0; i < 7; ++i) s.v[i] = x.e[i] == 0 ? 0 : (x.e[i] == 1 ? 1 : 2);
    return s;
}

inline AbstractState step(const AbstractState& s, char letter) {
    const Mat7& M = letter_matrix(letter);
    AbstractState out;
    for (int i = 0; i < 7; ++i) {
        unsigned acc = 0;
        for (int j = 0; j < 7 && acc < 2; ++j)
            if (M(i, j) != 0) acc += s.v[j];
        out.v[i] = std::uint8_t(std::min(acc, 2u));
    }
    return out;
}

inline AbstractState step_word(AbstractState s, std::string_view w) {
    for (char ch : w) s = step(s, ch);
    return s;
}

// Support dynamics alone: supp(M*v) depends only on supp(v).
inline SupportMask support_step(SupportMask s, char letter) {
    const Mat7& M = letter_matrix(letter);
    SupportMask out = 0;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            if (M(i, j) != 0 && (s & (1u << j))) {
                out |= SupportMask(1u << i);
                break;
            }
    return out;
}

inline SupportMask support_step_word(SupportMask s, std::string_view w) {
    for (char ch : w) s = support_step(s, ch);
    return s;
}

// ---------------------------------------------------------------------------
// Reachable state graph (finite: at most 3^7 patterns).

struct StateGraph {
    std::vector<AbstractState> states;
    std::vector<std::array<int, 3>> edges;  // edges[id][letter] -> id
    std::map<std::uint16_t, int> index;

    int id_of(const AbstractState& s) const {
        auto it = index.find(s.code());
        return it == index.end() ? -1 : it->second;
    }
};

inline StateGraph reachable_graph(const std::vector<AbstractState>& starts) {
    StateGraph g;
    std::vector<int> frontier;
    auto intern = [&](const AbstractState& s) {
        auto [it, inserted] = g.index.try_emplace(s.code(), int(g.states.size()));
        if (inserted) {
            g.states.push_back(s);
            g.edges.push_back({-1, -1, -1});
            frontier.push_back(it->second);
        }
        return it->second;
    };
    for (const AbstractState& s : starts) intern(s);
    while (!frontier.empty()) {
        const int id = frontier.back();
        frontier.pop_back();
        const AbstractState s = g.states[id];
        for (int letter = 0; letter < 3; ++letter)
            g.edges[id][letter] = intern(step(s, char('0' + letter)));
    }
    return g;
}

inline std::vector<AbstractState> basis_states() {
    std::vector<AbstractState> out;
    for (int i = 0; i < 7; ++i) {
        AbstractState s;
        s.v[i] = 1;
        out.push_back(s);
    }
    return out;
}

inline AbstractState state_135() {
    AbstractState s;
    s.v[0] = s.v[2] = s.v[4] = 1;
    return s;
}

inline std::string to_dot(const StateGraph& g, const std::string& name = "states") {
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < g.states.size(); ++i)
        os << "  n" << i << " [label=\"" << g.states[i].label() << "\"];\n";
    for (std::size_t i = 0; i < g.states.size(); ++i)
        for (int letter = 0; letter < 3; ++letter)
            os << "  n" << i << " -> n" << g.edges[i][letter] << " [label=\"" << letter << "\"];\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Synchronizing words: w collapses all reachable supports containing {1,3,5}
// to one common support.

inline std::vector<SupportMask> reachable_135_supports() {
    // Closure of the basis supports {1},...,{7} under all three letters.
    std::vector<bool> seen(128, false);
    std::vector<SupportMask> stack;
    for (int i = 0; i < 7; ++i) {
        const SupportMask s = SupportMask(1u << i);
        seen[s] = true;
        stack.push_back(s);
    }
    std::vector<SupportMask> all;
    while (!stack.empty()) {
        const SupportMask s = stack.back();
        stack.pop_back();
        all.push_back(s);
        for (char letter : {'0', '1', '2'}) {
            const SupportMask t = support_step(s, letter);
            if (t != 0 && !seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
        }
    }
    const SupportMask required = make_support({1, 3, 5});
    std::vector<SupportMask> out;
    for (SupportMask s : all)
        if ((s & required) == required) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_synchronizing(std::string_view w) {
    require_ternary(w);
    static const std::vector<SupportMask> starts = reachable_135_supports();
    if (w.empty()) return starts.size() <= 1;
    bool first = true;
    SupportMask common = 0;
    for (SupportMask s : starts) {
        const SupportMask t = support_step_word(s, w);
        if (first) {
            common = t;
            first = false;
        } else if (t != common) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// The code W: words whose reversed spelling labels a path in the pattern
// graph from 135 to a final state, stopping at the first final state.
// Final states: support exactly {1,2,3,4,5}, {1,2,3,5,6,7} or {1,3,4,5} with
// every nonzero coordinate >= 2.

inline bool is_W_final(const AbstractState& s) {
    static const SupportMask finals[3] = {make_support({1, 2, 3, 4, 5}),
                                          make_support({1, 2, 3, 5, 6, 7}),
                                          make_support({1, 3, 4, 5})};
    const SupportMask supp = s.support();
    if (supp != finals[0] && supp != finals[1] && supp != finals[2]) return false;
    for (int i = 0; i < 7; ++i)
        if (s.v[i] == 1) return false;
    return true;
}

// Right-to-left state evolution: u_k = step(u_{k-1}, w[n-k]), so
// u_n = A(w) * (E1 + E3 + E5) in pattern form.
inline bool is_W_word(std::string_view w) {
    require_ternary(w);
    if (w.empty()) return false;
    AbstractState u = state_135();
    for (std::size_t k = 0; k < w.size(); ++k) {
        u = step(u, w[w.size() - 1 - k]);
        const bool final = is_W_final(u);
        if (final && k + 1 == w.size()) return true;
        if (final) return false;
    }
    return false;
}

struct WDecomposition {
    TernaryWord prefix;                // zeta_1: strict suffix of a W word, possibly empty
    std::vector<TernaryWord> factors;  // zeta_2 ... zeta_alpha in left-to-right order
};

// Greedy right-to-left factorization (Lemma-style): repeatedly consume the
// shortest suffix reaching a final state, restart from 135.
inline WDecomposition decompose_W(std::string_view w) {
    require_ternary(w);
    WDecomposition out;
    AbstractState u = state_135();
    std::size_t chunk_end = w.size();
    std::vector<TernaryWord> reversed;
    for (std::size_t i = w.size(); i-- > 0;) {
        u = step(u, w[i]);
        if (is_W_final(u)) {
            reversed.emplace_back(w.substr(i, chunk_end - i));
            chunk_end = i;
            u = state_135();
        }
    }
    out.prefix = TernaryWord(w.substr(0, chunk_end));
    out.factors.assign(reversed.rbegin(), reversed.rend());
    return out;
}

// All W words of length <= max_len (DFS extends the path by prepending
// letters; paths never continue past a final state).
inline std::vector<TernaryWord> enumerate_W(std::size_t max_len) {
    std::vector<TernaryWord> out;
    std::string reversed;  // letters in path order = reversed word
    auto rec = [&](auto&& self, const AbstractState& u) -> void {
        if (reversed.size() >= max_len) return;
        for (char letter : {'0', '1', '2'}) {
            const AbstractState nxt = step(u, letter);
            reversed.push_back(letter);
            if (is_W_final(nxt)) {
                out.emplace_back(reversed.rbegin(), reversed.rend());
            } else {
                self(self, nxt);
            }
            reversed.pop_back();
        }
    };
    rec(rec, state_135());
    std::sort(out.begin(), out.end(), [](const TernaryWord& a, const TernaryWord& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

// Canonical factorization into maximal runs: blocks from {0^n} u {1} u {2^n},
// no two consecutive 0-runs or 2-runs; a run of k ones counts k blocks.
inline std::size_t ell_star(std::string_view w) {
    require_ternary(w);
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < w.size()) {
        if (w[i] == '1') {
            ++count;
            ++i;
        } else {
            const char run = w[i];
            ++count;
            while (i < w.size() && w[i] == run) ++i;
        }
    }
    return count;
}

inline bool is_length_exception_form(std::string_view w) {
    // 20^n or 12^n with n >= 1.
    if (w.size() < 2) return false;
    if (w[0] == '2') {
        for (std::size_t i = 1; i < w.size(); ++i)
            if (w[i] != '0') return false;
        return true;
    }
    if (w[0] == '1') {
        for (std::size_t i = 1; i < w.size(); ++i)
            if (w[i] != '2') return false;
        return true;
    }
    return false;
}

struct WSurvey {
    std::size_t member_count = 0;
    std::vector<TernaryWord> exceptions;  // members matching 20^n / 12^n
    std::vector<TernaryWord> violations;  // members failing |w|>=4 or ell*>=3 otherwise
};

inline WSurvey survey_W(std::size_t max_len) {
    WSurvey out;
    for (const TernaryWord& w : enumerate_W(max_len)) {
        ++out.member_count;
        if (is_length_exception_form(w)) {
            out.exceptions.push_back(w);
            continue;
        }
        if (w.size() < 4 || ell_star(w) < 3) out.violations.push_back(w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parametric word families w_1(n) ... w_12(n) and (100)^{n+2}, with closed-form
// product matrices affine in n.

inline constexpr int kFamilyBA2 = 13;

inline TernaryWord family_word(int family, long n) {
    if (n < 0) throw std::domain_error("family_word: n must be >= 0");
    const auto rep = [](char ch, long k) { return std::string(std::size_t(k), ch); };
    switch (family) {
        case 1: return "01" + rep('0', 4 * (n + 1));
        case 2: return "11" + rep('0', 4 * (n + 1));
        case 3: return "21" + rep('0', 4 * (n + 1));
        case 4: return "2" + rep('0', 4 * (n + 1));
        case 5: return "00" + rep('2', n + 2);
        case 6: return "0010" + rep('2', n + 2);
        case 7: return "1010" + rep('2', n + 2);
        case 8: return "2010" + rep('2', n + 2);
        case 9: return "110" + rep('2', n + 2);
        case 10: return "210" + rep('2', n + 2);
        case 11: return "20" + rep('2', n + 2);
        case 12: return "1" + rep('2', n + 2);
        case kFamilyBA2: {
            TernaryWord w;
            for (long k = 0; k < n + 2; ++k) w += "100";
            return w;
        }
    }
    throw std::domain_error("family_word: unknown family index");
}

namespace detail {

struct AffineMat {
    Mat7 base;
    Mat7 slope;
};

inline const std::array<AffineMat, 13>& family_closed_forms() {
    static const std::array<AffineMat, 13> forms = [] {
        std::array<AffineMat, 13> f{};
        auto col_slope = [](int col, std::initializer_list<int> rows) {
            Mat7 s;
            int i = 0;
            for (int v : rows) s(i++, col - 1) = v;
            return s;
        };
        // ABA^{4(n+1)}
        f[0].base = {{1, 0, 1, 0, 0, 0, 0}, {1, 0, 0, 1, 1, 0, 0}, {2, 0, 1, 0, 0, 0, 0},
                     {0, 0, 0, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0, 0},
                     {1, 0, 1, 0, 0, 0, 0}};
        f[0].slope = col_slope(1, {1, 1, 1, 0, 1, 1, 1});
        // B^2 A^{4(n+1)}
        f[1].base = {{2, 0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 0, 0, 0}, {2, 0, 1, 0, 0, 0, 0},
                     {1, 0, 1, 0, 0, 0, 0}, {1, 0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 0, 0, 0},
                     {0, 0, 0, 0, 0, 0, 0}};
        f[1].slope = col_slope(1, {1, 0, 1, 1, 1, 0, 0});
        // CBA^{4(n+1)}
        f[2].base = {{2, 0, 2, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0, 0},
                     {2, 0, 1, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0},
                     {0, 0, 0, 0, 0, 0, 0}};
        f[2].slope = col_slope(1, {2, 0, 1, 1, 1, 0, 0});
        // CA^{4(n+1)}
        f[3].base = {{3, 0, 0, 1, 1, 0, 1}, {0, 0, 0, 0, 0, 0, 0}, {2, 0, 0, 0, 0, 0, 1},
                     {1, 0, 0, 1, 1, 0, 0}, {1, 0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 0, 0, 0},
                     {0, 0, 0, 0, 0, 0, 0}};
        f[3].slope = col_slope(1, {2, 0, 1, 1, 1, 0, 0});
        // A^2 C^{n+2}
        f[4].base = {{1, 0, 0, 0, 2, 0, 1}, {0, 0, 0, 1, 3, 0, 0}, {1, 0, 0, 0, 2, 0, 1},
                     {0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 2, 0, 1}, {1, 0, 0, 0, 2, 0, 1},
                     {1, 0, 0, 0, 1, 0, 1}};
        f[4].slope = col_slope(5, {1, 1, 1, 0, 1, 1, 1});
        // A^2 BAC^{n+2}
        f[5].base = {{0, 0, 0, 1, 3, 0, 0}, {1, 0, 0, 1, 5, 0, 1}, {0, 0, 0, 1, 3, 0, 0},
                     {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 4, 0, 0}, {0, 0, 0, 1, 3, 0, 0},
                     {1, 0, 0, 0, 2, 0, 1}};
        f[5].slope = col_slope(5, {1, 2, 1, 0, 1, 1, 1});
        // BABAC^{n+2}
        f[6].base = {{1, 0, 0, 1, 5, 0, 1}, {0, 0, 0, 1, 3, 0, 0}, {0, 0, 0, 1, 3, 0, 0},
                     {0, 0, 0, 1, 3, 0, 0}, {1, 0, 0, 1, 5, 0, 1}, {0, 0, 0, 0, 0, 0, 0},
                     {0, 0, 0, 0, 0, 0, 0}};
        f[6].slope = col_slope(5, {2, 1, 1, 1, 2, 0, 0});
        // CABAC^{n+2}
        f[7].base = {{0, 0, 0, 2, 7, 0, 0}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 4, 0, 0},
                     {0, 0, 0, 1, 3, 0, 0}, {0, 0, 0, 1, 3, 0, 0}, {0, 0, 0, 0, 0, 0, 0},
                     {0, 0, 0, 0, 0, 0, 0}};
        f[7].slope = col_slope(5, {2, 0, 1, 1, 1, 0, 0});
        // B^2 AC^{n+2}
        f[8].base = {{2, 0, 0, 0, 4, 0, 2}, {0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 1, 5, 0, 1},
                     {0, 0, 0, 1, 3, 0, 0}, {1, 0, 0, 0, 2, 0, 1}, {0, 0, 0, 0, 0, 0, 0},
                     {0, 0, 0, 0, 0, 0, 0}};
        f[8].slope = col_slope(5, {2, 0, 2, 1, 1, 0, 0});
        // CBAC^{n+2}
        f[9].base = {{0, 0, 0, 2, 6, 0, 0}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 3, 0, 0},
                     {1, 0, 0, 1, 5, 0, 1}, {0, 0, 0, 1, 3, 0, 0}, {0, 0, 0, 0, 0, 0, 0},
                     {0, 0, 0, 0, 0, 0, 0}};
        f[9].slope = col_slope(5, {2, 0, 1, 2, 1, 0, 0});
        // CAC^{n+2}
        f[10].base = {{2, 0, 0, 0, 4, 0, 2}, {0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 2, 0, 1},
                      {1, 0, 0, 0, 2, 0, 1}, {1, 0, 0, 0, 2, 0, 1}, {0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0}};
        f[10].slope = col_slope(5, {2, 0, 1, 1, 1, 0, 0});
        // BC^{n+2}
        f[11].base = {{1, 0, 0, 1, 3, 0, 1}, {0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 3, 0, 0},
                      {1, 0, 0, 0, 2, 0, 1}, {1, 0, 0, 0, 1, 0, 1}, {0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0}};
        f[11].slope = col_slope(5, {2, 0, 1, 1, 1, 0, 0});
        // (BA^2)^{n+2}, constant in n
        f[12].base = {{1, 0, 0, 0, 0, 0, 1}, {1, 0, 0, 0, 0, 0, 1}, {2, 0, 0, 0, 0, 0, 2},
                      {1, 0, 0, 0, 0, 0, 1}, {1, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0, 0}};
        return f;
    }();
    return forms;
}

}  // namespace detail

inline Mat7 family_matrix(int family, long n) {
    if (family < 1 || family > kFamilyBA2) throw std::domain_error("family_matrix: unknown family index");
    if (n < 0) throw std::domain_error("family_matrix: n must be >= 0");
    const auto& form = detail::family_closed_forms()[std::size_t(family - 1)];
    return form.base + form.slope * Int(n);
}

struct FamilyReport {
    bool ok = true;
    int family = 0;
    long first_bad_n = -1;
    int bad_row = -1, bad_col = -1;
};

inline FamilyReport verify_family(int family, long n_max) {
    FamilyReport rep;
    rep.family = family;
    for (long n = 0; n <= n_max; ++n) {
        const Mat7 direct = product(family_word(family, n));
        const Mat7 closed = family_matrix(family, n);
        if (direct == closed) continue;
        rep.ok = false;
        rep.first_bad_n = n;
        for (int i = 0; i < 7 && rep.bad_row < 0; ++i)
            for (int j = 0; j < 7; ++j)
                if (direct(i, j) != closed(i, j)) {
                    rep.bad_row = i;
                    rep.bad_col = j;
                    break;
                }
        return rep;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Multi-affine structure of products m_0 w_{i_1}(n_1) m_1 ... w_{i_k}(n_k) m_k:
// every entry is a polynomial of degree <= 1 in each n_j.  Fit the 2^k
// coefficients from samples n in {0,1}^k, then check at further points.

struct MultiAffineTemplate {
    std::vector<TernaryWord> separators;  // m_0 ... m_k (size = families.size() + 1)
    std::vector<int> families;            // i_1 ... i_k
};

struct MultiAffineReport {
    bool ok = true;
    std::vector<long> bad_point;  // n-assignment of the first failure
    int bad_row = -1, bad_col = -1;
};

inline TernaryWord instantiate_template(const MultiAffineTemplate& t, const std::vector<long>& ns) {
    if (t.separators.size() != t.families.size() + 1 || ns.size() != t.families.size())
        throw std::domain_error("instantiate_template: shape mismatch");
    TernaryWord w = t.separators[0];
    for (std::size_t j = 0; j < t.families.size(); ++j) {
        w += family_word(t.families[j], ns[j]);
        w += t.separators[j + 1];
    }
    return w;
}

inline MultiAffineReport verify_multiaffine(const MultiAffineTemplate& t, long check_lo = 2,
                                            long check_hi = 5) {
    const std::size_t k = t.families.size();
    if (k > 8) throw std::domain_error("verify_multiaffine: too many variables");
    const std::size_t corners = std::size_t(1) << k;

    std::vector<Mat7> sample(corners);
    for (std::size_t mask = 0; mask < corners; ++mask) {
        std::vector<long> ns(k);
        for (std::size_t j = 0; j < k; ++j) ns[j] = (mask >> j) & 1;
        sample[mask] = product(instantiate_template(t, ns));
    }
    // Moebius inversion over subsets: coef[S] = sum_{T<=S} (-1)^{|S\T|} sample[T].
    std::vector<Matrix<Int, 7>> coef(corners);
    for (std::size_t S = 0; S < corners; ++S) {
        Matrix<Int, 7> acc;
        for (std::size_t T = S;; T = (T - 1) & S) {
            const int par = std::popcount(S ^ T) % 2 ? -1 : 1;
            acc = acc + sample[T] * Int(par);
            if (T == 0) break;
        }
        coef[S] = acc;
    }

    MultiAffineReport rep;
    std::vector<long> point(k, check_lo);
    for (;;) {
        Matrix<Int, 7> predicted;
        for (std::size_t S = 0; S < corners; ++S) {
            Int scale = 1;
            for (std::size_t j = 0; j < k; ++j)
                if (S & (std::size_t(1) << j)) scale *= point[j];
            if (scale != 0) predicted = predicted + coef[S] * scale;
        }
        const Mat7 direct = product(instantiate_template(t, point));
        if (!(predicted == direct)) {
            rep.ok = false;
            rep.bad_point = point;
            for (int i = 0; i < 7 && rep.bad_row < 0; ++i)
                for (int j = 0; j < 7; ++j)
                    if (predicted(i, j) != direct(i, j)) {
                        rep.bad_row = i;
                        rep.bad_col = j;
                        break;
                    }
            return rep;
        }
        // advance the odometer over {check_lo..check_hi}^k
        std::size_t pos = 0;
        while (pos < k && ++point[pos] > check_hi) point[pos++] = check_lo;
        if (pos == k) break;
        if (k == 0) break;
    }
    return rep;
}

}  // namespace betagibbs
