#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "betagibbs/matrix.hpp"
#include "betagibbs/measure.hpp"
#include "betagibbs/semigroup.hpp"

namespace betagibbs {

struct NotInOmegaAV : std::runtime_error {
    NotInOmegaAV() : std::runtime_error("matrix product annihilates the start vector") {}
};

struct BudgetExceededError : std::runtime_error {
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

// 20*V is integer; products A(w) * (20 V) stay integer, and normalization
// cancels the scale.
inline const Vec7i& scaled_V() {
    static const Vec7i v = [] {
        const Vec7r& V = stationary_V();
        Vec7i out;
        for (int i = 0; i < 7; ++i) {
            const Rational x = V.e[i] * 20;
            if (boost::multiprecision::denominator(x) != 1)
                throw std::logic_error("scaled_V: 20V not integral");
            out.e[i] = boost::multiprecision::numerator(x);
        }
        return out;
    }();
    return v;
}

inline Vec7i apply_letter(char letter, const Vec7i& x) {
    const Mat7& M = letter_matrix(letter);
    Vec7i y;
    for (int i = 0; i < 7; ++i) {
        Int s = 0;
        for (int j = 0; j < 7; ++j)
            if (M(i, j) != 0) s += x.e[j];
        y.e[i] = s;
    }
    return y;
}

inline Vec7r normalize_sum(const Vec7i& x) {
    const Int s = x.sum();
    if (s == 0) throw NotInOmegaAV();
    Vec7r out;
    for (int i = 0; i < 7; ++i) out.e[i] = Rational(x.e[i], s);
    return out;
}

// P_n(omega, V) = A(omega_1)...A(omega_n) V / ||...||, exact.  The last
// letter acts on V first.
inline Vec7r P_n(std::string_view prefix, const Vec7r& V0) {
    require_ternary(prefix);
    Vector<Rational, 7> x = V0;
    for (std::size_t i = prefix.size(); i-- > 0;) {
        const Mat7r M = matrix_cast<Rational>(letter_matrix(prefix[i]));
        x = M * x;
    }
    const Rational s = x.sum();
    if (s == 0) throw NotInOmegaAV();
    for (auto& v : x.e) v /= s;
    return x;
}

inline Vec7r P_n(std::string_view prefix) {
    Vec7i x = scaled_V();
    for (std::size_t i = prefix.size(); i-- > 0;) x = apply_letter(prefix[i], x);
    return normalize_sum(x);
}

// ---------------------------------------------------------------------------
// Exhaustive Cauchy modulus over a cylinder:
//   max over extensions xi of the prefix to length `depth`, and over
//   n <= r,s <= depth, of ||P_r(xi,V) - P_s(xi,V)||  (norm-sum, exact).

namespace detail {

// Extending a word appends a matrix next to V, so the path carries the full
// prefix product; right-multiplying by a letter combines columns.
inline Mat7 extend_product(const Mat7& M, char letter) {
    const Mat7& L = letter_matrix(letter);
    Mat7 out;
    for (int j = 0; j < 7; ++j)
        for (int k = 0; k < 7; ++k) {
            if (L(k, j) == 0) continue;
            for (int i = 0; i < 7; ++i)
                if (M(i, k) != 0) out(i, j) += M(i, k);
        }
    return out;
}

struct ModulusState {
    std::vector<Vec7i> path;  // unnormalized P-vectors at depths n..current
    std::vector<Int> sums;
    Rational best = 0;

    void push(const Mat7& M) {
        path.push_back(M * scaled_V());
        sums.push_back(path.back().sum());
        if (sums.back() == 0) throw NotInOmegaAV();
    }

    void consider_against_ancestors() {
        const Vec7i& x = path.back();
        const Int& sx = sums.back();
        for (std::size_t j = 0; j + 1 < path.size(); ++j) {
            const Vec7i& y = path[j];
            const Int& sy = sums[j];
            Int num = 0;
            for (int i = 0; i < 7; ++i) {
                Int t = x.e[i] * sy - y.e[i] * sx;
                num += t < 0 ? -t : t;
            }
            if (num == 0) continue;
            Rational d(num, sx * sy);
            if (d > best) best = d;
        }
    }
};

inline void modulus_dfs(ModulusState& st, const Mat7& M, std::size_t remaining) {
    st.consider_against_ancestors();
    if (remaining == 0) return;
    for (char letter : {'0', '1', '2'}) {
        const Mat7 next = extend_product(M, letter);
        st.push(next);
        modulus_dfs(st, next, remaining - 1);
        st.path.pop_back();
        st.sums.pop_back();
    }
}

}  // namespace detail

inline Rational cauchy_modulus(std::string_view prefix, std::size_t depth,
                               std::size_t max_branches = 1000000) {
    require_ternary(prefix);
    if (depth < prefix.size()) throw std::domain_error("cauchy_modulus: depth < |prefix|");
    const std::size_t window = depth - prefix.size();
    double branches = 1;
    for (std::size_t i = 0; i < window; ++i) branches *= 3;
    if (branches > double(max_branches))
        throw BudgetExceededError("cauchy_modulus: 3^" + std::to_string(window) +
                                  " extensions exceed the branch budget");

    detail::ModulusState st;
    const Mat7 root = product(prefix);
    st.push(root);
    detail::modulus_dfs(st, root, window);
    return st.best;
}

// ---------------------------------------------------------------------------
// Limits along eventually periodic omega.

struct PeriodicOmega {
    TernaryWord preperiod;
    TernaryWord period;  // nonempty

    std::string str() const { return preperiod + "(" + period + ")*"; }
    char letter(std::size_t i) const {
        if (i < preperiod.size()) return preperiod[i];
        return period[(i - preperiod.size()) % period.size()];
    }
};

namespace detail {

inline TernaryWord minimal_period(const TernaryWord& p) {
    for (std::size_t d = 1; d <= p.size(); ++d) {
        if (p.size() % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < p.size() && ok; ++i)
            if (p[i] != p[i - d]) ok = false;
        if (ok) return p.substr(0, d);
    }
    return p;
}

// Minimal preperiod + minimal period; then rotate a 100-type period into the
// canonical "100" phase (absorbing rotated letters into the preperiod).
inline PeriodicOmega canonicalize(PeriodicOmega om) {
    require_ternary(om.preperiod);
    require_ternary(om.period);
    if (om.period.empty()) throw std::domain_error("PeriodicOmega: empty period");
    om.period = minimal_period(om.period);
    while (!om.preperiod.empty() && om.preperiod.back() == om.period.back()) {
        om.preperiod.pop_back();
        om.period = om.period.back() + om.period.substr(0, om.period.size() - 1);
    }
    if (om.period.size() == 3) {
        for (int rot = 0; rot < 3 && om.period != "100"; ++rot) {
            if (om.period != "100" && (om.period == "010" || om.period == "001")) {
                om.preperiod += om.period.front();
                om.period = om.period.substr(1) + om.period.front();
            }
        }
    }
    return om;
}

}  // namespace detail

// The three slow tails and their exact limit directions of P_n.
enum class SpecialTail { None, Zeros, Twos, OneHundred };

inline SpecialTail special_tail_of(const PeriodicOmega& canonical) {
    if (canonical.period == "0") return SpecialTail::Zeros;
    if (canonical.period == "2") return SpecialTail::Twos;
    if (canonical.period == "100") return SpecialTail::OneHundred;
    return SpecialTail::None;
}

inline Vec7i special_tail_direction(SpecialTail t) {
    switch (t) {
        case SpecialTail::Zeros: return Vec7i{0, 1, 1, 0, 1, 1, 1};
        case SpecialTail::Twos: return Vec7i{1, 0, 1, 1, 0, 0, 0};
        case SpecialTail::OneHundred: return Vec7i{1, 1, 2, 1, 1, 0, 0};
        case SpecialTail::None: break;
    }
    throw std::logic_error("special_tail_direction: not a special tail");
}

struct LimitResult {
    enum class Status { ClosedForm, Stabilized, Inconclusive };
    Status status = Status::Inconclusive;
    Vec7r limit;  // exact; for Stabilized this is the final iterate
    SupportMask support = 0;
    std::size_t steps = 0;
};

// Limit of P_n along omega.  The eventually-0/2/100 tails go through exact
// closed forms (their normalized convergence is only O(1/n)); otherwise the
// period-boundary subsequence P_{|pre|+k|per|} = A(pre) A(per)^k V is a power
// iteration, run until normalized iterates settle below tol with the support
// constant over consecutive boundaries.
inline LimitResult limit_vector(const PeriodicOmega& omega, std::size_t n_max = 500,
                                double tol = 1e-9) {
    const PeriodicOmega om = detail::canonicalize(omega);
    LimitResult out;

    const SpecialTail tail = special_tail_of(om);
    if (tail != SpecialTail::None) {
        Vec7i x = special_tail_direction(tail);
        for (std::size_t i = om.preperiod.size(); i-- > 0;) x = apply_letter(om.preperiod[i], x);
        if (x.sum() == 0) return out;  // cannot happen for these matrices; reported as inconclusive
        out.status = LimitResult::Status::ClosedForm;
        out.limit = normalize_sum(x);
        out.support = support_of(x);
        out.steps = om.preperiod.size();
        return out;
    }

    auto apply_word_right_to_left = [](const TernaryWord& w, Vec7i x) {
        for (std::size_t i = w.size(); i-- > 0;) x = apply_letter(w[i], x);
        return x;
    };
    auto to_doubles = [](const Vec7i& v, std::array<double, 7>& d) {
        double s = 0;
        for (int i = 0; i < 7; ++i) s += v.e[i].convert_to<double>();
        for (int i = 0; i < 7; ++i) d[i] = v.e[i].convert_to<double>() / s;
    };

    Vec7i u = scaled_V();
    std::array<double, 7> prev{}, cur{};
    to_doubles(u, prev);
    SupportMask prev_support = support_of(u);
    std::size_t stable = 0;
    std::size_t steps = 0;
    while (steps + om.period.size() <= n_max) {
        u = apply_word_right_to_left(om.period, u);
        if (u.sum() == 0) throw NotInOmegaAV();
        steps += om.period.size();
        to_doubles(u, cur);
        double dist = 0;
        for (int i = 0; i < 7; ++i) dist += std::fabs(cur[i] - prev[i]);
        prev = cur;
        const SupportMask s = support_of(u);
        if (s == prev_support)
            ++stable;
        else {
            prev_support = s;
            stable = 0;
        }
        if (dist < tol && stable >= 2) {
            const Vec7i x = apply_word_right_to_left(om.preperiod, u);
            if (x.sum() == 0) throw NotInOmegaAV();
            out.status = LimitResult::Status::Stabilized;
            out.limit = normalize_sum(x);
            out.support = support_of(x);
            out.steps = steps + om.preperiod.size();
            return out;
        }
    }
    out.steps = steps;
    return out;
}

// The seven admissible limit supports.
inline const std::array<SupportMask, 7>& admissible_limit_supports() {
    static const std::array<SupportMask, 7> sets = {
        make_support({1, 2, 3, 4, 5}), make_support({1, 2, 3, 5, 6, 7}),
        make_support({1, 2, 3, 5, 6}), make_support({1, 2, 3, 5}),
        make_support({1, 3, 4, 5}),    make_support({1, 3, 4}),
        make_support({2, 3, 5, 6, 7})};
    return sets;
}

struct ClassifyResult {
    LimitResult limit;
    bool support_admissible = false;
};

inline ClassifyResult classify_support(const PeriodicOmega& omega, std::size_t n_max = 500,
                                       double tol = 1e-9) {
    ClassifyResult out;
    out.limit = limit_vector(omega, n_max, tol);
    if (out.limit.status == LimitResult::Status::Inconclusive) return out;
    const auto& sets = admissible_limit_supports();
    out.support_admissible =
        std::find(sets.begin(), sets.end(), out.limit.support) != sets.end();
    return out;
}

// Support automaton view of the same orbit: the eventual cycle of supports of
// the unnormalized products (constant iff no entry keeps decaying).
inline std::vector<SupportMask> eventual_support_cycle(const PeriodicOmega& omega,
                                                       std::size_t warmup_periods = 64) {
    const PeriodicOmega om = detail::canonicalize(omega);
    SupportMask s = 0x7f;  // V has full support
    for (char ch : om.preperiod) s = support_step(s, ch);
    std::vector<SupportMask> boundary_history{s};
    for (std::size_t k = 0; k < warmup_periods; ++k) {
        s = support_step_word(s, om.period);
        const auto it = std::find(boundary_history.begin(), boundary_history.end(), s);
        if (it != boundary_history.end()) {
            std::vector<SupportMask> cycle(it, boundary_history.end());
            std::sort(cycle.begin(), cycle.end());
            cycle.erase(std::unique(cycle.begin(), cycle.end()), cycle.end());
            return cycle;
        }
        boundary_history.push_back(s);
    }
    throw std::logic_error("eventual_support_cycle: no cycle within warmup budget");
}

// ---------------------------------------------------------------------------
// Generic nonnegative families of any fixed dimension (powers the 3x3
// non-uniformity fixture).

template <std::size_t N>
struct MatrixFamily {
    std::vector<Matrix<Rational, N>> letters;
    Vector<Rational, N> start;
};

template <std::size_t N>
Vector<Rational, N> generic_P_n(const MatrixFamily<N>& family, std::string_view word) {
    Vector<Rational, N> x = family.start;
    for (std::size_t i = word.size(); i-- > 0;) {
        const std::size_t idx = std::size_t(word[i] - '0');
        if (idx >= family.letters.size()) throw std::domain_error("generic_P_n: bad letter");
        x = family.letters[idx] * x;
    }
    const Rational s = x.sum();
    if (s == 0) throw NotInOmegaAV();
    for (auto& v : x.e) v /= s;
    return x;
}

template <std::size_t N>
Rational generic_cauchy_modulus(const MatrixFamily<N>& family, std::string_view prefix,
                                std::size_t depth, std::size_t max_branches = 1000000) {
    if (depth < prefix.size()) throw std::domain_error("generic_cauchy_modulus: depth < |prefix|");
    const std::size_t window = depth - prefix.size();
    double branches = 1;
    for (std::size_t i = 0; i < window; ++i) branches *= double(family.letters.size());
    if (branches > double(max_branches))
        throw BudgetExceededError("generic_cauchy_modulus: extension budget exceeded");

    Matrix<Rational, N> M = Matrix<Rational, N>::identity();
    for (char ch : prefix) M = M * family.letters[std::size_t(ch - '0')];

    std::vector<Vector<Rational, N>> path{M * family.start};
    if (path.back().sum() == 0) throw NotInOmegaAV();

    Rational best = 0;
    auto consider_back = [&] {
        const auto& b = path.back();
        const Rational sb = b.sum();
        if (sb == 0) throw NotInOmegaAV();
        for (std::size_t j = 0; j + 1 < path.size(); ++j) {
            const auto& a = path[j];
            const Rational sa = a.sum();
            Rational d = 0;
            for (std::size_t i = 0; i < N; ++i) d += abs(a.e[i] / sa - b.e[i] / sb);
            if (d > best) best = d;
        }
    };
    auto rec = [&](auto&& self, const Matrix<Rational, N>& prod, std::size_t remaining) -> void {
        consider_back();
        if (remaining == 0) return;
        for (const auto& L : family.letters) {
            const Matrix<Rational, N> next = prod * L;
            path.push_back(next * family.start);
            self(self, next, remaining - 1);
            path.pop_back();
        }
    };
    rec(rec, M, window);
    return best;
}

// The 3x3 pointwise-but-not-uniform convergence fixture.
inline const MatrixFamily<3>& example_3x3() {
    static const MatrixFamily<3> fam = [] {
        MatrixFamily<3> f;
        f.letters.push_back(Matrix<Rational, 3>{{1, 0, 1}, {0, 1, 0}, {0, 0, 0}});
        f.letters.push_back(Matrix<Rational, 3>{{1, 0, 1}, {Rational(1, 2), 0, 0}, {0, 0, 0}});
        f.start = Vector<Rational, 3>{1, 1, 1};
        return f;
    }();
    return fam;
}

}  // namespace betagibbs
