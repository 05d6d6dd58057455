#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "betagibbs/matrix.hpp"
#include "betagibbs/parry.hpp"
#include "betagibbs/semigroup.hpp"
#include "betagibbs/words.hpp"

namespace betagibbs {

using Vec7r = Vector<Rational, 7>;
using Mat7r = Matrix<Rational, 7>;

// M(0) = A/2, M(10) = B/4, M(1100) = C/16: the block transfer matrices of mu
// on the translated cylinder system i_1..i_7.
inline const Mat7r& block_matrix(Block b) {
    static const Mat7r M0 = matrix_cast<Rational>(letter_matrix('0')) * Rational(1, 2);
    static const Mat7r M10 = matrix_cast<Rational>(letter_matrix('1')) * Rational(1, 4);
    static const Mat7r M1100 = matrix_cast<Rational>(letter_matrix('2')) * Rational(1, 16);
    switch (b) {
        case Block::Zero: return M0;
        case Block::Ten: return M10;
        case Block::ElevenHundred: return M1100;
    }
    throw std::logic_error("bad block");
}

inline const Vec7r& unit_row() {
    static const Vec7r U{1, 1, 1, 1, 1, 1, 1};
    return U;
}

// Eigenvector of M(0)+M(10)+M(1100) for eigenvalue 1, normalized by V1+V2 = 1
// (the first two translated cylinders tile [0,1)).  Solved exactly.
inline Vec7r stationary_V() {
    static const Vec7r V = [] {
        Mat7r S = block_matrix(Block::Zero) + block_matrix(Block::Ten) +
                  block_matrix(Block::ElevenHundred);
        // rows 0..6: (S - I) x = 0; row 7: x1 + x2 = 1.
        Rational aug[8][8] = {};
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) aug[i][j] = S(i, j) - (i == j ? Rational(1) : Rational(0));
        aug[7][0] = 1;
        aug[7][1] = 1;
        aug[7][7] = 1;

        int pivot_row[7] = {-1, -1, -1, -1, -1, -1, -1};
        int rank = 0;
        for (int col = 0; col < 7; ++col) {
            int piv = -1;
            for (int r = rank; r < 8; ++r)
                if (aug[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            for (int j = 0; j < 8; ++j) std::swap(aug[piv][j], aug[rank][j]);
            const Rational inv = Rational(1) / aug[rank][col];
            for (int j = 0; j < 8; ++j) aug[rank][j] *= inv;
            for (int r = 0; r < 8; ++r) {
                if (r == rank || aug[r][col] == 0) continue;
                const Rational f = aug[r][col];
                for (int j = 0; j < 8; ++j) aug[r][j] -= f * aug[rank][j];
            }
            pivot_row[col] = rank;
            ++rank;
        }
        if (rank != 7) throw std::logic_error("stationary_V: eigenspace not one-dimensional");
        for (int r = rank; r < 8; ++r)
            if (aug[r][7] != 0) throw std::logic_error("stationary_V: inconsistent system");
        Vec7r x;
        for (int col = 0; col < 7; ++col) x.e[col] = aug[pivot_row[col]][7];
        return x;
    }();
    return V;
}

// (mu((1/beta)(i_j + I_{w_1...w_k})))_j = M(w_1)...M(w_k) V.
inline Vec7r translated_measures(const BlockWord& blocks) {
    Vec7r v = stationary_V();
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) v = block_matrix(*it) * v;
    return v;
}

namespace detail {

// Row selector of the first block: mu(I_{w_1...w_k}) = rho(w_1) M(w_2)...M(w_k) V.
inline const Vec7r& mu_row(Block first) {
    static const Vec7r rho0 = [] {
        Vec7r e;
        e.e[0] = 1;
        return e;
    }();
    static const Vec7r rho10 = [] {
        Vec7r e;
        e.e[1] = 1;
        return row_times(e, block_matrix(Block::Zero));
    }();
    static const Vec7r rho1100 = [] {
        Vec7r e;
        e.e[1] = 1;
        return row_times(row_times(e, block_matrix(Block::Ten)), block_matrix(Block::Zero));
    }();
    switch (first) {
        case Block::Zero: return rho0;
        case Block::Ten: return rho10;
        case Block::ElevenHundred: return rho1100;
    }
    throw std::logic_error("bad block");
}

struct MeasureRows {
    // r_mu = rho(w_1) M(w_2)...M(w_j); empty until the first block is fixed.
    std::optional<Vec7r> r_mu;
    // r_norm = U M(w_1)...M(w_j).
    Vec7r r_norm = unit_row();

    void append(Block b) {
        const Mat7r& M = block_matrix(b);
        r_mu = r_mu ? row_times(*r_mu, M) : mu_row(b);
        r_norm = row_times(r_norm, M);
    }
};

inline const Vec7r& tail_vector(Block b) {
    static const Vec7r v0 = block_matrix(Block::Zero) * stationary_V();
    static const Vec7r v10 = block_matrix(Block::Ten) * stationary_V();
    static const Vec7r v1100 = block_matrix(Block::ElevenHundred) * stationary_V();
    switch (b) {
        case Block::Zero: return v0;
        case Block::Ten: return v10;
        case Block::ElevenHundred: return v1100;
    }
    throw std::logic_error("bad block");
}

inline Rational measure_value(const MeasureRows& rows, Residue residue, bool mu_prime) {
    const Vec7r& V = stationary_V();
    auto finish = [&](const Vec7r& tail) {
        if (mu_prime) return dot(rows.r_norm, tail);
        if (rows.r_mu) return dot(*rows.r_mu, tail);
        // tail is M(b) V for the residue's completion block b, which then is
        // the first (and only) block of the word.
        throw std::logic_error("measure_value: residue without block context");
    };
    switch (residue) {
        case Residue::None:
            if (mu_prime) return dot(rows.r_norm, V);
            return rows.r_mu ? dot(*rows.r_mu, V) : Rational(1);
        case Residue::One:
            if (rows.r_mu || mu_prime)
                return finish(tail_vector(Block::Ten)) + finish(tail_vector(Block::ElevenHundred));
            return dot(mu_row(Block::Ten), V) + dot(mu_row(Block::ElevenHundred), V);
        case Residue::OneOne:
        case Residue::OneOneZero:
            if (rows.r_mu || mu_prime) return finish(tail_vector(Block::ElevenHundred));
            return dot(mu_row(Block::ElevenHundred), V);
    }
    throw std::logic_error("bad residue");
}

}  // namespace detail

// mu of the cylinder of an admissible word; residue endings 1/11/110 fold in
// through additivity over their admissible completions.
inline Rational mu_interval(std::string_view w) {
    const BlockParse parse = parse_blocks(w);
    detail::MeasureRows rows;
    for (Block b : parse.blocks) rows.append(b);
    return detail::measure_value(rows, parse.residue, /*mu_prime=*/false);
}

// mu'(I_{w_1...w_k}) = ||M(w_1)...M(w_k) V||; same residue additivity as mu.
inline Rational mu_prime_interval(std::string_view w) {
    const BlockParse parse = parse_blocks(w);
    detail::MeasureRows rows;
    for (Block b : parse.blocks) rows.append(b);
    return detail::measure_value(rows, parse.residue, /*mu_prime=*/true);
}

inline Rational gibbs_ratio(std::string_view w) {
    const Rational mu = mu_interval(w);
    if (mu == 0) throw std::logic_error("gibbs_ratio: zero mass cylinder");
    return mu_prime_interval(w) / mu;
}

// Deterministic scan over all admissible words of length n in lexicographic
// order, with exact mu and mu' computed along the shared block tree.
inline void for_each_admissible(std::size_t n,
                                const std::function<void(const std::string&, const Rational&,
                                                         const Rational&)>& emit) {
    if (n == 0) {
        emit("", Rational(1), dot(unit_row(), stationary_V()));
        return;
    }
    std::string word;
    auto rec = [&](auto&& self, const detail::MeasureRows& rows) -> void {
        const std::size_t L = word.size();
        if (L == n) {
            emit(word, detail::measure_value(rows, Residue::None, false),
                 detail::measure_value(rows, Residue::None, true));
            return;
        }
        {  // block 0
            detail::MeasureRows next = rows;
            next.append(Block::Zero);
            word += '0';
            self(self, next);
            word.pop_back();
        }
        if (L + 1 == n) {
            word += '1';
            emit(word, detail::measure_value(rows, Residue::One, false),
                 detail::measure_value(rows, Residue::One, true));
            word.pop_back();
        }
        if (L + 2 <= n) {  // block 10
            detail::MeasureRows next = rows;
            next.append(Block::Ten);
            word += "10";
            self(self, next);
            word.resize(L);
        }
        if (L + 2 == n) {
            word += "11";
            emit(word, detail::measure_value(rows, Residue::OneOne, false),
                 detail::measure_value(rows, Residue::OneOne, true));
            word.resize(L);
        }
        if (L + 3 == n) {
            word += "110";
            emit(word, detail::measure_value(rows, Residue::OneOneZero, false),
                 detail::measure_value(rows, Residue::OneOneZero, true));
            word.resize(L);
        }
        if (L + 4 <= n) {  // block 1100
            detail::MeasureRows next = rows;
            next.append(Block::ElevenHundred);
            word += "1100";
            self(self, next);
            word.resize(L);
        }
    };
    rec(rec, detail::MeasureRows{});
}

// ---------------------------------------------------------------------------
// Weak-Gibbs bound machinery for full-block words (three-shape decomposition).

enum class GibbsShape { ZeroRun, Ten, ElevenHundredRun };

struct GibbsDecomposition {
    GibbsShape shape = GibbsShape::Ten;
    std::size_t nu = 1;            // leading run length (1 for shape Ten)
    std::optional<Block> mid;      // the block a / b after the run, if any
    BlockWord tail;                // w(n)
};

inline GibbsDecomposition gibbs_decompose(const BlockWord& blocks) {
    if (blocks.empty()) throw std::domain_error("gibbs_decompose: empty block word");
    GibbsDecomposition d;
    std::size_t pos = 0;
    if (blocks[0] == Block::Ten) {
        d.shape = GibbsShape::Ten;
        pos = 1;
    } else {
        const Block run = blocks[0];
        d.shape = run == Block::Zero ? GibbsShape::ZeroRun : GibbsShape::ElevenHundredRun;
        while (pos < blocks.size() && blocks[pos] == run) ++pos;
        d.nu = pos;
        if (pos < blocks.size()) d.mid = blocks[pos++];
    }
    d.tail.assign(blocks.begin() + pos, blocks.end());
    return d;
}

// 21 nu m+/m- with V_n = M(w(n))V / ||M(w(n))V||,
// m+ = max_i V_n[i], m- = min((E1+E7)V_n, E3 V_n, min_i V[i]/||V||).
inline Rational gibbs_bound(const BlockWord& blocks) {
    const GibbsDecomposition d = gibbs_decompose(blocks);
    Vec7r vn = translated_measures(d.tail);
    const Rational norm = vn.sum();
    if (norm == 0) throw std::logic_error("gibbs_bound: zero tail vector");
    for (auto& x : vn.e) x /= norm;

    Rational mplus = vn.e[0];
    for (int i = 1; i < 7; ++i)
        if (vn.e[i] > mplus) mplus = vn.e[i];

    static const Rational min_v_over_norm = [] {
        const Vec7r& V = stationary_V();
        const Rational total = V.sum();
        Rational m = V.e[0] / total;
        for (int i = 1; i < 7; ++i)
            if (V.e[i] / total < m) m = V.e[i] / total;
        return m;
    }();
    Rational mminus = vn.e[0] + vn.e[6];
    if (vn.e[2] < mminus) mminus = vn.e[2];
    if (min_v_over_norm < mminus) mminus = min_v_over_norm;
    if (mminus <= 0) throw std::logic_error("gibbs_bound: degenerate m-");

    return Rational(21) * Rational(Int(d.nu)) * mplus / mminus;
}

// ---------------------------------------------------------------------------
// n-step potential of mu': exp(phi_n) = mu'(I_w) / mu'(I_{shift w}) on
// full-block words, with the three closed-form ratio identities.

struct PotentialValue {
    Rational ratio;          // mu'(I_w) / mu'(I_{shift w})
    Rational closed_form;    // the same quantity via the displayed row vectors
};

inline PotentialValue n_step_potential_mu_prime(std::string_view w) {
    const BlockParse parse = parse_blocks(w);
    if (parse.residue != Residue::None)
        throw std::domain_error("n_step_potential_mu_prime: word ends mid-block");
    if (parse.blocks.empty()) throw std::domain_error("n_step_potential_mu_prime: empty word");

    const Block first = parse.blocks[0];
    BlockWord rest(parse.blocks.begin() + 1, parse.blocks.end());

    BlockWord shifted;
    switch (first) {
        case Block::Ten: shifted = {Block::Zero}; break;
        case Block::ElevenHundred: shifted = {Block::Ten, Block::Zero}; break;
        case Block::Zero: break;
    }
    shifted.insert(shifted.end(), rest.begin(), rest.end());

    const Rational num = mu_prime_interval(w);
    const Rational den = mu_prime_interval(blocks_to_digits(shifted));
    PotentialValue out{num / den, 0};

    // 2 * ratio = (row_num . X) / (row_den . X), X = M(w') V unnormalized.
    static const Vec7r row_zero_num{2, 1, 1, 1, 2, 0, 1};
    static const Vec7r row_ten_num{1, 0, 2, 2, 1, 1, 0};
    static const Vec7r row_eh_num{2, 0, 0, 1, 3, 0, 2};
    static const Vec7r row_eh_den{2, 0, 0, 2, 3, 0, 1};
    const Vec7r X = translated_measures(rest);
    Rational cf_num, cf_den;
    switch (first) {
        case Block::Zero:
            cf_num = dot(row_zero_num, X);
            cf_den = dot(unit_row(), X);
            break;
        case Block::Ten:
            cf_num = dot(row_ten_num, X);
            cf_den = dot(row_zero_num, X);
            break;
        case Block::ElevenHundred:
            cf_num = dot(row_eh_num, X);
            cf_den = dot(row_eh_den, X);
            break;
    }
    out.closed_form = cf_num / (2 * cf_den);
    return out;
}

// ---------------------------------------------------------------------------
// Delta(n) = max_w |ln(mu'/mu)| / n over admissible |w| = n.

struct GibbsScanRow {
    std::size_t n;
    double delta;
    std::string argmax;
};

inline std::vector<GibbsScanRow> weak_gibbs_scan(std::size_t n_max) {
    std::vector<GibbsScanRow> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        GibbsScanRow row{n, -1.0, ""};
        Rational best_ratio = 0;
        for_each_admissible(n, [&](const std::string& w, const Rational& mu, const Rational& mup) {
            Rational r = mup / mu;
            if (r < 1) r = 1 / r;  // |ln| of the ratio
            if (r > best_ratio) {
                best_ratio = r;
                row.argmax = w;
            }
        });
        row.delta = std::log(to_double(best_ratio)) / double(n);
        out.push_back(row);
    }
    return out;
}

}  // namespace betagibbs
