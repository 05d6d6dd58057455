#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "betagibbs/measure.hpp"
#include "betagibbs/numberfield.hpp"
#include "betagibbs/parry.hpp"

namespace betagibbs {

// Brute-force finite convolution approximant: 2^N atoms at
// (beta-1) * sum_{k<=N} omega_k beta^-k, each of weight 2^-N.  The dropped
// tail adds at most beta^-N to the right, so every sample point of mu lies in
// [p, p + beta^-N) for exactly one atom p.
struct AtomCloud {
    unsigned depth = 0;                // N
    double cell = 0;                   // beta^-N
    double slack = 0;                  // float-position error bound
    std::vector<double> positions;     // sorted, 2^N entries

    Rational weight(std::uint64_t count) const {
        return Rational(Int(count), Int(1) << depth);
    }
};

inline AtomCloud build_atoms(unsigned N) {
    if (N == 0 || N > 26) throw std::domain_error("build_atoms: N must be in 1..26 (memory budget)");
    AtomCloud cloud;
    cloud.depth = N;
    const Rational tiny(1, Int(1) << 60);
    std::vector<double> step(N);
    const FieldElement alpha = FieldElement::beta() - FieldElement(1);
    for (unsigned k = 0; k < N; ++k)
        step[k] = to_double(approximate(alpha * beta_pow(-long(k + 1)), tiny));
    cloud.cell = to_double(approximate(beta_pow(-long(N)), tiny));
    cloud.slack = std::ldexp(1.0, -45);

    cloud.positions.assign(std::size_t(1) << N, 0.0);
    std::size_t filled = 1;
    for (unsigned k = 0; k < N; ++k) {
        for (std::size_t i = 0; i < filled; ++i)
            cloud.positions[filled + i] = cloud.positions[i] + step[k];
        filled *= 2;
    }
    std::sort(cloud.positions.begin(), cloud.positions.end());
    return cloud;
}

struct OracleBounds {
    Rational lower, upper;
};

// Rigorous two-sided bounds for mu[a, b): an atom's true support interval is
// contained in [p - eps, p + cell + eps) once float error is folded in.
inline OracleBounds interval_bounds(const AtomCloud& cloud, double a, double b,
                                    double extra_slack = 0) {
    if (!(a < b)) {
        if (a > b) throw std::domain_error("interval_bounds: a > b");
        return {Rational(0), Rational(0)};
    }
    const double eps = cloud.slack + extra_slack;
    const auto& pos = cloud.positions;
    // lower: p - eps >= a and p + cell + eps <= b
    const auto lo_begin = std::lower_bound(pos.begin(), pos.end(), a + eps);
    const auto lo_end = std::upper_bound(pos.begin(), pos.end(), b - cloud.cell - eps);
    const std::uint64_t lower_count = lo_end > lo_begin ? std::uint64_t(lo_end - lo_begin) : 0;
    // upper: p - eps < b and p + cell + eps > a
    const auto up_begin = std::upper_bound(pos.begin(), pos.end(), a - cloud.cell - eps);
    const auto up_end = std::lower_bound(pos.begin(), pos.end(), b + eps);
    const std::uint64_t upper_count = up_end > up_begin ? std::uint64_t(up_end - up_begin) : 0;
    return {cloud.weight(lower_count), cloud.weight(upper_count)};
}

// Bounds for an interval with exact field-element endpoints.
inline OracleBounds interval_bounds(const AtomCloud& cloud, const FieldElement& a,
                                    const FieldElement& b) {
    const Rational eps(1, Int(1) << 50);
    const double ad = to_double(approximate(a, eps));
    const double bd = to_double(approximate(b, eps));
    // endpoint approximation error + double rounding
    return interval_bounds(cloud, ad, bd, std::ldexp(1.0, -48));
}

struct OracleComparison {
    std::string word;
    Rational mu;
    OracleBounds bounds;
    bool pass = false;
    double gap = 0;
};

struct OracleReport {
    std::vector<OracleComparison> rows;
    bool all_pass = true;
    double worst_gap = 0;
};

// Validates mu on every beta-adic cylinder of order n against the atom cloud.
inline OracleReport compare_all(std::size_t n, const AtomCloud& cloud) {
    OracleReport report;
    for (const BinaryWord& w : enumerate_admissible(n)) {
        OracleComparison row;
        row.word = w;
        row.mu = mu_interval(w);
        const BetaInterval iv = interval_of(w);
        row.bounds = interval_bounds(cloud, iv.left, iv.upper);
        row.pass = row.bounds.lower <= row.mu && row.mu <= row.bounds.upper;
        row.gap = to_double(row.bounds.upper - row.bounds.lower);
        report.worst_gap = std::max(report.worst_gap, row.gap);
        report.all_pass = report.all_pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

// i_1..i_7: the translation grid of the seven cylinder systems.
inline const std::array<FieldElement, 7>& translation_grid() {
    static const std::array<FieldElement, 7> grid = {
        FieldElement(0),            // i1 = 0
        FieldElement(1),            // i2 = 1
        FieldElement(0, 2, -1),     // i3 = 1 - (beta-1)^2
        FieldElement(-1, 2, -1),    // i4 = -(beta-1)^2
        FieldElement(-1, 1, 0),     // i5 = beta - 1
        FieldElement(-1, 3, -1),    // i6 = beta - (beta-1)^2
        FieldElement(0, -1, 1),     // i7 = beta(beta-1)
    };
    return grid;
}

// Oracle check of one entry of M(w_1)...M(w_k)V on the translated-scaled
// interval (1/beta)(i_j + I_{w_1...w_k}).
inline OracleComparison translated_compare(int j, const BlockWord& blocks, const AtomCloud& cloud) {
    if (j < 1 || j > 7) throw std::domain_error("translated_compare: j must be 1..7");
    const BetaInterval iv = interval_of(blocks_to_digits(blocks));
    const FieldElement inv_beta = beta_pow(-1);
    const FieldElement shift = translation_grid()[std::size_t(j - 1)];
    OracleComparison row;
    row.word = "i" + std::to_string(j) + "+" + (iv.word.empty() ? "[0,1)" : iv.word);
    row.mu = translated_measures(blocks).e[std::size_t(j - 1)];
    row.bounds = interval_bounds(cloud, (shift + iv.left) * inv_beta, (shift + iv.upper) * inv_beta);
    row.pass = row.bounds.lower <= row.mu && row.mu <= row.bounds.upper;
    row.gap = to_double(row.bounds.upper - row.bounds.lower);
    return row;
}

}  // namespace betagibbs
