#pragma once

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "betagibbs/convergence.hpp"
#include "betagibbs/measure.hpp"
#include "betagibbs/oracle.hpp"
#include "betagibbs/parallel.hpp"
#include "betagibbs/parry.hpp"
#include "betagibbs/semigroup.hpp"
#include "betagibbs/spectrum.hpp"

namespace betagibbs {

struct CriterionResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;

    CriterionResult() = default;
    CriterionResult(std::string id_, std::string name_)
        : id(std::move(id_)), name(std::move(name_)) {}
};

// Sizes used by each criterion; `quick` shrinks them for smoke runs.
struct AcceptanceConfig {
    bool quick = false;

    long family_n_max() const { return quick ? 8 : 20; }
    std::size_t partition_n_max() const { return quick ? 10 : 14; }
    unsigned oracle_depth() const { return quick ? 20 : 24; }
    std::size_t oracle_order() const { return quick ? 4 : 6; }
    int property_p_samples() const { return quick ? 100 : 500; }
    int trend_samples() const { return quick ? 10 : 100; }
    std::size_t trend_window() const { return quick ? 6 : 8; }
    std::size_t gibbs_n_max() const { return quick ? 10 : 14; }
    std::size_t scan_n_hi() const { return quick ? 8 : 12; }
    std::size_t scan_n_lo() const { return 4; }
    std::size_t potential_n_max() const { return quick ? 8 : 12; }
    std::size_t spectrum_n_hi() const { return quick ? 12 : kSpectrumDefaultNHi; }
    std::size_t spectrum_n_lo() const { return quick ? 6 : kSpectrumDefaultNLo; }
    std::size_t survey_len() const { return quick ? 8 : 10; }
};

namespace acceptance {

inline CriterionResult ac1_stationary_vector(const AcceptanceConfig&) {
    CriterionResult r{"AC1", "stationary-vector"};
    const Vec7r expected{Rational(3, 5), Rational(2, 5),  Rational(13, 20), Rational(1, 5),
                         Rational(3, 5), Rational(3, 10), Rational(1, 5)};
    const Vec7r V = stationary_V();
    r.pass = V == expected;
    Mat7r S = block_matrix(Block::Zero) + block_matrix(Block::Ten) + block_matrix(Block::ElevenHundred);
    r.pass = r.pass && (S * V) == V;
    r.detail = r.pass ? "V = (3/5, 2/5, 13/20, 1/5, 3/5, 3/10, 1/5), eigen-residual 0"
                      : "solved vector differs from the expected stationary vector";
    return r;
}

inline CriterionResult ac2_parametric_families(const AcceptanceConfig& cfg) {
    CriterionResult r{"AC2", "parametric-families"};
    r.pass = true;
    std::ostringstream bad;
    for (int fam = 1; fam <= kFamilyBA2; ++fam) {
        const FamilyReport rep = verify_family(fam, cfg.family_n_max());
        if (!rep.ok) {
            r.pass = false;
            bad << " family " << fam << " fails at n=" << rep.first_bad_n << " entry ("
                << rep.bad_row + 1 << "," << rep.bad_col + 1 << ")";
        }
    }
    std::ostringstream os;
    os << "13 families x n in [0," << cfg.family_n_max() << "], entry-exact" << bad.str();
    r.detail = os.str();
    return r;
}

inline CriterionResult ac3_partition_of_unity(const AcceptanceConfig& cfg) {
    CriterionResult r{"AC3", "partition-of-unity"};
    r.pass = true;
    std::size_t words = 0;
    for (std::size_t n = 1; n <= cfg.partition_n_max(); ++n) {
        Rational total = 0;
        for_each_admissible(n, [&](const std::string&, const Rational& mu, const Rational&) {
            total += mu;
            ++words;
        });
        if (total != 1) {
            r.pass = false;
            r.detail = "sum != 1 at n=" + std::to_string(n) + " (" + to_string(total) + ")";
            return r;
        }
    }
    r.detail = "exact over " + std::to_string(words) + " cylinders, n <= " +
               std::to_string(cfg.partition_n_max());
    return r;
}

inline CriterionResult ac4_oracle_sandwich(const AcceptanceConfig& cfg) {
    CriterionResult r{"AC4", "oracle-sandwich"};
    const AtomCloud cloud = build_atoms(cfg.oracle_depth());
    r.pass = true;
    double worst = 0;
    std::size_t rows = 0;
    for (std::size_t n = 1; n <= cfg.oracle_order(); ++n) {
        const OracleReport rep = compare_all(n, cloud);
        rows += rep.rows.size();
        worst = std::max(worst, rep.worst_gap);
        if (!rep.all_pass) {
            for (const auto& row : rep.rows)
                if (!row.pass) {
                    r.pass = false;
                    r.detail = "exact mass outside oracle bounds for word " + row.word;
                    return r;
                }
        }
    }
    r.pass = worst < 0.01;
    std::ostringstream os;
    os << rows << " cylinders at N=" << cfg.oracle_depth() << ", worst gap " << worst;
    r.detail = os.str();
    return r;
}

inline CriterionResult ac5_synchronizing_words(const AcceptanceConfig&) {
    CriterionResult r{"AC5", "synchronizing-words"};
    r.pass = true;
    for (char a : {'0', '1', '2'})
        for (char b : {'0', '1', '2'})
            for (char c : {'0', '1', '2'}) {
                const std::string w{a, b, c};
                if (!is_synchronizing(w)) {
                    r.pass = false;
                    r.detail = "not synchronizing: " + w;
                    return r;
                }
            }
    r.detail = "all 27 length-3 words synchronize the {1,3,5}-supports";
    return r;
}

inline CriterionResult ac6_property_p(const AcceptanceConfig& cfg) {
    CriterionResult r{"AC6", "property-P"};
    std::mt19937 rng(0x5eed6);
    const std::vector<TernaryWord> pool = enumerate_W(8);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> pad(0, 6), letter(0, 2);
    r.pass = true;
    for (int trial = 0; trial < cfg.property_p_samples(); ++trial) {
        TernaryWord w;
        for (int i = pad(rng); i > 0; --i) w += char('0' + letter(rng));
        for (int j = 0; j < 6; ++j) w += pool[pick(rng)];
        for (int i = pad(rng); i > 0; --i) w += char('0' + letter(rng));
        if (!has_property_P(product(w))) {
            r.pass = false;
            r.detail = "property (P) fails for " + w;
            return r;
        }
    }
    r.detail = std::to_string(cfg.property_p_samples()) + " random words with a W^6 factor";
    return r;
}

inline CriterionResult ac7_limit_supports(const AcceptanceConfig&) {
    CriterionResult r{"AC7", "limit-supports"};
    r.pass = true;
    std::size_t classified = 0;
    for (int len = 1; len <= 4 && r.pass; ++len) {
        long count = 1;
        for (int i = 0; i < len; ++i) count *= 3;
        for (long code = 0; code < count && r.pass; ++code) {
            TernaryWord period;
            long c = code;
            for (int i = 0; i < len; ++i) {
                period += char('0' + c % 3);
                c /= 3;
            }
            const ClassifyResult res = classify_support({"", period});
            ++classified;
            if (res.limit.status == LimitResult::Status::Inconclusive) {
                r.pass = false;
                r.detail = "no stabilization for period " + period;
            } else if (!res.support_admissible) {
                r.pass = false;
                r.detail = "support outside the seven sets for period " + period;
            }
        }
    }
    if (!r.pass) return r;

    struct Special {
        const char* period;
        SupportMask support;
    };
    const Special specials[3] = {{"0", make_support({2, 3, 5, 6, 7})},
                                 {"2", make_support({1, 3, 4})},
                                 {"100", make_support({1, 2, 3, 4, 5})}};
    for (const auto& sp : specials) {
        const LimitResult lim = limit_vector({"", sp.period});
        if (lim.status != LimitResult::Status::ClosedForm || lim.support != sp.support) {
            r.pass = false;
            r.detail = std::string("special tail (") + sp.period + ")* misclassified";
            return r;
        }
    }
    const LimitResult zeros = limit_vector({"", "0"});
    const Vec7r expected{0, Rational(1, 5), Rational(1, 5), 0, Rational(1, 5), Rational(1, 5),
                         Rational(1, 5)};
    if (!(zeros.limit == expected)) {
        r.pass = false;
        r.detail = "(0)* limit vector differs from (0,1,1,0,1,1,1)/5";
        return r;
    }
    for (int i = 0; i < 7; ++i)
        if (std::fabs(to_double(zeros.limit.e[i]) - to_double(expected.e[i])) > 1e-6) r.pass = false;
    r.detail = std::to_string(classified) + " periodic words in the seven sets; special tails exact";
    return r;
}

inline CriterionResult ac8_cauchy_trend(const AcceptanceConfig& cfg) {
    CriterionResult r{"AC8", "cauchy-trend"};
    const std::size_t w = cfg.trend_window();
    std::mt19937 rng(0x5eed8);
    std::uniform_int_distribution<int> letter(0, 2);
    std::vector<TernaryWord> omegas(std::size_t(cfg.trend_samples()));
    for (auto& om : omegas)
        for (std::size_t i = 0; i < 10 + w; ++i) om += char('0' + letter(rng));

    std::vector<int> ok(omegas.size(), 0);
    parallel_for_indexed(omegas.size(), [&](std::size_t i) {
        const Rational shallow = cauchy_modulus(omegas[i].substr(0, 4), 4 + w);
        const Rational deep = cauchy_modulus(omegas[i].substr(0, 10), 10 + w);
        ok[i] = deep <= shallow ? 1 : 0;
    });
    r.pass = true;
    int good = 0;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        good += ok[i];
        if (!ok[i] && r.pass) {
            r.pass = false;
            r.detail = "modulus grew for omega " + omegas[i];
        }
    }

    // 3x3 fixture: the witness branch keeps the modulus at 4/15.
    bool witness = true;
    for (int n = 1; n <= 8; ++n) {
        const Rational m =
            generic_cauchy_modulus(example_3x3(), std::string(std::size_t(n), '0'), std::size_t(n) + 2);
        if (m < Rational(4, 15)) witness = false;
    }
    if (!witness) {
        r.pass = false;
        r.detail = "3x3 fixture modulus dropped below 4/15";
        return r;
    }
    if (r.pass) {
        std::ostringstream os;
        os << good << "/" << omegas.size() << " moduli decrease (window " << w
           << "); 3x3 witness stays at 4/15";
        r.detail = os.str();
    }
    return r;
}

inline CriterionResult ac9_weak_gibbs(const AcceptanceConfig& cfg) {
    CriterionResult r{"AC9", "weak-gibbs"};
    r.pass = true;
    std::vector<double> delta(cfg.scan_n_hi() + 1, 0.0);
    for (std::size_t n = 1; n <= cfg.gibbs_n_max() && r.pass; ++n) {
        Rational worst = 10;
        for_each_admissible(n, [&](const std::string& w, const Rational& mu, const Rational& mup) {
            const Rational ratio = mup / mu;
            if (ratio < worst) worst = ratio;
            if (n <= cfg.scan_n_hi()) {
                const double d = std::log(to_double(ratio >= 1 ? ratio : 1 / ratio)) / double(n);
                if (d > delta[n]) delta[n] = d;
            }
            if (ratio < 1) r.detail = "ratio < 1 at word " + w;
        });
        if (worst < 1) r.pass = false;
    }
    if (!r.pass) return r;

    // Eq-(up)-style bound on every full-block word.
    std::size_t checked = 0;
    BlockWord blocks;
    auto rec = [&](auto&& self, std::size_t len) -> void {
        if (!r.pass) return;
        if (!blocks.empty()) {
            ++checked;
            if (gibbs_ratio(blocks_to_digits(blocks)) > gibbs_bound(blocks)) {
                r.pass = false;
                r.detail = "21*nu*m+/m- bound fails for " + blocks_to_digits(blocks);
                return;
            }
        }
        for (Block b : {Block::Zero, Block::Ten, Block::ElevenHundred}) {
            if (len + block_length(b) > cfg.gibbs_n_max()) continue;
            blocks.push_back(b);
            self(self, len + block_length(b));
            blocks.pop_back();
        }
    };
    rec(rec, 0);
    if (!r.pass) return r;

    if (!(delta[cfg.scan_n_hi()] < delta[cfg.scan_n_lo()])) {
        r.pass = false;
        r.detail = "Delta(n) did not decrease between n=" + std::to_string(cfg.scan_n_lo()) +
                   " and n=" + std::to_string(cfg.scan_n_hi());
        return r;
    }
    std::ostringstream os;
    os << "ratio >= 1 and bound hold to n=" << cfg.gibbs_n_max() << " (" << checked
       << " block words); Delta(" << cfg.scan_n_hi() << ")=" << delta[cfg.scan_n_hi()]
       << " < Delta(" << cfg.scan_n_lo() << ")=" << delta[cfg.scan_n_lo()];
    r.detail = os.str();
    return r;
}

inline CriterionResult ac10_potential_closed_forms(const AcceptanceConfig& cfg) {
    CriterionResult r{"AC10", "potential-closed-forms"};
    r.pass = true;
    std::size_t checked = 0;
    BlockWord blocks;
    auto rec = [&](auto&& self, std::size_t len) -> void {
        if (!r.pass) return;
        if (!blocks.empty()) {
            ++checked;
            const PotentialValue pv = n_step_potential_mu_prime(blocks_to_digits(blocks));
            if (pv.ratio != pv.closed_form) {
                r.pass = false;
                r.detail = "closed form differs at " + blocks_to_digits(blocks);
                return;
            }
        }
        for (Block b : {Block::Zero, Block::Ten, Block::ElevenHundred}) {
            if (len + block_length(b) > cfg.potential_n_max()) continue;
            blocks.push_back(b);
            self(self, len + block_length(b));
            blocks.pop_back();
        }
    };
    rec(rec, 0);
    if (r.pass)
        r.detail = "exact on " + std::to_string(checked) + " block words up to length " +
                   std::to_string(cfg.potential_n_max());
    return r;
}

inline CriterionResult ac11_spectrum_pins(const AcceptanceConfig& cfg) {
    CriterionResult r{"AC11", "spectrum-pins"};
    const std::size_t n_lo = cfg.spectrum_n_lo(), n_hi = cfg.spectrum_n_hi();
    PartitionTable table(n_hi);

    const SpectrumSample t1 = tau_scale(1.0, n_lo, n_hi, table);
    const SpectrumSample t0 = tau_scale(0.0, n_lo, n_hi, table);
    std::vector<SpectrumSample> samples;
    for (double q = -10; q <= 10 + 1e-12; q += 0.25) samples.push_back(tau_scale(q, n_lo, n_hi, table));

    bool convex = true;
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        double prev2 = 0, prev1 = 0;
        int have = 0;
        for (const auto& s : samples) {
            const double y = table.log_sum(s.q, n);
            if (have >= 2 && y - 2 * prev1 + prev2 < -1e-9) convex = false;
            prev2 = prev1;
            prev1 = y;
            ++have;
        }
    }

    const auto leg = legendre(samples);
    bool concave = true;
    for (std::size_t i = 2; i < leg.size(); ++i) {
        const auto [x0, y0] = leg[i - 2];
        const auto [x1, y1] = leg[i - 1];
        const auto [x2, y2] = leg[i];
        if (x2 - x0 > 1e-12 && y1 < y0 + (y2 - y0) * (x1 - x0) / (x2 - x0) - 1e-9) concave = false;
    }
    double max_f = leg.front().second;
    for (const auto& [a, f] : leg) max_f = std::max(max_f, f);

    const bool pin1 = std::fabs(t1.tau) < 1e-10;
    const bool pin0 = t0.tau >= -1.05 && t0.tau <= -0.95;
    const bool pinf = max_f >= 0.95 && max_f <= 1.0;
    r.pass = pin1 && pin0 && convex && concave && pinf;
    std::ostringstream os;
    os << "tau(1)=" << t1.tau << ", tau(0)=" << t0.tau << ", max f=" << max_f
       << (convex ? "" : ", ln S not convex") << (concave ? "" : ", spectrum not concave");
    r.detail = os.str();
    return r;
}

inline CriterionResult ac12_w_survey(const AcceptanceConfig& cfg) {
    CriterionResult r{"AC12", "w-survey"};
    const WSurvey survey = survey_W(cfg.survey_len());
    r.pass = survey.violations.empty();
    std::ostringstream os;
    os << survey.member_count << " members, " << survey.exceptions.size() << " 20^n/12^n exceptions";
    if (!r.pass) {
        os << "; members outside |w|>=4 & l*>=3 and not of exception form:";
        std::size_t shown = 0;
        for (const auto& w : survey.violations) {
            os << " " << w;
            if (++shown == 6 && survey.violations.size() > 6) {
                os << " (+" << survey.violations.size() - 6 << " more)";
                break;
            }
        }
    }
    r.detail = os.str();
    return r;
}

}  // namespace acceptance

inline CriterionResult run_criterion(int k, const AcceptanceConfig& cfg) {
    using Fn = CriterionResult (*)(const AcceptanceConfig&);
    static constexpr Fn table[12] = {
        acceptance::ac1_stationary_vector, acceptance::ac2_parametric_families,
        acceptance::ac3_partition_of_unity, acceptance::ac4_oracle_sandwich,
        acceptance::ac5_synchronizing_words, acceptance::ac6_property_p,
        acceptance::ac7_limit_supports, acceptance::ac8_cauchy_trend,
        acceptance::ac9_weak_gibbs, acceptance::ac10_potential_closed_forms,
        acceptance::ac11_spectrum_pins, acceptance::ac12_w_survey};
    if (k < 1 || k > 12) throw std::domain_error("run_criterion: id must be 1..12");
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res = table[k - 1](cfg);
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg = {}) {
    std::vector<CriterionResult> out;
    for (int k = 1; k <= 12; ++k) out.push_back(run_criterion(k, cfg));
    return out;
}

}  // namespace betagibbs
