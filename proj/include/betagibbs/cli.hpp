#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "betagibbs/acceptance.hpp"
#include "betagibbs/convergence.hpp"
#include "betagibbs/measure.hpp"
#include "betagibbs/numberfield.hpp"
#include "betagibbs/oracle.hpp"
#include "betagibbs/parry.hpp"
#include "betagibbs/semigroup.hpp"
#include "betagibbs/spectrum.hpp"

namespace betagibbs::cli {

using json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

// Floats serialize through a fixed 12-significant-digit format so output is
// byte-stable; exact rationals serialize as "p/q".
inline std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string csv_escape(const std::string& s) { return s; }  // no commas in our fields

struct Output {
    std::ostream& out;
    bool csv = false;

    void emit(const json& j, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) const {
        if (!csv) {
            out << j.dump() << "\n";
            return;
        }
        for (std::size_t i = 0; i < header.size(); ++i)
            out << (i ? "," : "") << header[i];
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
            out << "\n";
        }
    }
};

inline int cmd_expand(const std::string& a, const std::string& b, const std::string& c,
                      std::size_t n, const Output& o) {
    const FieldElement x(parse_rational(a), parse_rational(b), parse_rational(c));
    const BinaryWord digits = expand(x, n);
    json j;
    j["a"] = a;
    j["b"] = b;
    j["c"] = c;
    j["n"] = n;
    j["digits"] = digits;
    o.emit(j, {"a", "b", "c", "n", "digits"}, {{a, b, c, std::to_string(n), digits}});
    return kExitOk;
}

inline int cmd_admissible(const std::string& word, const std::string& preperiod,
                          const std::string& period, const Output& o) {
    json j;
    bool ok;
    if (!period.empty()) {
        ok = is_admissible_tail(preperiod, period);
        j["preperiod"] = preperiod;
        j["period"] = period;
        j["admissible"] = ok;
        o.emit(j, {"preperiod", "period", "admissible"}, {{preperiod, period, ok ? "true" : "false"}});
    } else {
        ok = is_admissible_word(word);
        j["word"] = word;
        j["admissible"] = ok;
        o.emit(j, {"word", "admissible"}, {{word, ok ? "true" : "false"}});
    }
    return kExitOk;
}

inline int cmd_measure(const std::string& word, const Output& o) {
    const Rational mu = mu_interval(word);
    const Rational mup = mu_prime_interval(word);
    const Rational ratio = mup / mu;
    json j;
    j["word"] = word;
    j["mu"] = to_string(mu);
    j["mu_prime"] = to_string(mup);
    j["ratio"] = to_string(ratio);
    o.emit(j, {"word", "mu", "mu_prime", "ratio"},
           {{word, to_string(mu), to_string(mup), to_string(ratio)}});
    return kExitOk;
}

inline int cmd_gibbs_scan(std::size_t n_max, const Output& o) {
    const auto rows = weak_gibbs_scan(n_max);
    json j;
    j["rows"] = json::array();
    std::vector<std::vector<std::string>> csv_rows;
    for (const auto& r : rows) {
        json row;
        row["n"] = r.n;
        row["delta"] = fmt(r.delta);
        row["argmax"] = r.argmax;
        j["rows"].push_back(row);
        csv_rows.push_back({std::to_string(r.n), fmt(r.delta), r.argmax});
    }
    o.emit(j, {"n", "delta", "argmax"}, csv_rows);
    return kExitOk;
}

inline int cmd_gibbs_word(const std::string& word, const Output& o) {
    const BlockParse parse = parse_blocks(word);
    const Rational mu = mu_interval(word);
    const Rational mup = mu_prime_interval(word);
    const Rational ratio = mup / mu;
    json j;
    j["word"] = word;
    j["mu"] = to_string(mu);
    j["mu_prime"] = to_string(mup);
    j["ratio"] = to_string(ratio);
    std::string shape = "residue", bound = "";
    std::string nu;
    if (parse.residue == Residue::None && !parse.blocks.empty()) {
        const GibbsDecomposition d = gibbs_decompose(parse.blocks);
        shape = d.shape == GibbsShape::ZeroRun
                    ? "zero-run"
                    : (d.shape == GibbsShape::Ten ? "ten" : "elevenhundred-run");
        nu = std::to_string(d.nu);
        bound = to_string(gibbs_bound(parse.blocks));
        j["shape"] = shape;
        j["nu"] = d.nu;
        j["bound"] = bound;
    }
    o.emit(j, {"word", "mu", "mu_prime", "ratio", "shape", "nu", "bound"},
           {{word, to_string(mu), to_string(mup), to_string(ratio), shape, nu, bound}});
    return kExitOk;
}

inline int cmd_converge(const std::string& prefix, std::size_t depth, std::size_t max_branches,
                        const Output& o) {
    const Rational modulus = cauchy_modulus(prefix, depth, max_branches);
    json j;
    j["prefix"] = prefix;
    j["depth"] = depth;
    j["modulus"] = to_string(modulus);
    o.emit(j, {"prefix", "depth", "modulus"}, {{prefix, std::to_string(depth), to_string(modulus)}});
    return kExitOk;
}

inline int cmd_support(const std::string& preperiod, const std::string& period, std::size_t n_max,
                       double tol, const Output& o) {
    const PeriodicOmega omega{preperiod, period};
    const ClassifyResult res = classify_support(omega, n_max, tol);
    json j;
    j["omega"] = omega.str();
    switch (res.limit.status) {
        case LimitResult::Status::ClosedForm: j["status"] = "closed-form"; break;
        case LimitResult::Status::Stabilized: j["status"] = "stabilized"; break;
        case LimitResult::Status::Inconclusive: j["status"] = "inconclusive"; break;
    }
    j["support"] = json::array();
    std::string support_str;
    for (int c : support_coords(res.limit.support)) {
        j["support"].push_back(c);
        support_str += char('0' + c);
    }
    j["limit"] = json::array();
    std::string limit_str;
    for (const auto& x : res.limit.limit.e) {
        j["limit"].push_back(to_string(x));
        limit_str += (limit_str.empty() ? "" : " ") + to_string(x);
    }
    j["support_admissible"] = res.support_admissible;
    o.emit(j, {"omega", "status", "support", "limit", "support_admissible"},
           {{omega.str(), std::string(j["status"]), support_str, limit_str,
             res.support_admissible ? "true" : "false"}});
    if (res.limit.status == LimitResult::Status::Inconclusive) return kExitOk;
    return res.support_admissible ? kExitOk : kExitViolation;
}

inline int cmd_spectrum(double q_min, double q_max, double q_step, std::size_t n_lo,
                        std::size_t n_hi, const Output& o) {
    const SpectrumReport rep = spectrum_report(q_min, q_max, q_step, n_lo, n_hi);
    json j;
    j["n_lo"] = n_lo;
    j["n_hi"] = n_hi;
    j["samples"] = json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : rep.samples) {
        json row;
        row["q"] = fmt(s.q);
        row["tau"] = fmt(s.tau);
        row["residual"] = fmt(s.residual);
        j["samples"].push_back(row);
        rows.push_back({"tau", fmt(s.q), fmt(s.tau), fmt(s.residual)});
    }
    j["spectrum"] = json::array();
    for (const auto& [alpha, f] : rep.spectrum) {
        json row;
        row["alpha"] = fmt(alpha);
        row["f"] = fmt(f);
        j["spectrum"].push_back(row);
        rows.push_back({"f", fmt(alpha), fmt(f), ""});
    }
    o.emit(j, {"kind", "x", "y", "residual"}, rows);
    return kExitOk;
}

inline int cmd_oracle(std::size_t order, unsigned depth, const Output& o) {
    const AtomCloud cloud = build_atoms(depth);
    const OracleReport rep = compare_all(order, cloud);
    json j;
    j["order"] = order;
    j["depth"] = depth;
    j["worst_gap"] = fmt(rep.worst_gap);
    j["all_pass"] = rep.all_pass;
    j["rows"] = json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : rep.rows) {
        json rj;
        rj["word"] = row.word;
        rj["mu"] = to_string(row.mu);
        rj["lower"] = to_string(row.bounds.lower);
        rj["upper"] = to_string(row.bounds.upper);
        rj["pass"] = row.pass;
        j["rows"].push_back(rj);
        rows.push_back({row.word, to_string(row.mu), to_string(row.bounds.lower),
                        to_string(row.bounds.upper), row.pass ? "true" : "false"});
    }
    o.emit(j, {"word", "mu_exact", "lower", "upper", "pass"}, rows);
    return rep.all_pass ? kExitOk : kExitViolation;
}

inline int cmd_graph(const std::string& start, std::ostream& out) {
    StateGraph g;
    if (start == "135")
        g = reachable_graph({state_135()});
    else if (start == "basis")
        g = reachable_graph(basis_states());
    else
        throw CLI::ValidationError("--start must be 135 or basis");
    out << to_dot(g, "betagibbs_states");
    return kExitOk;
}

inline int cmd_verify(bool quick, int kappa, const std::string& only, bool as_json,
                      std::ostream& out) {
    AcceptanceConfig cfg;
    cfg.quick = quick;
    std::vector<CriterionResult> results;
    if (!only.empty()) {
        if (only.size() < 3 || only.substr(0, 2) != "AC")
            throw CLI::ValidationError("--only expects AC1..AC12");
        results.push_back(run_criterion(std::stoi(only.substr(2)), cfg));
    } else {
        results = run_acceptance(cfg);
    }

    bool all_pass = true;
    if (as_json) {
        json j = json::array();
        for (const auto& r : results) {
            json row;
            row["id"] = r.id;
            row["name"] = r.name;
            row["pass"] = r.pass;
            row["seconds"] = fmt(r.seconds);
            row["detail"] = r.detail;
            j.push_back(row);
            all_pass = all_pass && r.pass;
        }
        out << j.dump() << "\n";
    } else {
        for (const auto& r : results) {
            out << r.id << " " << r.name << " " << (r.pass ? "PASS" : "FAIL") << " ("
                << fmt(r.seconds) << "s) " << r.detail << "\n";
            all_pass = all_pass && r.pass;
        }
    }

    // kappa only sizes this side experiment; correctness never depends on it.
    if (only.empty() && kappa > 0) {
        std::mt19937 rng(0x5eedC);
        const auto pool = enumerate_W(8);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        int fails = 0;
        for (int trial = 0; trial < 50; ++trial) {
            TernaryWord w;
            for (int jv = 0; jv < kappa; ++jv) w += pool[pick(rng)];
            if (!has_property_P(product(w))) ++fails;
        }
        if (!as_json)
            out << "note: property (P) on 50 random W^" << kappa << " concatenations: "
                << (fails == 0 ? "all hold" : std::to_string(fails) + " failures") << "\n";
    }
    return all_pass ? kExitOk : kExitViolation;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Bernoulli-convolution toolkit for the base beta^3 = 2 beta^2 - beta + 1"};
    app.require_subcommand(1);
    bool csv = false;
    app.add_flag("--csv", csv, "CSV output instead of JSON");

    // expand
    auto* expand_cmd = app.add_subcommand("expand", "Parry digits of a + b*beta + c*beta^2");
    std::string ex_a = "0", ex_b = "0", ex_c = "0";
    std::size_t ex_n = 10;
    expand_cmd->add_option("--a", ex_a, "rational coefficient of 1");
    expand_cmd->add_option("--b", ex_b, "rational coefficient of beta");
    expand_cmd->add_option("--c", ex_c, "rational coefficient of beta^2");
    expand_cmd->add_option("-n,--digits", ex_n, "number of digits");

    // admissible
    auto* adm_cmd = app.add_subcommand("admissible", "admissibility of a word or periodic tail");
    std::string adm_word, adm_pre, adm_per;
    adm_cmd->add_option("word", adm_word, "binary word");
    adm_cmd->add_option("--preperiod", adm_pre, "preperiod of an eventually periodic sequence");
    adm_cmd->add_option("--period", adm_per, "period of an eventually periodic sequence");

    // measure
    auto* measure_cmd = app.add_subcommand("measure", "mu, mu' and their ratio on a cylinder");
    std::string measure_word;
    measure_cmd->add_option("word", measure_word, "admissible binary word")->required();

    // gibbs
    auto* gibbs_cmd = app.add_subcommand("gibbs", "weak-Gibbs scan or per-word bound");
    std::size_t gibbs_scan = 0;
    std::string gibbs_word;
    gibbs_cmd->add_option("--scan", gibbs_scan, "scan Delta(n) for n = 1..N");
    gibbs_cmd->add_option("--word", gibbs_word, "single word report");

    // converge
    auto* conv_cmd = app.add_subcommand("converge", "exhaustive Cauchy modulus on a cylinder");
    std::string conv_prefix;
    std::size_t conv_depth = 0, conv_budget = 1000000;
    conv_cmd->add_option("--prefix", conv_prefix, "ternary prefix");
    conv_cmd->add_option("--depth", conv_depth, "extension depth")->required();
    conv_cmd->add_option("--max-branches", conv_budget, "branch budget");

    // support
    auto* sup_cmd = app.add_subcommand("support", "limit vector and support along periodic omega");
    std::string sup_pre, sup_per;
    std::size_t sup_nmax = 500;
    double sup_tol = 1e-9;
    sup_cmd->add_option("--preperiod", sup_pre, "preperiod");
    sup_cmd->add_option("--period", sup_per, "period")->required();
    sup_cmd->add_option("--nmax", sup_nmax, "iteration budget");
    sup_cmd->add_option("--tol", sup_tol, "stabilization tolerance");

    // spectrum
    auto* spec_cmd = app.add_subcommand("spectrum", "Lq spectrum and Legendre conjugate");
    double sq_min = -10, sq_max = 10, sq_step = 0.25;
    std::size_t sq_nlo = kSpectrumDefaultNLo, sq_nhi = kSpectrumDefaultNHi;
    std::string sq_out = "json";
    spec_cmd->add_option("--qmin", sq_min, "grid start");
    spec_cmd->add_option("--qmax", sq_max, "grid end");
    spec_cmd->add_option("--qstep", sq_step, "grid step");
    spec_cmd->add_option("--nlo", sq_nlo, "regression window start");
    spec_cmd->add_option("--nhi", sq_nhi, "regression window end");
    spec_cmd->add_option("--out", sq_out, "csv or json");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "finite-convolution bounds vs exact masses");
    std::size_t or_n = 4;
    unsigned or_N = 20;
    oracle_cmd->add_option("--n", or_n, "cylinder order");
    oracle_cmd->add_option("--N", or_N, "convolution depth (atoms 2^N)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance identity suite");
    bool v_quick = false, v_json = false;
    int v_kappa = 7;
    std::string v_only;
    verify_cmd->add_flag("--quick", v_quick, "reduced desk sizes");
    verify_cmd->add_flag("--json", v_json, "JSON result rows");
    verify_cmd->add_option("--kappa", v_kappa, "W-power used by the side experiment");
    verify_cmd->add_option("--only", v_only, "run a single criterion, e.g. AC3");

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "DOT export of the column-pattern graph");
    bool g_dot = false;
    std::string g_start = "135";
    graph_cmd->add_flag("--dot", g_dot, "emit DOT (default output)");
    graph_cmd->add_option("--start", g_start, "start states: 135 or basis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kExitOk;
        }
        err << e.what() << "\n";
        return kExitUsage;
    }

    const Output o{out, csv};
    try {
        if (expand_cmd->parsed()) return cmd_expand(ex_a, ex_b, ex_c, ex_n, o);
        if (adm_cmd->parsed()) {
            if (adm_word.empty() && adm_per.empty())
                throw CLI::ValidationError("admissible: give a word or --period");
            return cmd_admissible(adm_word, adm_pre, adm_per, o);
        }
        if (measure_cmd->parsed()) return cmd_measure(measure_word, o);
        if (gibbs_cmd->parsed()) {
            if (gibbs_scan > 0) return cmd_gibbs_scan(gibbs_scan, o);
            if (!gibbs_word.empty()) return cmd_gibbs_word(gibbs_word, o);
            throw CLI::ValidationError("gibbs: give --scan or --word");
        }
        if (conv_cmd->parsed()) return cmd_converge(conv_prefix, conv_depth, conv_budget, o);
        if (sup_cmd->parsed()) return cmd_support(sup_pre, sup_per, sup_nmax, sup_tol, o);
        if (spec_cmd->parsed()) {
            Output so{out, csv || sq_out == "csv"};
            return cmd_spectrum(sq_min, sq_max, sq_step, sq_nlo, sq_nhi, so);
        }
        if (oracle_cmd->parsed()) return cmd_oracle(or_n, or_N, o);
        if (verify_cmd->parsed()) return cmd_verify(v_quick, v_kappa, v_only, v_json, out);
        if (graph_cmd->parsed()) return cmd_graph(g_start, out);
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceededError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
    err << "no subcommand\n";
    return kExitUsage;
}

}  // namespace betagibbs::cli
