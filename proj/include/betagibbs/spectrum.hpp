#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "betagibbs/measure.hpp"

namespace betagibbs {

// Exact cylinder masses per order, shared by all L^q sums.
class PartitionTable {
  public:
    explicit PartitionTable(std::size_t n_max) : mu_(n_max) {
        for (std::size_t n = 1; n <= n_max; ++n) {
            auto& row = mu_[n - 1];
            for_each_admissible(n, [&](const std::string&, const Rational& mu, const Rational&) {
                row.push_back(mu);
            });
        }
    }

    std::size_t n_max() const { return mu_.size(); }

    const std::vector<Rational>& masses(std::size_t n) const {
        if (n == 0 || n > mu_.size()) throw std::domain_error("PartitionTable: order out of range");
        return mu_[n - 1];
    }

    // S_n(q) = sum mu(I_w)^q; exact for nonnegative integer q.
    Rational sum_exact(unsigned q, std::size_t n) const {
        Rational total = 0;
        for (const Rational& m : masses(n)) {
            Rational p = 1;
            for (unsigned k = 0; k < q; ++k) p *= m;
            total += p;
        }
        return total;
    }

    double sum(double q, std::size_t n) const {
        if (q >= 0 && q <= 64 && q == std::floor(q)) return to_double(sum_exact(unsigned(q), n));
        double total = 0;
        for (const Rational& m : masses(n)) total += std::pow(to_double(m), q);
        return total;
    }

    double log_sum(double q, std::size_t n) const { return std::log(sum(q, n)); }

  private:
    std::vector<std::vector<Rational>> mu_;
};

struct SpectrumSample {
    double q = 0;
    double tau = 0;
    std::size_t n_lo = 0, n_hi = 0;
    double residual = 0;  // RMS regression residual
};

// tau(q) as the least-squares slope of ln S_n(q) against ln(beta^-n) over the
// window; the regression kills the additive O(1) bias of single-n quotients.
inline SpectrumSample tau_scale(double q, std::size_t n_lo, std::size_t n_hi,
                                const PartitionTable& table) {
    if (n_lo >= n_hi || n_hi > table.n_max()) throw std::domain_error("tau_scale: bad window");
    const double log_beta = std::log(to_double(approximate(FieldElement::beta(), Rational(1, Int(1) << 40))));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = double(n_hi - n_lo + 1);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        const double x = -double(n) * log_beta;
        const double y = table.log_sum(q, n);
        pts.emplace_back(x, y);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;
    double rss = 0;
    for (auto [x, y] : pts) {
        const double r = y - (slope * x + intercept);
        rss += r * r;
    }
    SpectrumSample out;
    out.q = q;
    out.tau = slope;
    out.n_lo = n_lo;
    out.n_hi = n_hi;
    out.residual = std::sqrt(rss / m);
    return out;
}

// Discrete Legendre conjugate f(alpha) = inf_q (alpha q - tau(q)) over the
// sampled grid; alpha runs over the finite-difference slopes of tau.
inline std::vector<std::pair<double, double>> legendre(const std::vector<SpectrumSample>& samples) {
    if (samples.size() < 2) throw std::domain_error("legendre: need at least two samples");
    std::vector<double> alphas;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const double dq = samples[i + 1].q - samples[i].q;
        if (dq <= 0) throw std::domain_error("legendre: q grid must be increasing");
        alphas.push_back((samples[i + 1].tau - samples[i].tau) / dq);
    }
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

    std::vector<std::pair<double, double>> out;
    out.reserve(alphas.size());
    for (double alpha : alphas) {
        double f = alpha * samples.front().q - samples.front().tau;
        for (const auto& s : samples) f = std::min(f, alpha * s.q - s.tau);
        out.emplace_back(alpha, f);
    }
    return out;
}

struct SpectrumReport {
    std::vector<SpectrumSample> samples;
    std::vector<std::pair<double, double>> spectrum;  // (alpha, f(alpha))
};

inline constexpr std::size_t kSpectrumDefaultNLo = 7;
inline constexpr std::size_t kSpectrumDefaultNHi = 14;

inline SpectrumReport spectrum_report(double q_min, double q_max, double q_step, std::size_t n_lo,
                                      std::size_t n_hi) {
    if (q_step <= 0 || q_min > q_max) throw std::domain_error("spectrum_report: empty q grid");
    PartitionTable table(n_hi);
    SpectrumReport rep;
    for (double q = q_min; q <= q_max + 1e-12; q += q_step)
        rep.samples.push_back(tau_scale(q, n_lo, n_hi, table));
    rep.spectrum = legendre(rep.samples);
    return rep;
}

}  // namespace betagibbs
