// SPDX-License-Identifier: Apache-2.0
//
// Estimators and goodness-of-fit tests used by the verification suites.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "hmc/common.hpp"

namespace hmc {

/// Global significance threshold for every hypothesis test.
inline constexpr double kTestThreshold = 1e-3;
/// Moment-agreement rule: |estimate - target| <= kSigmaRule * se.
inline constexpr double kSigmaRule = 4.0;

struct EstimateWithError {
    double value = 0.0;
    double se = 0.0;
    std::size_t n_samples = 0;

    /// |value - target| <= sigmas * se + allowance.
    [[nodiscard]] bool agrees_with(double target, double sigmas = kSigmaRule, double allowance = 0.0) const
    {
        return std::abs(value - target) <= sigmas * se + allowance;
    }
};

struct TestVerdict {
    double statistic = 0.0;
    double p_value = 1.0;
    bool pass = true;
    double threshold = kTestThreshold;
};

class InsufficientSamplesError : public SizeError {
  public:
    using SizeError::SizeError;
};

/// Sample mean with plug-in standard error sd / sqrt(n).
inline EstimateWithError mean_with_error(std::span<const double> xs)
{
    if (xs.size() < 2) {
        throw InsufficientSamplesError("mean_with_error: need >= 2 samples");
    }
    const auto n = static_cast<double>(xs.size());
    // Two-pass variance.
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double ss = 0.0;
    for (const double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    const double sd = std::sqrt(ss / (n - 1.0));
    return {mean, sd / std::sqrt(n), xs.size()};
}

/// Mean of x^order. Integer orders keep the sign of x; fractional orders need x >= 0.
inline EstimateWithError empirical_moment(std::span<const double> samples, double order)
{
    if (samples.size() < 2) {
        throw InsufficientSamplesError("empirical_moment: need >= 2 samples");
    }
    detail::require(order > 0.0, "empirical_moment: order must be > 0");
    const bool integral = order == std::floor(order);
    std::vector<double> powered(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double x = samples[i];
        if (!integral && x < 0.0) {
            throw DomainError("empirical_moment: fractional order of a negative sample");
        }
        powered[i] = integral ? std::pow(x, static_cast<int>(order)) : std::pow(x, order);
    }
    return mean_with_error(powered);
}

/// Delete-a-group jackknife of a (possibly nonlinear) statistic.
inline EstimateWithError jackknife(std::span<const double> samples,
                                   const std::function<double(std::span<const double>)>& statistic,
                                   std::size_t groups = 100)
{
    if (samples.size() < 2) {
        throw InsufficientSamplesError("jackknife: need >= 2 samples");
    }
    groups = std::clamp<std::size_t>(groups, 2, samples.size());
    const double full = statistic(samples);
    const std::size_t n = samples.size();
    std::vector<double> leave_out(groups);
    std::vector<double> rest;
    rest.reserve(n);
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t lo = g * n / groups;
        const std::size_t hi = (g + 1) * n / groups;
        rest.clear();
        rest.insert(rest.end(), samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(lo));
        rest.insert(rest.end(), samples.begin() + static_cast<std::ptrdiff_t>(hi), samples.end());
        leave_out[g] = statistic(rest);
    }
    const double g = static_cast<double>(groups);
    const double mean = std::accumulate(leave_out.begin(), leave_out.end(), 0.0) / g;
    double ss = 0.0;
    for (const double v : leave_out) {
        ss += (v - mean) * (v - mean);
    }
    return {full, std::sqrt((g - 1.0) / g * ss), n};
}

/// mean(y) - b (mean(x) - x_mean) with b = cov(x, y) / var(x) fitted on the
/// same data; x_mean is the known expectation of x. The se is a
/// delete-a-group jackknife, so it accounts for the fitted b.
inline EstimateWithError control_variate_mean(std::span<const double> y, std::span<const double> x, double x_mean,
                                              std::size_t groups = 100)
{
    if (y.size() != x.size()) {
        throw DomainError("control_variate_mean: y and x must have equal length");
    }
    if (y.size() < 4) {
        throw InsufficientSamplesError("control_variate_mean: need >= 4 samples");
    }
    struct Sums {
        double n = 0, x = 0, y = 0, xx = 0, xy = 0;
        void add(double xi, double yi)
        {
            n += 1;
            x += xi;
            y += yi;
            xx += xi * xi;
            xy += xi * yi;
        }
        [[nodiscard]] Sums minus(const Sums& o) const { return {n - o.n, x - o.x, y - o.y, xx - o.xx, xy - o.xy}; }
        [[nodiscard]] double estimate(double mu) const
        {
            const double mx = x / n;
            const double my = y / n;
            const double vxx = xx / n - mx * mx;
            const double b = vxx > 0.0 ? (xy / n - mx * my) / vxx : 0.0;
            return my - b * (mx - mu);
        }
    };
    // Center x first so the raw-moment sums stay well conditioned.
    const double shift = x_mean;
    groups = std::clamp<std::size_t>(groups, 2, y.size());
    const std::size_t n = y.size();
    std::vector<Sums> per_group(groups);
    Sums total;
    for (std::size_t g = 0; g < groups; ++g) {
        for (std::size_t i = g * n / groups; i < (g + 1) * n / groups; ++i) {
            per_group[g].add(x[i] - shift, y[i]);
        }
        total = {total.n + per_group[g].n, total.x + per_group[g].x, total.y + per_group[g].y,
                 total.xx + per_group[g].xx, total.xy + per_group[g].xy};
    }
    const double full = total.estimate(0.0);
    std::vector<double> leave_out(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        leave_out[g] = total.minus(per_group[g]).estimate(0.0);
    }
    const double gd = static_cast<double>(groups);
    const double mean = std::accumulate(leave_out.begin(), leave_out.end(), 0.0) / gd;
    double ss = 0.0;
    for (const double v : leave_out) {
        ss += (v - mean) * (v - mean);
    }
    return {full, std::sqrt((gd - 1.0) / gd * ss), n};
}

/// Asymptotic Kolmogorov tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
inline double kolmogorov_q(double lambda)
{
    if (lambda < 0.27) {
        // The alternating series converges slowly here; 1 - Q is below 1e-6.
        return 1.0;
    }
    double acc = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        acc += sign * term;
        if (term < 1e-17) {
            break;
        }
        sign = -sign;
    }
    return std::clamp(2.0 * acc, 0.0, 1.0);
}

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// Q((sqrt(ne) + 0.12 + 0.11 / sqrt(ne)) D), ne = n m / (n + m).
inline TestVerdict ks_two_sample(std::span<const double> a, std::span<const double> b,
                                 double threshold = kTestThreshold)
{
    if (a.size() < 50 || b.size() < 50) {
        throw SizeError("ks_two_sample: both samples need at least 50 entries");
    }
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const auto nx = static_cast<double>(x.size());
    const auto ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) {
            ++i;
        }
        while (j < y.size() && y[j] <= v) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    const double ne = nx * ny / (nx + ny);
    const double root = std::sqrt(ne);
    const double p = kolmogorov_q((root + 0.12 + 0.11 / root) * d);
    return {d, p, p > threshold, threshold};
}

/// sup_x |ECDF(x) - F(x)| for a continuous F, checked on both sides of every jump.
template <class Cdf>
double sup_distance_to_cdf(std::span<const double> samples, Cdf&& cdf)
{
    if (samples.empty()) {
        throw InsufficientSamplesError("sup_distance_to_cdf: no samples");
    }
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const auto n = static_cast<double>(x.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < x.size()) {
        std::size_t j = i;
        while (j < x.size() && x[j] == x[i]) {
            ++j;
        }
        const double f = cdf(x[i]);
        d = std::max({d, std::abs(static_cast<double>(i) / n - f), std::abs(static_cast<double>(j) / n - f)});
        i = j;
    }
    return d;
}

/// max over the grid points x of |#(samples <= x)/n - F(x)|.
template <class Cdf>
double sup_distance_on_grid(std::span<const double> samples, std::span<const double> grid, Cdf&& cdf)
{
    if (samples.empty()) {
        throw InsufficientSamplesError("sup_distance_on_grid: no samples");
    }
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const auto n = static_cast<double>(x.size());
    double d = 0.0;
    for (const double g : grid) {
        const auto below = std::upper_bound(x.begin(), x.end(), g) - x.begin();
        d = std::max(d, std::abs(static_cast<double>(below) / n - cdf(g)));
    }
    return d;
}

/// Pearson chi-square against expected bin probabilities. Adjacent bins are
/// merged left to right until each expected count is at least 5.
inline TestVerdict chi_square_gof(std::span<const double> observed, std::span<const double> expected_prob,
                                  double threshold = kTestThreshold)
{
    if (observed.size() != expected_prob.size() || observed.empty()) {
        throw DomainError("chi_square_gof: observed and expected must have equal, nonzero length");
    }
    const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
    const double prob_total = std::accumulate(expected_prob.begin(), expected_prob.end(), 0.0);
    if (std::abs(prob_total - 1.0) > 1e-6) {
        throw DomainError("chi_square_gof: expected probabilities must sum to 1 (got " + std::to_string(prob_total) +
                          ")");
    }
    std::vector<double> obs;
    std::vector<double> exp;
    double o_acc = 0.0;
    double e_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        o_acc += observed[i];
        e_acc += expected_prob[i] * total;
        if (e_acc >= 5.0) {
            obs.push_back(o_acc);
            exp.push_back(e_acc);
            o_acc = 0.0;
            e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (obs.empty()) {
            throw DomainError("chi_square_gof: cannot merge bins to reach 5 expected counts");
        }
        obs.back() += o_acc;
        exp.back() += e_acc;
    }
    if (obs.size() < 2) {
        throw DomainError("chi_square_gof: fewer than two bins after merging");
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        stat += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
    }
    const double dof = static_cast<double>(obs.size() - 1);
    const double p = boost::math::gamma_q(0.5 * dof, 0.5 * stat);
    return {stat, p, p > threshold, threshold};
}

}  // namespace hmc
