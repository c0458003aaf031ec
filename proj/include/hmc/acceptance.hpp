// SPDX-License-Identifier: Apache-2.0
//
// The acceptance criteria as named, seeded checks. Shared by the acceptance
// binary and `hmclab verify`.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "hmc/cbe.hpp"
#include "hmc/ewens.hpp"
#include "hmc/gmc.hpp"
#include "hmc/moments.hpp"
#include "hmc/parallel.hpp"
#include "hmc/partitions.hpp"
#include "hmc/report.hpp"
#include "hmc/rng.hpp"
#include "hmc/series.hpp"
#include "hmc/stats.hpp"

namespace hmc::acceptance {

enum class Level { quick, full };
enum class Suite { identities, limits, cbe };

inline const char* to_string(Suite s)
{
    switch (s) {
    case Suite::identities:
        return "identities";
    case Suite::limits:
        return "limits";
    case Suite::cbe:
        return "cbe";
    }
    return "?";
}

struct Config {
    Level level = Level::full;
    std::uint64_t seed = 20240611;
    unsigned threads = 1;

    [[nodiscard]] std::size_t samples(std::size_t full, std::size_t quick) const
    {
        return level == Level::full ? full : quick;
    }
};

/// One comparison inside a check: `value` against `bound`, or a hypothesis
/// test whose p-value is compared with the threshold.
struct Item {
    std::string name;
    bool pass = true;
    double value = std::numeric_limits<double>::quiet_NaN();
    double bound = std::numeric_limits<double>::quiet_NaN();
    double p_value = std::numeric_limits<double>::quiet_NaN();
    std::string detail;
};

struct Outcome {
    int criterion = 0;
    std::string part;
    Suite suite = Suite::identities;
    std::string title;
    std::vector<Item> items;
    std::vector<NamedEstimate> estimates;
    double seconds = 0.0;
    std::string error;

    [[nodiscard]] bool pass() const
    {
        if (!error.empty()) {
            return false;
        }
        for (const auto& i : items) {
            if (!i.pass) {
                return false;
            }
        }
        return !items.empty();
    }

    void expect_le(std::string name, double value, double bound, std::string detail = {})
    {
        items.push_back({std::move(name), value <= bound, value, bound, std::numeric_limits<double>::quiet_NaN(),
                         std::move(detail)});
    }

    void expect(std::string name, bool ok, double value, std::string detail = {})
    {
        items.push_back({std::move(name), ok, value, std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN(), std::move(detail)});
    }

    void expect_test(std::string name, const TestVerdict& v, std::string detail = {})
    {
        items.push_back({std::move(name), v.pass, v.statistic, v.threshold, v.p_value, std::move(detail)});
    }

    /// |estimate - target| <= 4 se + allowance.
    void expect_agree(std::string name, const EstimateWithError& e, double target, double allowance = 0.0)
    {
        const double gap = std::abs(e.value - target);
        const double bound = kSigmaRule * e.se + allowance;
        std::ostringstream os;
        os.precision(6);
        os << "estimate " << e.value << " (se " << e.se << ") vs " << target;
        if (allowance > 0.0) {
            os << ", allowance " << allowance;
        }
        estimates.push_back({name, e, target});
        items.push_back({std::move(name), gap <= bound, gap, bound, std::numeric_limits<double>::quiet_NaN(), os.str()});
    }

    [[nodiscard]] std::vector<NamedVerdict> verdicts() const
    {
        std::vector<NamedVerdict> out;
        const std::string prefix = std::to_string(criterion) + part + ".";
        for (const auto& i : items) {
            out.push_back({prefix + i.name, {i.value, i.p_value, i.pass, i.bound}, i.detail});
        }
        if (!error.empty()) {
            out.push_back({prefix + "error",
                           {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(), false,
                            std::numeric_limits<double>::quiet_NaN()},
                           error});
        }
        return out;
    }
};

struct Check {
    int criterion;
    std::string part;
    Suite suite;
    std::string title;
    std::function<void(const Config&, Outcome&)> run;
};

namespace detail {

inline StreamKey key_for(const Config& cfg, int criterion, int part, Lane lane = Lane::hmc)
{
    const std::uint64_t tag = (static_cast<std::uint64_t>(criterion) << 16U) | static_cast<std::uint64_t>(part);
    return {hmc::detail::splitmix64(cfg.seed ^ hmc::detail::splitmix64(tag)), 0, lane};
}

/// Dickman tables are shared by every check in a run.
inline const DickmanTable& table_for(double theta)
{
    static std::mutex mutex;
    static std::map<double, std::unique_ptr<DickmanTable>> cache;
    const std::lock_guard lock(mutex);
    auto& slot = cache[theta];
    if (!slot) {
        slot = std::make_unique<DickmanTable>(p_theta_density(theta, 50.0));
    }
    return *slot;
}

inline std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

inline std::string theta_tag(double theta) { return "theta=" + fmt(theta); }

}  // namespace detail

//---------------------------------------------------------------------------//
// Individual checks
//---------------------------------------------------------------------------//

inline void check_oracle_equivalence(const Config& cfg, Outcome& out)
{
    const auto t0 = std::chrono::steady_clock::now();
    constexpr std::size_t n = 12;
    constexpr std::size_t draws = 200;
    int part = 0;
    for (const double th : {0.25, 0.5, 0.9}) {
        const auto key = detail::key_for(cfg, 1, part++);
        double worst = 0.0;
        for (std::size_t r = 0; r < draws; ++r) {
            const auto draw = make_gaussian_draw(key.with_replica(r), n);
            const auto fast = hmc_coefficients(draw, ThetaParams(th), n);
            const auto slow = hmc_coefficients_bruteforce(draw, ThetaParams(th), n);
            for (std::size_t m = 0; m <= n; ++m) {
                const double ref = std::abs(slow.values[m]);
                worst = std::max(worst, std::abs(fast.values[m] - slow.values[m]) / ref);
            }
        }
        out.expect_le("max_rel_error." + detail::theta_tag(th), worst, 1e-10);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.expect_le("runtime_seconds", secs, 10.0);
}

inline void check_l2_identity(const Config& cfg, Outcome& out)
{
    const auto t0 = std::chrono::steady_clock::now();
    constexpr std::size_t n = 64;
    const std::size_t samples = cfg.samples(20000, 4000);
    int part = 0;
    for (const double th : {0.3, 0.6, 0.9}) {
        const auto key = detail::key_for(cfg, 2, part++);
        const double s = second_moment(n, th);
        const auto ratio = map_replicas(samples, cfg.threads, [&](std::size_t r) {
            const auto draw = make_gaussian_draw(key.with_replica(r), n);
            return std::norm(hmc_coefficients(draw, ThetaParams(th), n).values[n]) / s;
        });
        out.expect_agree("E|c_n|^2/s." + detail::theta_tag(th), mean_with_error(ratio), 1.0);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.expect_le("runtime_seconds", secs, 60.0);
}

inline void check_covariance_identity(const Config& cfg, Outcome& out)
{
    constexpr std::size_t m = 32;
    constexpr double th = 0.5;
    const std::size_t samples = cfg.samples(20000, 4000);
    const auto key = detail::key_for(cfg, 3, 0);
    const std::vector<std::size_t> qs = {8, 16, 32};
    const auto rows = map_replicas(samples, cfg.threads, [&](std::size_t r) {
        const auto draw = make_gaussian_draw(key.with_replica(r), m);
        std::vector<Complex> c;
        for (const auto q : qs) {
            c.push_back(truncated_coefficients(draw, ThetaParams(th), m, q).values[m]);
        }
        return c;
    });
    auto index = [&](std::size_t q) { return static_cast<std::size_t>(std::find(qs.begin(), qs.end(), q) - qs.begin()); };
    for (const auto& [q1, q2] : std::vector<std::pair<std::size_t, std::size_t>>{{8, 16}, {16, 16}, {32, 8}}) {
        std::vector<double> re(samples);
        std::vector<double> im(samples);
        for (std::size_t r = 0; r < samples; ++r) {
            const Complex v = rows[r][index(q1)] * std::conj(rows[r][index(q2)]);
            re[r] = v.real();
            im[r] = v.imag();
        }
        const std::string tag = "(" + std::to_string(q1) + "," + std::to_string(q2) + ")";
        out.expect_agree("Re cov" + tag, mean_with_error(re), truncated_covariance(m, 0, q1, q2, th));
        out.expect_agree("Im cov" + tag, mean_with_error(im), 0.0);
    }
}

inline void check_c_delta_identity(const Config&, Outcome& out)
{
    const auto t0 = std::chrono::steady_clock::now();
    for (const double th : {0.3, 0.6, 0.9}) {
        const auto& table = detail::table_for(th);
        for (const double delta : {0.1, 0.2, 0.5}) {
            const double closed = c_delta_closed(th, delta, table);
            const double integral = c_delta_integral(th, delta, table);
            out.expect_le("|integral-closed|." + detail::theta_tag(th) + ",delta=" + detail::fmt(delta),
                          std::abs(integral - closed), 1e-6,
                          "closed " + detail::fmt(closed) + ", integral " + detail::fmt(integral));
        }
    }
    const auto& unit = detail::table_for(1.0);
    const double log2 = std::log(2.0);
    out.expect_le("|C_0.5-log2|.theta=1.closed", std::abs(c_delta_closed(1.0, 0.5, unit) - log2), 1e-6);
    out.expect_le("|C_0.5-log2|.theta=1.integral", std::abs(c_delta_integral(1.0, 0.5, unit) - log2), 1e-6);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.expect_le("runtime_seconds", secs, 30.0);
}

inline void check_dickman_deterministic(const Config&, Outcome& out)
{
    for (const double th : {0.3, 0.5, 0.9}) {
        const auto& table = detail::table_for(th);
        for (const double m : {0.5, 1.0, 2.0}) {
            const double got = table.laplace_transform(m);
            const double want = t0n_laplace_limit(th, m);
            out.expect_le("|laplace-limit|." + detail::theta_tag(th) + ",m=" + detail::fmt(m), std::abs(got - want),
                          1e-4);
        }
        out.expect_le("|F(1)-1|." + detail::theta_tag(th), std::abs(kingman_cdf(th, 1.0, table) - 1.0), 1e-8);
    }
}

inline void check_dickman_histogram(const Config& cfg, Outcome& out)
{
    constexpr std::size_t n = 5000;
    constexpr double th = 0.5;
    const std::size_t samples = cfg.samples(20000, 5000);
    const auto& table = detail::table_for(th);
    const auto key = detail::key_for(cfg, 5, 1, Lane::ewens);
    const T0nSampler sampler(n, th);
    const auto values = map_replicas(samples, cfg.threads, [&](std::size_t r) {
        Stream stream(key.with_replica(r));
        return static_cast<double>(sampler(stream)) / static_cast<double>(n);
    });
    constexpr double width = 0.1;
    constexpr std::size_t bins = 40;  // [0, 4) plus one tail bin
    std::vector<double> observed(bins + 1, 0.0);
    for (const double v : values) {
        observed[std::min<std::size_t>(static_cast<std::size_t>(v / width), bins)] += 1.0;
    }
    std::vector<double> expected(bins + 1);
    for (std::size_t b = 0; b < bins; ++b) {
        expected[b] = table.cdf(width * static_cast<double>(b + 1)) - table.cdf(width * static_cast<double>(b));
    }
    expected[bins] = 1.0 - table.cdf(width * static_cast<double>(bins));
    out.expect_test("chi2 T0n/n vs p_theta", chi_square_gof(observed, expected));
}

inline void check_tauberian_constant(const Config&, Outcome& out)
{
    for (const double th : {0.3, 0.6}) {
        const auto& table = detail::table_for(th);
        const double c = c_delta_closed(th, 0.1, table);
        std::vector<double> gaps;
        std::string trail;
        for (const double eps : {0.1, 0.05, 0.025}) {
            gaps.push_back(std::abs(a_constant(th, 0.1, eps, table) - c));
            trail += (trail.empty() ? "" : ", ") + detail::fmt(gaps.back());
        }
        out.expect("gap decreasing in eps." + detail::theta_tag(th), gaps[0] > gaps[1] && gaps[1] > gaps[2],
                   gaps.back(), "|A - C_delta| = " + trail);
    }
    const double a = a_constant(0.5, 0.02, 0.01, detail::table_for(0.5));
    out.expect("A(0.5,0.02,0.01) in [0.9,1.0]", a >= 0.9 && a <= 1.0, a, "A = " + detail::fmt(a));
}

inline void check_bracket_mean(const Config& cfg, Outcome& out)
{
    constexpr std::size_t n = 1024;
    constexpr double th = 0.5;
    constexpr double delta = 0.1;
    constexpr double eps = 0.1;
    const std::size_t samples = cfg.samples(2000, 500);
    const TestPolynomial p({1.0, 1.0});
    const auto key = detail::key_for(cfg, 7, 0);
    const auto schedule = block_schedule(n, delta, eps);
    const double s = second_moment(n, th);
    const auto values = map_replicas(samples, cfg.threads, [&](std::size_t r) {
        const auto draw = make_gaussian_draw(key.with_replica(r), n);
        return block_martingale(draw, ThetaParams(th), schedule, p).bracket_sum / s;
    });
    const double target = a_constant(th, delta, eps, detail::table_for(th)) * p.l2_norm_squared();
    out.expect_agree("E bracket vs A*|d|^2", mean_with_error(values), target, 0.10 * target);
}

inline void check_limit_ks(const Config& cfg, Outcome& out)
{
    constexpr std::size_t n = 1024;
    constexpr std::size_t k = 512;
    constexpr std::size_t J = 4096;
    const std::size_t samples = cfg.samples(5000, 1000);
    int part = 0;
    for (const double th : {0.4, 0.7}) {
        const auto hmc_key = detail::key_for(cfg, 8, part);
        const auto gmc_key = detail::key_for(cfg, 8, 100 + part);
        ++part;
        const double root = std::sqrt(second_moment(n, th));
        const auto a = map_replicas(samples, cfg.threads, [&](std::size_t r) {
            const auto draw = make_gaussian_draw(hmc_key.with_replica(r), n);
            return hmc_coefficients(draw, ThetaParams(th), n).values[n].real() / root;
        });
        const auto b = map_replicas(samples, cfg.threads, [&](std::size_t r) {
            return limit_law_sample(ThetaParams(th), 0, k, J, gmc_key.with_replica(r)).values[0].real();
        });
        out.expect_test("KS Re c_n vs Re sqrt(M) Z." + detail::theta_tag(th), ks_two_sample(a, b));
    }
}

inline void check_fourth_moment(const Config& cfg, Outcome& out)
{
    constexpr double th = 0.3;
    const std::vector<std::size_t> ns = {128, 512, 2048};
    const std::size_t samples = cfg.samples(40000, 6000);
    const auto key = detail::key_for(cfg, 9, 0);
    const auto rows = map_replicas(samples, cfg.threads, [&](std::size_t r) {
        const auto draw = make_gaussian_draw(key.with_replica(r), ns.back() / 2);
        std::vector<std::pair<double, double>> row;
        for (const auto n : ns) {
            const double s = second_moment(n, th);
            const auto cm = conditional_moments(draw, ThetaParams(th), n);
            row.emplace_back(cm.second / s, cm.fourth / (s * s));
        }
        return row;
    });
    const double limit = limit_abs_moment(2, th);
    std::vector<double> gaps;
    std::string trail;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        std::vector<double> x(samples);
        std::vector<double> y(samples);
        for (std::size_t r = 0; r < samples; ++r) {
            x[r] = rows[r][i].first;
            y[r] = rows[r][i].second;
        }
        const auto e = control_variate_mean(y, x, 1.0);
        out.estimates.push_back({"E|c_n|^4/s^2.n=" + std::to_string(ns[i]), e, limit});
        gaps.push_back(std::abs(e.value - limit));
        trail += (trail.empty() ? "" : ", ") + detail::fmt(e.value) + " (se " + detail::fmt(e.se) + ")";
    }
    out.expect("gap decreasing in n", gaps[0] > gaps[1] && gaps[1] > gaps[2], gaps.back(),
               "estimates " + trail + "; limit " + detail::fmt(limit));
    out.expect_le("final relative gap", gaps.back() / limit, 0.10);
}

inline void check_shifted_coefficients(const Config& cfg, Outcome& out)
{
    constexpr std::size_t n = 1024;
    constexpr std::size_t ell = 2;
    constexpr double th = 0.5;
    const std::size_t samples = cfg.samples(20000, 4000);
    const auto key = detail::key_for(cfg, 10, 0);
    const double root = std::sqrt(second_moment(n, th));
    const auto rows = map_replicas(samples, cfg.threads, [&](std::size_t r) {
        const auto draw = make_gaussian_draw(key.with_replica(r), n + ell);
        const auto c = hmc_coefficients(draw, ThetaParams(th), n + ell);
        std::vector<Complex> v(ell + 1);
        for (std::size_t j = 0; j <= ell; ++j) {
            v[j] = c.values[n + j] / root;
        }
        return v;
    });
    for (std::size_t a = 0; a <= ell; ++a) {
        for (std::size_t b = a; b <= ell; ++b) {
            std::vector<double> re(samples);
            std::vector<double> im(samples);
            for (std::size_t r = 0; r < samples; ++r) {
                const Complex v = rows[r][a] * std::conj(rows[r][b]);
                re[r] = v.real();
                im[r] = v.imag();
            }
            const std::string tag = "[" + std::to_string(a) + "," + std::to_string(b) + "]";
            out.expect_agree("Re cov" + tag, mean_with_error(re), a == b ? 1.0 : 0.0);
            if (a != b) {
                out.expect_agree("Im cov" + tag, mean_with_error(im), 0.0);
            }
        }
    }
    const std::size_t ks_samples = cfg.samples(5000, 1000);
    const auto gmc_key = detail::key_for(cfg, 10, 1);
    std::vector<double> lhs(ks_samples);
    for (std::size_t r = 0; r < ks_samples; ++r) {
        lhs[r] = (rows[r][0] + rows[r][1]).real();
    }
    const auto rhs = map_replicas(ks_samples, cfg.threads, [&](std::size_t r) {
        const auto w = limit_law_sample(ThetaParams(th), 1, 512, 4096, gmc_key.with_replica(r));
        return (w.values[0] + w.values[1]).real();
    });
    out.expect_test("KS Re(c_n + c_{n+1}) vs sqrt(H) law", ks_two_sample(lhs, rhs));
}

inline void check_cbe(const Config& cfg, Outcome& out)
{
    {
        constexpr std::size_t N = 64;
        constexpr std::size_t n_max = 8;
        const std::size_t samples = cfg.samples(20000, 4000);
        const auto c = cbe_secular_ensemble(N, 2.0, n_max, samples, detail::key_for(cfg, 11, 0, Lane::cbe), cfg.threads);
        for (std::size_t m = 1; m <= n_max; ++m) {
            std::vector<double> v(samples);
            for (std::size_t r = 0; r < samples; ++r) {
                v[r] = std::norm(c[r][m]);
            }
            out.expect_agree("beta=2 E|c_" + std::to_string(m) + "|^2", mean_with_error(v), 1.0);
        }
    }
    {
        constexpr std::size_t N = 256;
        constexpr std::size_t m = 8;
        const std::size_t samples = cfg.samples(20000, 4000);
        const auto c = cbe_secular_ensemble(N, 4.0, m, samples, detail::key_for(cfg, 11, 1, Lane::cbe), cfg.threads);
        std::vector<double> v(samples);
        for (std::size_t r = 0; r < samples; ++r) {
            v[r] = std::norm(c[r][m]);
        }
        const double target = second_moment(m, 0.5);
        out.expect_agree("beta=4 E|c_8|^2", mean_with_error(v), target, 0.10 * target);
    }
    {
        constexpr std::size_t N = 3;
        constexpr double beta = 4.0;
        const std::size_t samples = cfg.samples(5000, 2000);
        const auto kv = detail::key_for(cfg, 11, 2, Lane::cbe);
        const auto kr = detail::key_for(cfg, 11, 3, Lane::cbe);
        const auto a = map_replicas(samples, cfg.threads, [&](std::size_t r) {
            return secular_from_verblunsky(sample_verblunsky(N, beta, kv.with_replica(r))).values[1].real();
        });
        const auto b = map_replicas(samples, cfg.threads, [&](std::size_t r) {
            return secular_from_angles(cbe_rejection_sample_smallN(N, beta, kr.with_replica(r))).values[1].real();
        });
        out.expect_test("KS Re c_1 Verblunsky vs rejection (N=3, beta=4)", ks_two_sample(a, b));
    }
}

inline void check_ewens_pmf(const Config&, Outcome& out)
{
    for (const double th : {0.3, 0.5, 1.0, 2.5}) {
        double worst = 0.0;
        for (std::size_t n = 1; n <= 8; ++n) {
            double total = 0.0;
            for_each_partition(n, [&](std::span<const std::size_t> m) {
                total += ewens_pmf(CycleCounts::from_span(m), th);
            });
            worst = std::max(worst, std::abs(total - 1.0));
        }
        out.expect_le("max |sum pmf - 1|, n<=8." + detail::theta_tag(th), worst, 1e-12);
    }
}

inline void check_ewens_sampling(const Config& cfg, Outcome& out)
{
    {
        constexpr std::size_t n = 5;
        constexpr double th = 0.5;
        const std::size_t samples = cfg.samples(100000, 20000);
        std::vector<std::vector<std::size_t>> shapes;
        std::vector<double> probs;
        for_each_partition(n, [&](std::span<const std::size_t> m) {
            shapes.emplace_back(m.begin(), m.end());
            probs.push_back(ewens_pmf(CycleCounts::from_span(m), th));
        });
        const auto key = detail::key_for(cfg, 12, 1, Lane::ewens);
        const auto drawn = map_replicas(samples, cfg.threads, [&](std::size_t r) {
            const auto s = ewens_sample(n, th, key.with_replica(r));
            return static_cast<std::size_t>(std::find(shapes.begin(), shapes.end(), s.counts) - shapes.begin());
        });
        std::vector<double> observed(shapes.size(), 0.0);
        for (const auto i : drawn) {
            if (i >= shapes.size()) {
                throw NumericalError("sampled cycle type is not a partition of n");
            }
            observed[i] += 1.0;
        }
        out.expect_test("chi2 sampler vs pmf (n=5, theta=0.5)", chi_square_gof(observed, probs));
    }
    {
        constexpr std::size_t n = 2000;
        constexpr double th = 0.5;
        const std::size_t samples = cfg.samples(20000, 5000);
        const auto& table = detail::table_for(th);
        const auto key = detail::key_for(cfg, 12, 2, Lane::ewens);
        const auto x = map_replicas(samples, cfg.threads, [&](std::size_t r) {
            return static_cast<double>(ewens_sample(n, th, key.with_replica(r)).longest()) / static_cast<double>(n);
        });
        std::vector<double> grid(50);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            grid[i] = static_cast<double>(i + 1) / 50.0;
        }
        const double d = sup_distance_on_grid(x, grid, [&](double v) { return kingman_cdf(th, v, table); });
        out.expect_le("sup |ECDF(L/n) - F_theta| on x = i/50 (n=2000)", d, 0.02);
    }
}

//---------------------------------------------------------------------------//
// Registry
//---------------------------------------------------------------------------//

inline const std::vector<Check>& checks()
{
    static const std::vector<Check> all = {
        {1, "", Suite::identities, "Oracle equivalence: recurrence vs composition sum", check_oracle_equivalence},
        {2, "", Suite::limits, "L2 identity E|c_n|^2 = binom(n+theta-1, n)", check_l2_identity},
        {3, "", Suite::limits, "Covariance of truncated coefficients", check_covariance_identity},
        {4, "", Suite::identities, "C_delta integral vs closed form", check_c_delta_identity},
        {5, "a", Suite::identities, "p_theta table: Laplace limit and F_theta(1)", check_dickman_deterministic},
        {5, "b", Suite::limits, "p_theta table vs T_0n/n histogram", check_dickman_histogram},
        {6, "", Suite::identities, "Tauberian constant A(theta, delta, eps)", check_tauberian_constant},
        {7, "", Suite::limits, "Bracket first moment", check_bracket_mean},
        {8, "", Suite::limits, "KS: c_n vs sqrt(M_theta) Z", check_limit_ks},
        {9, "", Suite::limits, "Fourth moment approaches 2 Gamma(1-2 theta)/Gamma(1-theta)^2", check_fourth_moment},
        {10, "", Suite::limits, "Shifted coefficients vs sqrt(H) Z", check_shifted_coefficients},
        {11, "", Suite::cbe, "Circular beta ensemble reduction", check_cbe},
        {12, "a", Suite::identities, "Ewens pmf normalization", check_ewens_pmf},
        {12, "b", Suite::limits, "Ewens sampler and longest-cycle law", check_ewens_sampling},
    };
    return all;
}

inline Outcome run(const Check& check, const Config& cfg)
{
    Outcome out;
    out.criterion = check.criterion;
    out.part = check.part;
    out.suite = check.suite;
    out.title = check.title;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        check.run(cfg, out);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

/// One-line summary: the item count when everything passes, otherwise the
/// failing items with their values and bounds.
inline std::string summarize(const Outcome& o)
{
    if (!o.error.empty()) {
        return "error: " + o.error;
    }
    if (o.pass()) {
        return std::to_string(o.items.size()) + " checks";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& i : o.items) {
        if (i.pass) {
            continue;
        }
        os << (first ? "" : "; ") << i.name << " = " << detail::fmt(i.value);
        if (!std::isnan(i.p_value)) {
            os << " (p " << detail::fmt(i.p_value) << ")";
        } else if (!std::isnan(i.bound)) {
            os << " (bound " << detail::fmt(i.bound) << ")";
        }
        if (!i.detail.empty()) {
            os << " [" << i.detail << "]";
        }
        first = false;
    }
    return os.str();
}

}  // namespace hmc::acceptance
