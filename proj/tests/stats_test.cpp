// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hmc/rng.hpp"
#include "hmc/stats.hpp"

namespace hmc {
namespace {

std::vector<double> normals(std::uint64_t seed, std::size_t n, double shift = 0.0)
{
    Stream s({seed, 0, Lane::aux});
    std::vector<double> x(n);
    for (auto& v : x) {
        v = s.normal() + shift;
    }
    return x;
}

TEST(EmpiricalMoment, Examples)
{
    const std::vector<double> constant(10, 3.5);
    const auto c = empirical_moment(constant, 1);
    EXPECT_EQ(c.value, 3.5);
    EXPECT_EQ(c.se, 0.0);
    EXPECT_EQ(c.n_samples, 10U);
    const std::vector<double> pm{1.0, -1.0};
    const auto s = empirical_moment(pm, 2);
    EXPECT_EQ(s.value, 1.0);
    EXPECT_EQ(s.se, 0.0);
    EXPECT_TRUE(empirical_moment(normals(1, 100000), 2).agrees_with(1.0));
    EXPECT_TRUE(empirical_moment(normals(2, 100000), 3).agrees_with(0.0));
}

TEST(EmpiricalMoment, Errors)
{
    const std::vector<double> one{1.0};
    EXPECT_THROW(empirical_moment(one, 1), InsufficientSamplesError);
    const std::vector<double> neg{-1.0, 2.0};
    EXPECT_THROW(empirical_moment(neg, 0.5), DomainError);
    EXPECT_THROW(empirical_moment(neg, 0.0), DomainError);
    EXPECT_NEAR(empirical_moment(std::vector<double>{4.0, 9.0}, 0.5).value, 2.5, 1e-15);
}

TEST(MeanWithError, StandardError)
{
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const auto e = mean_with_error(x);
    EXPECT_DOUBLE_EQ(e.value, 2.5);
    EXPECT_NEAR(e.se, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
    EXPECT_TRUE(e.agrees_with(2.5 + 4.0 * e.se));
    EXPECT_FALSE(e.agrees_with(2.5 + 4.1 * e.se));
    EXPECT_TRUE(e.agrees_with(10.0, kSigmaRule, 8.0));
}

TEST(Jackknife, MeanMatchesPlugIn)
{
    const auto x = normals(3, 10000);
    const auto plain = mean_with_error(x);
    const auto jk = jackknife(x, [](std::span<const double> s) {
        double a = 0.0;
        for (const double v : s) {
            a += v;
        }
        return a / static_cast<double>(s.size());
    });
    EXPECT_NEAR(jk.value, plain.value, 1e-14);
    EXPECT_NEAR(jk.se / plain.se, 1.0, 0.2);
}

TEST(ControlVariate, ReducesErrorAndStaysUnbiased)
{
    // y = x + noise with E x = 0 known; the estimator should be near E y = 1.
    Stream s({4, 0, Lane::aux});
    std::vector<double> x(20000);
    std::vector<double> y(20000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = s.normal();
        y[i] = 1.0 + 2.0 * x[i] + 0.1 * s.normal();
    }
    const auto plain = mean_with_error(y);
    const auto cv = control_variate_mean(y, x, 0.0);
    EXPECT_TRUE(cv.agrees_with(1.0));
    EXPECT_LT(cv.se, plain.se / 10.0);
    EXPECT_NEAR(cv.se, 0.1 / std::sqrt(20000.0), 0.3 * 0.1 / std::sqrt(20000.0));
    EXPECT_THROW(control_variate_mean(y, std::span<const double>(x).first(10), 0.0), DomainError);
}

TEST(KolmogorovSmirnov, Examples)
{
    const auto a = normals(5, 5000);
    const auto same = ks_two_sample(a, a);
    EXPECT_EQ(same.statistic, 0.0);
    EXPECT_TRUE(same.pass);
    EXPECT_TRUE(ks_two_sample(a, normals(6, 5000)).pass);
    EXPECT_FALSE(ks_two_sample(a, normals(7, 5000, 0.5)).pass);
    EXPECT_THROW(ks_two_sample(std::span<const double>(a).first(10), a), SizeError);
}

TEST(KolmogorovSmirnov, TailFunction)
{
    EXPECT_EQ(kolmogorov_q(0.1), 1.0);
    EXPECT_NEAR(kolmogorov_q(1.0), 0.26999967167735456, 1e-12);
    EXPECT_NEAR(kolmogorov_q(1.9495), 0.001, 2e-5);
}

TEST(ChiSquare, Examples)
{
    const std::vector<double> probs(6, 1.0 / 6.0);
    const std::vector<double> exact(6, 100.0);
    EXPECT_EQ(chi_square_gof(exact, probs).statistic, 0.0);

    Stream s({8, 0, Lane::aux});
    std::vector<double> fair(6, 0.0);
    std::vector<double> biased(6, 0.0);
    for (int i = 0; i < 60000; ++i) {
        fair[static_cast<std::size_t>(s.uniform() * 6.0)] += 1.0;
        const double u = s.uniform();
        biased[u < 0.2 ? 0 : static_cast<std::size_t>(1.0 + (u - 0.2) / 0.8 * 5.0)] += 1.0;
    }
    EXPECT_TRUE(chi_square_gof(fair, probs).pass);
    EXPECT_FALSE(chi_square_gof(biased, probs).pass);
}

TEST(ChiSquare, MergesSparseBins)
{
    const std::vector<double> probs{0.5, 0.49, 0.005, 0.005};
    const std::vector<double> obs{50.0, 49.0, 1.0, 0.0};
    const auto v = chi_square_gof(obs, probs);
    EXPECT_TRUE(v.pass);
    EXPECT_THROW(chi_square_gof(obs, std::vector<double>{0.5, 0.5, 0.5, 0.5}), DomainError);
    EXPECT_THROW(chi_square_gof(std::vector<double>{1.0}, std::vector<double>{1.0}), DomainError);
}

TEST(SupDistance, GridAndJumps)
{
    const std::vector<double> x{0.1, 0.2, 0.2, 0.9};
    auto uniform = [](double v) { return std::clamp(v, 0.0, 1.0); };
    // ECDF jumps to 0.75 at 0.2 where F = 0.2.
    EXPECT_NEAR(sup_distance_to_cdf(x, uniform), 0.55, 1e-15);
    const std::vector<double> grid{0.5, 1.0};
    EXPECT_NEAR(sup_distance_on_grid(x, grid, uniform), 0.25, 1e-15);
}

// Null-true tests at the global threshold fail rarely: at most one of 200 runs.
TEST(Calibration, NullFailureRate)
{
    int ks_failures = 0;
    int chi_failures = 0;
    const std::vector<double> probs(10, 0.1);
    for (std::uint64_t run = 0; run < 200; ++run) {
        if (!ks_two_sample(normals(1000 + run, 1000), normals(5000 + run, 1000)).pass) {
            ++ks_failures;
        }
        Stream s({9000 + run, 0, Lane::aux});
        std::vector<double> counts(10, 0.0);
        for (int i = 0; i < 2000; ++i) {
            counts[static_cast<std::size_t>(s.uniform() * 10.0)] += 1.0;
        }
        if (!chi_square_gof(counts, probs).pass) {
            ++chi_failures;
        }
    }
    EXPECT_LE(ks_failures, 1);
    EXPECT_LE(chi_failures, 1);
}

}  // namespace
}  // namespace hmc
