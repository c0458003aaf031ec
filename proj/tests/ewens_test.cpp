// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hmc/ewens.hpp"
#include "hmc/partitions.hpp"
#include "hmc/stats.hpp"
#include "oracles.hpp"

namespace hmc {
namespace {

const DickmanTable& table(double theta)
{
    static std::map<double, DickmanTable> cache;
    auto it = cache.find(theta);
    if (it == cache.end()) {
        it = cache.emplace(theta, p_theta_density(theta, 50.0)).first;
    }
    return it->second;
}

CycleCounts counts_of(std::vector<std::size_t> m) { return CycleCounts::from_span(m); }

TEST(EwensPmf, SmallCases)
{
    EXPECT_DOUBLE_EQ(ewens_pmf(counts_of({1}), 0.3), 1.0);
    // n = 2: two fixed points vs one transposition.
    const double th = 0.6;
    EXPECT_NEAR(ewens_pmf(counts_of({2, 0}), th), th / (th + 1.0), 1e-15);
    EXPECT_NEAR(ewens_pmf(counts_of({0, 1}), th), 1.0 / (th + 1.0), 1e-15);
}

TEST(EwensPmf, RejectsInvalidCounts)
{
    CycleCounts bad{3, {1, 0, 1}};
    EXPECT_THROW(ewens_pmf(bad, 0.5), DomainError);
    EXPECT_THROW(ewens_pmf(counts_of({1}), 0.0), DomainError);
}

TEST(EwensPmf, UniformPermutations)
{
    for (const std::size_t n : {3U, 4U, 5U}) {
        for (const auto& [counts, freq] : oracle::uniform_cycle_types(n)) {
            EXPECT_NEAR(ewens_pmf(counts_of(counts), 1.0), freq, 1e-14);
        }
    }
}

TEST(EwensPmf, SumsToOne)
{
    for (const double th : {0.2, 0.5, 1.0, 2.5}) {
        for (std::size_t n = 1; n <= 8; ++n) {
            double total = 0.0;
            for_each_partition(n, [&](std::span<const std::size_t> m) { total += ewens_pmf(CycleCounts::from_span(m), th); });
            EXPECT_NEAR(total, 1.0, 1e-12) << th << " " << n;
        }
    }
}

TEST(EwensSample, TrivialAndValid)
{
    for (std::uint64_t r = 0; r < 10; ++r) {
        EXPECT_EQ(ewens_sample(1, 0.5, StreamKey{1, r, Lane::ewens}).counts, std::vector<std::size_t>{1});
        const auto s = ewens_sample(50, 0.7, StreamKey{1, r, Lane::ewens});
        EXPECT_TRUE(s.valid());
    }
    EXPECT_EQ(ewens_sample(30, 0.4, StreamKey{2, 5, Lane::ewens}).counts,
              ewens_sample(30, 0.4, StreamKey{2, 5, Lane::ewens}).counts);
}

TEST(EwensSample, ChiSquareAgainstPmf)
{
    constexpr std::size_t n = 5;
    constexpr std::size_t samples = 100000;
    const double th = 0.5;
    std::vector<std::vector<std::size_t>> shapes;
    std::vector<double> probs;
    for_each_partition(n, [&](std::span<const std::size_t> m) {
        shapes.emplace_back(m.begin(), m.end());
        probs.push_back(ewens_pmf(CycleCounts::from_span(m), th));
    });
    std::vector<double> observed(shapes.size(), 0.0);
    Stream stream({3, 0, Lane::ewens});
    for (std::size_t r = 0; r < samples; ++r) {
        const auto s = ewens_sample(n, th, stream);
        const auto it = std::find(shapes.begin(), shapes.end(), s.counts);
        ASSERT_NE(it, shapes.end());
        observed[static_cast<std::size_t>(it - shapes.begin())] += 1.0;
    }
    const auto verdict = chi_square_gof(observed, probs);
    EXPECT_TRUE(verdict.pass) << verdict.p_value;
}

TEST(EwensSample, CycleCountAtThetaOne)
{
    constexpr std::size_t samples = 100000;
    std::vector<double> cycles(samples);
    Stream stream({4, 0, Lane::ewens});
    for (auto& c : cycles) {
        c = static_cast<double>(ewens_sample(6, 1.0, stream).cycles());
    }
    const double h6 = 1.0 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4 + 1.0 / 5 + 1.0 / 6;
    EXPECT_TRUE(mean_with_error(cycles).agrees_with(h6));
}

TEST(ProbLongest, Examples)
{
    EXPECT_EQ(prob_longest_at_most(5, 5, 0.3), 1.0);
    EXPECT_EQ(prob_longest_at_most(5, 9, 0.3), 1.0);
    EXPECT_EQ(prob_longest_at_most(5, 0, 0.3), 0.0);
    EXPECT_EQ(prob_longest_at_most(0, 0, 0.3), 1.0);
    for (const double th : {0.2, 0.7, 1.0}) {
        EXPECT_NEAR(prob_longest_at_most(2, 1, th), th / (th + 1.0), 1e-15);
    }
}

TEST(ProbLongest, MatchesEnumeration)
{
    for (const double th : {0.3, 0.8}) {
        for (std::size_t n = 1; n <= 8; ++n) {
            double previous = 0.0;
            for (std::size_t q = 0; q <= n; ++q) {
                double mass = 0.0;
                for_each_partition(n, [&](std::span<const std::size_t> m) {
                    const auto c = CycleCounts::from_span(m);
                    if (c.longest() <= q) {
                        mass += ewens_pmf(c, th);
                    }
                });
                const double p = prob_longest_at_most(n, q, th);
                EXPECT_NEAR(p, mass, 1e-13) << th << " " << n << " " << q;
                EXPECT_GE(p, previous);
                previous = p;
            }
        }
    }
}

TEST(ProbLongest, MatchesSampler)
{
    constexpr std::size_t samples = 100000;
    std::vector<double> hit(samples);
    Stream stream({5, 0, Lane::ewens});
    for (auto& h : hit) {
        h = ewens_sample(20, 0.7, stream).longest() <= 10 ? 1.0 : 0.0;
    }
    EXPECT_TRUE(mean_with_error(hit).agrees_with(prob_longest_at_most(20, 10, 0.7)));
}

TEST(T0nLaplace, Basics)
{
    EXPECT_EQ(t0n_laplace(100, 0.5, 0.0), 1.0);
    double previous = 1.0;
    for (const double m : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double v = t0n_laplace(200, 0.5, m);
        EXPECT_LT(v, previous);
        EXPECT_GT(v, 0.0);
        previous = v;
    }
    EXPECT_NEAR(t0n_laplace_limit(1.0, 1.0), std::exp(-0.7965995992970531), 1e-12);
    EXPECT_NEAR(t0n_laplace(200000, 1.0, 1.0), t0n_laplace_limit(1.0, 1.0), 1e-5);
    EXPECT_NEAR(t0n_laplace(200000, 0.3, 2.0), t0n_laplace_limit(0.3, 2.0), 1e-5);
}

TEST(T0nSampler, MeanMatchesLaplaceSlope)
{
    // E T_{0n} = theta n.
    const T0nSampler sampler(100, 0.6);
    Stream stream({6, 0, Lane::aux});
    std::vector<double> x(50000);
    for (auto& v : x) {
        v = static_cast<double>(sampler(stream));
    }
    EXPECT_TRUE(mean_with_error(x).agrees_with(60.0));
}

TEST(DickmanTable, ThetaOneIsFlatOnUnitInterval)
{
    const auto& t = table(1.0);
    for (const double y : {0.01, 0.3, 0.77, 1.0}) {
        EXPECT_NEAR(t(y), std::exp(-kEulerGamma), 1e-15);
    }
    // Dickman rho at 2 is 1 - log 2, and p_1 = e^{-gamma} rho.
    EXPECT_NEAR(t(2.0), std::exp(-kEulerGamma) * (1.0 - std::log(2.0)), 1e-9);
}

TEST(DickmanTable, RightEndpointOfKingman)
{
    for (const double th : {0.3, 0.6, 0.9, 1.0}) {
        EXPECT_NEAR(kingman_cdf(th, 1.0, table(th)), 1.0, 1e-13);
    }
}

TEST(DickmanTable, LaplaceOracle)
{
    for (const double th : {0.3, 0.6, 0.9}) {
        for (const double m : {0.5, 1.0, 2.0}) {
            EXPECT_NEAR(table(th).laplace_transform(m), t0n_laplace_limit(th, m), 1e-4) << th << " " << m;
        }
    }
}

TEST(DickmanTable, DelayEquationResidual)
{
    for (const double th : {0.3, 0.9}) {
        const auto& t = table(th);
        double worst = 0.0;
        for (std::size_t i = t.per_unit() + 1; i < t.grid().size(); i += 37) {
            worst = std::max(worst, std::abs(t.dde_residual(i)));
        }
        EXPECT_LE(worst, 1e-6) << th;
    }
}

TEST(DickmanTable, TailAndNormalization)
{
    for (const double th : {0.3, 0.6, 1.0}) {
        const auto& t = table(th);
        const auto grid = t.grid();
        const auto density = t.density();
        for (std::size_t j = 2; j <= 10; ++j) {
            double sup = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (grid[i] >= static_cast<double>(j)) {
                    sup = std::max(sup, density[i]);
                }
            }
            EXPECT_LE(sup, std::pow(th, static_cast<double>(j)) / std::tgamma(static_cast<double>(j) + 1.0)) << th << j;
        }
        const double ceil_y = std::ceil(t.y_max());
        const double lower = 1.0 - std::pow(th, ceil_y) / std::tgamma(ceil_y + 1.0);
        const double mass = t.total_mass();
        EXPECT_LE(mass, 1.0 + 1e-9);
        EXPECT_GE(mass, lower - 1e-9);
        EXPECT_TRUE(std::all_of(density.begin(), density.end(), [](double d) { return d >= 0.0; }));
    }
}

TEST(DickmanTable, RejectsBadParameters)
{
    EXPECT_THROW(p_theta_density(0.0, 10.0), DomainError);
    EXPECT_THROW(p_theta_density(1.5, 10.0), DomainError);
    EXPECT_THROW(p_theta_density(0.5, 1.5), DomainError);
    EXPECT_THROW(p_theta_density(0.5, 10.0, 0.01), DomainError);
    EXPECT_THROW(static_cast<void>(table(0.5)(60.0)), CoverageError);
}

TEST(DickmanTable, CsvExport)
{
    const auto path = std::filesystem::temp_directory_path() / "hmc_dickman_test.csv";
    const DickmanTable small(0.5, 2.0, 1e-3);
    small.write_csv(path.string());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "y,p_theta");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) {
        ++rows;
    }
    EXPECT_EQ(rows, 2000U);
    std::filesystem::remove(path);
}

TEST(KingmanCdf, BoundsAndMonotone)
{
    const auto& t = table(0.5);
    EXPECT_EQ(kingman_cdf(0.5, 0.0, t), 0.0);
    EXPECT_EQ(kingman_cdf(0.5, -1.0, t), 0.0);
    EXPECT_EQ(kingman_cdf(0.5, 1.5, t), 1.0);
    double previous = 0.0;
    for (int i = 1; i <= 400; ++i) {
        const double x = 0.025 + static_cast<double>(i) / 400.0 * 0.975;
        const double f = kingman_cdf(0.5, x, t);
        EXPECT_GE(f, previous - 1e-12);
        EXPECT_LE(f, 1.0 + 1e-12);
        previous = f;
    }
    EXPECT_THROW(kingman_cdf(0.5, 0.01, t), CoverageError);
    EXPECT_THROW(kingman_cdf(0.6, 0.5, t), DomainError);
}

TEST(KingmanCdf, LongestCycleOfLargePermutation)
{
    constexpr std::size_t samples = 20000;
    const auto& t = table(0.5);
    std::vector<double> x(samples);
    Stream stream({7, 0, Lane::ewens});
    for (auto& v : x) {
        v = static_cast<double>(ewens_sample(2000, 0.5, stream).longest()) / 2000.0;
    }
    std::vector<double> grid(50);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = static_cast<double>(i + 1) / 50.0;
    }
    EXPECT_LE(sup_distance_on_grid(x, grid, [&](double v) { return kingman_cdf(0.5, v, t); }), 0.02);
}

TEST(CDelta, ClosedForms)
{
    EXPECT_EQ(c_delta_integral(0.5, 1.0, table(0.5)), 0.0);
    EXPECT_NEAR(c_delta_closed(0.5, 1.0, table(0.5)), 0.0, 1e-13);
    EXPECT_NEAR(c_delta_closed(1.0, 0.5, table(1.0)), std::log(2.0), 1e-9);
    EXPECT_NEAR(c_delta_integral(1.0, 0.5, table(1.0)), std::log(2.0), 1e-7);
}

TEST(CDelta, IntegralMatchesClosedForm)
{
    for (const double th : {0.3, 0.6, 0.9}) {
        for (const double delta : {0.1, 0.2, 0.5}) {
            const double closed = c_delta_closed(th, delta, table(th));
            const double integral = c_delta_integral(th, delta, table(th));
            EXPECT_NEAR(integral, closed, 1e-6) << th << " " << delta;
            EXPECT_GE(integral, -1e-9);
            EXPECT_LE(integral, 1.0 + 1e-9);
        }
    }
}

TEST(CDelta, TendsToOne)
{
    for (const double th : {0.3, 0.6}) {
        double gap = 1.0;
        for (const double delta : {0.8, 0.6, 0.4, 0.2, 0.1, 0.05}) {
            const double g = std::abs(1.0 - c_delta_integral(th, delta, table(th)));
            EXPECT_LE(g, gap + 1e-10) << th << " " << delta;
            gap = g;
        }
        EXPECT_LT(gap, 1e-6);
    }
}

TEST(AConstant, SingleBlock)
{
    // For delta = 0.9 the argument of F stays above 1, so A = (1 - delta)^theta / delta.
    for (const double th : {0.3, 0.7, 1.0}) {
        EXPECT_EQ(limiting_block_count(0.9, 0.5), 1U);
        EXPECT_NEAR(a_constant(th, 0.9, 0.5, table(th)), std::pow(0.1, th) / 0.9, 1e-10) << th;
    }
}

TEST(AConstant, ApproachesCDelta)
{
    for (const double th : {0.3, 0.6}) {
        const double c = c_delta_closed(th, 0.1, table(th));
        double previous = 1e9;
        for (const double eps : {0.1, 0.05, 0.025}) {
            const double gap = std::abs(a_constant(th, 0.1, eps, table(th)) - c);
            EXPECT_LT(gap, previous) << th << " " << eps;
            previous = gap;
        }
    }
}

TEST(AConstant, BlockCount)
{
    EXPECT_EQ(limiting_block_count(0.1, 0.2), 5U);
    EXPECT_EQ(limiting_block_count(0.5, 0.5), 1U);
    EXPECT_EQ(limiting_block_count(0.1, 0.1), 9U);
    EXPECT_THROW(a_constant(0.5, 1.0, 0.1, table(0.5)), DomainError);
}

}  // namespace
}  // namespace hmc
