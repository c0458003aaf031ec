// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "hmc/rng.hpp"
#include "hmc/stats.hpp"

namespace hmc {
namespace {

using Counter = Philox4x32::Counter;

// Known-answer vectors from the Random123 distribution (kat_vectors, philox4x32_10).
TEST(Philox, KnownAnswers)
{
    EXPECT_EQ(Philox4x32::encrypt({0, 0, 0, 0}, {0, 0}), (Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::encrypt({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::encrypt({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(ComplexNormal, Moments)
{
    constexpr std::size_t n = 1'000'000;
    const auto z = complex_normal_stream({1, 0, Lane::hmc}, n);
    std::vector<double> abs2(n);
    std::vector<double> sq_re(n);
    std::vector<double> sq_im(n);
    std::vector<double> re(n);
    for (std::size_t i = 0; i < n; ++i) {
        abs2[i] = std::norm(z[i]);
        const Complex s = z[i] * z[i];
        sq_re[i] = s.real();
        sq_im[i] = s.imag();
        re[i] = z[i].real();
    }
    EXPECT_TRUE(mean_with_error(abs2).agrees_with(1.0));
    EXPECT_TRUE(mean_with_error(sq_re).agrees_with(0.0));
    EXPECT_TRUE(mean_with_error(sq_im).agrees_with(0.0));
    EXPECT_TRUE(mean_with_error(re).agrees_with(0.0));
    // Real part has variance 1/2.
    EXPECT_TRUE(empirical_moment(re, 2).agrees_with(0.5));
}

TEST(ComplexNormal, SameKeyReproduces)
{
    const StreamKey key{42, 7, Lane::gmc};
    const auto a = complex_normal_stream(key, 1000);
    const auto b = complex_normal_stream(key, 1000);
    EXPECT_EQ(a, b);
}

TEST(ComplexNormal, PrefixStable)
{
    const StreamKey key{42, 7, Lane::gmc};
    const auto shorter = complex_normal_stream(key, 10);
    const auto longer = complex_normal_stream(key, 100);
    EXPECT_TRUE(std::equal(shorter.begin(), shorter.end(), longer.begin()));
}

TEST(ComplexNormal, RejectsZeroCount) { EXPECT_THROW(complex_normal_stream({}, 0), DomainError); }

TEST(Stream, DistinctKeysDiffer)
{
    const StreamKey base{5, 0, Lane::hmc};
    const auto a = complex_normal_stream(base, 8);
    EXPECT_NE(a, complex_normal_stream(base.with_replica(1), 8));
    EXPECT_NE(a, complex_normal_stream(base.with_lane(Lane::ewens), 8));
    EXPECT_NE(a, complex_normal_stream({6, 0, Lane::hmc}, 8));
}

TEST(Stream, LanesUncorrelated)
{
    constexpr std::size_t n = 200'000;
    const auto a = complex_normal_stream({9, 0, Lane::hmc}, n);
    const auto b = complex_normal_stream({9, 0, Lane::aux}, n);
    std::vector<double> cross_re(n);
    std::vector<double> cross_im(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex c = a[i] * std::conj(b[i]);
        cross_re[i] = c.real();
        cross_im[i] = c.imag();
    }
    EXPECT_TRUE(mean_with_error(cross_re).agrees_with(0.0));
    EXPECT_TRUE(mean_with_error(cross_im).agrees_with(0.0));
}

TEST(Stream, ReplicasUncorrelated)
{
    constexpr std::size_t n = 100'000;
    std::vector<double> cross(n);
    for (std::size_t r = 0; r < n; ++r) {
        Stream s0({3, r, Lane::hmc});
        Stream s1({3, r + 1, Lane::hmc});
        cross[r] = (s0.uniform() - 0.5) * (s1.uniform() - 0.5);
    }
    EXPECT_TRUE(mean_with_error(cross).agrees_with(0.0));
}

TEST(Stream, UniformOpenInterval)
{
    Stream s({11, 0, Lane::aux});
    std::vector<double> u(200'000);
    for (auto& x : u) {
        x = s.uniform();
        ASSERT_GT(x, 0.0);
        ASSERT_LT(x, 1.0);
    }
    EXPECT_TRUE(mean_with_error(u).agrees_with(0.5));
}

TEST(BetaVariate, UniformCase)
{
    Stream s({1, 0, Lane::cbe});
    std::vector<double> x(1'000'000);
    for (auto& v : x) {
        v = beta_variate(s, 1.0, 1.0);
        ASSERT_GT(v, 0.0);
        ASSERT_LT(v, 1.0);
    }
    EXPECT_TRUE(mean_with_error(x).agrees_with(0.5));
    EXPECT_TRUE(empirical_moment(x, 2).agrees_with(1.0 / 3.0));
}

TEST(BetaVariate, Mean)
{
    Stream s({2, 0, Lane::cbe});
    std::vector<double> x(1'000'000);
    for (auto& v : x) {
        v = beta_variate(s, 2.0, 3.0);
    }
    EXPECT_TRUE(mean_with_error(x).agrees_with(0.4));
    // Var = ab / ((a+b)^2 (a+b+1)) = 0.04.
    EXPECT_TRUE(empirical_moment(x, 2).agrees_with(0.04 + 0.16));
}

TEST(BetaVariate, SmallShape)
{
    Stream s({3, 0, Lane::cbe});
    std::vector<double> x(200'000);
    for (auto& v : x) {
        v = beta_variate(s, 1.0, 0.3);
    }
    EXPECT_TRUE(mean_with_error(x).agrees_with(1.0 / 1.3));
}

TEST(BetaVariate, Deterministic)
{
    const StreamKey key{77, 3, Lane::cbe};
    EXPECT_EQ(beta_variate(key, 2.0, 5.0), beta_variate(key, 2.0, 5.0));
}

TEST(BetaVariate, RejectsBadShape)
{
    EXPECT_THROW(beta_variate(StreamKey{}, 0.0, 1.0), DomainError);
    EXPECT_THROW(beta_variate(StreamKey{}, 1.0, -2.0), DomainError);
}

TEST(ParseSeed, Formats)
{
    EXPECT_EQ(parse_seed("0"), 0U);
    EXPECT_EQ(parse_seed("20240611"), 20240611U);
    EXPECT_EQ(parse_seed("0xff"), 255U);
    EXPECT_EQ(parse_seed("18446744073709551615"), UINT64_MAX);
    EXPECT_THROW(parse_seed(""), DomainError);
    EXPECT_THROW(parse_seed("-1"), DomainError);
    EXPECT_THROW(parse_seed("12abc"), DomainError);
    EXPECT_THROW(parse_seed("18446744073709551616"), DomainError);
}

}  // namespace
}  // namespace hmc
