// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random streams.
//
// Every variate is a pure function of (seed, lane, replica, position), so
// replicas can be generated in any order or on any thread and still produce
// identical results. The block cipher is Philox4x32-10 (Salmon et al.,
// "Parallel random numbers: as easy as 1, 2, 3", SC'11).

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hmc/common.hpp"

namespace hmc {

/// Purpose tag separating the random sources of different subsystems.
enum class Lane : std::uint8_t { hmc = 0, ewens = 1, cbe = 2, gmc = 3, aux = 4 };

inline const char* to_string(Lane lane)
{
    switch (lane) {
        case Lane::hmc: return "hmc";
        case Lane::ewens: return "ewens";
        case Lane::cbe: return "cbe";
        case Lane::gmc: return "gmc";
        case Lane::aux: return "aux";
    }
    return "?";
}

struct StreamKey {
    std::uint64_t seed = 0;
    std::uint64_t replica = 0;
    Lane lane = Lane::hmc;

    [[nodiscard]] StreamKey with_replica(std::uint64_t r) const { return {seed, r, lane}; }
    [[nodiscard]] StreamKey with_lane(Lane l) const { return {seed, replica, l}; }

    friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

namespace detail {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

}  // namespace detail

/// Philox4x32 with 10 rounds: a keyed bijection on 128-bit counters.
class Philox4x32 {
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter encrypt(Counter ctr, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kW0;
                key[1] += kW1;
            }
            const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32U);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32U);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

  private:
    static constexpr std::uint32_t kM0 = 0xD2511F53U;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57U;
    static constexpr std::uint32_t kW0 = 0x9E3779B9U;
    static constexpr std::uint32_t kW1 = 0xBB67AE85U;
};

/// Sequential view onto one keyed counter stream.
///
/// Satisfies UniformRandomBitGenerator, so std distributions can draw from it.
/// Copying a Stream copies its position; the copy then replays the same
/// variates.
class Stream {
  public:
    using result_type = std::uint64_t;

    explicit Stream(StreamKey key) : key_(key)
    {
        const std::uint64_t k =
            detail::splitmix64(key.seed ^ detail::splitmix64(0xA5A5'0000ULL + static_cast<std::uint64_t>(key.lane)));
        cipher_key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32U)};
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        if (slot_ == 2) {
            refill();
        }
        return buffer_[slot_++];
    }

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() { return (static_cast<double>((*this)() >> 11U) + 0.5) * 0x1.0p-53; }

    /// Standard complex normal: E N = 0, E N^2 = 0, E|N|^2 = 1.
    Complex complex_normal()
    {
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-std::log(u1));
        const double angle = 2.0 * kPi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    /// Standard real normal, the two halves of one Box-Muller pair.
    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const Complex z = complex_normal();
        spare_ = std::sqrt(2.0) * z.imag();
        has_spare_ = true;
        return std::sqrt(2.0) * z.real();
    }

    /// Uniform point on the unit circle.
    Complex unit_phase()
    {
        const double angle = 2.0 * kPi * uniform();
        return {std::cos(angle), std::sin(angle)};
    }

    [[nodiscard]] const StreamKey& key() const noexcept { return key_; }
    [[nodiscard]] std::uint64_t blocks_consumed() const noexcept { return block_; }

  private:
    void refill()
    {
        const Philox4x32::Counter ctr = {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32U),
                                         static_cast<std::uint32_t>(key_.replica),
                                         static_cast<std::uint32_t>(key_.replica >> 32U)};
        const auto out = Philox4x32::encrypt(ctr, cipher_key_);
        buffer_[0] = (std::uint64_t{out[1]} << 32U) | out[0];
        buffer_[1] = (std::uint64_t{out[3]} << 32U) | out[2];
        ++block_;
        slot_ = 0;
    }

    StreamKey key_;
    Philox4x32::Key cipher_key_{};
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int slot_ = 2;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Finite prefix N_1..N_k of i.i.d. standard complex normals.
///
/// values[j] holds N_{j+1}; use at() for 1-based access.
struct GaussianDraw {
    StreamKey key{};
    std::vector<Complex> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] Complex at(std::size_t k) const { return values.at(k - 1); }
    [[nodiscard]] std::span<const Complex> span() const noexcept { return values; }
};

inline std::vector<Complex> complex_normal_stream(StreamKey key, std::size_t count)
{
    detail::require(count >= 1, "complex_normal_stream: count must be >= 1");
    Stream stream(key);
    std::vector<Complex> out(count);
    for (auto& z : out) {
        z = stream.complex_normal();
    }
    return out;
}

inline GaussianDraw make_gaussian_draw(StreamKey key, std::size_t count)
{
    return {key, complex_normal_stream(key, count)};
}

/// Beta(a, b) via the gamma-ratio construction.
inline double beta_variate(Stream& stream, double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("beta_variate: shape parameters must be positive");
    }
    for (;;) {
        const double x = std::gamma_distribution<double>(a, 1.0)(stream);
        const double y = std::gamma_distribution<double>(b, 1.0)(stream);
        const double v = x / (x + y);
        if (v > 0.0 && v < 1.0) {
            return v;
        }
    }
}

inline double beta_variate(StreamKey key, double a, double b)
{
    Stream stream(key);
    return beta_variate(stream, a, b);
}

/// Parses a seed given as decimal or 0x-prefixed hexadecimal.
inline std::uint64_t parse_seed(const std::string& text)
{
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
        if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
            value = std::stoull(text.substr(2), &used, 16);
            used += 2;
        } else {
            value = std::stoull(text, &used, 10);
        }
    } catch (const std::exception&) {
        throw DomainError("invalid seed: " + text);
    }
    if (used != text.size() || text.empty() || text[0] == '-') {
        throw DomainError("invalid seed: " + text);
    }
    return value;
}

}  // namespace hmc
