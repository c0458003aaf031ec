// SPDX-License-Identifier: Apache-2.0
//
// Circular beta-ensemble secular coefficients from the Verblunsky
// (Killip-Nenciu) representation, plus a direct rejection sampler for tiny N
// that serves as an independent reference.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hmc/common.hpp"
#include "hmc/parallel.hpp"
#include "hmc/rng.hpp"

namespace hmc {

/// alpha_0..alpha_{N-1}; |alpha_k| < 1 except the last, which is unimodular.
struct VerblunskyCoeffs {
    std::size_t N = 0;
    std::vector<Complex> alpha;
};

/// Coefficients of chi_N(z) = prod_j (1 - z e^{-i theta_j}).
struct SecularCoefficients {
    std::size_t N = 0;
    std::vector<Complex> values;  // c_0..c_N
};

namespace detail {

inline void require_cbe(std::size_t N, double beta)
{
    require(N >= 1, "cbe: N must be >= 1");
    require(beta > 0.0, "cbe: beta must be > 0");
}

}  // namespace detail

/// |alpha_k|^2 ~ Beta(1, beta (N - k - 1) / 2) with uniform phase for k <= N - 2.
inline VerblunskyCoeffs sample_verblunsky(std::size_t N, double beta, Stream& stream)
{
    detail::require_cbe(N, beta);
    VerblunskyCoeffs out{N, std::vector<Complex>(N)};
    for (std::size_t k = 0; k + 1 < N; ++k) {
        const double b = 0.5 * beta * static_cast<double>(N - k - 1);
        const double modulus = std::sqrt(beta_variate(stream, 1.0, b));
        out.alpha[k] = modulus * stream.unit_phase();
    }
    out.alpha[N - 1] = stream.unit_phase();
    return out;
}

inline VerblunskyCoeffs sample_verblunsky(std::size_t N, double beta, StreamKey key)
{
    Stream stream(key);
    return sample_verblunsky(N, beta, stream);
}

/// Szego recursion
///   Phi_{k+1} = z Phi_k - conj(alpha_k) Phi*_k,   Phi*_{k+1} = Phi*_k - alpha_k z Phi_k,
/// returning the coefficients of Phi*_N.
inline SecularCoefficients secular_from_verblunsky(const VerblunskyCoeffs& v)
{
    const std::size_t N = v.N;
    if (v.alpha.size() != N || N == 0) {
        throw DomainError("secular_from_verblunsky: need N >= 1 coefficients");
    }
    std::vector<Complex> phi(N + 1, Complex{});
    std::vector<Complex> star(N + 1, Complex{});
    std::vector<Complex> next_phi(N + 1, Complex{});
    phi[0] = 1.0;
    star[0] = 1.0;
    for (std::size_t k = 0; k < N; ++k) {
        const Complex a = v.alpha[k];
        const Complex ac = std::conj(a);
        // Degrees: phi_k and star_k have k + 1 coefficients.
        next_phi[0] = -ac * star[0];
        for (std::size_t j = 1; j <= k + 1; ++j) {
            const Complex shifted = phi[j - 1];
            const Complex s = j <= k ? star[j] : Complex{};
            next_phi[j] = shifted - ac * s;
        }
        for (std::size_t j = k + 1; j >= 1; --j) {
            const Complex s = j <= k ? star[j] : Complex{};
            star[j] = s - a * phi[j - 1];
        }
        for (std::size_t j = 0; j <= k + 1; ++j) {
            phi[j] = next_phi[j];
        }
    }
    SecularCoefficients out{N, std::move(star)};
    if (std::abs(out.values[0] - 1.0) > 1e-12 || std::abs(std::abs(out.values[N]) - 1.0) > 1e-8) {
        throw NumericalError("secular_from_verblunsky: output violates c_0 = 1 or |c_N| = 1");
    }
    return out;
}

/// Expands prod_j (1 - z e^{-i angle_j}).
inline SecularCoefficients secular_from_angles(const std::vector<double>& angles)
{
    const std::size_t N = angles.size();
    std::vector<Complex> c(N + 1, Complex{});
    c[0] = 1.0;
    for (std::size_t j = 0; j < N; ++j) {
        const Complex root = std::polar(1.0, -angles[j]);
        for (std::size_t d = j + 1; d >= 1; --d) {
            c[d] -= root * c[d - 1];
        }
    }
    return {N, std::move(c)};
}

/// Exact draw from the density prod_{k<j} |e^{i t_k} - e^{i t_j}|^beta by
/// rejection from uniform angles. The bound uses that the product of chord
/// lengths over N points is at most N^{N/2}, attained by roots of unity.
inline std::vector<double> cbe_rejection_sample_smallN(std::size_t N, double beta, Stream& stream)
{
    if (N > 4) {
        throw SizeError("cbe_rejection_sample_smallN: N must be <= 4");
    }
    detail::require_cbe(N, beta);
    const double log_bound = 0.5 * static_cast<double>(N) * std::log(static_cast<double>(N)) * beta;
    std::vector<double> angles(N);
    for (;;) {
        for (auto& a : angles) {
            a = 2.0 * kPi * stream.uniform();
        }
        double log_density = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            for (std::size_t j = k + 1; j < N; ++j) {
                log_density += beta * std::log(std::abs(std::polar(1.0, angles[k]) - std::polar(1.0, angles[j])));
            }
        }
        if (std::log(stream.uniform()) <= log_density - log_bound) {
            return angles;
        }
    }
}

inline std::vector<double> cbe_rejection_sample_smallN(std::size_t N, double beta, StreamKey key)
{
    Stream stream(key);
    return cbe_rejection_sample_smallN(N, beta, stream);
}

/// Secular coefficients c_0..c_{n_max} for `samples` replicas; replica r uses
/// key.with_replica(key.replica + r).
inline std::vector<std::vector<Complex>> cbe_secular_ensemble(std::size_t N, double beta, std::size_t n_max,
                                                              std::size_t samples, StreamKey key,
                                                              unsigned threads = 1)
{
    detail::require_cbe(N, beta);
    detail::require(n_max <= N, "cbe_secular_ensemble: n_max must be <= N");
    return map_replicas(samples, threads, [&](std::size_t r) {
        const auto v = sample_verblunsky(N, beta, key.with_replica(key.replica + r));
        auto c = secular_from_verblunsky(v).values;
        c.resize(n_max + 1);
        return c;
    });
}

}  // namespace hmc
