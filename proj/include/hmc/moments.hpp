// SPDX-License-Identifier: Apache-2.0
//
// Closed-form moments: the deterministic side of every statistical check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "hmc/common.hpp"
#include "hmc/ewens.hpp"
#include "hmc/special.hpp"

namespace hmc {

/// E|c_n|^2 = binom(n + theta - 1, theta - 1).
inline double second_moment(std::size_t n, double theta)
{
    detail::require(theta >= 0.0 && theta <= 1.0, "second_moment: theta must lie in [0, 1]");
    return rising_binomial(n, theta);
}

/// E(c_{n-q,q1} conj(c_{n-q,q2})) = binom(n-q+theta-1, theta-1) P(L^{(n-q)} <= q1 ^ q2).
inline double truncated_covariance(std::size_t n, std::size_t q, std::size_t q1, std::size_t q2, double theta)
{
    detail::require(q <= n, "truncated_covariance: need 0 <= q <= n");
    detail::require(theta > 0.0 && theta <= 1.0, "truncated_covariance: theta must lie in (0, 1]");
    const std::size_t m = n - q;
    return second_moment(m, theta) * prob_longest_at_most(m, std::min(q1, q2), theta);
}

/// E M_theta^p = Gamma(1 - p theta) / Gamma(1 - theta)^p.
inline double gmc_mass_moment(double p, double theta)
{
    detail::require(p > 0.0, "gmc_mass_moment: p must be > 0");
    detail::require(theta >= 0.0 && theta < 1.0, "gmc_mass_moment: theta must lie in [0, 1)");
    if (p * theta >= 1.0) {
        throw MomentBlowupError("gmc_mass_moment: moment of order " + std::to_string(p) +
                                " does not exist for theta = " + std::to_string(theta));
    }
    return std::exp(std::lgamma(1.0 - p * theta) - p * std::lgamma(1.0 - theta));
}

/// E|sqrt(M_theta) Z|^{2p} = p! E M_theta^p for standard complex normal Z.
inline double limit_abs_moment(unsigned p, double theta)
{
    detail::require(p >= 1, "limit_abs_moment: p must be >= 1");
    return std::tgamma(static_cast<double>(p) + 1.0) * gmc_mass_moment(static_cast<double>(p), theta);
}

}  // namespace hmc
