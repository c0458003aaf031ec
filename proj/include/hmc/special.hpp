// SPDX-License-Identifier: Apache-2.0
//
// Gamma-function helpers shared by the combinatorial and moment modules.

#pragma once

#include <cmath>
#include <cstddef>

#include <boost/math/special_functions/gamma.hpp>

#include "hmc/common.hpp"

namespace hmc {

/// binom(n + theta - 1, theta - 1) = Gamma(n + theta) / (Gamma(theta) n!).
///
/// This is both the Ewens normalizer and E|c_n|^2. Evaluated as a gamma ratio
/// so that non-integer theta and large n neither overflow nor lose digits.
/// tgamma_delta_ratio stays near 1 ulp here; tgamma_ratio drifts to ~1e-12
/// relative by n = 4096.
inline double rising_binomial(std::size_t n, double theta)
{
    if (n == 0) {
        return 1.0;
    }
    if (theta == 0.0) {
        return 0.0;
    }
    const auto nd = static_cast<double>(n);
    return boost::math::tgamma_delta_ratio(nd + theta, 1.0 - theta) / boost::math::tgamma(theta);
}

inline double log_rising_binomial(std::size_t n, double theta)
{
    if (n == 0) {
        return 0.0;
    }
    const auto nd = static_cast<double>(n);
    return std::lgamma(nd + theta) - std::lgamma(theta) - std::lgamma(nd + 1.0);
}

}  // namespace hmc
