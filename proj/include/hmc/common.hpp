// SPDX-License-Identifier: Apache-2.0
//
// Shared vocabulary types and error classes.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace hmc {

using Complex = std::complex<double>;

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Parameter outside the domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Input sequence shorter than the operation needs.
class LengthError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Problem size beyond what an exhaustive method supports.
class SizeError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Lookup outside the tabulated range of a DickmanTable.
class CoverageError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// A numerical routine failed to meet its own accuracy contract.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested moment does not exist (p * theta >= 1).
class MomentBlowupError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Inverse temperature theta = 2 / beta, validated once at construction.
///
/// theta = 0 is accepted as the degenerate case (the series collapses to 1);
/// operations that need theta > 0 check for it themselves.
class ThetaParams {
  public:
    explicit ThetaParams(double theta) : theta_(theta)
    {
        if (!(theta >= 0.0 && theta <= 1.0)) {
            throw DomainError("theta must lie in [0, 1], got " + std::to_string(theta));
        }
    }

    static ThetaParams from_beta(double beta)
    {
        if (!(beta >= 2.0)) {
            throw DomainError("beta must be >= 2 so that theta = 2/beta <= 1");
        }
        return ThetaParams(2.0 / beta);
    }

    [[nodiscard]] double value() const noexcept { return theta_; }
    [[nodiscard]] double beta() const noexcept { return 2.0 / theta_; }
    [[nodiscard]] bool degenerate() const noexcept { return theta_ == 0.0; }

  private:
    double theta_;
};

namespace detail {

inline void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw DomainError(what);
    }
}

}  // namespace detail
}  // namespace hmc
