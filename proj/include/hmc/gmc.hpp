// SPDX-License-Identifier: Apache-2.0
//
// Gaussian multiplicative chaos on the circle, regularized by truncating the
// field at k modes and integrating on a J-point grid.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "hmc/common.hpp"
#include "hmc/rng.hpp"
#include "hmc/series.hpp"

namespace hmc {

/// G_k on the grid theta_j = 2 pi j / J.
struct FieldGrid {
    std::size_t k = 0;
    std::size_t J = 0;
    std::vector<double> values;
};

/// H_{a,b} = (1/J) sum_j e^{i theta_j (a-b)} w_j for 0 <= a, b <= ell.
struct ToeplitzMass {
    std::size_t ell = 0;
    Eigen::MatrixXcd H;
};

namespace detail {

inline void require_resolution(std::size_t k, std::size_t J)
{
    if (J < 4 * k || J == 0) {
        throw DomainError("gmc grid: need J >= 4k (got k = " + std::to_string(k) + ", J = " + std::to_string(J) + ")");
    }
}

/// sum_{l=1}^k (r e^{i theta_j})^l N_l / sqrt(l) at every grid point, via one
/// inverse FFT of length J.
inline std::vector<Complex> holomorphic_field(const GaussianDraw& draw, std::size_t k, std::size_t J, double r)
{
    require_resolution(k, J);
    require_length(draw, k, "holomorphic_field");
    std::vector<Complex> spectrum(J, Complex{});
    double power = 1.0;
    for (std::size_t l = 1; l <= k; ++l) {
        power *= r;
        spectrum[l] = draw.at(l) * (power / std::sqrt(static_cast<double>(l)));
    }
    std::vector<Complex> field;
    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::Unscaled);
    fft.inv(field, spectrum);
    return field;
}

/// exp(sqrt(theta) G_k(r e^{i theta_j}) - theta V_k(r) / 2) on the grid.
inline std::vector<double> chaos_weights(const GaussianDraw& draw, double theta, std::size_t k, std::size_t J,
                                         double r)
{
    const auto field = holomorphic_field(draw, k, J, r);
    const double root = std::sqrt(theta);
    const double shift = 0.5 * theta * variance_vk(k, r);
    std::vector<double> w(J);
    for (std::size_t j = 0; j < J; ++j) {
        w[j] = std::exp(root * 2.0 * field[j].real() - shift);
    }
    return w;
}

inline Complex grid_point(std::size_t j, std::size_t J)
{
    return std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / static_cast<double>(J));
}

}  // namespace detail

inline FieldGrid field_on_grid(const GaussianDraw& draw, std::size_t k, std::size_t J, double r = 1.0)
{
    const auto field = detail::holomorphic_field(draw, k, J, r);
    FieldGrid out{k, J, std::vector<double>(J)};
    for (std::size_t j = 0; j < J; ++j) {
        out.values[j] = 2.0 * field[j].real();
    }
    return out;
}

/// (1/J) sum_j |p(e^{i theta_j})|^2 exp(sqrt(theta) G_k(r e^{i theta_j}) - theta V_k(r) / 2).
inline double gmc_mass_grid(const GaussianDraw& draw, ThetaParams theta, std::size_t k, std::size_t J,
                            const TestPolynomial& p = {}, double r = 1.0)
{
    const auto w = detail::chaos_weights(draw, theta.value(), k, J, r);
    double acc = 0.0;
    const bool constant = p.degree() == 0;
    const double d0 = std::norm(p[0]);
    for (std::size_t j = 0; j < J; ++j) {
        acc += (constant ? d0 : std::norm(p(detail::grid_point(j, J)))) * w[j];
    }
    return acc / static_cast<double>(J);
}

/// Grid quadrature of the Parseval integral behind the mass statistic:
/// (1/J) sum_j |sum_s d_s w^{-s} (f(w) - sum_{m<s} c_m w^m)|^2 e^{-theta V_k(r)/2},
/// with f = exp(sqrt(theta) G^C_k) and w = r e^{i theta_j}. Equals
/// mass_statistic up to aliasing and the tail cut.
inline double parseval_mass_grid(const GaussianDraw& draw, ThetaParams theta, std::size_t k, std::size_t J, double r,
                                 const TestPolynomial& p = {})
{
    detail::require(r > 0.0 && r <= 1.0, "parseval_mass_grid: r must lie in (0, 1]");
    const double th = theta.value();
    const auto field = detail::holomorphic_field(draw, k, J, r);
    const std::size_t ell = p.degree();
    const auto low = detail::exp_series(draw.span().first(std::min(k, ell)), th, ell);
    const double root = std::sqrt(th);
    const double shift = std::exp(-0.5 * th * variance_vk(k, r));
    double acc = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
        const Complex w = r * detail::grid_point(j, J);
        const Complex f = std::exp(root * field[j]);
        Complex total{0.0, 0.0};
        Complex partial{0.0, 0.0};  // sum_{m<s} c_m w^m
        Complex wpow{1.0, 0.0};     // w^s
        for (std::size_t s = 0; s <= ell; ++s) {
            total += p[s] * (f - partial) / wpow;
            partial += low[s] * wpow;
            wpow *= w;
        }
        acc += std::norm(total);
    }
    return acc / static_cast<double>(J) * shift;
}

inline ToeplitzMass toeplitz_mass(const GaussianDraw& draw, ThetaParams theta, std::size_t k, std::size_t J,
                                  std::size_t ell)
{
    const auto w = detail::chaos_weights(draw, theta.value(), k, J, 1.0);
    std::vector<Complex> moment(ell + 1, Complex{});
    for (std::size_t j = 0; j < J; ++j) {
        const Complex z = detail::grid_point(j, J);
        Complex zp{1.0, 0.0};
        for (std::size_t d = 0; d <= ell; ++d) {
            moment[d] += zp * w[j];
            zp *= z;
        }
    }
    ToeplitzMass out{ell, Eigen::MatrixXcd(ell + 1, ell + 1)};
    const double inv = 1.0 / static_cast<double>(J);
    for (std::size_t a = 0; a <= ell; ++a) {
        for (std::size_t b = 0; b <= ell; ++b) {
            const Complex m = a >= b ? moment[a - b] : std::conj(moment[b - a]);
            out.H(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = m * inv;
        }
    }
    // Diagonal is real by construction; scrub the rounding residue.
    for (std::size_t a = 0; a <= ell; ++a) {
        auto& d = out.H(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a));
        d = Complex{d.real(), 0.0};
    }
    return out;
}

struct PsdRoot {
    Eigen::MatrixXcd root;
    double clamped = 0.0;  // largest |lambda| of a negative eigenvalue set to zero
};

/// Principal square root of a Hermitian PSD matrix by eigendecomposition.
inline PsdRoot sqrt_psd(const Eigen::MatrixXcd& H)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("sqrt_psd: Hermitian eigendecomposition failed");
    }
    Eigen::VectorXd lambda = solver.eigenvalues();
    double clamped = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) < 0.0) {
            clamped = std::max(clamped, -lambda(i));
            lambda(i) = 0.0;
        }
    }
    const Eigen::MatrixXcd& V = solver.eigenvectors();
    return {V * lambda.cwiseSqrt().asDiagonal() * V.adjoint(), clamped};
}

struct LimitLawSample {
    std::vector<Complex> values;
    double clamped = 0.0;
};

/// sqrt(H) (Z_0..Z_ell): H from the gmc lane of `key`, Z from the aux lane.
inline LimitLawSample limit_law_sample(ThetaParams theta, std::size_t ell, std::size_t k, std::size_t J,
                                       StreamKey key)
{
    const auto draw = make_gaussian_draw(key.with_lane(Lane::gmc), std::max<std::size_t>(k, 1));
    const auto tm = toeplitz_mass(draw, theta, k, J, ell);
    const auto root = sqrt_psd(tm.H);
    Stream z_stream(key.with_lane(Lane::aux));
    Eigen::VectorXcd z(static_cast<Eigen::Index>(ell + 1));
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        z(i) = z_stream.complex_normal();
    }
    const Eigen::VectorXcd out = root.root * z;
    return {{out.data(), out.data() + out.size()}, root.clamped};
}

}  // namespace hmc
