// SPDX-License-Identifier: Apache-2.0
//
// Fourier coefficients of the holomorphic multiplicative chaos and the
// martingale objects built from them.
//
// With G(z) = sum_k z^k N_k / sqrt(k), the coefficients of exp(sqrt(theta) G)
// satisfy m c_m = sum_{k=1}^{m} sqrt(theta k) N_k c_{m-k}, c_0 = 1, obtained by
// differentiating the generating function. Truncating at level q means
// dropping every N_k with k > q.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hmc/common.hpp"
#include "hmc/partitions.hpp"
#include "hmc/rng.hpp"
#include "hmc/special.hpp"

namespace hmc {

/// p(z) = sum_s d_s z^s with a declared degree (trailing zeros allowed).
class TestPolynomial {
  public:
    TestPolynomial() : coeffs_{Complex{1.0, 0.0}} {}
    explicit TestPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) {
            throw DomainError("TestPolynomial needs at least the constant coefficient");
        }
    }

    static TestPolynomial constant(Complex d0) { return TestPolynomial({d0}); }

    [[nodiscard]] std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    [[nodiscard]] std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] Complex operator[](std::size_t s) const { return coeffs_.at(s); }

    [[nodiscard]] Complex operator()(Complex z) const
    {
        Complex acc{0.0, 0.0};
        for (std::size_t s = coeffs_.size(); s-- > 0;) {
            acc = acc * z + coeffs_[s];
        }
        return acc;
    }

    /// sum_s |d_s|^2, the mean of |p|^2 over the circle.
    [[nodiscard]] double l2_norm_squared() const
    {
        double acc = 0.0;
        for (const auto& d : coeffs_) {
            acc += std::norm(d);
        }
        return acc;
    }

  private:
    std::vector<Complex> coeffs_;
};

struct CoefficientSeries {
    ThetaParams theta{0.0};
    std::size_t upto = 0;
    std::vector<Complex> values;          // c_0 .. c_upto
    std::optional<std::size_t> truncation;  // absent: untruncated

    [[nodiscard]] Complex operator[](std::size_t m) const { return values.at(m); }
};

namespace detail {

/// Coefficients c_0..c_upto of exp(sqrt(theta) sum_{k<=normals.size()} z^k N_k / sqrt(k)).
///
/// The inner product is spelled out on real and imaginary parts: std::complex
/// multiplication carries NaN-recovery branches that dominate an O(n^2) loop.
inline std::vector<Complex> exp_series(std::span<const Complex> normals, double theta, std::size_t upto)
{
    const std::size_t q = normals.size();
    std::vector<double> wr(q + 1, 0.0);
    std::vector<double> wi(q + 1, 0.0);
    for (std::size_t k = 1; k <= q; ++k) {
        const double scale = std::sqrt(theta * static_cast<double>(k));
        wr[k] = scale * normals[k - 1].real();
        wi[k] = scale * normals[k - 1].imag();
    }
    std::vector<double> cr(upto + 1, 0.0);
    std::vector<double> ci(upto + 1, 0.0);
    cr[0] = 1.0;
    for (std::size_t m = 1; m <= upto; ++m) {
        const std::size_t kmax = std::min(m, q);
        double sr = 0.0;
        double si = 0.0;
        for (std::size_t k = 1; k <= kmax; ++k) {
            const double ar = cr[m - k];
            const double ai = ci[m - k];
            sr += wr[k] * ar - wi[k] * ai;
            si += wr[k] * ai + wi[k] * ar;
        }
        const double inv = 1.0 / static_cast<double>(m);
        cr[m] = sr * inv;
        ci[m] = si * inv;
    }
    std::vector<Complex> out(upto + 1);
    for (std::size_t m = 0; m <= upto; ++m) {
        out[m] = {cr[m], ci[m]};
    }
    return out;
}

inline void require_length(const GaussianDraw& draw, std::size_t needed, const char* op)
{
    if (draw.size() < needed) {
        throw LengthError(std::string(op) + ": draw has " + std::to_string(draw.size()) + " normals, needs " +
                          std::to_string(needed));
    }
}

}  // namespace detail

/// c_0..c_n via the O(n^2) recurrence.
inline CoefficientSeries hmc_coefficients(const GaussianDraw& draw, ThetaParams theta, std::size_t n)
{
    detail::require_length(draw, n, "hmc_coefficients");
    return {theta, n, detail::exp_series(draw.span().first(n), theta.value(), n), std::nullopt};
}

/// Same coefficients by summing over all partitions of each m <= n.
inline CoefficientSeries hmc_coefficients_bruteforce(const GaussianDraw& draw, ThetaParams theta, std::size_t n)
{
    if (n > 20) {
        throw SizeError("hmc_coefficients_bruteforce: n must be <= 20");
    }
    detail::require_length(draw, n, "hmc_coefficients_bruteforce");
    const double th = theta.value();
    CoefficientSeries out{theta, n, std::vector<Complex>(n + 1), std::nullopt};
    for (std::size_t m = 0; m <= n; ++m) {
        Complex total{0.0, 0.0};
        for_each_partition(m, [&](std::span<const std::size_t> counts) {
            Complex term{1.0, 0.0};
            for (std::size_t k = 1; k <= counts.size(); ++k) {
                const std::size_t mk = counts[k - 1];
                if (mk == 0) {
                    continue;
                }
                const double scale =
                    std::pow(th / static_cast<double>(k), 0.5 * static_cast<double>(mk)) / std::tgamma(mk + 1.0);
                term *= std::pow(draw.at(k), static_cast<int>(mk)) * scale;
            }
            total += term;
        });
        out.values[m] = total;
    }
    return out;
}

/// c_{0,q}..c_{n,q}: N_k treated as zero for k > q.
inline CoefficientSeries truncated_coefficients(const GaussianDraw& draw, ThetaParams theta, std::size_t n,
                                                std::size_t q)
{
    const std::size_t active = std::min(q, n);
    detail::require_length(draw, active, "truncated_coefficients");
    return {theta, n, detail::exp_series(draw.span().first(active), theta.value(), n), q};
}

/// n_k = (floor(delta n) + k floor(eps n)) ^ n for k = 0..K.
struct BlockSchedule {
    std::size_t n = 0;
    double delta = 0.0;
    double epsilon = 0.0;
    std::vector<std::size_t> boundaries;

    [[nodiscard]] std::size_t blocks() const noexcept { return boundaries.size() - 1; }
};

namespace detail {

inline std::size_t floor_product(double x, std::size_t n)
{
    // Decimal inputs like 0.29 * 100 land a hair below the integer.
    return static_cast<std::size_t>(std::floor(x * static_cast<double>(n) + 1e-9));
}

inline void require_open_unit(double x, const char* name)
{
    if (!(x > 0.0 && x < 1.0)) {
        throw DomainError(std::string(name) + " must lie strictly inside (0, 1)");
    }
}

}  // namespace detail

inline BlockSchedule block_schedule(std::size_t n, double delta, double epsilon)
{
    detail::require_open_unit(delta, "delta");
    detail::require_open_unit(epsilon, "epsilon");
    const std::size_t first = detail::floor_product(delta, n);
    const std::size_t stride = detail::floor_product(epsilon, n);
    if (first < 1 || stride < 1) {
        throw DomainError("block_schedule: n too small for delta/epsilon (need floor(delta n), floor(eps n) >= 1)");
    }
    BlockSchedule schedule{n, delta, epsilon, {}};
    for (std::size_t k = 0;; ++k) {
        const std::size_t nk = std::min(first + k * stride, n);
        schedule.boundaries.push_back(nk);
        if (nk == n) {
            break;
        }
    }
    // floor(delta n) may already equal n when delta n rounds up; keep K >= 1.
    if (schedule.boundaries.size() == 1) {
        throw DomainError("block_schedule: floor(delta n) must be < n");
    }
    return schedule;
}

/// sum_{q=floor(delta n)}^{n} N_q sqrt(theta / q) c_{n-q, q-1}.
///
/// The lower limit is clamped to 1 so that small n (where floor(delta n) = 0)
/// still yields the exact identity at n = 1.
inline Complex martingale_approx_delta(const GaussianDraw& draw, ThetaParams theta, std::size_t n, double delta)
{
    detail::require_open_unit(delta, "delta");
    detail::require(n >= 1, "martingale_approx_delta: n must be >= 1");
    detail::require_length(draw, n, "martingale_approx_delta");
    const double th = theta.value();
    const std::size_t q0 = std::max<std::size_t>(1, detail::floor_product(delta, n));
    Complex total{0.0, 0.0};
    for (std::size_t q = q0; q <= n; ++q) {
        const std::size_t m = n - q;
        const auto c = detail::exp_series(draw.span().first(std::min(q - 1, m)), th, m);
        total += draw.at(q) * std::sqrt(th / static_cast<double>(q)) * c[m];
    }
    return total;
}

/// Block martingale approximant together with its bracket.
struct BlockMartingale {
    Complex value{0.0, 0.0};
    double bracket_sum = 0.0;          // sum_q (theta/n_k) |sum_s d_s c_{n-q+s, n_k}|^2, unnormalized
    std::vector<Complex> increments;   // indexed by q - n_0 - 1
};

inline BlockMartingale block_martingale(const GaussianDraw& draw, ThetaParams theta, const BlockSchedule& schedule,
                                        const TestPolynomial& p)
{
    const std::size_t n = schedule.n;
    detail::require_length(draw, n, "block_martingale");
    const double th = theta.value();
    const std::size_t ell = p.degree();
    BlockMartingale out;
    out.increments.reserve(n - schedule.boundaries.front());
    for (std::size_t k = 0; k + 1 < schedule.boundaries.size(); ++k) {
        const std::size_t nk = schedule.boundaries[k];
        const std::size_t next = schedule.boundaries[k + 1];
        const std::size_t top = n - nk - 1 + ell;
        const auto c = detail::exp_series(draw.span().first(std::min(nk, top)), th, top);
        const double scale = th / static_cast<double>(nk);
        const double root = std::sqrt(scale);
        for (std::size_t q = nk + 1; q <= next; ++q) {
            Complex inner{0.0, 0.0};
            for (std::size_t s = 0; s <= ell; ++s) {
                inner += p[s] * c[n - q + s];
            }
            const Complex increment = draw.at(q) * root * inner;
            out.value += increment;
            out.bracket_sum += scale * std::norm(inner);
            out.increments.push_back(increment);
        }
    }
    return out;
}

inline Complex martingale_approx_block(const GaussianDraw& draw, ThetaParams theta, std::size_t n, double delta,
                                       double epsilon, const TestPolynomial& p = {})
{
    return block_martingale(draw, theta, block_schedule(n, delta, epsilon), p).value;
}

/// Bracket process normalized by E|c_n|^2.
inline double bracket_process(const GaussianDraw& draw, ThetaParams theta, std::size_t n, double delta,
                              double epsilon, const TestPolynomial& p = {})
{
    const auto bm = block_martingale(draw, theta, block_schedule(n, delta, epsilon), p);
    return bm.bracket_sum / rising_binomial(n, theta.value());
}

/// X_n[p] = sum_s d_s c_{n+s}.
inline Complex shifted_statistic(const GaussianDraw& draw, ThetaParams theta, std::size_t n, const TestPolynomial& p)
{
    const std::size_t top = n + p.degree();
    detail::require_length(draw, top, "shifted_statistic");
    const auto c = detail::exp_series(draw.span().first(top), theta.value(), top);
    Complex acc{0.0, 0.0};
    for (std::size_t s = 0; s <= p.degree(); ++s) {
        acc += p[s] * c[n + s];
    }
    return acc;
}

/// Moments of c_n conditional on N_1..N_K, K = floor(n/2).
///
/// Two indices above K cannot both appear in a partition of n, so given the
/// low modes c_n = a_n + sum_{m>K} a_{n-m} sqrt(theta/m) N_m is complex normal
/// with mean a_n and variance sigma^2 = theta sum_{m>K} |a_{n-m}|^2 / m.
/// Both fields are unbiased for E|c_n|^2 and E|c_n|^4.
struct ConditionalMoments {
    double second = 0.0;  // |mu|^2 + sigma^2
    double fourth = 0.0;  // |mu|^4 + 4 |mu|^2 sigma^2 + 2 sigma^4
};

inline ConditionalMoments conditional_moments(const GaussianDraw& draw, ThetaParams theta, std::size_t n)
{
    detail::require(n >= 1, "conditional_moments: n must be >= 1");
    const std::size_t K = n / 2;
    detail::require_length(draw, K, "conditional_moments");
    const double th = theta.value();
    const auto a = detail::exp_series(draw.span().first(K), th, n);
    const double mu2 = std::norm(a[n]);
    double sigma2 = 0.0;
    for (std::size_t m = K + 1; m <= n; ++m) {
        sigma2 += std::norm(a[n - m]) * th / static_cast<double>(m);
    }
    return {mu2 + sigma2, mu2 * mu2 + 4.0 * mu2 * sigma2 + 2.0 * sigma2 * sigma2};
}

/// V_k(r) = 2 sum_{l=1}^k r^{2l} / l = E G_k(r)^2.
inline double variance_vk(std::size_t k, double r)
{
    if (!(r >= 0.0 && r <= 1.0)) {
        throw DomainError("variance_vk: r must lie in [0, 1]");
    }
    const double r2 = r * r;
    double power = 1.0;
    double acc = 0.0;
    for (std::size_t l = 1; l <= k; ++l) {
        power *= r2;
        acc += power / static_cast<double>(l);
    }
    return 2.0 * acc;
}

struct MassStatistic {
    double value = 0.0;
    std::size_t tail_n = 0;
};

/// X_k(r) = (sum_{n<=tail_n} |sum_s d_s c_{n+s,k}|^2 r^{2n}) exp(-theta V_k(r) / 2).
///
/// Without an explicit tail_n the sum grows until the expected tail,
/// bounded by |d|^2 (l+1) E|c_{N+1}|^2 r^{2(N+1)} / (1 - r^2), drops below
/// rel_tol times the running value.
inline MassStatistic mass_statistic_ex(const GaussianDraw& draw, ThetaParams theta, std::size_t k, double r,
                                       const TestPolynomial& p, std::optional<std::size_t> tail_n = std::nullopt,
                                       double rel_tol = 1e-8)
{
    if (!(r >= 0.0 && r < 1.0)) {
        throw DomainError("mass_statistic: r must lie in [0, 1)");
    }
    detail::require_length(draw, k, "mass_statistic");
    const double th = theta.value();
    const std::size_t ell = p.degree();
    const double r2 = r * r;
    const double norm_d = p.l2_norm_squared();

    auto partial = [&](const std::vector<Complex>& c, std::size_t upto) {
        double acc = 0.0;
        double power = 1.0;
        for (std::size_t m = 0; m <= upto; ++m) {
            Complex inner{0.0, 0.0};
            for (std::size_t s = 0; s <= ell; ++s) {
                inner += p[s] * c[m + s];
            }
            acc += std::norm(inner) * power;
            power *= r2;
        }
        return acc;
    };

    std::size_t upto = 0;
    double sum = 0.0;
    if (tail_n) {
        upto = *tail_n;
        const auto c = detail::exp_series(draw.span().first(k), th, upto + ell);
        sum = partial(c, upto);
    } else {
        upto = 64;
        for (;;) {
            const auto c = detail::exp_series(draw.span().first(k), th, upto + ell);
            sum = partial(c, upto);
            const double tail_bound = norm_d * static_cast<double>(ell + 1) * rising_binomial(upto + 1, th) *
                                      std::pow(r2, static_cast<double>(upto + 1)) / (1.0 - r2);
            if (tail_bound < rel_tol * sum || upto > (std::size_t{1} << 24U)) {
                break;
            }
            upto *= 2;
        }
    }
    return {sum * std::exp(-0.5 * th * variance_vk(k, r)), upto};
}

inline double mass_statistic(const GaussianDraw& draw, ThetaParams theta, std::size_t k, double r,
                             const TestPolynomial& p, std::optional<std::size_t> tail_n = std::nullopt)
{
    return mass_statistic_ex(draw, theta, k, r, p, tail_n).value;
}

}  // namespace hmc
