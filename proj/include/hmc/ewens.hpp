// SPDX-License-Identifier: Apache-2.0
//
// Ewens sampling formula, the longest-cycle law, the generalized Dickman
// density p_theta of lim T_{0n}/n, Kingman's distribution function F_theta and
// the deterministic constants C_delta and A(theta, delta, epsilon).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hmc/common.hpp"
#include "hmc/partitions.hpp"
#include "hmc/rng.hpp"
#include "hmc/special.hpp"

namespace hmc {

namespace detail {

inline void require_positive_theta(double theta, const char* op)
{
    if (!(theta > 0.0)) {
        throw DomainError(std::string(op) + ": theta must be > 0");
    }
}

inline void require_ewens_theta(double theta, const char* op)
{
    if (!(theta > 0.0 && theta <= 1.0)) {
        throw DomainError(std::string(op) + ": theta must lie in (0, 1]");
    }
}

}  // namespace detail

//---------------------------------------------------------------------------//
// Cycle counts and the Ewens measure
//---------------------------------------------------------------------------//

/// counts[k-1] = m_k, the number of cycles of length k; sum_k k m_k = n.
struct CycleCounts {
    std::size_t n = 0;
    std::vector<std::size_t> counts;

    static CycleCounts from_span(std::span<const std::size_t> m)
    {
        CycleCounts out{0, {m.begin(), m.end()}};
        for (std::size_t k = 1; k <= m.size(); ++k) {
            out.n += k * m[k - 1];
        }
        return out;
    }

    [[nodiscard]] bool valid() const
    {
        if (counts.size() != n) {
            return false;
        }
        std::size_t total = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            total += k * counts[k - 1];
        }
        return total == n;
    }

    [[nodiscard]] std::size_t cycles() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

    [[nodiscard]] std::size_t longest() const
    {
        for (std::size_t k = counts.size(); k > 0; --k) {
            if (counts[k - 1] > 0) {
                return k;
            }
        }
        return 0;
    }
};

inline double ewens_pmf(const CycleCounts& m, double theta)
{
    detail::require_positive_theta(theta, "ewens_pmf");
    if (!m.valid()) {
        throw DomainError("ewens_pmf: cycle counts violate sum_k k m_k = n");
    }
    double log_weight = 0.0;
    for (std::size_t k = 1; k <= m.n; ++k) {
        const auto mk = static_cast<double>(m.counts[k - 1]);
        if (mk > 0) {
            log_weight += mk * std::log(theta / static_cast<double>(k)) - std::lgamma(mk + 1.0);
        }
    }
    return std::exp(log_weight) / rising_binomial(m.n, theta);
}

/// Chinese-restaurant construction: element i opens a new cycle with
/// probability theta / (theta + i - 1), otherwise joins the cycle of a
/// uniformly chosen earlier element.
inline CycleCounts ewens_sample(std::size_t n, double theta, Stream& stream)
{
    detail::require(n >= 1, "ewens_sample: n must be >= 1");
    detail::require_positive_theta(theta, "ewens_sample");
    std::vector<std::uint32_t> cycle_of(n);
    std::vector<std::size_t> sizes;
    sizes.reserve(64);
    cycle_of[0] = 0;
    sizes.push_back(1);
    for (std::size_t i = 1; i < n; ++i) {
        const double prior = static_cast<double>(i);
        if (stream.uniform() * (theta + prior) < theta) {
            cycle_of[i] = static_cast<std::uint32_t>(sizes.size());
            sizes.push_back(1);
        } else {
            auto j = static_cast<std::size_t>(stream.uniform() * prior);
            j = std::min(j, i - 1);
            cycle_of[i] = cycle_of[j];
            ++sizes[cycle_of[j]];
        }
    }
    CycleCounts out{n, std::vector<std::size_t>(n, 0)};
    for (const auto s : sizes) {
        ++out.counts[s - 1];
    }
    return out;
}

inline CycleCounts ewens_sample(std::size_t n, double theta, StreamKey key)
{
    Stream stream(key);
    return ewens_sample(n, theta, stream);
}

/// P(L^{(m)} <= q) for m = 0..n_max.
///
/// The coefficients b_m = [z^m] exp(theta sum_{k<=q} z^k / k) obey
/// m b_m = theta sum_{k=1}^{min(m,q)} b_{m-k}; dividing by binom(m+theta-1,
/// theta-1) gives the probability.
inline std::vector<double> longest_at_most_table(std::size_t n_max, std::size_t q, double theta)
{
    detail::require_positive_theta(theta, "longest_at_most_table");
    std::vector<double> b(n_max + 1, 0.0);
    std::vector<double> prob(n_max + 1, 0.0);
    b[0] = 1.0;
    prob[0] = 1.0;
    double window = q >= 1 ? 1.0 : 0.0;  // sum of b_{m-k}, k = 1..min(m, q)
    for (std::size_t m = 1; m <= n_max; ++m) {
        b[m] = theta * window / static_cast<double>(m);
        if (q >= 1) {
            window += b[m];
            if (m >= q) {
                window -= b[m - q];
            }
        }
        prob[m] = m <= q ? 1.0 : std::clamp(b[m] / rising_binomial(m, theta), 0.0, 1.0);
    }
    return prob;
}

inline double prob_longest_at_most(std::size_t n, std::size_t q, double theta)
{
    if (q >= n) {
        return 1.0;
    }
    if (q == 0) {
        return 0.0;
    }
    return longest_at_most_table(n, q, theta)[n];
}

//---------------------------------------------------------------------------//
// T_{0n} = sum_j j Z_j with Z_j ~ Poisson(theta / j)
//---------------------------------------------------------------------------//

/// E exp(-m T_{0n} / n) = prod_j exp((theta/j)(e^{-jm/n} - 1)).
inline double t0n_laplace(std::size_t n, double theta, double m)
{
    detail::require(m >= 0.0, "t0n_laplace: m must be >= 0");
    double acc = 0.0;
    const auto nd = static_cast<double>(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const auto jd = static_cast<double>(j);
        acc += std::expm1(-jd * m / nd) / jd;
    }
    return std::exp(theta * acc);
}

/// lim_n t0n_laplace = exp(theta int_0^1 (e^{-mx} - 1) dx / x) = exp(-theta Ein(m)).
inline double t0n_laplace_limit(double theta, double m)
{
    detail::require(m >= 0.0, "t0n_laplace_limit: m must be >= 0");
    // Ein(m) = sum_{k>=1} (-1)^{k+1} m^k / (k k!).
    double ein = 0.0;
    double term = 1.0;  // m^k / k!
    for (int k = 1; k < 500; ++k) {
        term *= m / k;
        const double add = (k % 2 == 1 ? term : -term) / k;
        ein += add;
        if (std::abs(add) < 1e-18 * std::max(1.0, std::abs(ein))) {
            break;
        }
    }
    return std::exp(-theta * ein);
}

/// Exact sampler for T_{0n}: the total number of points is Poisson(theta H_n)
/// and each point independently has size j with probability (1/j) / H_n.
class T0nSampler {
  public:
    T0nSampler(std::size_t n, double theta) : n_(n), theta_(theta), cumulative_(n)
    {
        detail::require(n >= 1, "T0nSampler: n must be >= 1");
        detail::require_positive_theta(theta, "T0nSampler");
        double acc = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            acc += 1.0 / static_cast<double>(j);
            cumulative_[j - 1] = acc;
        }
        harmonic_ = acc;
    }

    std::uint64_t operator()(Stream& stream) const
    {
        std::poisson_distribution<std::uint64_t> points(theta_ * harmonic_);
        const std::uint64_t count = points(stream);
        std::uint64_t total = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double target = stream.uniform() * harmonic_;
            const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), target);
            total += static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cumulative_.begin(), static_cast<std::ptrdiff_t>(n_) - 1)) + 1;
        }
        return total;
    }

    [[nodiscard]] std::size_t n() const noexcept { return n_; }

  private:
    std::size_t n_;
    double theta_;
    double harmonic_ = 0.0;
    std::vector<double> cumulative_;
};

//---------------------------------------------------------------------------//
// Generalized Dickman density
//---------------------------------------------------------------------------//

namespace detail {

// 8-point Gauss-Legendre on [-1, 1].
inline constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

template <class F>
double gauss_legendre(F&& f, double a, double b)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
        acc += kGlWeights[i] * f(mid + half * kGlNodes[i]);
    }
    return acc * half;
}

template <class F>
double adaptive_integral(F&& f, double a, double b, const char* what)
{
    if (!(b > a)) {
        return 0.0;
    }
    double error = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 10, 1e-11, &error);
    if (!(error <= 1e-7 * std::max(1.0, std::abs(value))) || !std::isfinite(value)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", error);
        throw NumericalError(std::string(what) + ": quadrature did not converge (error estimate " + buf + ")");
    }
    return value;
}

/// int_a^b f for f(t) = g0 + g1 (t - a)^alpha + ... near a, 0 < alpha <= 1.
/// With t = a + (b - a) s^3 every term becomes at least C^2 in s.
template <class F>
double adaptive_integral_graded(F&& f, double a, double b, const char* what)
{
    if (!(b > a)) {
        return 0.0;
    }
    const double width = b - a;
    auto g = [&](double s) { return f(a + width * s * s * s) * 3.0 * width * s * s; };
    return adaptive_integral(g, 0.0, 1.0, what);
}

}  // namespace detail

/// Tabulated p_theta on the uniform grid y_i = i * step, i = 0..N.
///
/// On (0, 1] the density is e^{-gamma theta} y^{theta-1} / Gamma(theta); beyond
/// 1 it solves y p(y) = theta int_{y-1}^{y} p(u) du. The table is immutable
/// after construction.
class DickmanTable {
  public:
    DickmanTable(double theta, double y_max, double step)
    {
        detail::require_ewens_theta(theta, "p_theta_density");
        detail::require(y_max >= 2.0, "p_theta_density: Y_max must be >= 2");
        detail::require(step > 0.0 && step <= 1e-3, "p_theta_density: step must lie in (0, 1e-3]");
        theta_ = theta;
        per_unit_ = static_cast<std::size_t>(std::ceil(1.0 / step - 1e-9));
        step_ = 1.0 / static_cast<double>(per_unit_);
        const auto cells = static_cast<std::size_t>(std::ceil(y_max * static_cast<double>(per_unit_) - 1e-9));
        y_max_ = static_cast<double>(cells) * step_;
        head_ = std::exp(-kEulerGamma * theta) / std::tgamma(theta);
        grid_.resize(cells + 1);
        density_.resize(cells + 1);
        for (std::size_t i = 0; i <= cells; ++i) {
            grid_[i] = static_cast<double>(i) * step_;
        }
        for (std::size_t i = 0; i <= per_unit_; ++i) {
            density_[i] = closed_form(grid_[i]);
        }
        integrate_delay_equation();
    }

    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] double y_max() const noexcept { return y_max_; }
    [[nodiscard]] double step() const noexcept { return step_; }
    [[nodiscard]] std::span<const double> grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> density() const noexcept { return density_; }

    /// p_theta(y); exact on (0, 1], cubic interpolation of the table beyond.
    [[nodiscard]] double operator()(double y) const
    {
        if (y <= 0.0) {
            return 0.0;
        }
        if (y <= 1.0) {
            return closed_form(y);
        }
        if (y > y_max_ * (1.0 + 1e-12)) {
            throw CoverageError("DickmanTable: y = " + std::to_string(y) + " beyond Y_max = " +
                                std::to_string(y_max_));
        }
        return interpolate(y, grid_.size() - 1);
    }

    /// int_0^y p_theta, from the closed form on [0, 1] and the identity
    /// F(y) = F(y - 1) + y p(y) / theta beyond.
    [[nodiscard]] double cdf(double y) const
    {
        if (y <= 0.0) {
            return 0.0;
        }
        if (y <= 1.0) {
            return head_ * std::pow(y, theta_) / theta_;
        }
        return cdf(y - 1.0) + y * (*this)(y) / theta_;
    }

    /// int_0^{Y_max} e^{-m y} p(y) dy: incomplete gamma on [0, 1], Simpson beyond.
    [[nodiscard]] double laplace_transform(double m) const
    {
        double head = 0.0;
        if (m == 0.0) {
            head = head_ / theta_;
        } else {
            head = std::exp(-kEulerGamma * theta_) * boost::math::gamma_p(theta_, m) / std::pow(m, theta_);
        }
        return head + integrate_beyond_one(per_unit_, grid_.size() - 1, [&](double y) { return std::exp(-m * y); });
    }

    /// int_0^{Y_max} p by quadrature of the table.
    [[nodiscard]] double total_mass() const
    {
        return head_ / theta_ + integrate_beyond_one(per_unit_, grid_.size() - 1, [](double) { return 1.0; });
    }

    /// y p(y) - theta int_{y-1}^{y} p for a grid point y in (1, Y_max].
    [[nodiscard]] double dde_residual(std::size_t index) const
    {
        detail::require(index > per_unit_ && index < grid_.size(), "dde_residual: index must lie in (1, Y_max]");
        const double y = grid_[index];
        const std::size_t lo = index - per_unit_;
        double integral = 0.0;
        std::size_t from = lo;
        if (lo < per_unit_) {
            integral += head_ * (1.0 - std::pow(grid_[lo], theta_)) / theta_;
            from = per_unit_;
        }
        integral += integrate_beyond_one(from, index, [](double) { return 1.0; });
        return y * density_[index] - theta_ * integral;
    }

    [[nodiscard]] std::size_t per_unit() const noexcept { return per_unit_; }

    void write_csv(const std::string& path) const
    {
        std::ofstream out(path);
        if (!out) {
            throw std::runtime_error("cannot open " + path);
        }
        out.precision(17);
        out << "y,p_theta\n";
        for (std::size_t i = 1; i < grid_.size(); ++i) {
            out << grid_[i] << ',' << density_[i] << '\n';
        }
    }

  private:
    [[nodiscard]] double closed_form(double y) const
    {
        if (y == 0.0) {
            return theta_ == 1.0 ? head_ : std::numeric_limits<double>::infinity();
        }
        return head_ * std::pow(y, theta_ - 1.0);
    }

    /// Just above 1, p(1 + t) = smooth - head t^theta / (1 + t). Interpolation and
    /// quadrature act on p + cusp and treat the cusp separately.
    [[nodiscard]] double cusp(double y) const { return y > 1.0 ? head_ * std::pow(y - 1.0, theta_) / y : 0.0; }

    [[nodiscard]] double smooth_part(std::size_t i) const { return density_[i] + cusp(grid_[i]); }

    /// int w p over grid indices [from, to], from >= 1. Simpson on p + cusp up to
    /// y = 2, minus the cusp by graded quadrature; plain Simpson beyond.
    template <class W>
    [[nodiscard]] double integrate_beyond_one(std::size_t from, std::size_t to, W&& w) const
    {
        const std::size_t split = std::clamp(2 * per_unit_, from, to);
        double acc = simpson(split, to, [&](std::size_t i) { return w(grid_[i]) * density_[i]; });
        if (split > from) {
            acc += simpson(from, split, [&](std::size_t i) { return w(grid_[i]) * smooth_part(i); });
            acc -= detail::adaptive_integral_graded([&](double y) { return w(y) * cusp(y); }, grid_[from], grid_[split],
                                                    "DickmanTable quadrature");
        }
        return acc;
    }

    /// Cubic Lagrange interpolation of p + cusp on nodes in [1, y_{last}].
    [[nodiscard]] double interpolate(double y, std::size_t last) const
    {
        const double pos = y / step_;
        auto j = static_cast<std::size_t>(pos);
        if (j >= last) {
            return density_[last];
        }
        std::size_t start = j >= 1 ? j - 1 : 0;
        start = std::max(start, per_unit_);
        if (start + 3 > last) {
            start = last - 3;
        }
        const double t = pos - static_cast<double>(start);
        const double p0 = smooth_part(start);
        const double p1 = smooth_part(start + 1);
        const double p2 = smooth_part(start + 2);
        const double p3 = smooth_part(start + 3);
        return p0 * (t - 1) * (t - 2) * (t - 3) / -6.0 + p1 * t * (t - 2) * (t - 3) / 2.0 +
               p2 * t * (t - 1) * (t - 3) / -2.0 + p3 * t * (t - 1) * (t - 2) / 6.0 - cusp(y);
    }

    /// Composite Simpson over grid indices [a, b], 3/8 rule on a trailing odd cell.
    template <class F>
    [[nodiscard]] double simpson(std::size_t a, std::size_t b, F&& f) const
    {
        if (b <= a) {
            return 0.0;
        }
        std::size_t cells = b - a;
        double acc = 0.0;
        std::size_t end = b;
        if (cells % 2 == 1) {
            if (cells == 1) {
                return 0.5 * step_ * (f(a) + f(b));
            }
            acc += 3.0 * step_ / 8.0 * (f(b - 3) + 3.0 * f(b - 2) + 3.0 * f(b - 1) + f(b));
            end = b - 3;
            cells -= 3;
        }
        double inner = f(a) + f(end);
        for (std::size_t i = a + 1; i < end; ++i) {
            inner += (i - a) % 2 == 1 ? 4.0 * f(i) : 2.0 * f(i);
        }
        return acc + inner * step_ / 3.0;
    }

    /// Steps g(y) = y^{1-theta} p(y), whose derivative is
    /// -theta y^{-theta} p(y - 1), cell by cell from y = 1.
    void integrate_delay_equation()
    {
        const double th = theta_;
        double g = density_[per_unit_];
        for (std::size_t i = per_unit_ + 1; i < grid_.size(); ++i) {
            const double a = grid_[i - 1];
            const double b = grid_[i];
            double increment = 0.0;
            if (b <= 2.0 + 1e-12) {
                // p(u - 1) = head (u - 1)^{theta - 1}; s = (u - 1)^theta absorbs the
                // endpoint singularity at u = 1.
                const double s0 = std::pow(a - 1.0, th);
                const double s1 = std::pow(b - 1.0, th);
                increment = head_ * detail::gauss_legendre(
                                        [&](double s) { return std::pow(1.0 + std::pow(s, 1.0 / th), -th); }, s0, s1);
            } else {
                auto f = [&](double u) { return std::pow(u, -th) * interpolate(u - 1.0, i - 1); };
                if (a < 2.0 + 0.5 * step_) {
                    // cusp(u - 1) ~ (u - 2)^theta at the left end; grade with u = a + h s^3.
                    const double h = b - a;
                    increment = th * detail::gauss_legendre(
                                         [&](double s) { return f(a + h * s * s * s) * 3.0 * h * s * s; }, 0.0, 1.0);
                } else {
                    increment = th * detail::gauss_legendre(f, a, b);
                }
            }
            g -= increment;
            density_[i] = std::max(g, 0.0) * std::pow(b, th - 1.0);
        }
    }

    double theta_ = 0.0;
    double y_max_ = 0.0;
    double step_ = 0.0;
    double head_ = 0.0;
    std::size_t per_unit_ = 0;
    std::vector<double> grid_;
    std::vector<double> density_;
};

/// Builds the table and checks its Laplace transform against the product
/// formula limit; a mismatch beyond 1e-4 is a hard error.
inline DickmanTable p_theta_density(double theta, double y_max, double step = 1e-4)
{
    DickmanTable table(theta, y_max, step);
    for (const double m : {0.5, 1.0, 2.0}) {
        const double got = table.laplace_transform(m);
        const double want = t0n_laplace_limit(theta, m);
        if (!(std::abs(got - want) <= 1e-4)) {
            throw NumericalError("p_theta_density: Laplace transform check failed at m = " + std::to_string(m) +
                                 " (table " + std::to_string(got) + ", limit " + std::to_string(want) + ")");
        }
    }
    return table;
}

/// Kingman's distribution function of L^{(infinity)}:
/// F(x) = e^{gamma theta} x^{theta-1} Gamma(theta) p_theta(1/x) on (0, 1].
inline double kingman_cdf(double x, const DickmanTable& table)
{
    if (x <= 0.0) {
        return 0.0;
    }
    if (x > 1.0) {
        return 1.0;
    }
    const double th = table.theta();
    if (1.0 / x > table.y_max() * (1.0 + 1e-12)) {
        throw CoverageError("kingman_cdf: 1/x = " + std::to_string(1.0 / x) + " beyond table Y_max");
    }
    const double value = std::exp(kEulerGamma * th) * std::pow(x, th - 1.0) * std::tgamma(th) * table(1.0 / x);
    return x == 1.0 ? value : std::clamp(value, 0.0, 1.0);
}

inline double kingman_cdf(double theta, double x, const DickmanTable& table)
{
    if (std::abs(theta - table.theta()) > 1e-15) {
        throw DomainError("kingman_cdf: theta does not match the table");
    }
    return kingman_cdf(x, table);
}

/// 1 - Gamma(theta) e^{gamma theta} delta^{theta-1} p_theta(1/delta).
inline double c_delta_closed(double theta, double delta, const DickmanTable& table)
{
    detail::require(delta > 0.0 && delta <= 1.0, "c_delta_closed: delta must lie in (0, 1]");
    return 1.0 - kingman_cdf(theta, delta, table);
}

/// theta int_delta^1 (1-x)^{theta-1} F_theta(x / (1-x)) dx / x.
///
/// With u = (1-x)^theta the weight (1-x)^{theta-1} dx becomes du / theta and
/// the integrand is bounded; the kink of F_theta at x = 1/2 is a panel edge.
inline double c_delta_integral(double theta, double delta, const DickmanTable& table)
{
    detail::require(delta > 0.0 && delta <= 1.0, "c_delta_integral: delta must lie in (0, 1]");
    if (delta >= 1.0) {
        return 0.0;
    }
    auto integrand = [&](double u) {
        const double x = 1.0 - std::pow(u, 1.0 / theta);
        return kingman_cdf(theta, x / (1.0 - x), table) / x;
    };
    const double top = std::pow(1.0 - delta, theta);
    const double kink = std::pow(0.5, theta);
    if (top <= kink) {
        return detail::adaptive_integral(integrand, 0.0, top, "c_delta_integral");
    }
    // F_theta(z) ~ 1 - (1 - z)^theta as z -> 1, i.e. as u decreases to the kink.
    return detail::adaptive_integral(integrand, 0.0, kink, "c_delta_integral") +
           detail::adaptive_integral_graded(integrand, kink, top, "c_delta_integral");
}

/// Number of blocks in the n -> infinity schedule: smallest K with delta + K eps >= 1.
inline std::size_t limiting_block_count(double delta, double epsilon)
{
    const double raw = (1.0 - delta) / epsilon;
    return static_cast<std::size_t>(std::max(1.0, std::ceil(raw - 1e-9)));
}

/// theta sum_k (delta + k eps)^{-1} int_{delta+k eps}^{delta+(k+1) eps ^ 1} (1-x)^{theta-1}
/// F_theta((delta + k eps) / (1 - x)) dx.
inline double a_constant(double theta, double delta, double epsilon, const DickmanTable& table)
{
    detail::require(delta > 0.0 && delta < 1.0, "a_constant: delta must lie in (0, 1)");
    detail::require(epsilon > 0.0 && epsilon < 1.0, "a_constant: epsilon must lie in (0, 1)");
    const std::size_t blocks = limiting_block_count(delta, epsilon);
    double total = 0.0;
    for (std::size_t k = 0; k < blocks; ++k) {
        const double left = delta + static_cast<double>(k) * epsilon;
        const double right = std::min(left + epsilon, 1.0);
        auto integrand = [&](double u) {
            const double one_minus_x = std::pow(u, 1.0 / theta);
            return kingman_cdf(theta, left / one_minus_x, table);
        };
        const double u_lo = std::pow(1.0 - right, theta);
        const double u_hi = std::pow(1.0 - left, theta);
        const double kink = std::pow(left, theta);  // F argument reaches 1 at 1 - x = left
        double piece = 0.0;
        if (kink > u_lo && kink < u_hi) {
            piece = (kink - u_lo) +
                    detail::adaptive_integral_graded(integrand, kink, u_hi, "a_constant");
        } else {
            piece = detail::adaptive_integral(integrand, u_lo, u_hi, "a_constant");
        }
        total += piece / left;
    }
    return total;
}

}  // namespace hmc
