#ifndef BRENKE_SMOOTHNESS_HPP
#define BRENKE_SMOOTHNESS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <brenke/errors.hpp>
#include <brenke/test_functions.hpp>

namespace brenke
{

inline constexpr double default_window_t_max = 4.0;
inline constexpr double default_window_step = 1.0 / 1024;

// Samples of f at t_min + i*step. Indices below window_count() lie in [t_min, t_max];
// the rest are padding used by smoothing operators that look ahead.
class window_grid
{
public:
    template <class Func>
    window_grid(Func &&f, double t_max, double step, double pad = 0, double t_min = 0)
        : m_t_min(t_min), m_t_max(t_max), m_step(step)
    {
        if (!(step > 0)) {
            throw precondition_error("window_grid: step must be positive");
        }
        if (!(t_max > t_min)) {
            throw precondition_error("window_grid: t_max must exceed t_min");
        }
        if (!(pad >= 0)) {
            throw precondition_error("window_grid: pad must be nonnegative");
        }
        m_window_count = static_cast<std::size_t>(std::floor((t_max - t_min) / step + 1e-9)) + 1;
        const auto pad_count = static_cast<std::size_t>(std::floor(pad / step + 1e-9));
        m_samples.resize(m_window_count + pad_count);
        for (std::size_t i = 0; i < m_samples.size(); ++i) {
            const double v = f(t(i));
            if (!std::isfinite(v)) {
                throw non_finite_sample("window_grid: sample at t = " + std::to_string(t(i)) + " is not finite");
            }
            m_samples[i] = v;
        }
    }

    [[nodiscard]] double t_min() const noexcept
    {
        return m_t_min;
    }
    [[nodiscard]] double t_max() const noexcept
    {
        return m_t_max;
    }
    [[nodiscard]] double step() const noexcept
    {
        return m_step;
    }
    [[nodiscard]] double t(std::size_t i) const noexcept
    {
        return m_t_min + static_cast<double>(i) * m_step;
    }
    [[nodiscard]] std::size_t window_count() const noexcept
    {
        return m_window_count;
    }
    [[nodiscard]] std::size_t pad_count() const noexcept
    {
        return m_samples.size() - m_window_count;
    }
    [[nodiscard]] std::span<const double> samples() const noexcept
    {
        return m_samples;
    }
    [[nodiscard]] std::span<const double> window() const noexcept
    {
        return std::span<const double>(m_samples).first(m_window_count);
    }

private:
    double m_t_min, m_t_max, m_step;
    std::size_t m_window_count = 0;
    std::vector<double> m_samples;
};

enum class smoothness_kind { omega1, omega2, lipschitz_M, k_functional };

// Grid sups under-estimate true sups; closed forms and the Steklov K-functional bound from above.
enum class estimate_direction { lower_estimate, upper_bound };

struct smoothness_estimate {
    double value = 0;
    smoothness_kind kind = smoothness_kind::omega1;
    double delta_or_lambda = 0;
    estimate_direction direction = estimate_direction::lower_estimate;
};

namespace detail
{

inline void require_resolution(const window_grid &g, double delta)
{
    if (!(delta > 0)) {
        throw precondition_error("smoothness: delta must be positive");
    }
    if (g.step() > delta / 16) {
        throw grid_too_coarse("grid step " + std::to_string(g.step()) + " exceeds delta/16 = "
                              + std::to_string(delta / 16));
    }
}

inline std::size_t steps_within(const window_grid &g, double delta)
{
    return static_cast<std::size_t>(std::floor(delta / g.step() + 1e-9));
}

} // namespace detail

// sup |f(t1) - f(t2)| over grid pairs with |t1 - t2| <= delta, via sliding-window max/min.
inline smoothness_estimate grid_modulus(const window_grid &g, double delta)
{
    detail::require_resolution(g, delta);
    const auto s = g.window();
    const std::size_t w = std::min(detail::steps_within(g, delta), s.size() - 1);
    std::deque<std::size_t> qmax, qmin;
    double best = 0;
    // Each window is [i - w, i].
    for (std::size_t i = 0; i < s.size(); ++i) {
        while (!qmax.empty() && s[qmax.back()] <= s[i]) {
            qmax.pop_back();
        }
        qmax.push_back(i);
        while (!qmin.empty() && s[qmin.back()] >= s[i]) {
            qmin.pop_back();
        }
        qmin.push_back(i);
        while (qmax.front() + w < i) {
            qmax.pop_front();
        }
        while (qmin.front() + w < i) {
            qmin.pop_front();
        }
        best = std::max(best, s[qmax.front()] - s[qmin.front()]);
    }
    return {best, smoothness_kind::omega1, delta, estimate_direction::lower_estimate};
}

// First modulus of continuity; exact closed form for registered functions.
inline smoothness_estimate modulus(const test_function &f, double delta, const window_grid &g)
{
    detail::require_resolution(g, delta);
    if (f.omega) {
        return {f.omega(delta, g.t_max() - g.t_min()), smoothness_kind::omega1, delta, estimate_direction::upper_bound};
    }
    return grid_modulus(g, delta);
}

// sup |f(t+2h) - 2f(t+h) + f(t)| over grid h in (0, delta] and t with t + 2h in the window.
inline smoothness_estimate grid_second_modulus(const window_grid &g, double delta)
{
    detail::require_resolution(g, delta);
    const auto s = g.window();
    const std::size_t H = detail::steps_within(g, delta);
    if (2 * H >= s.size()) {
        throw window_too_small("second modulus: window shorter than 2*delta");
    }
    double best = 0;
    for (std::size_t h = 1; h <= H; ++h) {
        for (std::size_t i = 0; i + 2 * h < s.size(); ++i) {
            best = std::max(best, std::fabs(s[i + 2 * h] - 2 * s[i + h] + s[i]));
        }
    }
    return {best, smoothness_kind::omega2, delta, estimate_direction::lower_estimate};
}

inline smoothness_estimate second_modulus(const test_function &f, double delta, const window_grid &g)
{
    detail::require_resolution(g, delta);
    if (f.omega2) {
        return {f.omega2(delta, g.t_max() - g.t_min()), smoothness_kind::omega2, delta, estimate_direction::upper_bound};
    }
    return grid_second_modulus(g, delta);
}

// max over grid pairs of |f(t1) - f(t2)| / |t1 - t2|^alpha.
inline smoothness_estimate lipschitz_constant(const window_grid &g, double alpha)
{
    if (!(alpha > 0 && alpha <= 1)) {
        throw precondition_error("lipschitz_constant: alpha must lie in (0, 1]");
    }
    const auto s = g.window();
    std::vector<double> denom(s.size());
    for (std::size_t d = 1; d < s.size(); ++d) {
        denom[d] = std::pow(static_cast<double>(d) * g.step(), alpha);
    }
    double best = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            best = std::max(best, std::fabs(s[j] - s[i]) / denom[j - i]);
        }
    }
    return {best, smoothness_kind::lipschitz_M, alpha, estimate_direction::lower_estimate};
}

// For each smoothing width h the candidate psi_h gives
//   U(h) = sup|f - psi_h| + lambda (sup|psi_h| + sup|psi_h'| + sup|psi_h''|).
// h = 0 stands for psi = f. The pairs are independent of lambda, so they are computed once.
class k_functional_profile
{
public:
    struct candidate {
        double h;
        double residual; // sup |f - psi_h|
        double norm2;    // sup|psi_h| + sup|psi_h'| + sup|psi_h''|
    };

    k_functional_profile(const window_grid &g, std::span<const double> h_candidates)
    {
        if (h_candidates.empty()) {
            throw precondition_error("k_functional: h_candidates must be nonempty");
        }
        if (g.window_count() < 3) {
            throw window_too_small("k_functional: window needs at least three samples");
        }
        const auto all = g.samples();
        const std::size_t N = g.window_count();
        // psi = f candidate; one extra padded sample gives a central difference at t_max.
        m_candidates.push_back({0.0, 0.0, c2_norm(all.first(std::min(all.size(), N + 1)), N, g.step())});

        std::vector<long double> prefix(all.size() + 1, 0);
        for (std::size_t i = 0; i < all.size(); ++i) {
            prefix[i + 1] = prefix[i] + all[i];
        }
        for (const double h : h_candidates) {
            if (!(h > 0)) {
                throw precondition_error("k_functional: every h candidate must be positive");
            }
            const std::size_t H = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(h / g.step())));
            // psi_h(t_i) = (1/h^2) int_0^h int_0^h f(t_i + u + v) du dv, discretized:
            // triangular weights over offsets 1..2H-1, built from two box sums.
            if (N + 2 * H > all.size()) {
                throw window_too_small("k_functional: h = " + std::to_string(h)
                                       + " needs samples beyond t_max + pad");
            }
            // box[j] = f_j + ... + f_{j+H-1}; psi_i = (box[i+1] + ... + box[i+H]) / H^2.
            const std::size_t B = all.size() - H + 1;
            std::vector<long double> box_prefix(B + 1, 0);
            for (std::size_t j = 0; j < B; ++j) {
                box_prefix[j + 1] = box_prefix[j] + (prefix[j + H] - prefix[j]);
            }
            const std::size_t M = std::min(B - H, N + 1);
            std::vector<double> psi(M);
            const long double inv = 1.0L / (static_cast<long double>(H) * H);
            for (std::size_t i = 0; i < M; ++i) {
                psi[i] = static_cast<double>((box_prefix[i + H + 1] - box_prefix[i + 1]) * inv);
            }
            double residual = 0;
            for (std::size_t i = 0; i < N; ++i) {
                residual = std::max(residual, std::fabs(all[i] - psi[i]));
            }
            m_candidates.push_back({static_cast<double>(H) * g.step(), residual, c2_norm(psi, N, g.step())});
        }
    }

    [[nodiscard]] const std::vector<candidate> &candidates() const noexcept
    {
        return m_candidates;
    }

    // Value of the psi = f candidate.
    [[nodiscard]] double identity_value(double lambda) const noexcept
    {
        return lambda * m_candidates.front().norm2;
    }

    [[nodiscard]] smoothness_estimate evaluate(double lambda) const
    {
        if (!(lambda >= 0)) {
            throw precondition_error("k_functional: lambda must be nonnegative");
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto &c : m_candidates) {
            best = std::min(best, c.residual + lambda * c.norm2);
        }
        return {best, smoothness_kind::k_functional, lambda, estimate_direction::upper_bound};
    }

private:
    // sup|psi| + sup|psi'| + sup|psi''| over the first N points; psi may carry one extra sample.
    static double c2_norm(std::span<const double> psi, std::size_t N, double step)
    {
        double s0 = 0, s1 = 0, s2 = 0;
        const std::size_t M = psi.size();
        for (std::size_t i = 0; i < N; ++i) {
            s0 = std::max(s0, std::fabs(psi[i]));
            double d1, d2;
            if (i == 0) {
                d1 = (psi[1] - psi[0]) / step;
                d2 = M > 2 ? (psi[2] - 2 * psi[1] + psi[0]) / (step * step) : 0;
            } else if (i + 1 >= M) {
                d1 = (psi[i] - psi[i - 1]) / step;
                d2 = i >= 2 ? (psi[i] - 2 * psi[i - 1] + psi[i - 2]) / (step * step) : 0;
            } else {
                d1 = (psi[i + 1] - psi[i - 1]) / (2 * step);
                d2 = (psi[i + 1] - 2 * psi[i] + psi[i - 1]) / (step * step);
            }
            s1 = std::max(s1, std::fabs(d1));
            s2 = std::max(s2, std::fabs(d2));
        }
        return s0 + s1 + s2;
    }

    std::vector<candidate> m_candidates;
};

// Upper bound for K(f; lambda) = inf_psi ||f - psi|| + lambda ||psi||_{C_B^2} on the window.
inline smoothness_estimate k_functional_upper(const window_grid &g, double lambda, std::span<const double> h_candidates)
{
    return k_functional_profile(g, h_candidates).evaluate(lambda);
}

// h = step * 2^j, j = 1.., while 2h fits in the padding.
inline std::vector<double> default_h_candidates(const window_grid &g)
{
    std::vector<double> hs;
    const double room = static_cast<double>(g.pad_count()) * g.step();
    for (double h = 2 * g.step(); 2 * h < room; h *= 2) {
        hs.push_back(h);
    }
    return hs;
}

} // namespace brenke

#endif
