#ifndef BRENKE_OPERATOR_HPP
#define BRENKE_OPERATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <brenke/errors.hpp>
#include <brenke/families.hpp>
#include <brenke/poisson.hpp>
#include <brenke/series.hpp>

namespace brenke
{

// Stop once the cumulative weight mass reaches 1 - eps_tail; k_hard_cap bounds the
// number of terms for families that violate the convergence hypotheses.
struct truncation_policy {
    double eps_tail = 1e-12;
    std::int64_t k_hard_cap = 10000;

    truncation_policy() = default;
    truncation_policy(double eps, std::int64_t cap) : eps_tail(eps), k_hard_cap(cap)
    {
        validate();
    }

    [[nodiscard]] long double mass_target() const noexcept
    {
        return 1.0L - static_cast<long double>(eps_tail);
    }

    void validate() const
    {
        if (!(eps_tail > 0 && eps_tail < 1e-3)) {
            throw precondition_error("truncation: eps_tail must lie in (0, 1e-3)");
        }
        if (k_hard_cap < 1) {
            throw precondition_error("truncation: k_hard_cap must be >= 1");
        }
    }
};

// Normalized weights pi_k(nx) / (A1(h(1)) A2(nx h(1))), k < k_used.
struct weight_vector {
    std::vector<double> w;
    std::int64_t n = 1;
    double x = 0;
    double mass = 0;
    std::int64_t k_used = 0;
    // Smallest weight before negative rounding noise was clamped to zero.
    double min_raw = 0;
};

enum class weight_path {
    automatic,   // closed form when the family has one, else the table
    closed_form, // log-space explicit weights
    table        // Horner on the Brenke table, long double range
};

// Weights below this are rounding noise and are clamped to zero; anything more
// negative is a positivity violation.
inline constexpr double weight_negativity_tolerance = 1e-12;

namespace detail
{

inline void check_point(std::int64_t n, double x)
{
    if (n < 1) {
        throw precondition_error("operator: n must be >= 1");
    }
    if (!(x >= 0) || !std::isfinite(x)) {
        throw precondition_error("operator: x must be finite and >= 0");
    }
}

inline double accept_weight(long double w, std::int64_t k)
{
    if (std::isnan(w)) {
        throw overflow_error("weight " + std::to_string(k) + " is not a number");
    }
    if (w < -weight_negativity_tolerance) {
        std::ostringstream os;
        os << "weight " << k << " = " << static_cast<double>(w) << " is negative beyond rounding";
        throw positivity_error(os.str());
    }
    return w < 0 ? 0.0 : static_cast<double>(w);
}

} // namespace detail

inline weight_vector weights(const family_spec &f, std::int64_t n, double x, const truncation_policy &policy = {},
                             weight_path path = weight_path::automatic)
{
    detail::check_point(n, x);
    policy.validate();
    if (path == weight_path::automatic) {
        path = f.has_closed_form() ? weight_path::closed_form : weight_path::table;
    }
    if (path == weight_path::closed_form && !f.has_closed_form()) {
        throw precondition_error("family '" + f.name + "' has no closed-form weight");
    }

    weight_vector out;
    out.n = n;
    out.x = x;
    const long double target = policy.mass_target();
    long double mass = 0;
    long double raw_min = std::numeric_limits<long double>::infinity();
    bool reached = false;

    if (path == weight_path::closed_form) {
        for (std::int64_t k = 0; k < policy.k_hard_cap; ++k) {
            const long double w = std::exp(f.closed_form_log_weight(k, n, x));
            raw_min = std::min(raw_min, w);
            out.w.push_back(detail::accept_weight(w, k));
            mass += w;
            if (mass >= target) {
                reached = true;
                break;
            }
        }
    } else {
        const long double y = static_cast<long double>(n) * x;
        const long double log_norm = f.log_normalization(y);
        if (!std::isfinite(log_norm)) {
            throw overflow_error("normalization A1(h(1)) A2(nx h(1)) is not finite for family '" + f.name + "'");
        }
        const long double inv_norm = std::exp(-log_norm);
        if (!(inv_norm > 0) || !std::isfinite(inv_norm)) {
            throw overflow_error("normalization A1(h(1)) A2(nx h(1)) is outside the extended range");
        }
        const auto last = std::min<std::int64_t>(policy.k_hard_cap, static_cast<std::int64_t>(f.k_max()) + 1);
        for (std::int64_t k = 0; k < last; ++k) {
            const long double w = eval_pi(*f.table, static_cast<std::size_t>(k), y) * inv_norm;
            raw_min = std::min(raw_min, w);
            out.w.push_back(detail::accept_weight(w, k));
            mass += w;
            if (mass >= target) {
                reached = true;
                break;
            }
        }
    }
    out.mass = static_cast<double>(mass);
    out.min_raw = static_cast<double>(raw_min);
    out.k_used = static_cast<std::int64_t>(out.w.size());
    if (!reached) {
        std::ostringstream os;
        os.precision(15);
        os << "cumulative mass " << static_cast<double>(mass) << " below target after " << out.k_used
           << " terms (family '" << f.name << "', n = " << n << ", x = " << x
           << "); the series diverges or K_max is too small";
        throw mass_deficit(os.str());
    }
    return out;
}

// Node (k + nu1)/(n + nu2), computed directly for each k.
inline double stancu_node(std::int64_t k, std::int64_t n, const stancu_params &s) noexcept
{
    return (static_cast<double>(k) + s.nu1) / (static_cast<double>(n) + s.nu2);
}

template <class Func>
double apply(const weight_vector &wv, Func &&func, const stancu_params &s)
{
    long double acc = 0;
    for (std::int64_t k = 0; k < wv.k_used; ++k) {
        const double wk = wv.w[static_cast<std::size_t>(k)];
        const double node = stancu_node(k, wv.n, s);
        const double v = func(node);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "function is not finite at node " << node;
            throw non_finite_sample(os.str());
        }
        if (wk != 0) {
            acc += static_cast<long double>(wk) * v;
        }
    }
    return static_cast<double>(acc);
}

// L_n^{(nu1,nu2)}(func; x).
template <class Func>
double apply(const family_spec &f, Func &&func, std::int64_t n, double x, const stancu_params &s = {},
             const truncation_policy &policy = {})
{
    return apply(weights(f, n, x, policy), std::forward<Func>(func), s);
}

// Szasz operator from Poisson weights built by ratio recurrence outward from the mode
// and normalized by their sum; shares no code with the family weight paths.
template <class Func>
double szasz_apply(Func &&func, std::int64_t n, double x)
{
    detail::check_point(n, x);
    auto sample = [&](std::int64_t k) {
        const double node = static_cast<double>(k) / static_cast<double>(n);
        const double v = func(node);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "function is not finite at node " << node;
            throw non_finite_sample(os.str());
        }
        return static_cast<long double>(v);
    };
    const long double lambda = static_cast<long double>(n) * x;
    if (lambda == 0) {
        return static_cast<double>(sample(0));
    }
    constexpr long double cutoff = 1e-24L;
    const auto mode = static_cast<std::int64_t>(std::floor(lambda));
    long double mass = 1;
    long double acc = sample(mode);
    long double u = 1;
    for (std::int64_t k = mode; u > cutoff; ++k) {
        u *= lambda / static_cast<long double>(k + 1);
        mass += u;
        acc += u * sample(k + 1);
    }
    u = 1;
    for (std::int64_t k = mode; k > 0 && u > cutoff; --k) {
        u *= static_cast<long double>(k) / lambda;
        mass += u;
        acc += u * sample(k - 1);
    }
    return static_cast<double>(acc / mass);
}

// Jakimovski-Leviatan operator: the nu1 = nu2 = 0 operator of an Appell family.
template <class Func>
double jakimovski_leviatan_apply(const family_spec &f, Func &&func, std::int64_t n, double x,
                                 const truncation_policy &policy = {})
{
    if (!f.appell_structure) {
        throw precondition_error("jakimovski_leviatan_apply: family '" + f.name
                                 + "' is not an Appell family (A2 = exp, h = identity)");
    }
    return apply(f, std::forward<Func>(func), n, x, stancu_params{}, policy);
}

} // namespace brenke

#endif
