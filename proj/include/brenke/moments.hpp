#ifndef BRENKE_MOMENTS_HPP
#define BRENKE_MOMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <brenke/errors.hpp>
#include <brenke/families.hpp>
#include <brenke/operator.hpp>

namespace brenke
{

// sum_k k^j pi_k(nx) for j = 0, 1, 2: closed forms next to direct summation over the table.
struct power_sums_result {
    long double s0 = 0, s1 = 0, s2 = 0;
    long double s0_sum = 0, s1_sum = 0, s2_sum = 0;
    double rel_gap = 0;
};

inline power_sums_result power_sums(const family_spec &f, std::int64_t n, double x, const truncation_policy &policy = {})
{
    detail::check_point(n, x);
    const double h1 = f.h1;
    const double y = static_cast<double>(n) * x;
    const double yh = y * h1;
    const long double A1 = f.A1_at(h1);
    const long double A1p = f.A1p_at(h1);
    const long double A1pp = f.A1pp_at(h1);
    const long double A2 = f.A2_at(yh);
    const long double A2p = f.A2p_at(yh);
    const long double A2pp = f.A2pp_at(yh);
    const long double hpp = f.hpp1;
    const long double ly = y;

    power_sums_result r;
    r.s0 = A1 * A2;
    r.s1 = A1p * A2 + ly * A1 * A2p;
    r.s2 = ((hpp + 1) * A1p + A1pp) * A2 + (2 * A1p + (hpp + 1) * A1) * A2p * ly + A1 * A2pp * ly * ly;
    if (!std::isfinite(r.s0) || !std::isfinite(r.s1) || !std::isfinite(r.s2)) {
        throw overflow_error("power_sums: A1/A2 evaluators overflow at nx h(1) = " + std::to_string(yh));
    }

    const weight_vector wv = weights(f, n, x, policy, weight_path::table);
    const long double norm = std::exp(f.log_normalization(ly));
    for (std::int64_t k = 0; k < wv.k_used; ++k) {
        const long double p = static_cast<long double>(wv.w[static_cast<std::size_t>(k)]) * norm;
        const auto kk = static_cast<long double>(k);
        r.s0_sum += p;
        r.s1_sum += kk * p;
        r.s2_sum += kk * kk * p;
    }
    auto gap = [](long double a, long double b) {
        return static_cast<double>(std::fabs(a - b) / std::max(std::fabs(a), 1e-300L));
    };
    r.rel_gap = std::max({gap(r.s0, r.s0_sum), gap(r.s1, r.s1_sum), gap(r.s2, r.s2_sum)});
    return r;
}

struct raw_moment_values {
    double m0 = 1, m1 = 0, m2 = 0;
};

struct central_moment_values {
    double d1 = 0, d2 = 0;
};

namespace detail
{

// Inputs of the moment formulas, including A2'/A2, A2''/A2 at nx h(1).
struct moment_inputs {
    double n, x, nu1, nu2, r1, r2, a1p, a1pp, hpp;
};

inline moment_inputs gather(const family_spec &f, std::int64_t n, double x, const stancu_params &s)
{
    check_point(n, x);
    const double yh = static_cast<double>(n) * x * f.h1;
    moment_inputs in{static_cast<double>(n), x, s.nu1, s.nu2, f.A2p_ratio(yh), f.A2pp_ratio(yh),
                     f.a1_ratio_p, f.a1_ratio_pp, f.hpp1};
    if (!std::isfinite(in.r1) || !std::isfinite(in.r2)) {
        throw overflow_error("A2 ratio evaluators are not finite at nx h(1)");
    }
    return in;
}

} // namespace detail

// L_n(1; x), L_n(s; x), L_n(s^2; x) in closed form.
inline raw_moment_values raw_moments(const family_spec &f, std::int64_t n, double x, const stancu_params &s = {})
{
    const auto [nn, xx, nu1, nu2, r1, r2, a1p, a1pp, hpp] = detail::gather(f, n, x, s);
    const double np = nn + nu2;
    raw_moment_values m;
    m.m0 = 1;
    m.m1 = r1 * nn / np * xx + (a1p + nu1) / np;
    m.m2 = r2 * nn * nn / (np * np) * xx * xx + ((1 + 2 * nu1 + hpp) + 2 * a1p) * r1 * nn / (np * np) * xx
           + (nu1 * nu1 + (1 + 2 * nu1 + hpp) * a1p + a1pp) / (np * np);
    return m;
}

// Delta_1 = L_n(s - x; x) and Delta_2 = L_n((s - x)^2; x) in closed form.
inline central_moment_values central_moments(const family_spec &f, std::int64_t n, double x, const stancu_params &s = {})
{
    const auto [nn, xx, nu1, nu2, r1, r2, a1p, a1pp, hpp] = detail::gather(f, n, x, s);
    const double np = nn + nu2;
    central_moment_values d;
    d.d1 = (r1 * nn / np - 1) * xx + (a1p + nu1) / np;
    d.d2 = (r2 * nn * nn / (np * np) - 2 * r1 * nn / np + 1) * xx * xx
           + ((1 + 2 * nu1 + hpp) * r1 * nn / (np * np) + 2 * a1p * r1 / (np * np) * nn - (a1p + nu1) * 2 / np) * xx
           + nu1 * nu1 / (np * np) + ((1 + 2 * nu1 + hpp) * a1p + a1pp) / (np * np);
    return d;
}

inline constexpr double variance_tolerance = 1e-12;

struct derived_values {
    double delta_n = 0, lambda_n = 0, mu_n = 0;
};

// delta_n = sqrt(Delta_2), lambda_n = (Delta_1 + Delta_2)/2, mu_n = (Delta_2 + Delta_1^2)/8.
inline derived_values derived_quantities(double d1, double d2)
{
    if (d2 < -variance_tolerance) {
        throw negative_variance("second central moment " + std::to_string(d2) + " is negative");
    }
    d2 = std::max(d2, 0.0);
    return {std::sqrt(d2), (d1 + d2) / 2, (d2 + d1 * d1) / 8};
}

struct moment_report {
    std::string family;
    std::int64_t n = 1;
    double x = 0;
    stancu_params s;
    double m0 = 1, m1 = 0, m2 = 0;
    double d1 = 0, d2 = 0;
    double delta_n = 0, lambda_n = 0, mu_n = 0;
    double m0_sum = 0, m1_sum = 0, m2_sum = 0;
    double d1_sum = 0, d2_sum = 0;
    // max over m0, m1, m2, d1, d2 of |closed - summed| / max(|closed|, 1e-2)
    double max_rel_gap = 0;
};

inline double moment_gap(double closed, double summed) noexcept
{
    return std::fabs(closed - summed) / std::max(std::fabs(closed), 1e-2);
}

inline moment_report compute_moments(const family_spec &f, const weight_vector &wv, const stancu_params &s)
{
    moment_report r;
    r.family = f.name;
    r.n = wv.n;
    r.x = wv.x;
    r.s = s;
    const auto raw = raw_moments(f, wv.n, wv.x, s);
    const auto cen = central_moments(f, wv.n, wv.x, s);
    r.m0 = raw.m0;
    r.m1 = raw.m1;
    r.m2 = raw.m2;
    r.d1 = cen.d1;
    r.d2 = cen.d2;
    const auto dq = derived_quantities(cen.d1, cen.d2);
    r.delta_n = dq.delta_n;
    r.lambda_n = dq.lambda_n;
    r.mu_n = dq.mu_n;

    const double x = wv.x;
    r.m0_sum = apply(wv, [](double) { return 1.0; }, s);
    r.m1_sum = apply(wv, [](double t) { return t; }, s);
    r.m2_sum = apply(wv, [](double t) { return t * t; }, s);
    r.d1_sum = apply(wv, [x](double t) { return t - x; }, s);
    r.d2_sum = apply(wv, [x](double t) { return (t - x) * (t - x); }, s);
    r.max_rel_gap = std::max({moment_gap(r.m0, r.m0_sum), moment_gap(r.m1, r.m1_sum), moment_gap(r.m2, r.m2_sum),
                              moment_gap(r.d1, r.d1_sum), moment_gap(r.d2, r.d2_sum)});
    return r;
}

inline moment_report compute_moments(const family_spec &f, std::int64_t n, double x, const stancu_params &s = {},
                                     const truncation_policy &policy = {})
{
    return compute_moments(f, weights(f, n, x, policy), s);
}

} // namespace brenke

#endif
