#ifndef BRENKE_BOUNDS_HPP
#define BRENKE_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include <brenke/errors.hpp>
#include <brenke/families.hpp>
#include <brenke/moments.hpp>
#include <brenke/operator.hpp>
#include <brenke/smoothness.hpp>
#include <brenke/test_functions.hpp>

namespace brenke
{

// Slack allowed when comparing an empirical error against a bound.
inline constexpr double domination_slack = 1e-10;

struct window_config {
    double t_max = default_window_t_max;
    double step = default_window_step;
    // Extra look-ahead for the Steklov smoothing; bounds the largest h candidate.
    double pad = 1.0;
};

// A registered function with its sampled window and K-functional profile.
class function_context
{
public:
    function_context(const test_function &fn, const window_config &w = {})
        : m_fn(&fn), m_window(w), m_grid(std::make_shared<const window_grid>(fn.eval, w.t_max, w.step, w.pad))
    {
    }

    [[nodiscard]] const test_function &fn() const noexcept
    {
        return *m_fn;
    }
    [[nodiscard]] const window_grid &grid() const noexcept
    {
        return *m_grid;
    }
    [[nodiscard]] const window_config &window() const noexcept
    {
        return m_window;
    }

    // Modulus that is an upper bound whenever a closed form is registered.
    [[nodiscard]] double omega(double delta) const
    {
        if (delta <= 0) {
            return 0;
        }
        if (m_fn->omega) {
            return m_fn->omega(delta, m_window.t_max);
        }
        return grid_modulus(*m_grid, delta).value;
    }

    [[nodiscard]] double omega2(double delta) const
    {
        if (delta <= 0) {
            return 0;
        }
        if (m_fn->omega2) {
            return m_fn->omega2(delta, m_window.t_max);
        }
        return grid_second_modulus(*m_grid, delta).value;
    }

    [[nodiscard]] const k_functional_profile &k_profile() const
    {
        if (!m_profile) {
            const auto hs = default_h_candidates(*m_grid);
            m_profile = std::make_shared<const k_functional_profile>(*m_grid, hs);
        }
        return *m_profile;
    }

private:
    const test_function *m_fn;
    window_config m_window;
    std::shared_ptr<const window_grid> m_grid;
    mutable std::shared_ptr<const k_functional_profile> m_profile;
};

namespace detail
{

inline derived_values derived_at(const family_spec &family, std::int64_t n, double x, const stancu_params &s)
{
    const auto c = central_moments(family, n, x, s);
    return derived_quantities(c.d1, c.d2);
}

} // namespace detail

// 2 omega(f; delta_n(x)).
inline double modulus_bound(const function_context &fc, const family_spec &family, std::int64_t n, double x,
                            const stancu_params &s = {})
{
    return 2 * fc.omega(detail::derived_at(family, n, x, s).delta_n);
}

// M delta_n(x)^alpha.
inline double lipschitz_bound(double alpha, double M, const family_spec &family, std::int64_t n, double x,
                              const stancu_params &s = {})
{
    if (!(alpha > 0 && alpha <= 1)) {
        throw precondition_error("Lipschitz order alpha must lie in (0, 1]");
    }
    if (!(M >= 0)) {
        throw precondition_error("Lipschitz constant M must be nonnegative");
    }
    const double delta = detail::derived_at(family, n, x, s).delta_n;
    return delta == 0 ? 0.0 : M * std::pow(delta, alpha);
}

struct k_functional_bound_value {
    double bound = 0;
    bool lambda_clamped = false;
};

// 2 K(f; lambda_n(x)) with the Steklov upper estimate of K; negative lambda_n is clamped to 0.
inline k_functional_bound_value k_functional_bound(const function_context &fc, const family_spec &family,
                                                   std::int64_t n, double x, const stancu_params &s = {})
{
    const double lambda = detail::derived_at(family, n, x, s).lambda_n;
    k_functional_bound_value out;
    out.lambda_clamped = lambda < 0;
    out.bound = 2 * fc.k_profile().evaluate(std::max(lambda, 0.0)).value;
    return out;
}

// C omega_2(f; sqrt(mu_n(x))) + omega(f; |Delta_1(x)|).
inline double second_modulus_bound(const function_context &fc, const family_spec &family, std::int64_t n,
                                   double x, const stancu_params &s, double C)
{
    if (!(C > 0)) {
        throw precondition_error("constant C must be positive");
    }
    const auto c = central_moments(family, n, x, s);
    const auto dq = derived_quantities(c.d1, c.d2);
    return C * fc.omega2(std::sqrt(dq.mu_n)) + fc.omega(std::fabs(c.d1));
}

struct bound_report {
    std::string family;
    std::string f_name;
    std::int64_t n = 1;
    double x = 0;
    stancu_params s;
    double err_emp = 0;
    double b22 = 0, b23 = 0, b24 = 0, b25 = 0;
    bool has_b23 = false;
    bool dom22 = false, dom23 = false, dom24 = false, dom25 = false;
    bool lambda_clamped = false;
    double second_modulus_constant = 4;
    std::string status = "ok";
};

inline bool dominated(double err, double bound) noexcept
{
    return err <= bound + domination_slack;
}

// One report for a single (family, f, n, x, s) cell.
inline bound_report bound_cell(const family_spec &family, const function_context &fc, const weight_vector &wv,
                               const stancu_params &s, double second_modulus_constant)
{
    bound_report r;
    r.family = family.name;
    r.f_name = fc.fn().name;
    r.n = wv.n;
    r.x = wv.x;
    r.s = s;
    r.second_modulus_constant = second_modulus_constant;
    const auto &fn = fc.fn();
    r.err_emp = std::fabs(apply(wv, fn.eval, s) - fn(wv.x));
    r.b22 = modulus_bound(fc, family, wv.n, wv.x, s);
    if (!fn.lipschitz.empty()) {
        const auto [alpha, M] = fn.lipschitz.front();
        r.has_b23 = true;
        r.b23 = lipschitz_bound(alpha, M, family, wv.n, wv.x, s);
    }
    const auto kf = k_functional_bound(fc, family, wv.n, wv.x, s);
    r.b24 = kf.bound;
    r.lambda_clamped = kf.lambda_clamped;
    r.b25 = second_modulus_bound(fc, family, wv.n, wv.x, s, second_modulus_constant);
    r.dom22 = dominated(r.err_emp, r.b22);
    r.dom23 = r.has_b23 && dominated(r.err_emp, r.b23);
    r.dom24 = dominated(r.err_emp, r.b24);
    r.dom25 = dominated(r.err_emp, r.b25);
    if (r.lambda_clamped) {
        r.status = "lambda_clamped";
    }
    return r;
}

inline bool report_order(const bound_report &a, const bound_report &b)
{
    return std::tie(a.family, a.f_name, a.s.nu1, a.s.nu2, a.n, a.x)
           < std::tie(b.family, b.f_name, b.s.nu1, b.s.nu2, b.n, b.x);
}

// Sweep over every (family, function, n, x, s) combination. Cell failures are recorded
// in the report status and do not abort the sweep.
inline std::vector<bound_report> verify(const std::vector<family_spec> &families,
                                        const std::vector<function_context> &functions,
                                        const std::vector<std::int64_t> &n_list, const std::vector<double> &x_grid,
                                        const std::vector<stancu_params> &s_list, double second_modulus_constant,
                                        const truncation_policy &policy = {})
{
    std::vector<bound_report> out;
    for (const auto &family : families) {
        for (const auto n : n_list) {
            for (const double x : x_grid) {
                std::unique_ptr<weight_vector> wv;
                std::string weight_error;
                try {
                    wv = std::make_unique<weight_vector>(weights(family, n, x, policy));
                } catch (const error &e) {
                    weight_error = e.what();
                }
                for (const auto &s : s_list) {
                    for (const auto &fc : functions) {
                        if (!wv) {
                            bound_report r;
                            r.family = family.name;
                            r.f_name = fc.fn().name;
                            r.n = n;
                            r.x = x;
                            r.s = s;
                            r.second_modulus_constant = second_modulus_constant;
                            r.err_emp = std::numeric_limits<double>::quiet_NaN();
                            r.status = "error: " + weight_error;
                            out.push_back(std::move(r));
                            continue;
                        }
                        try {
                            out.push_back(bound_cell(family, fc, *wv, s, second_modulus_constant));
                        } catch (const error &e) {
                            bound_report r;
                            r.family = family.name;
                            r.f_name = fc.fn().name;
                            r.n = n;
                            r.x = x;
                            r.s = s;
                            r.second_modulus_constant = second_modulus_constant;
                            r.err_emp = std::numeric_limits<double>::quiet_NaN();
                            r.status = std::string("error: ") + e.what();
                            out.push_back(std::move(r));
                        }
                    }
                }
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), report_order);
    return out;
}

} // namespace brenke

#endif
