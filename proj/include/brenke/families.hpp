#ifndef BRENKE_FAMILIES_HPP
#define BRENKE_FAMILIES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <brenke/errors.hpp>
#include <brenke/poisson.hpp>
#include <brenke/series.hpp>

namespace brenke
{

inline constexpr std::size_t default_k_max = 256;

using real_fn = std::function<double(double)>;

// log w_k for the explicit weight pi_k(nx) / (A1(h(1)) A2(nx h(1))).
using log_weight_fn = std::function<log_real(std::int64_t k, std::int64_t n, double x)>;

// A real function together with its first two derivatives.
struct analytic_function {
    real_fn value;
    real_fn first;
    real_fn second;
};

enum class family_kind { szasz, appell, gould_hopper, miller_lee, custom };

inline const char *to_string(family_kind k) noexcept
{
    switch (k) {
        case family_kind::szasz:
            return "szasz";
        case family_kind::appell:
            return "appell";
        case family_kind::gould_hopper:
            return "gould_hopper";
        case family_kind::miller_lee:
            return "miller_lee";
        case family_kind::custom:
            return "custom";
    }
    return "unknown";
}

// Stancu node shift/scale (k + nu1) / (n + nu2).
struct stancu_params {
    double nu1 = 0;
    double nu2 = 0;

    stancu_params() = default;
    stancu_params(double n1, double n2) : nu1(n1), nu2(n2)
    {
        if (!(nu1 >= 0) || !(nu2 >= 0)) {
            throw precondition_error("Stancu parameters must satisfy nu1 >= 0 and nu2 >= 0");
        }
    }

    friend bool operator==(const stancu_params &, const stancu_params &) = default;
};

// A generalized Brenke family A1(h(t)) A2(x h(t)) = sum_k pi_k(x) t^k.
// Immutable after construction; all evaluators are pure.
struct family_spec {
    std::string name;
    family_kind kind = family_kind::custom;

    series a1, a2, h;

    real_fn A1_at, A1p_at, A1pp_at;
    real_fn A2_at, A2p_at, A2pp_at;
    // log A2(y); stays finite where A2 itself overflows a double.
    real_fn log_A2_at;
    // A2'(y)/A2(y) and A2''(y)/A2(y).
    real_fn A2p_ratio, A2pp_ratio;
    real_fn h_at;

    double h1 = 1;
    double hp1 = 1;
    double hpp1 = 0;
    // A1'(h(1))/A1(h(1)) and A1''(h(1))/A1(h(1)).
    double a1_ratio_p = 0;
    double a1_ratio_pp = 0;

    // Empty when the family has no explicit weight formula.
    log_weight_fn closed_form_log_weight;

    std::shared_ptr<const brenke_table> table;

    // True for A2 = exp, h = identity (Jakimovski-Leviatan operators).
    bool appell_structure = false;

    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t k_max() const noexcept
    {
        return table ? table->k_max() : 0;
    }
    [[nodiscard]] bool has_closed_form() const noexcept
    {
        return static_cast<bool>(closed_form_log_weight);
    }
    // log A1(h(1)) + log A2(y h(1)).
    [[nodiscard]] log_real log_normalization(log_real y) const
    {
        return std::log(static_cast<log_real>(A1_at(h1))) + static_cast<log_real>(log_A2_at(static_cast<double>(y * h1)));
    }
};

inline double closed_form_weight(const family_spec &f, std::int64_t k, std::int64_t n, double x)
{
    if (!f.has_closed_form()) {
        throw precondition_error("family '" + f.name + "' has no closed-form weight");
    }
    return static_cast<double>(std::exp(f.closed_form_log_weight(k, n, x)));
}

namespace detail
{

inline series exp_series(std::size_t K, coeff_t scale = 1)
{
    std::vector<coeff_t> c(K + 1);
    coeff_t term = 1;
    for (std::size_t j = 0; j <= K; ++j) {
        if (j > 0) {
            term *= scale / static_cast<coeff_t>(j);
        }
        c[j] = term;
    }
    return series(std::move(c));
}

inline series identity_series(std::size_t K)
{
    std::vector<coeff_t> c(std::max<std::size_t>(K, 1) + 1, 0);
    c[1] = 1;
    return series(std::move(c));
}

inline series unit_series(std::size_t K)
{
    std::vector<coeff_t> c(K + 1, 0);
    c[0] = 1;
    return series(std::move(c));
}

inline void fill_exp_a2(family_spec &f)
{
    f.A2_at = [](double y) { return std::exp(y); };
    f.A2p_at = f.A2_at;
    f.A2pp_at = f.A2_at;
    f.log_A2_at = [](double y) { return y; };
    f.A2p_ratio = [](double) { return 1.0; };
    f.A2pp_ratio = [](double) { return 1.0; };
}

inline void fill_identity_h(family_spec &f, std::size_t K)
{
    f.h = identity_series(K);
    f.h_at = [](double t) { return t; };
    f.h1 = 1;
    f.hp1 = 1;
    f.hpp1 = 0;
}

inline void check_order(std::size_t K)
{
    if (K < 1) {
        throw precondition_error("K_max must be at least 1");
    }
}

inline void check_a2_nonzero(const series &a2, std::size_t K)
{
    for (std::size_t m = 0; m <= K; ++m) {
        if (a2.at(m) == 0) {
            throw coefficient_error("a_{2,k} != 0 violated", m);
        }
    }
}

inline void build_table(family_spec &f, std::size_t K)
{
    f.table = std::make_shared<const brenke_table>(make_brenke_table(f.a1, f.a2, f.h, K));
}

} // namespace detail

// Szasz: A1 = 1, A2 = exp, h = identity; weights are Poisson(nx).
inline family_spec make_szasz(std::size_t K = default_k_max)
{
    detail::check_order(K);
    family_spec f;
    f.name = "szasz";
    f.kind = family_kind::szasz;
    f.a1 = detail::unit_series(K);
    f.a2 = detail::exp_series(K);
    detail::fill_identity_h(f, K);
    f.A1_at = [](double) { return 1.0; };
    f.A1p_at = [](double) { return 0.0; };
    f.A1pp_at = f.A1p_at;
    detail::fill_exp_a2(f);
    f.a1_ratio_p = 0;
    f.a1_ratio_pp = 0;
    f.closed_form_log_weight = [](std::int64_t k, std::int64_t n, double x) {
        return log_poisson_pmf(k, static_cast<log_real>(n) * x);
    };
    f.appell_structure = true;
    detail::build_table(f, K);
    return f;
}

// Appell / Jakimovski-Leviatan: A2 = exp, h = identity, general A1 with a1[0] != 0.
// When every a1[j] >= 0 the weights are the mixture sum_j a1[j]/A1(1) Poisson(k - j; nx).
inline family_spec make_appell(const series &a1, const analytic_function &A1, std::size_t K = default_k_max,
                               std::string name = "appell")
{
    detail::check_order(K);
    if (a1[0] == 0) {
        throw coefficient_error("a_{1,0} != 0 violated", 0);
    }
    if (a1.order() < K) {
        throw precondition_error("make_appell: a1 must be supplied to order K_max");
    }
    family_spec f;
    f.name = std::move(name);
    f.kind = family_kind::appell;
    f.a1 = power_cache<coeff_t>::truncate(a1, K);
    f.a2 = detail::exp_series(K);
    detail::fill_identity_h(f, K);
    f.A1_at = A1.value;
    f.A1p_at = A1.first;
    f.A1pp_at = A1.second;
    detail::fill_exp_a2(f);
    const double A1_1 = f.A1_at(1.0);
    if (!(A1_1 > 0) || !std::isfinite(A1_1)) {
        throw precondition_error("make_appell: A1(1) must be positive and finite");
    }
    f.a1_ratio_p = f.A1p_at(1.0) / A1_1;
    f.a1_ratio_pp = f.A1pp_at(1.0) / A1_1;
    f.appell_structure = true;

    const auto coeffs = f.a1.coeffs();
    if (std::all_of(coeffs.begin(), coeffs.end(), [](coeff_t v) { return v >= 0; })) {
        auto log_c = std::make_shared<std::vector<log_real>>(coeffs.size());
        auto suffix = std::make_shared<std::vector<log_real>>(coeffs.size() + 1, log_zero);
        const log_real log_a1 = std::log(static_cast<log_real>(A1_1));
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            (*log_c)[j] = coeffs[j] > 0 ? std::log(coeffs[j]) - log_a1 : log_zero;
        }
        for (std::size_t j = coeffs.size(); j-- > 0;) {
            (*suffix)[j] = std::max((*log_c)[j], (*suffix)[j + 1]);
        }
        f.closed_form_log_weight = [log_c, suffix](std::int64_t k, std::int64_t n, double x) {
            const auto last = static_cast<std::int64_t>(log_c->size()) - 1;
            return log_poisson_mixture(
                k, static_cast<log_real>(n) * x, 1,
                [&](std::int64_t j) { return j <= last ? (*log_c)[static_cast<std::size_t>(j)] : log_zero; },
                [&](std::int64_t j) { return j <= last ? (*suffix)[static_cast<std::size_t>(j)] : log_zero; });
        };
    }
    detail::build_table(f, K);
    return f;
}

// Gould-Hopper: A1(t) = e^{b t^{d+1}}, A2 = exp, h = identity, b >= 0, d >= 1.
// Weight e^{-nx-b} g_k^{d+1}(nx, b)/k! = sum_s Poisson(s; b) Poisson(k - (d+1)s; nx).
inline family_spec make_gould_hopper(double b, int d, std::size_t K = default_k_max)
{
    detail::check_order(K);
    if (!(b >= 0) || !std::isfinite(b)) {
        throw precondition_error("gould_hopper: b < 0 (weights need b >= 0)");
    }
    if (d < 1) {
        throw precondition_error("gould_hopper: d must be an integer >= 1");
    }
    family_spec f;
    f.name = "gould_hopper";
    f.kind = family_kind::gould_hopper;
    const std::size_t stride = static_cast<std::size_t>(d) + 1;
    f.a1 = series::generate(K, [&](std::size_t j) -> coeff_t {
        if (j % stride != 0) {
            return 0;
        }
        const std::size_t s = j / stride;
        if (s == 0) {
            return 1;
        }
        if (b == 0) {
            return 0;
        }
        return std::exp(static_cast<coeff_t>(s) * std::log(static_cast<coeff_t>(b))
                        - std::lgamma(static_cast<coeff_t>(s) + 1));
    });
    f.a2 = detail::exp_series(K);
    detail::fill_identity_h(f, K);
    const double dd = d;
    f.A1_at = [b, dd](double t) { return std::exp(b * std::pow(t, dd + 1)); };
    f.A1p_at = [b, dd](double t) { return b * (dd + 1) * std::pow(t, dd) * std::exp(b * std::pow(t, dd + 1)); };
    f.A1pp_at = [b, dd](double t) {
        const double g = b * (dd + 1) * std::pow(t, dd);
        return (b * (dd + 1) * dd * std::pow(t, dd - 1) + g * g) * std::exp(b * std::pow(t, dd + 1));
    };
    detail::fill_exp_a2(f);
    f.a1_ratio_p = b * (dd + 1);
    f.a1_ratio_pp = b * (dd + 1) * dd + b * b * (dd + 1) * (dd + 1);
    f.appell_structure = true;
    if (b == 0) {
        f.closed_form_log_weight = [](std::int64_t k, std::int64_t n, double x) {
            return log_poisson_pmf(k, static_cast<log_real>(n) * x);
        };
    } else {
        const auto lb = static_cast<log_real>(b);
        const auto st = static_cast<std::int64_t>(stride);
        f.closed_form_log_weight = [lb, st](std::int64_t k, std::int64_t n, double x) {
            return log_poisson_mixture(
                k, static_cast<log_real>(n) * x, st, [lb](std::int64_t s) { return log_poisson_pmf(s, lb); },
                [lb](std::int64_t s) {
                    return static_cast<log_real>(s) >= lb ? log_poisson_pmf(s, lb) : log_real(0);
                });
        };
    }
    detail::build_table(f, K);
    return f;
}

// Miller-Lee, encoded as A1(t) = (1 - t/2)^{-(m+1)}, A2 = exp, h = identity, m > -1.
// Weight e^{-nx} G_k^{(m)}(2nx) / 2^{m+k+1} = sum_r NB(r) Poisson(k - r; nx) with
// NB(r) = (m+1)_r / (r! 2^{r+m+1}).
inline family_spec make_miller_lee(double m, std::size_t K = default_k_max)
{
    detail::check_order(K);
    if (!(m > -1) || !std::isfinite(m)) {
        throw precondition_error("miller_lee: m <= -1 (requires m > -1)");
    }
    family_spec f;
    f.name = "miller_lee";
    f.kind = family_kind::miller_lee;
    {
        std::vector<coeff_t> c(K + 1);
        c[0] = 1;
        for (std::size_t j = 1; j <= K; ++j) {
            c[j] = c[j - 1] * (static_cast<coeff_t>(m) + static_cast<coeff_t>(j)) / (2 * static_cast<coeff_t>(j));
        }
        f.a1 = series(std::move(c));
    }
    f.a2 = detail::exp_series(K);
    detail::fill_identity_h(f, K);
    f.A1_at = [m](double t) { return std::pow(1 - t / 2, -(m + 1)); };
    f.A1p_at = [m](double t) { return (m + 1) / 2 * std::pow(1 - t / 2, -(m + 2)); };
    f.A1pp_at = [m](double t) { return (m + 1) * (m + 2) / 4 * std::pow(1 - t / 2, -(m + 3)); };
    detail::fill_exp_a2(f);
    f.a1_ratio_p = m + 1;
    f.a1_ratio_pp = (m + 1) * (m + 2);
    f.appell_structure = true;

    const auto lm = static_cast<log_real>(m);
    const log_real ln2 = std::numbers::ln2_v<log_real>;
    const log_real lg_m1 = std::lgamma(lm + 1);
    auto log_nb = [lm, ln2, lg_m1](std::int64_t r) {
        const auto rr = static_cast<log_real>(r);
        return std::lgamma(lm + 1 + rr) - lg_m1 - std::lgamma(rr + 1) - (rr + lm + 1) * ln2;
    };
    f.closed_form_log_weight = [log_nb, lm](std::int64_t k, std::int64_t n, double x) {
        return log_poisson_mixture(k, static_cast<log_real>(n) * x, 1, log_nb, [&](std::int64_t r) {
            return static_cast<log_real>(r) > lm ? log_nb(r) : log_real(0);
        });
    };
    detail::build_table(f, K);
    return f;
}

// Source of a custom coefficient stream: an explicit (finite) list or a named series.
struct coefficient_source {
    enum class kind { list, exp, geometric, identity };
    kind type = kind::list;
    std::vector<double> values;

    static coefficient_source list(std::vector<double> v)
    {
        return {kind::list, std::move(v)};
    }
    static coefficient_source named(kind k)
    {
        return {k, {}};
    }
};

inline std::string to_string(const coefficient_source &src)
{
    switch (src.type) {
        case coefficient_source::kind::exp:
            return "exp";
        case coefficient_source::kind::geometric:
            return "geometric";
        case coefficient_source::kind::identity:
            return "identity";
        case coefficient_source::kind::list:
            break;
    }
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < src.values.size(); ++i) {
        os << (i ? ", " : "") << src.values[i];
    }
    os << ']';
    return os.str();
}

namespace detail
{

inline series to_series(const coefficient_source &src, std::size_t K)
{
    using kind = coefficient_source::kind;
    switch (src.type) {
        case kind::exp:
            return exp_series(K);
        case kind::geometric:
            return series::generate(K, [](std::size_t) { return 1; });
        case kind::identity:
            return identity_series(K);
        case kind::list:
            break;
    }
    if (src.values.empty()) {
        throw precondition_error("empty coefficient list");
    }
    if (src.values.size() > K + 1) {
        throw precondition_error("coefficient list longer than K_max + 1");
    }
    return series::generate(K, [&](std::size_t j) { return j < src.values.size() ? src.values[j] : 0.0; });
}

inline analytic_function to_function(const coefficient_source &src)
{
    using kind = coefficient_source::kind;
    switch (src.type) {
        case kind::exp: {
            real_fn e = [](double t) { return std::exp(t); };
            return {e, e, e};
        }
        case kind::geometric:
            return {[](double t) { return 1 / (1 - t); }, [](double t) { return 1 / ((1 - t) * (1 - t)); },
                    [](double t) { return 2 / ((1 - t) * (1 - t) * (1 - t)); }};
        case kind::identity:
            return {[](double t) { return t; }, [](double) { return 1.0; }, [](double) { return 0.0; }};
        case kind::list:
            break;
    }
    // Polynomial and its derivatives, evaluated by Horner.
    auto make = [](std::vector<double> c) -> real_fn {
        return [c = std::move(c)](double t) {
            double acc = 0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) {
                acc = acc * t + *it;
            }
            return acc;
        };
    };
    auto differentiate = [](const std::vector<double> &c) {
        std::vector<double> d;
        for (std::size_t j = 1; j < c.size(); ++j) {
            d.push_back(static_cast<double>(j) * c[j]);
        }
        return d;
    };
    const auto d1 = differentiate(src.values);
    const auto d2 = differentiate(d1);
    return {make(src.values), make(d1), make(d2)};
}

} // namespace detail

// Root-test estimate of the radius of convergence from the upper half of the stream;
// infinity for polynomials.
inline double estimate_radius(const series &s)
{
    std::size_t last = s.size();
    while (last > 0 && s[last - 1] == 0) {
        --last;
    }
    if (last == 0 || last < s.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t j = std::max<std::size_t>(1, last / 2); j < last; ++j) {
        if (s[j] != 0) {
            r = std::min(r, static_cast<double>(std::pow(std::fabs(s[j]), -1.0L / static_cast<coeff_t>(j))));
        }
    }
    return r;
}

// User-defined family from three coefficient streams. Derivative scalars at h(1)
// come from differentiating the streams.
inline family_spec make_custom(const coefficient_source &a1_src, const coefficient_source &a2_src,
                               const coefficient_source &h_src, std::size_t K = default_k_max)
{
    detail::check_order(K);
    family_spec f;
    f.name = "custom";
    f.kind = family_kind::custom;
    f.a1 = detail::to_series(a1_src, K);
    f.a2 = detail::to_series(a2_src, K);
    f.h = detail::to_series(h_src, K);
    if (f.a1[0] == 0) {
        throw coefficient_error("a_{1,0} != 0 violated", 0);
    }
    if (f.h[0] != 0) {
        throw coefficient_error("h_0 = 0 violated (h must have no constant term)", 0);
    }
    if (f.h[1] == 0) {
        throw coefficient_error("h_1 != 0 violated", 1);
    }
    detail::check_a2_nonzero(f.a2, K);

    const auto A1 = detail::to_function(a1_src);
    const auto A2 = detail::to_function(a2_src);
    const auto H = detail::to_function(h_src);
    f.A1_at = A1.value;
    f.A1p_at = A1.first;
    f.A1pp_at = A1.second;
    f.A2_at = A2.value;
    f.A2p_at = A2.first;
    f.A2pp_at = A2.second;
    if (a2_src.type == coefficient_source::kind::exp) {
        detail::fill_exp_a2(f);
    } else {
        const auto a2v = A2.value;
        const auto a2p = A2.first;
        const auto a2pp = A2.second;
        f.log_A2_at = [a2v](double y) { return std::log(a2v(y)); };
        f.A2p_ratio = [a2v, a2p](double y) { return a2p(y) / a2v(y); };
        f.A2pp_ratio = [a2v, a2pp](double y) { return a2pp(y) / a2v(y); };
    }
    f.h_at = H.value;
    f.h1 = H.value(1.0);
    f.hp1 = H.first(1.0);
    f.hpp1 = H.second(1.0);
    const double A1h = f.A1_at(f.h1);
    f.a1_ratio_p = f.A1p_at(f.h1) / A1h;
    f.a1_ratio_pp = f.A1pp_at(f.h1) / A1h;
    f.appell_structure = a2_src.type == coefficient_source::kind::exp && h_src.type == coefficient_source::kind::identity;

    const double radius = estimate_radius(f.a1);
    if (std::fabs(f.h1) >= 0.9 * radius) {
        std::ostringstream os;
        os << "A1 derivatives evaluated at h(1) = " << f.h1 << ", near the empirical divergence onset " << radius;
        f.warnings.push_back(os.str());
    }
    detail::build_table(f, K);
    return f;
}

// Outcome of a single hypothesis check. Soft checks are reported but do not fail validation.
struct validation_check {
    std::string name;
    bool passed = false;
    bool hard = true;
    std::string detail;
};

struct validation_report {
    std::string family;
    std::vector<validation_check> checks;
    std::vector<std::string> warnings;

    [[nodiscard]] bool passed() const noexcept
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.passed || !c.hard; });
    }

    [[nodiscard]] std::string to_text() const
    {
        std::ostringstream os;
        os << "family: " << family << '\n';
        for (const auto &c : checks) {
            os << (c.passed ? "[PASS] " : (c.hard ? "[FAIL] " : "[WARN] ")) << c.name << ": " << c.detail << '\n';
        }
        for (const auto &w : warnings) {
            os << "[NOTE] " << w << '\n';
        }
        os << (passed() ? "result: pass" : "result: fail") << '\n';
        return os.str();
    }
};

namespace detail
{

inline std::string fmt_point(const char *label, double at, double value)
{
    std::ostringstream os;
    os.precision(12);
    os << "worst at " << label << " = " << at << ": " << value;
    return os.str();
}

} // namespace detail

// Checks the standing hypotheses on a finite grid. Failures are report entries.
// pi_k positivity on a grid is empirical evidence only.
inline validation_report validate(const family_spec &f, std::size_t K, double x_max, std::int64_t n_max)
{
    validation_report rep;
    rep.family = f.name;
    rep.warnings = f.warnings;
    K = std::min(K, f.k_max());
    const double y_max = static_cast<double>(n_max) * x_max;
    constexpr int grid_points = 65;
    auto grid = [&](double hi, int i) { return hi * i / (grid_points - 1); };

    {
        const double gap = std::fabs(f.hp1 - 1);
        std::ostringstream os;
        os.precision(12);
        os << "|h'(1) - 1| = " << gap;
        rep.checks.push_back({"(a) h'(1) = 1", gap <= 1e-12, true, os.str()});
    }
    {
        double worst = std::numeric_limits<double>::infinity();
        double worst_y = 0;
        std::size_t worst_k = 0;
        bool ok = true;
        std::string err;
        for (int i = 0; i < grid_points && err.empty(); ++i) {
            const double y = grid(y_max, i);
            for (std::size_t k = 0; k <= K; ++k) {
                coeff_t v;
                try {
                    v = eval_pi(*f.table, k, y);
                } catch (const error &e) {
                    err = e.what();
                    ok = false;
                    break;
                }
                const auto vd = static_cast<double>(v);
                if (vd < worst) {
                    worst = vd;
                    worst_y = y;
                    worst_k = k;
                }
                if (v < -1e-12L) {
                    ok = false;
                }
            }
        }
        std::ostringstream os;
        os.precision(12);
        if (!err.empty()) {
            os << err;
        } else {
            os << "empirically nonnegative=" << (ok ? "yes" : "no") << ", min pi_" << worst_k << "(" << worst_y
               << ") = " << worst;
        }
        rep.checks.push_back({"(b) pi_k(x) >= 0 on grid", ok, true, os.str()});
    }
    {
        bool ok = true;
        double worst_at = 0;
        double worst_val = std::numeric_limits<double>::infinity();
        const char *which = "A1";
        auto scan = [&](const real_fn &fn, double hi, const char *label) {
            for (int i = 0; i < grid_points; ++i) {
                const double t = grid(hi, i);
                const double v = fn(t);
                if (!(v > 0)) {
                    ok = false;
                }
                if (!(v >= worst_val)) {
                    worst_val = v;
                    worst_at = t;
                    which = label;
                }
            }
        };
        scan(f.A1_at, f.h1, "A1");
        scan(f.A2_at, y_max * f.h1, "A2");
        rep.checks.push_back({"(c) A1 > 0 on [0, h(1)], A2 > 0 on [0, n_max x_max h(1)]", ok, true,
                              std::string(which) + " " + detail::fmt_point("t", worst_at, worst_val)});
    }
    {
        bool ok = true;
        double worst_gap = 0;
        double worst_y = 0;
        for (double y : {1e2, 1e3, 1e4}) {
            const double g1 = std::fabs(f.A2p_ratio(y) - 1);
            const double g2 = std::fabs(f.A2pp_ratio(y) - 1);
            const double g = std::isnan(g1) || std::isnan(g2) ? std::numeric_limits<double>::infinity()
                                                              : std::max(g1, g2);
            if (!(g < 1e-6)) {
                ok = false;
            }
            if (!(g <= worst_gap)) {
                worst_gap = g;
                worst_y = y;
            }
        }
        rep.checks.push_back({"(d) A2'/A2 -> 1 and A2''/A2 -> 1 (spot check)", ok, false,
                              detail::fmt_point("y", worst_y, worst_gap)});
    }
    {
        bool ok = true;
        double worst_res = 0;
        double worst_x = 0;
        double worst_t = 0;
        constexpr double eps = std::numeric_limits<double>::epsilon();
        for (double x : {0.0, 0.5, 1.0, 2.0, 4.0}) {
            for (double t : {0.1, 0.25, 0.5}) {
                coeff_t sum = 0;
                coeff_t abs_sum = 0;
                coeff_t tail = 0;
                coeff_t tp = 1;
                bool overflow = false;
                for (std::size_t k = 0; k <= K; ++k) {
                    coeff_t term;
                    try {
                        term = eval_pi(*f.table, k, x) * tp;
                    } catch (const error &) {
                        overflow = true;
                        break;
                    }
                    sum += term;
                    abs_sum += std::fabs(term);
                    if (k + 8 > K) {
                        tail += std::fabs(term);
                    }
                    tp *= t;
                }
                const double ht = f.h_at(t);
                const double rhs = f.A1_at(ht) * f.A2_at(x * ht);
                const double tail_est = static_cast<double>(tail) + 16 * eps * (std::fabs(rhs) + static_cast<double>(abs_sum));
                const double res = std::fabs(static_cast<double>(sum) - rhs);
                const bool converged = !overflow && std::isfinite(rhs) && tail <= 1e-8L * std::max<coeff_t>(1, std::fabs(sum));
                const double ratio = tail_est > 0 ? res / tail_est : (res == 0 ? 0 : std::numeric_limits<double>::infinity());
                if (!converged || !(res <= 10 * tail_est)) {
                    ok = false;
                }
                const double score = converged ? ratio : std::numeric_limits<double>::infinity();
                if (!(score <= worst_res)) {
                    worst_res = score;
                    worst_x = x;
                    worst_t = t;
                }
            }
        }
        std::ostringstream os;
        os.precision(6);
        os << "worst residual/tail ratio " << worst_res << " at x = " << worst_x << ", t = " << worst_t;
        rep.checks.push_back({"(e) generating-function residual", ok, true, os.str()});
    }
    return rep;
}

} // namespace brenke

#endif
