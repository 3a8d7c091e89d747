#ifndef BRENKE_SERIES_HPP
#define BRENKE_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <brenke/errors.hpp>

namespace brenke
{

// Coefficient type of every series and of the polynomial table.
using coeff_t = long double;

namespace detail
{

template <class Real>
Real flush_subnormal(Real v) noexcept
{
    return std::fpclassify(v) == FP_SUBNORMAL ? Real(0) : v;
}

} // namespace detail

// Truncated formal power series sum_j c[j] t^j, j = 0..order().
template <class Real>
class basic_series
{
public:
    using value_type = Real;

    basic_series() : m_coeffs(1, Real(0)) {}

    explicit basic_series(std::vector<Real> coeffs) : m_coeffs(std::move(coeffs))
    {
        if (m_coeffs.empty()) {
            throw precondition_error("a series needs at least one coefficient");
        }
        for (std::size_t j = 0; j < m_coeffs.size(); ++j) {
            if (!std::isfinite(m_coeffs[j])) {
                throw coefficient_error("non-finite series coefficient", j);
            }
            m_coeffs[j] = detail::flush_subnormal(m_coeffs[j]);
        }
    }

    // Series whose coefficients are gen(0), ..., gen(order).
    template <class Gen>
    static basic_series generate(std::size_t order, Gen &&gen)
    {
        std::vector<Real> c(order + 1);
        for (std::size_t j = 0; j <= order; ++j) {
            c[j] = static_cast<Real>(gen(j));
        }
        return basic_series(std::move(c));
    }

    [[nodiscard]] std::size_t size() const noexcept
    {
        return m_coeffs.size();
    }
    [[nodiscard]] std::size_t order() const noexcept
    {
        return m_coeffs.size() - 1;
    }
    [[nodiscard]] Real operator[](std::size_t j) const noexcept
    {
        return m_coeffs[j];
    }
    // Coefficient of t^j, zero beyond the truncation order.
    [[nodiscard]] Real at(std::size_t j) const noexcept
    {
        return j < m_coeffs.size() ? m_coeffs[j] : Real(0);
    }
    [[nodiscard]] std::span<const Real> coeffs() const noexcept
    {
        return m_coeffs;
    }

    // Index of the first nonzero coefficient, or size() for the zero series.
    [[nodiscard]] std::size_t valuation() const noexcept
    {
        const auto it = std::find_if(m_coeffs.begin(), m_coeffs.end(), [](Real v) { return v != Real(0); });
        return static_cast<std::size_t>(it - m_coeffs.begin());
    }

    // Sum of the truncated series at t (Horner).
    template <class T>
    [[nodiscard]] T evaluate(T t) const noexcept
    {
        T acc(0);
        for (auto it = m_coeffs.rbegin(); it != m_coeffs.rend(); ++it) {
            acc = acc * t + static_cast<T>(*it);
        }
        return acc;
    }

    // Formal derivative, truncated to the same order minus one (at least one coefficient).
    [[nodiscard]] basic_series derivative() const
    {
        if (m_coeffs.size() == 1) {
            return basic_series();
        }
        std::vector<Real> d(m_coeffs.size() - 1);
        for (std::size_t j = 1; j < m_coeffs.size(); ++j) {
            d[j - 1] = static_cast<Real>(j) * m_coeffs[j];
        }
        return basic_series(std::move(d));
    }

    friend bool operator==(const basic_series &, const basic_series &) = default;

private:
    std::vector<Real> m_coeffs;
};

using series = basic_series<coeff_t>;

// Cauchy product truncated to order K.
template <class Real>
basic_series<Real> series_mul(const basic_series<Real> &a, const basic_series<Real> &b, std::size_t K)
{
    if (K > a.order() || K > b.order()) {
        throw precondition_error("series_mul: requested order " + std::to_string(K)
                                 + " exceeds the available truncation order");
    }
    std::vector<Real> out(K + 1, Real(0));
    const std::size_t va = a.valuation();
    const std::size_t vb = b.valuation();
    for (std::size_t j = va + vb; j <= K; ++j) {
        Real acc(0);
        for (std::size_t i = va; i + vb <= j; ++i) {
            acc += a[i] * b[j - i];
        }
        out[j] = acc;
    }
    return basic_series<Real>(std::move(out));
}

// Memoized powers inner^0, ..., inner^K of a series without constant term.
template <class Real>
class power_cache
{
public:
    power_cache(const basic_series<Real> &inner, std::size_t K)
    {
        if (inner[0] != Real(0)) {
            throw coefficient_error("composition requires an inner series without constant term", 0);
        }
        if (K > inner.order()) {
            throw precondition_error("power_cache: requested order exceeds the inner truncation order");
        }
        std::vector<Real> one(K + 1, Real(0));
        one[0] = Real(1);
        m_powers.reserve(K + 1);
        m_powers.emplace_back(std::move(one));
        const basic_series<Real> base = truncate(inner, K);
        for (std::size_t m = 1; m <= K; ++m) {
            m_powers.push_back(series_mul(m_powers.back(), base, K));
        }
    }

    [[nodiscard]] const basic_series<Real> &operator[](std::size_t m) const noexcept
    {
        return m_powers[m];
    }
    [[nodiscard]] std::size_t size() const noexcept
    {
        return m_powers.size();
    }

    static basic_series<Real> truncate(const basic_series<Real> &s, std::size_t K)
    {
        std::vector<Real> c(K + 1, Real(0));
        std::copy_n(s.coeffs().begin(), std::min(K + 1, s.size()), c.begin());
        return basic_series<Real>(std::move(c));
    }

private:
    std::vector<basic_series<Real>> m_powers;
};

// outer(inner(t)) truncated to order K. The inner series must have inner[0] == 0,
// so inner^m contributes nothing below t^m and the result is exact to order K.
template <class Real>
basic_series<Real> series_compose(const basic_series<Real> &outer, const power_cache<Real> &powers, std::size_t K)
{
    if (K >= powers.size()) {
        throw precondition_error("series_compose: requested order exceeds the cached powers");
    }
    std::vector<Real> out(K + 1, Real(0));
    for (std::size_t m = 0; m <= std::min(K, outer.order()); ++m) {
        const Real om = outer[m];
        if (om == Real(0)) {
            continue;
        }
        const auto &hm = powers[m];
        for (std::size_t j = m; j <= K; ++j) {
            out[j] += om * hm[j];
        }
    }
    return basic_series<Real>(std::move(out));
}

template <class Real>
basic_series<Real> series_compose(const basic_series<Real> &outer, const basic_series<Real> &inner, std::size_t K)
{
    if (inner[0] != Real(0)) {
        throw coefficient_error("series_compose: inner series must have no constant term", 0);
    }
    return series_compose(outer, power_cache<Real>(inner, K), K);
}

// Triangular table c[k][m], 0 <= m <= k <= k_max, with pi_k(x) = sum_m c[k][m] x^m.
class brenke_table
{
public:
    brenke_table(std::size_t k_max, std::vector<coeff_t> packed) : m_k_max(k_max), m_c(std::move(packed))
    {
        if (m_c.size() != offset(k_max + 1)) {
            throw precondition_error("brenke_table: packed storage has the wrong size");
        }
    }

    [[nodiscard]] std::size_t k_max() const noexcept
    {
        return m_k_max;
    }
    [[nodiscard]] coeff_t coeff(std::size_t k, std::size_t m) const noexcept
    {
        return m <= k ? m_c[offset(k) + m] : coeff_t(0);
    }
    [[nodiscard]] std::span<const coeff_t> row(std::size_t k) const noexcept
    {
        return {m_c.data() + offset(k), k + 1};
    }

private:
    static constexpr std::size_t offset(std::size_t k) noexcept
    {
        return k * (k + 1) / 2;
    }

    std::size_t m_k_max;
    std::vector<coeff_t> m_c;
};

// Expands A1(h(t)) A2(x h(t)) = sum_k pi_k(x) t^k to order K:
// c[k][m] = a2[m] [t^k](A1(h(t)) h(t)^m).
inline brenke_table make_brenke_table(const series &a1, const series &a2, const series &h, std::size_t K)
{
    if (K > a1.order() || K > a2.order() || K > h.order()) {
        throw precondition_error("brenke_table: K_max exceeds a coefficient stream's truncation order");
    }
    if (h[0] != 0) {
        throw coefficient_error("h must have no constant term: h_0 = 0 violated", 0);
    }
    if (K >= 1 && h[1] == 0) {
        throw coefficient_error("h_1 != 0 violated", 1);
    }
    if (a1[0] == 0) {
        throw coefficient_error("a_{1,0} != 0 violated", 0);
    }
    const power_cache<coeff_t> powers(h, K);
    const series outer_b = series_compose(a1, powers, K);

    std::vector<coeff_t> packed(K * (K + 1) / 2 + K + 1, coeff_t(0));
    const auto idx = [](std::size_t k, std::size_t m) { return k * (k + 1) / 2 + m; };
    for (std::size_t m = 0; m <= K; ++m) {
        const auto &hm = powers[m];
        const coeff_t a2m = a2[m];
        // [t^k](B H^m) for k >= m; H^m has valuation >= m.
        for (std::size_t k = m; k <= K; ++k) {
            coeff_t acc(0);
            for (std::size_t i = 0; i + m <= k; ++i) {
                acc += outer_b[i] * hm[k - i];
            }
            packed[idx(k, m)] = detail::flush_subnormal(a2m * acc);
        }
    }
    return brenke_table(K, std::move(packed));
}

// pi_k(y) by Horner over row k.
inline coeff_t eval_pi(const brenke_table &table, std::size_t k, coeff_t y)
{
    if (k > table.k_max()) {
        throw precondition_error("eval_pi: k = " + std::to_string(k) + " exceeds K_max = "
                                 + std::to_string(table.k_max()));
    }
    if (!std::isfinite(y)) {
        throw precondition_error("eval_pi: non-finite argument");
    }
    const auto row = table.row(k);
    coeff_t acc(0);
    for (auto it = row.rbegin(); it != row.rend(); ++it) {
        acc = acc * y + *it;
    }
    if (!std::isfinite(acc)) {
        throw overflow_error("eval_pi: pi_" + std::to_string(k) + " overflows at this argument; use the scaled weight path");
    }
    return acc;
}

} // namespace brenke

#endif
