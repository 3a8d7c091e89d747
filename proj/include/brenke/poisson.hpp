#ifndef BRENKE_POISSON_HPP
#define BRENKE_POISSON_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace brenke
{

using log_real = long double;

inline constexpr log_real log_zero = -std::numeric_limits<log_real>::infinity();

namespace detail
{

// log(k!) - [(k + 1/2) log k - k + log sqrt(2 pi)], the Stirling remainder.
inline log_real stirling_error(std::int64_t k) noexcept
{
    constexpr log_real s0 = 1.0L / 12;
    constexpr log_real s1 = 1.0L / 360;
    constexpr log_real s2 = 1.0L / 1260;
    constexpr log_real s3 = 1.0L / 1680;
    constexpr log_real s4 = 1.0L / 1188;
    const log_real n = static_cast<log_real>(k);
    if (k <= 15) {
        const log_real log_sqrt_2pi = 0.5L * std::log(2.0L * std::numbers::pi_v<log_real>);
        return std::lgamma(n + 1) - (n + 0.5L) * std::log(n) + n - log_sqrt_2pi;
    }
    const log_real nn = n * n;
    if (k > 500) {
        return (s0 - s1 / nn) / n;
    }
    if (k > 80) {
        return (s0 - (s1 - s2 / nn) / nn) / n;
    }
    if (k > 35) {
        return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    }
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x/m) + m - x, evaluated without cancellation near x = m.
inline log_real poisson_deviance(log_real x, log_real m) noexcept
{
    if (std::fabs(x - m) < 0.1L * (x + m)) {
        log_real v = (x - m) / (x + m);
        log_real s = (x - m) * v;
        log_real ej = 2 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const log_real s1 = s + ej / (2 * j + 1);
            if (s1 == s) {
                return s1;
            }
            s = s1;
        }
        return s;
    }
    return x * std::log(x / m) + m - x;
}

} // namespace detail

// log of the Poisson pmf e^{-mean} mean^k / k!, saddle-point form.
inline log_real log_poisson_pmf(std::int64_t k, log_real mean) noexcept
{
    if (k < 0) {
        return log_zero;
    }
    if (mean == 0) {
        return k == 0 ? log_real(0) : log_zero;
    }
    if (k == 0) {
        return -mean;
    }
    const log_real kk = static_cast<log_real>(k);
    return -detail::stirling_error(k) - detail::poisson_deviance(kk, mean)
           - 0.5L * std::log(2.0L * std::numbers::pi_v<log_real> * kk);
}

// Streaming log-sum-exp accumulator.
class log_sum
{
public:
    void add(log_real term) noexcept
    {
        if (term == log_zero) {
            return;
        }
        if (term <= m_max) {
            m_sum += std::exp(term - m_max);
        } else {
            m_sum = m_sum * std::exp(m_max - term) + 1;
            m_max = term;
        }
    }
    [[nodiscard]] log_real max() const noexcept
    {
        return m_max;
    }
    [[nodiscard]] log_real value() const noexcept
    {
        return m_max == log_zero ? log_zero : m_max + std::log(m_sum);
    }

private:
    log_real m_max = log_zero;
    log_real m_sum = 0;
};

// log sum_s c_s Poisson(k - stride*s; mean), with log c_s = log_coef(s) supplied in
// increasing s. tail_bound(s) must bound log c_{s'} from above for every s' >= s;
// summation stops once the remaining terms are below e^{-60} of the running maximum.
template <class LogCoef, class TailBound>
log_real log_poisson_mixture(std::int64_t k, log_real mean, std::int64_t stride, LogCoef &&log_coef,
                             TailBound &&tail_bound)
{
    const log_real log_mode = log_poisson_pmf(static_cast<std::int64_t>(std::floor(mean)), mean);
    log_sum acc;
    for (std::int64_t s = 0; stride * s <= k; ++s) {
        const log_real lc = log_coef(s);
        acc.add(lc + log_poisson_pmf(k - stride * s, mean));
        if (acc.max() != log_zero && tail_bound(s + 1) + log_mode < acc.max() - 60) {
            break;
        }
    }
    return acc.value();
}

} // namespace brenke

#endif
