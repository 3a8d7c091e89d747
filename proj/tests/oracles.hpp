#ifndef BRENKE_TESTS_ORACLES_HPP
#define BRENKE_TESTS_ORACLES_HPP

// Reference values computed independently of the library code paths.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle
{

// Poisson(mean) probabilities for k = 0..k_max by forward products in long double.
inline std::vector<long double> poisson_pmf(long double mean, std::size_t k_max)
{
    std::vector<long double> p(k_max + 1);
    p[0] = std::exp(-mean);
    for (std::size_t k = 1; k <= k_max; ++k) {
        p[k] = p[k - 1] * mean / static_cast<long double>(k);
    }
    return p;
}

// e^{-y} G_k^{(m)}(2y) / 2^{m+k+1} with G_k^{(m)}(x) = sum_r (m+1)_r x^{k-r} / (r! (k-r)!).
inline long double miller_lee_weight(double m, std::size_t k, long double y)
{
    long double sum = 0;
    long double poch_over_fact = 1; // (m+1)_r / r!
    for (std::size_t r = 0; r <= k; ++r) {
        if (r > 0) {
            poch_over_fact *= (static_cast<long double>(m) + r) / static_cast<long double>(r);
        }
        long double term = poch_over_fact;
        for (std::size_t j = 1; j <= k - r; ++j) {
            term *= 2 * y / static_cast<long double>(j);
        }
        sum += term;
    }
    return std::exp(-y) * sum / std::pow(2.0L, static_cast<long double>(m) + static_cast<long double>(k) + 1);
}

// e^{-y-b} g_k^{d+1}(y, b) / k! with g_k^{d+1}(y, b) = sum_s k! b^s y^{k-(d+1)s} / (s! (k-(d+1)s)!).
inline long double gould_hopper_weight(double b, int d, std::size_t k, long double y)
{
    long double sum = 0;
    const std::size_t step = static_cast<std::size_t>(d) + 1;
    for (std::size_t s = 0; s * step <= k; ++s) {
        long double term = 1;
        for (std::size_t j = 1; j <= s; ++j) {
            term *= static_cast<long double>(b) / static_cast<long double>(j);
        }
        for (std::size_t j = 1; j <= k - s * step; ++j) {
            term *= y / static_cast<long double>(j);
        }
        sum += term;
    }
    return std::exp(-y - static_cast<long double>(b)) * sum;
}

// Appell polynomial for A1 = e^t: pi_k(y) = sum_j y^j / (j! (k-j)!), weight e^{-1-y} pi_k(y).
inline long double appell_exp_weight(std::size_t k, long double y)
{
    long double sum = 0;
    for (std::size_t j = 0; j <= k; ++j) {
        long double term = 1;
        for (std::size_t i = 1; i <= j; ++i) {
            term *= y / static_cast<long double>(i);
        }
        for (std::size_t i = 1; i <= k - j; ++i) {
            term /= static_cast<long double>(i);
        }
        sum += term;
    }
    return std::exp(-1 - y) * sum;
}

// sum_k w_k f(node_k) by plain summation.
template <class W, class F>
long double sum_weighted(const std::vector<W> &w, F &&f, double n, double nu1 = 0, double nu2 = 0)
{
    long double acc = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        acc += static_cast<long double>(w[k]) * f((static_cast<double>(k) + nu1) / (n + nu2));
    }
    return acc;
}

} // namespace oracle

#endif
