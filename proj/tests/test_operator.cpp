#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include <brenke/families.hpp>
#include <brenke/operator.hpp>

#include "oracles.hpp"

namespace
{

std::vector<brenke::family_spec> builtins()
{
    const auto src = brenke::coefficient_source::named(brenke::coefficient_source::kind::exp);
    return {brenke::make_szasz(),
            brenke::make_appell(brenke::detail::to_series(src, brenke::default_k_max), brenke::detail::to_function(src)),
            brenke::make_gould_hopper(1, 1), brenke::make_miller_lee(0)};
}

} // namespace

TEST(Weights, MassWithinTolerance)
{
    const brenke::truncation_policy policy;
    for (const auto &f : builtins()) {
        for (const std::int64_t n : {1, 4, 64, 256}) {
            for (const double x : {0.0, 0.3, 1.0, 4.0}) {
                const auto wv = brenke::weights(f, n, x, policy);
                EXPECT_LE(std::fabs(wv.mass - 1), 10 * policy.eps_tail) << f.name << ' ' << n << ' ' << x;
                EXPECT_EQ(static_cast<std::int64_t>(wv.w.size()), wv.k_used);
            }
        }
    }
}

TEST(Weights, TruncationIsMinimal)
{
    const brenke::truncation_policy policy;
    for (const auto &f : builtins()) {
        const auto wv = brenke::weights(f, 8, 1.5, policy);
        long double partial = 0;
        for (std::int64_t k = 0; k + 1 < wv.k_used; ++k) {
            partial += wv.w[static_cast<std::size_t>(k)];
        }
        EXPECT_LT(partial, policy.mass_target()) << f.name;
    }
}

TEST(Weights, ClosedFormAndTablePathsAgree)
{
    for (const auto &f : builtins()) {
        for (const double x : {0.0, 0.5, 2.0}) {
            const auto a = brenke::weights(f, 8, x, {}, brenke::weight_path::closed_form);
            const auto b = brenke::weights(f, 8, x, {}, brenke::weight_path::table);
            ASSERT_EQ(a.k_used, b.k_used) << f.name;
            for (std::size_t k = 0; k < a.w.size(); ++k) {
                EXPECT_NEAR(a.w[k], b.w[k], 1e-12 * std::max(a.w[k], 1e-300)) << f.name << ' ' << k;
            }
        }
    }
}

TEST(Weights, HardCapRaisesMassDeficit)
{
    EXPECT_THROW((void)brenke::weights(brenke::make_szasz(), 10, 4, brenke::truncation_policy(1e-12, 3)),
                 brenke::mass_deficit);
    // The table path is limited by K_max.
    EXPECT_THROW((void)brenke::weights(brenke::make_szasz(16), 10, 4, {}, brenke::weight_path::table),
                 brenke::mass_deficit);
}

TEST(Weights, PreconditionsChecked)
{
    const auto f = brenke::make_szasz();
    EXPECT_THROW((void)brenke::weights(f, 0, 1), brenke::precondition_error);
    EXPECT_THROW((void)brenke::weights(f, 1, -0.5), brenke::precondition_error);
    EXPECT_THROW((void)brenke::weights(f, 1, std::numeric_limits<double>::quiet_NaN()), brenke::precondition_error);
    EXPECT_THROW(brenke::truncation_policy(0, 10), brenke::precondition_error);
    EXPECT_THROW(brenke::truncation_policy(1e-2, 10), brenke::precondition_error);
    EXPECT_THROW(brenke::truncation_policy(1e-12, 0), brenke::precondition_error);
}

TEST(Weights, NegativeTableEntriesRaisePositivityError)
{
    // A1 = 1 - t/2 + 2t^2: pi_1(y) = y - 1/2 < 0 for small y, reached before the mass target.
    const auto f = brenke::make_custom(brenke::coefficient_source::list({1, -0.5, 2}),
                                       brenke::coefficient_source::named(brenke::coefficient_source::kind::exp),
                                       brenke::coefficient_source::named(brenke::coefficient_source::kind::identity),
                                       64);
    EXPECT_THROW((void)brenke::weights(f, 1, 0.1), brenke::positivity_error);
}

TEST(Apply, ConstantsAndSzaszSecondMoment)
{
    const auto s = brenke::make_szasz();
    // The truncated tail contributes about eps_tail * E[t^2 | tail]; keep it well below the tolerance.
    const brenke::truncation_policy tight(1e-15, 10000);
    for (const std::int64_t n : {1, 10, 100}) {
        for (const double x : {0.0, 0.4, 1.0, 3.0}) {
            EXPECT_NEAR(brenke::apply(s, [](double) { return 1.0; }, n, x), 1.0, 1e-11);
            EXPECT_NEAR(brenke::apply(s, [](double t) { return t * t; }, n, x, {}, tight),
                        x * x + x / static_cast<double>(n), 1e-10);
        }
    }
}

TEST(Apply, StancuNodesShiftTheMean)
{
    const auto s = brenke::make_szasz();
    const brenke::stancu_params nu(1, 2);
    for (const double x : {0.0, 0.5, 2.0}) {
        const double got = brenke::apply(s, [](double t) { return t; }, 6, x, nu);
        EXPECT_NEAR(got, (6 * x + 1) / 8, 1e-11);
    }
    EXPECT_DOUBLE_EQ(brenke::stancu_node(3, 6, nu), 0.5);
}

TEST(Apply, IsLinear)
{
    const auto f = brenke::make_gould_hopper(1, 2);
    const auto wv = brenke::weights(f, 12, 0.7);
    const auto g1 = [](double t) { return std::sin(3 * t); };
    const auto g2 = [](double t) { return std::sqrt(t); };
    for (const double a : {-2.0, 0.5, 3.0}) {
        for (const double b : {-1.0, 4.0}) {
            const double lhs = brenke::apply(wv, [&](double t) { return a * g1(t) + b * g2(t); }, {});
            const double rhs = a * brenke::apply(wv, g1, {}) + b * brenke::apply(wv, g2, {});
            EXPECT_NEAR(lhs, rhs, 1e-13);
        }
    }
}

TEST(Apply, MatchesDirectSummationOracle)
{
    // Miller-Lee weights summed straight from the Pochhammer formula.
    const double m = 0.5;
    const auto f = brenke::make_miller_lee(m);
    const std::int64_t n = 5;
    const double x = 0.8;
    std::vector<long double> w;
    for (std::size_t k = 0; k < 150; ++k) {
        w.push_back(oracle::miller_lee_weight(m, k, static_cast<long double>(n) * x));
    }
    const auto fn = [](double t) { return std::exp(-t) * t; };
    const long double expect = oracle::sum_weighted(w, fn, n, 0.5, 1.5);
    EXPECT_NEAR(brenke::apply(f, fn, n, x, brenke::stancu_params(0.5, 1.5)), static_cast<double>(expect), 1e-13);
}

TEST(Apply, NonFiniteSampleRejected)
{
    const auto s = brenke::make_szasz();
    EXPECT_THROW((void)brenke::apply(s, [](double t) { return 1 / t; }, 3, 1.0), brenke::non_finite_sample);
    EXPECT_THROW((void)brenke::szasz_apply([](double t) { return std::log(t); }, 3, 1.0), brenke::non_finite_sample);
}

TEST(SzaszReference, AgreesWithFamilyPipeline)
{
    const auto s = brenke::make_szasz();
    const brenke::truncation_policy tight(1e-16, 10000);
    const auto fns = {+[](double) { return 1.0; }, +[](double t) { return t; }, +[](double t) { return t * t; },
                      +[](double t) { return std::exp(-t); }};
    for (const auto fn : fns) {
        for (const std::int64_t n : {1, 8, 64}) {
            for (const double x : {0.0, 0.5, 2.0, 4.0}) {
                EXPECT_NEAR(brenke::szasz_apply(fn, n, x), brenke::apply(s, fn, n, x, {}, tight), 1e-12);
            }
        }
    }
}

TEST(JakimovskiLeviatan, RequiresAppellStructure)
{
    const auto ml = brenke::make_miller_lee(1);
    EXPECT_NEAR(brenke::jakimovski_leviatan_apply(ml, [](double) { return 1.0; }, 3, 1.0), 1.0, 1e-11);
    const auto custom = brenke::make_custom(
        brenke::coefficient_source::list({1}), brenke::coefficient_source::named(brenke::coefficient_source::kind::exp),
        brenke::coefficient_source::list({0, 1, 0.25}), 64);
    EXPECT_THROW((void)brenke::jakimovski_leviatan_apply(custom, [](double) { return 1.0; }, 3, 1.0),
                 brenke::precondition_error);
}
