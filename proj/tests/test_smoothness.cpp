#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <brenke/smoothness.hpp>
#include <brenke/test_functions.hpp>

namespace
{

constexpr double step = 1.0 / 1024;

brenke::window_grid grid_of(const char *name, double t_max = 2, double pad = 1)
{
    return brenke::window_grid(brenke::find_function(name).eval, t_max, step, pad);
}

} // namespace

TEST(Registry, ExactlyTheSevenFunctions)
{
    std::vector<std::string> names;
    for (const auto &f : brenke::registered_functions()) {
        names.push_back(f.name);
    }
    EXPECT_EQ(names, (std::vector<std::string>{"one", "id", "t2", "expneg", "sint", "kink", "sqrtt"}));
    EXPECT_THROW((void)brenke::find_function("cube"), brenke::precondition_error);
}

TEST(Grid, LayoutIncludesEndpointAndPadding)
{
    const auto g = grid_of("id", 2, 0.5);
    EXPECT_EQ(g.window_count(), 2049u);
    EXPECT_EQ(g.pad_count(), 512u);
    EXPECT_DOUBLE_EQ(g.window().back(), 2.0);
    EXPECT_DOUBLE_EQ(g.samples().back(), 2.5);
    EXPECT_THROW(brenke::window_grid([](double t) { return 1 / t; }, 1, step), brenke::non_finite_sample);
}

TEST(Modulus, Examples)
{
    EXPECT_DOUBLE_EQ(brenke::grid_modulus(grid_of("id"), 0.5).value, 0.5);
    EXPECT_DOUBLE_EQ(brenke::grid_modulus(grid_of("t2"), 0.25).value, 0.9375);
    EXPECT_EQ(brenke::grid_modulus(grid_of("one"), 0.3).value, 0);

    const auto id = brenke::modulus(brenke::find_function("id"), 0.5, grid_of("id"));
    EXPECT_EQ(id.direction, brenke::estimate_direction::upper_bound);
    EXPECT_DOUBLE_EQ(id.value, 0.5);
    EXPECT_DOUBLE_EQ(brenke::modulus(brenke::find_function("t2"), 0.25, grid_of("t2")).value, 0.9375);
    EXPECT_EQ(brenke::grid_modulus(grid_of("t2"), 0.25).direction, brenke::estimate_direction::lower_estimate);
}

TEST(Modulus, GridTooCoarse)
{
    EXPECT_THROW((void)brenke::grid_modulus(grid_of("id"), 8 * step), brenke::grid_too_coarse);
    EXPECT_THROW((void)brenke::grid_modulus(grid_of("id"), 0), brenke::precondition_error);
}

TEST(Modulus, ClosedFormsBoundGridEstimates)
{
    for (const auto &f : brenke::registered_functions()) {
        for (const double T : {1.0, 2.0, 4.0}) {
            const brenke::window_grid g(f.eval, T, step, 1);
            for (const double d : {0.05, 0.3, 1.0, 2.5, 6.0}) {
                const double grid = brenke::grid_modulus(g, d).value;
                const double closed = f.omega(d, T);
                EXPECT_LE(grid, closed + 1e-12) << f.name << " T " << T << " d " << d;
                // The sint closed form is an upper bound only; the others are exact.
                if (f.name != "sint") {
                    EXPECT_GE(grid, closed - 0.05) << f.name << " T " << T << " d " << d;
                }
                if (2 * d < T) {
                    const double g2 = brenke::grid_second_modulus(g, d).value;
                    EXPECT_LE(g2, f.omega2(d, T) + 1e-12) << f.name << " T " << T << " d " << d;
                }
            }
        }
    }
}

TEST(Modulus, MonotoneAndSubadditive)
{
    for (const char *name : {"t2", "sint", "kink", "sqrtt", "expneg"}) {
        const auto g = grid_of(name, 4);
        double prev = 0;
        // Dyadic deltas are exact multiples of the grid step.
        for (double d = 1.0 / 32; d <= 1.5; d *= 2) {
            const double w = brenke::grid_modulus(g, d).value;
            EXPECT_LE(prev, w + 1e-12) << name;
            EXPECT_LE(brenke::grid_modulus(g, 2 * d).value, 2 * w + 1e-10) << name;
            prev = w;
        }
    }
}

TEST(SecondModulus, Examples)
{
    EXPECT_NEAR(brenke::grid_second_modulus(grid_of("id"), 0.3).value, 0, 1e-12);
    for (const double d : {0.125, 0.25, 0.5}) {
        EXPECT_NEAR(brenke::grid_second_modulus(grid_of("t2"), d).value, 2 * d * d, 1e-12);
        EXPECT_NEAR(brenke::find_function("t2").omega2(d, 2), 2 * d * d, 1e-15);
    }
    EXPECT_NEAR(brenke::grid_second_modulus(grid_of("kink"), 0.25).value, 0.5, 1e-12);
    EXPECT_DOUBLE_EQ(brenke::second_modulus(brenke::find_function("kink"), 0.25, grid_of("kink")).value, 0.5);
    EXPECT_THROW((void)brenke::grid_second_modulus(grid_of("id"), 1.5), brenke::window_too_small);
}

TEST(SecondModulus, BoundedByFourSup)
{
    for (const auto &f : brenke::registered_functions()) {
        const brenke::window_grid g(f.eval, 4, step, 0);
        double sup = 0;
        for (const double v : g.window()) {
            sup = std::max(sup, std::fabs(v));
        }
        EXPECT_LE(brenke::grid_second_modulus(g, 1.0).value, 4 * sup + 1e-12) << f.name;
    }
}

TEST(Lipschitz, Examples)
{
    const double coarse = 1.0 / 64;
    const auto g = [&](const char *name) {
        return brenke::window_grid(brenke::find_function(name).eval, 2, coarse);
    };
    EXPECT_NEAR(brenke::lipschitz_constant(g("id"), 1).value, 1, 1e-12);
    EXPECT_NEAR(brenke::lipschitz_constant(g("sqrtt"), 0.5).value, 1, 1e-12);
    EXPECT_NEAR(brenke::lipschitz_constant(g("t2"), 1).value, 4 - coarse, 1e-12);
    EXPECT_THROW((void)brenke::lipschitz_constant(g("id"), 0), brenke::precondition_error);
    EXPECT_THROW((void)brenke::lipschitz_constant(g("id"), 1.5), brenke::precondition_error);
}

TEST(Lipschitz, RegisteredPairsHoldOnGrid)
{
    for (const auto &f : brenke::registered_functions()) {
        const brenke::window_grid g(f.eval, 4, 1.0 / 128);
        for (const auto &[alpha, M] : f.lipschitz) {
            EXPECT_LE(brenke::lipschitz_constant(g, alpha).value, M + 1e-12) << f.name;
        }
    }
}

TEST(KFunctional, IdentityCandidateExample)
{
    // psi = f on [0, 2]: ||t^2|| + ||2t|| + ||2|| = 4 + 4 + 2.
    const auto g = grid_of("t2", 2, 1);
    const brenke::k_functional_profile p(g, brenke::default_h_candidates(g));
    EXPECT_NEAR(p.identity_value(0.1), 1.0, 1e-3);
    EXPECT_LE(p.evaluate(0.1).value, 1.0 + 1e-3);
    EXPECT_EQ(p.evaluate(0.1).direction, brenke::estimate_direction::upper_bound);
    EXPECT_NEAR(p.evaluate(0).value, 0, 1e-12);
}

TEST(KFunctional, ConstantFunction)
{
    const auto g = grid_of("one", 2, 1);
    const auto hs = brenke::default_h_candidates(g);
    for (const double lambda : {0.0, 0.2, 3.0}) {
        EXPECT_LE(brenke::k_functional_upper(g, lambda, hs).value, lambda * 1 + 1e-12);
    }
}

TEST(KFunctional, RefiningCandidatesNeverIncreases)
{
    for (const char *name : {"t2", "sint", "expneg", "kink", "sqrtt"}) {
        const auto g = grid_of(name, 4, 1);
        const auto all = brenke::default_h_candidates(g);
        for (const double lambda : {0.0, 0.01, 0.3}) {
            double prev = std::numeric_limits<double>::infinity();
            for (std::size_t count = 1; count <= all.size(); ++count) {
                const std::vector<double> hs(all.end() - static_cast<std::ptrdiff_t>(count), all.end());
                const double v = brenke::k_functional_upper(g, lambda, hs).value;
                EXPECT_GE(v, 0) << name;
                EXPECT_LE(v, prev + 1e-15) << name;
                prev = v;
            }
        }
    }
}

TEST(KFunctional, SmoothingNeedsPadding)
{
    const auto g = grid_of("t2", 2, 0.25);
    const std::vector<double> too_wide{0.5};
    EXPECT_THROW((void)brenke::k_functional_upper(g, 0.1, too_wide), brenke::window_too_small);
    const std::vector<double> bad{0.0};
    EXPECT_THROW((void)brenke::k_functional_upper(g, 0.1, bad), brenke::precondition_error);
}

TEST(KFunctional, NeverExceedsIdentityCandidate)
{
    for (const auto &f : brenke::registered_functions()) {
        const brenke::window_grid g(f.eval, 4, step, 1);
        const brenke::k_functional_profile p(g, brenke::default_h_candidates(g));
        for (const double lambda : {0.0, 0.05, 1.0}) {
            EXPECT_LE(p.evaluate(lambda).value, p.identity_value(lambda) + 1e-15) << f.name;
        }
    }
}
