#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include <brenke/bounds.hpp>

namespace
{

const brenke::function_context &context(const char *name)
{
    static std::vector<std::unique_ptr<brenke::function_context>> cache;
    for (const auto &c : cache) {
        if (c->fn().name == name) {
            return *c;
        }
    }
    cache.push_back(std::make_unique<brenke::function_context>(brenke::find_function(name)));
    return *cache.back();
}

std::vector<brenke::family_spec> builtins()
{
    const auto src = brenke::coefficient_source::named(brenke::coefficient_source::kind::exp);
    return {brenke::make_szasz(),
            brenke::make_appell(brenke::detail::to_series(src, brenke::default_k_max), brenke::detail::to_function(src)),
            brenke::make_gould_hopper(1, 1), brenke::make_miller_lee(0)};
}

} // namespace

TEST(Bounds, ModulusBoundExamples)
{
    const auto s = brenke::make_szasz();
    EXPECT_NEAR(brenke::modulus_bound(context("id"), s, 4, 1), 1.0, 1e-15);
    EXPECT_EQ(brenke::modulus_bound(context("one"), s, 4, 1), 0);
    EXPECT_NEAR(brenke::modulus_bound(context("t2"), s, 16, 1), 3.875, 1e-14);
}

TEST(Bounds, LipschitzBoundExamples)
{
    const auto s = brenke::make_szasz();
    EXPECT_NEAR(brenke::lipschitz_bound(1, 1, s, 4, 1), 0.5, 1e-15);
    EXPECT_EQ(brenke::lipschitz_bound(1, 1, s, 4, 0), 0);
    EXPECT_EQ(brenke::lipschitz_bound(0.5, 1, s, 9, 0), 0);
    EXPECT_NEAR(brenke::lipschitz_bound(0.5, 1, s, 16, 1), 0.5, 1e-15);
    EXPECT_THROW((void)brenke::lipschitz_bound(0, 1, s, 4, 1), brenke::precondition_error);
    EXPECT_THROW((void)brenke::lipschitz_bound(1.5, 1, s, 4, 1), brenke::precondition_error);
    EXPECT_THROW((void)brenke::lipschitz_bound(1, -1, s, 4, 1), brenke::precondition_error);
}

TEST(Bounds, KFunctionalBoundExamples)
{
    const auto s = brenke::make_szasz();
    const auto one = brenke::k_functional_bound(context("one"), s, 4, 1);
    EXPECT_LE(one.bound, 2 * 0.125 * 1 + 1e-12);
    EXPECT_FALSE(one.lambda_clamped);
    const auto t2 = brenke::k_functional_bound(context("t2"), s, 4, 1);
    EXPECT_LE(t2.bound, 2 * 0.125 * 26 + 1e-3);
    EXPECT_GE(t2.bound, 0);
    // lambda = 0 at x = 0: only the smoothing residual remains.
    EXPECT_LE(brenke::k_functional_bound(context("t2"), s, 4, 0).bound, 1e-4);
}

TEST(Bounds, NegativeLambdaIsClamped)
{
    // nu2 = 2 pulls the mean to nx/(n+2): Delta_1 ~ -2x/n outweighs Delta_2 ~ x/n.
    const auto s = brenke::make_szasz();
    const brenke::stancu_params nu(0, 2);
    const auto c = brenke::central_moments(s, 100, 1, nu);
    ASSERT_LT(c.d1 + c.d2, 0);
    const auto v = brenke::k_functional_bound(context("t2"), s, 100, 1, nu);
    EXPECT_TRUE(v.lambda_clamped);
    EXPECT_GE(v.bound, 0);
}

TEST(Bounds, SecondModulusBoundExamples)
{
    for (const auto &f : builtins()) {
        const auto c = brenke::central_moments(f, 8, 1.5);
        EXPECT_NEAR(brenke::second_modulus_bound(context("id"), f, 8, 1.5, {}, 4), std::fabs(c.d1), 1e-14) << f.name;
    }
    const auto s = brenke::make_szasz();
    // Delta_1 = 0, mu_n = x/(8n), omega_2(t^2; h) = 2h^2.
    EXPECT_NEAR(brenke::second_modulus_bound(context("t2"), s, 8, 1.5, {}, 4), 4 * 2 * 1.5 / 64, 1e-14);
    EXPECT_EQ(brenke::second_modulus_bound(context("one"), s, 8, 1.5, {}, 4), 0);
    EXPECT_THROW((void)brenke::second_modulus_bound(context("one"), s, 8, 1.5, {}, 0), brenke::precondition_error);
}

TEST(Verify, SzaszRowsMatchClosedForms)
{
    const std::vector<brenke::function_context> fcs{context("id"), context("t2"), context("one")};
    const std::vector<std::int64_t> ns{1, 4, 16};
    const std::vector<double> xs{0, 0.5, 1, 2};
    const auto rows = brenke::verify({brenke::make_szasz()}, fcs, ns, xs, {{}}, 4, brenke::truncation_policy(1e-15, 10000));
    ASSERT_EQ(rows.size(), 3 * 3 * 4u);
    for (const auto &r : rows) {
        EXPECT_EQ(r.status, "ok");
        if (r.f_name == "id") {
            EXPECT_LE(r.err_emp, 1e-13);
            EXPECT_TRUE(r.dom22 && r.dom23);
        } else if (r.f_name == "t2") {
            EXPECT_NEAR(r.err_emp, r.x / static_cast<double>(r.n), 1e-12);
            EXPECT_TRUE(r.dom22);
        } else {
            EXPECT_LE(r.err_emp, 1e-13);
            EXPECT_TRUE(r.dom22 && r.dom23 && r.dom24 && r.dom25);
            EXPECT_GE(std::min({r.b22, r.b23, r.b24, r.b25}), 0);
        }
        if (r.f_name == "t2" && r.n == 16 && r.x == 1) {
            EXPECT_NEAR(r.err_emp, 0.0625, 1e-12);
        }
    }
    EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end(), brenke::report_order));
}

TEST(Verify, BoundsDecayInN)
{
    const std::vector<brenke::function_context> fcs{context("id"), context("t2"), context("sqrtt"), context("kink")};
    for (const auto &f : builtins()) {
        const auto rows = brenke::verify({f}, fcs, {4, 256}, {0.5, 1.5}, {{}, {1, 2}}, 4);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto &a = rows[i];
            if (a.n != 4) {
                continue;
            }
            for (const auto &b : rows) {
                if (b.n == 256 && b.f_name == a.f_name && b.x == a.x && b.s.nu1 == a.s.nu1 && b.s.nu2 == a.s.nu2) {
                    EXPECT_LT(b.b22, a.b22) << f.name << ' ' << a.f_name;
                    // A clamped lambda gives K(f; 0) = 0 at both ends.
                    if (!a.lambda_clamped && !b.lambda_clamped) {
                        EXPECT_LT(b.b24, a.b24) << f.name << ' ' << a.f_name;
                    } else {
                        EXPECT_LE(b.b24, a.b24) << f.name << ' ' << a.f_name;
                    }
                    if (a.has_b23) {
                        EXPECT_LT(b.b23, a.b23) << f.name << ' ' << a.f_name;
                    }
                    if (a.b25 > 0) {
                        EXPECT_LT(b.b25, a.b25) << f.name << ' ' << a.f_name;
                    }
                }
            }
        }
    }
}

TEST(Verify, CellFailuresAreRecorded)
{
    // No closed form and a short table: large nx exhausts K_max.
    const auto f = brenke::make_custom(
        brenke::coefficient_source::list({1}), brenke::coefficient_source::named(brenke::coefficient_source::kind::exp),
        brenke::coefficient_source::named(brenke::coefficient_source::kind::identity), 16);
    const auto rows = brenke::verify({f}, {context("id")}, {1, 64}, {0.5}, {{}}, 4);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].status, "ok");
    EXPECT_EQ(rows[1].status.rfind("error: ", 0), 0u) << rows[1].status;
    EXPECT_TRUE(std::isnan(rows[1].err_emp));
}
