#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "shield/helmholtz.hpp"
#include "shield/shellform.hpp"

using namespace shield;
constexpr double pi = std::numbers::pi;

TEST(SpecialFunctions, Zeros) {
    EXPECT_EQ(phi(Complex(0.0)), Complex(0.0));
    EXPECT_EQ(P_fn(Complex(0.0)), Complex(0.0));
    EXPECT_EQ(Q_fn(0.0), 0.0);
    EXPECT_EQ(P_imag(0.0), 0.0);
    EXPECT_NEAR(Q_fn(pi), -pi, 1e-15);
}

TEST(SpecialFunctions, ImaginaryArgumentIdentities) {
    for (double s = 0.0; s <= 20.0; s += 0.01) {
        const Complex ms{0.0, -s};
        EXPECT_LE(std::abs(phi(ms) + Complex(0.0, 1.0) * Q_fn(s)), 1e-13) << s;
        EXPECT_LE(std::abs(phi_imag(s) - phi(ms)), 1e-13) << s;
        const double p_trig = 2.0 - 2.0 * std::cos(s) - s * std::sin(s);
        EXPECT_LE(std::abs(P_fn(ms) - p_trig), 1e-13) << s;
        EXPECT_LE(std::abs(P_imag(s) - p_trig), 1e-13) << s;
    }
}

TEST(SpecialFunctions, SmallArgumentSeries) {
    // Leading terms: Q(s) ~ -s^3/3 + s^5/30, P(-is) ~ s^4/12 - s^6/180
    for (double s : {1e-8, 1e-5, 1e-3, 0.1}) {
        const double q_ref = -s * s * s / 3 + std::pow(s, 5) / 30 - std::pow(s, 7) / 840 + std::pow(s, 9) / 45360;
        const double p_ref = std::pow(s, 4) / 12 - std::pow(s, 6) / 180 + std::pow(s, 8) / 6720;
        EXPECT_NEAR(Q_fn(s), q_ref, 1e-13 * std::abs(q_ref) + 1e-300) << s;
        EXPECT_NEAR(P_imag(s), p_ref, 1e-10 * std::abs(p_ref)) << s;
    }
    // continuity across the series switch
    const double t = 0.5;
    EXPECT_NEAR(Q_fn(std::nextafter(t, 0.0)), Q_fn(t), 1e-15);
    EXPECT_NEAR(P_imag(std::nextafter(t, 0.0)), P_imag(t), 1e-15);
}

TEST(ClosedForms, StaticLimitsAndDomain) {
    const Point3 x{0, 0, 2.0};
    const double eta = 0.5;
    EXPECT_NEAR(exact_constant_ball_field(1e-6, eta, x).real(), eta * eta * eta / (3 * 2.0), 1e-9);
    EXPECT_NEAR(exact_cone_ball_field(1e-6, eta, x).real(), std::pow(eta, 4) / (12 * 2.0), 1e-9);
    EXPECT_NEAR(std::abs(exact_cone_ball_field(2.0, 1e-8, x)), 0.0, 1e-30);
    EXPECT_THROW(exact_constant_ball_field(1.0, 0.5, {0, 0, 0.4}), DomainError);
    EXPECT_THROW(exact_cone_ball_field(1.0, 0.5, {0, 0, 0.5}), DomainError);
    EXPECT_THROW(exact_shell_field(1.0, 2.0, 1.0, {0, 0, 5}), DomainError);
}

TEST(ClosedForms, ShellFieldReductions) {
    const Point3 x{0, 3.0, 0};
    const Complex ball = exact_constant_ball_field(2.0, 1.2, x);
    EXPECT_LT(std::abs(exact_shell_field(2.0, 0.0, 1.2, x) - ball), 1e-15 * std::abs(ball));
    EXPECT_EQ(exact_shell_field(2.0, 1.2, 1.2, x), Complex(0.0));
}

// Fixes the normalization: the shell closed form carries no extra 1/(4 pi)
// relative to the ball forms, and agrees with direct quadrature.
TEST(ClosedForms, ShellFieldMatchesQuadrature) {
    const double k = 1.7, r1 = 0.8, r2 = 1.5;
    const auto rule = shell_rule({{}, r1, r2}, 24, 24, 48);
    VolumePotential w(k, rule, std::vector<Complex>(rule.size(), 1.0), {{}, r1, r2}, 0.05);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < 20; ++i) {
        const Point3 x = normalized(Point3{gauss(rng), gauss(rng), gauss(rng)}) * (2.0 + 0.2 * i);
        const Complex ref = exact_shell_field(k, r1, r2, x);
        EXPECT_LT(std::abs(w(x) - ref), 1e-8 * std::abs(ref));
    }
}

TEST(NaiveDesign, ReferenceCaseMatchesBruteForceRoot) {
    const auto d = design_naive_shield(1.0, 0.5, 1.0);
    EXPECT_LE(d.residual, 1e-12);
    const long double rhs = naive_shield_rhs(1.0, 0.5, 1.0);
    EXPECT_NEAR(static_cast<double>(rhs), -0.29604657202260372, 1e-15);
    const double oracle_root = static_cast<double>(oracle::dense_scan_root(rhs, 1.0L));
    EXPECT_NEAR(d.r2, oracle_root, 1e-10);
    EXPECT_NEAR(d.r2, 4.424818341858312713, 1e-10);
    EXPECT_LE(std::abs(naive_residuals(1.0, 0.5, 1.0, d.r2).complex_form), 1e-10);
}

TEST(NaiveDesign, SuccessiveRootsAreDistinct) {
    // Roots of Q(xi) = rhs beyond the first, from an independent high-precision solve.
    const double expected[] = {4.424818341858313, 7.763711242537012, 10.876785890168565,
                               14.087263689353511};
    double from = 0.0;
    for (double e : expected) {
        const auto d = design_naive_shield(1.0, 0.5, 1.0, pi / 8, 1e-12, from);
        EXPECT_NEAR(d.r2, e, 1e-9);
        EXPECT_LE(d.residual, 1e-12);
        from = d.r2 + 1e-6;
    }
}

TEST(NaiveDesign, RejectsBadInput) {
    EXPECT_THROW(design_naive_shield(0.0, 0.5, 1.0), InvalidArgument);
    EXPECT_THROW(design_naive_shield(1.0, 0.5, 0.4), InvalidArgument);
    EXPECT_THROW(design_naive_shield(1.0, 0.5, 1.0, -1.0), InvalidArgument);
}

TEST(NaiveDesign, ResidualFormsAgree) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double k = 0.2 + 5.0 * u(rng);
        const double eps = 0.1 + u(rng);
        const double r1 = eps + 0.1 + 2.0 * u(rng);
        const double r2 = r1 + 0.1 + 3.0 * u(rng);
        const auto res = naive_residuals(k, eps, r1, r2);
        const double scale = 1.0 + k * (k * r2 + 1.0);
        EXPECT_NEAR(res.complex_form.imag(), 0.0, 1e-12 * scale);
        EXPECT_NEAR(res.complex_form.real(), res.trig_form, 1e-12 * scale);
        EXPECT_NEAR(res.trig_form, -k * res.q_form, 1e-12 * scale);
    }
}

TEST(NaiveDesign, ShellCancelsConeExterior) {
    for (double k : {0.5, 1.0, 2.0}) {
        const double eps = 0.5;
        const auto d = design_naive_shield(k, eps, 1.0);
        std::mt19937_64 rng(4);
        std::normal_distribution<double> gauss;
        for (int i = 0; i < 20; ++i) {
            const Point3 x = normalized(Point3{gauss(rng), gauss(rng), gauss(rng)}) * (d.r2 * (2.0 + i / 10.0));
            const Complex w = exact_cone_ball_field(k, eps, x);
            const Complex ws = exact_shell_field(k, d.r1, d.r2, x);
            EXPECT_LT(std::abs(w + ws), 1e-8 * std::abs(w)) << "k=" << k;
        }
    }
}
