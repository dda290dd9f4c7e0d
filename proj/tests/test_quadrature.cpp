#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "shield/parallel.hpp"
#include "shield/quadrature.hpp"
#include "shield/shellform.hpp"

using namespace shield;
constexpr double pi = std::numbers::pi;

namespace {

template <class F>
double integrate(const SurfaceRule& rule, F f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]);
    return acc;
}

template <class F>
Complex integrate(const VolumeRule& rule, F f) {
    std::vector<Complex> values(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) values[i] = f(rule.nodes[i]);
    return reduce(values, rule.weights);
}

} // namespace

TEST(GaussLegendre, IntegratesPolynomialsToDegree2nMinus1) {
    for (int n : {1, 2, 5, 12, 31}) {
        const auto rule = gauss_legendre(n, -1.0, 2.0);
        for (std::size_t i = 1; i < rule.nodes.size(); ++i) EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
        for (int d = 0; d <= 2 * n - 1; ++d) {
            double acc = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], d);
            const double exact = (std::pow(2.0, d + 1) - std::pow(-1.0, d + 1)) / (d + 1);
            EXPECT_NEAR(acc, exact, 1e-13 * std::max(1.0, std::abs(exact))) << "n=" << n << " d=" << d;
        }
    }
}

TEST(SphereRule, WeightNormalizationAndMoments) {
    const auto rule = sphere_rule({}, 1.0, 24, 48);
    EXPECT_EQ(rule.size(), 24u * 48u);
    EXPECT_NEAR(integrate(rule, [](const Point3&) { return 1.0; }), 4 * pi, 1e-12 * 4 * pi);
    EXPECT_NEAR(integrate(rule, [](const Point3& y) { return y.x3; }), 0.0, 1e-12);
    EXPECT_NEAR(integrate(rule, [](const Point3& y) { return y.x3 * y.x3; }), 4 * pi / 3, 1e-12);
    for (double w : rule.weights) EXPECT_GT(w, 0.0);
}

TEST(SphereRule, AreaScalesWithRadius) {
    const auto rule = sphere_rule({1, -2, 0.5}, 2.5, 7, 14);
    EXPECT_NEAR(integrate(rule, [](const Point3&) { return 1.0; }), 4 * pi * 6.25, 1e-12 * 4 * pi * 6.25);
    for (std::size_t i = 0; i < rule.size(); ++i) EXPECT_NEAR(norm(rule.normal(i)), 1.0, 1e-14);
}

TEST(SphereRule, ExactForPolynomialsUpToDegree2nMinus1) {
    const int n = 6;
    const auto rule = sphere_rule({}, 1.0, n, 2 * n);
    for (int a = 0; a <= 2 * n - 1; ++a) {
        for (int b = 0; a + b <= 2 * n - 1; ++b) {
            for (int c = 0; a + b + c <= 2 * n - 1; ++c) {
                const double got = integrate(rule, [&](const Point3& y) {
                    return std::pow(y.x1, a) * std::pow(y.x2, b) * std::pow(y.x3, c);
                });
                const double exact = oracle::sphere_monomial(a, b, c);
                EXPECT_NEAR(got, exact, 1e-12 * std::max(1.0, std::abs(exact)))
                    << a << "," << b << "," << c;
            }
        }
    }
}

TEST(SphereRule, RejectsBadArguments) {
    EXPECT_THROW(sphere_rule({}, 0.0, 4, 8), InvalidArgument);
    EXPECT_THROW(sphere_rule({}, -1.0, 4, 8), InvalidArgument);
    EXPECT_THROW(sphere_rule({}, 1.0, 0, 8), InvalidArgument);
    EXPECT_THROW(sphere_rule({}, 1.0, 4, 0), InvalidArgument);
}

TEST(BallRule, VolumeAndMoments) {
    const auto rule = ball_rule({{}, 1.0}, 24, 24, 48);
    EXPECT_NEAR(integrate(rule, [](const Point3&) { return 1.0; }).real(), 4 * pi / 3, 1e-12);
    EXPECT_NEAR(integrate(rule, [](const Point3& y) { return dot(y, y); }).real(), 4 * pi / 5, 1e-12);
    EXPECT_NEAR(std::abs(integrate(rule, [](const Point3& y) { return y.x1; })), 0.0, 1e-12);
    EXPECT_THROW(ball_rule({{}, 1.0}, 0, 4, 8), InvalidArgument);
    EXPECT_THROW(BallRegion({}, 0.0), InvalidArgument);
}

TEST(BallRule, PanelsIntegratePiecewisePolynomialsExactly) {
    // f = 1 on |y| < 0.3, f = |y| on 0.3 <= |y| <= 1
    const std::vector<double> breaks{0.3};
    const auto rule = ball_rule({{}, 1.0}, 4, 2, 4, breaks);
    const auto got = integrate(rule, [](const Point3& y) { return norm(y) < 0.3 ? 1.0 : norm(y); });
    const double exact = 4 * pi * (std::pow(0.3, 3) / 3 + (1.0 - std::pow(0.3, 4)) / 4);
    EXPECT_NEAR(got.real(), exact, 1e-13);
}

TEST(ShellRule, VolumeAndDegenerateInnerRadius) {
    const auto rule = shell_rule({{}, 1.0, 2.0}, 8, 8, 16);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    EXPECT_NEAR(sum, 28 * pi / 3, 1e-12 * 28 * pi / 3);
    EXPECT_EQ(integrate(rule, [](const Point3&) { return 1.0; }).real(),
              reduce(std::vector<Complex>(rule.size(), 1.0), rule.weights).real());

    const auto ball = ball_rule({{}, 1.0}, 24, 12, 24);
    const auto shell = shell_rule({{}, 0.0, 1.0}, 24, 12, 24);
    const auto f = [](const Point3& y) { return norm(y); };
    EXPECT_NEAR(integrate(shell, f).real(), integrate(ball, f).real(), 1e-10);
    EXPECT_NEAR(integrate(ball, f).real(), pi, 1e-12);
    EXPECT_THROW(ShellRegion({}, 2.0, 1.0), InvalidArgument);
}

TEST(VolumeRule, RefinementDecreasesErrorForSmoothKernel) {
    // e^{ik|x-y|}/|x-y| over the unit ball, x at distance 1 from it. The
    // reference is the uniform-ball closed form times 4 pi.
    const double k = 3.0;
    const Point3 x{0.0, 1.2, 1.6};
    const Complex exact = 4 * pi * exact_constant_ball_field(k, 1.0, x);
    double previous = 1e300;
    for (int n : {4, 8, 16}) {
        const auto rule = ball_rule({{}, 1.0}, n, n, 2 * n);
        const auto got = integrate(rule, [&](const Point3& y) {
            const double d = distance(x, y);
            return std::polar(1.0 / d, k * d);
        });
        const double err = std::abs(got - exact);
        EXPECT_LT(err, previous) << "n=" << n;
        previous = err;
    }
    EXPECT_LT(previous, 1e-8);
}

TEST(Reduce, SmallCases) {
    EXPECT_EQ(reduce(std::vector<Complex>(8, 1.0), std::vector<double>(8, 1.0)), Complex(8.0));
    EXPECT_EQ(reduce(std::vector<Complex>{1.0, -1.0}, std::vector<double>{1.0, 1.0}), Complex(0.0));
    EXPECT_EQ(reduce(std::vector<Complex>{}, std::vector<double>{}), Complex(0.0));
    EXPECT_THROW(reduce(std::vector<Complex>(3), std::vector<double>(2)), InvalidArgument);
}

TEST(Reduce, MatchesCompensatedSummation) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> values(10000);
    std::vector<double> weights(10000);
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = {u(rng), u(rng)};
        weights[i] = 1.0 + u(rng);
    }
    const Complex got = reduce(values, weights);
    const Complex ref = oracle::kahan_sum(values, weights);
    double scale = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) scale += std::abs(values[i] * weights[i]);
    EXPECT_LE(std::abs(got - ref), 1e-13 * std::max(std::abs(ref), 1e-3 * scale));
}

TEST(Reduce, BitIdenticalAcrossWorkerCounts) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::vector<Complex>> rows(16, std::vector<Complex>(777));
    std::vector<double> weights(777);
    for (auto& row : rows) {
        for (auto& v : row) v = {u(rng), u(rng)};
    }
    for (auto& w : weights) w = u(rng);
    const auto run = [&](unsigned workers) {
        std::vector<Complex> out(rows.size());
        parallel_for(rows.size(), [&](std::size_t i) { out[i] = reduce(rows[i], weights); }, workers);
        return out;
    };
    const auto a = run(1);
    const auto b = run(5);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(std::bit_cast<std::uint64_t>(a[i].real()), std::bit_cast<std::uint64_t>(b[i].real()));
        EXPECT_EQ(std::bit_cast<std::uint64_t>(a[i].imag()), std::bit_cast<std::uint64_t>(b[i].imag()));
    }
}
