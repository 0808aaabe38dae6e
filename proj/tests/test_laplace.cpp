#include <doctest.h>

#include <cmath>

#include "extdep/laplace.hpp"

using namespace extdep;
using namespace extdep::laplace;

namespace {

IntegrandFamily power_family(int p) {
    return {[p](double n, double x) { return -n * std::pow(x, p); },
            Interval(0.0, pos_inf),
            [p](double n, double x, int i) {
                if (i > p) return 0.0;
                double coef = 1.0;
                for (int j = 0; j < i; ++j) coef *= (p - j);
                return -n * coef * std::pow(x, p - i);
            }};
}

IntegrandFamily shifted_gaussian(bool half_line) {
    return {[](double n, double x) { return -x - n * x * x; },
            Interval(half_line ? 0.0 : neg_inf, pos_inf),
            [](double n, double x, int i) {
                if (i == 1) return -1.0 - 2.0 * n * x;
                if (i == 2) return -2.0 * n;
                return 0.0;
            }};
}

IntegrandFamily gamma_kernel() {
    return {[](double n, double x) { return n * std::log(x) - x; },
            Interval(0.0, pos_inf),
            [](double n, double x, int i) {
                if (i == 1) return n / x - 1.0;
                double sgn = (i % 2 == 0) ? -1.0 : 1.0;
                double fac = 1.0;
                for (int j = 2; j < i; ++j) fac *= j;
                return sgn * n * fac / std::pow(x, i);
            }};
}

constexpr double kGamma32 = 0.8862269254527580;  // Gamma(3/2)

}  // namespace

TEST_CASE("classic_laplace") {
    auto g = [](double x) { return -x * x; };
    CHECK(classic_laplace(g, -2.0, 0.0, 1e6).log() ==
          doctest::Approx(0.5 * std::log(M_PI / 1e6)).epsilon(1e-12));
    CHECK(classic_laplace(g, -2.0, 0.0, 1.0).log() ==
          doctest::Approx(0.5723649429247001).epsilon(1e-12));
    CHECK_THROWS_AS(classic_laplace(g, 0.0, 0.0, 1.0), NonNegativeCurvature);

    // quadrature consistency for n cos(x) - n near 0
    const double n = 1e4;
    auto gc = [](double x) { return std::cos(x) - 1.0; };
    const double approx = classic_laplace(gc, -1.0, 0.0, n).log();
    const double exact =
        integrate_log([&](double x) { return n * gc(x); }, Interval(-1.5, 1.5), 1e-12)
            .log();
    CHECK(approx == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("detect_k0 on the worked families") {
    for (int p : {1, 2, 3}) {
        auto [x_star, k0] = detect_k0(power_family(p), 50.0, 4);
        CHECK(x_star == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(k0 == p);
    }
    {
        auto [x_star, k0] = detect_k0(shifted_gaussian(true), 100.0, 4);
        CHECK(x_star == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(k0 == 2);  // boundary slope -1 fails the 3/2 ratio, order 2 holds
    }
    {
        IntegrandFamily fam{
            [](double n, double x) { return -n * (x - 1.0) * (x - 1.0); },
            Interval(neg_inf, pos_inf),
            [](double n, double x, int i) {
                if (i == 1) return -2.0 * n * (x - 1.0);
                if (i == 2) return -2.0 * n;
                return 0.0;
            }};
        auto [x_star, k0] = detect_k0(fam, 10.0, 4);
        CHECK(x_star == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(k0 == 2);
    }
}

TEST_CASE("detect_k0 ignores constant shifts") {
    for (double shift : {0.0, -7.5, 123.0}) {
        IntegrandFamily fam{
            [shift](double n, double x) { return shift - x - n * x * x; },
            Interval(0.0, pos_inf),
            [](double n, double x, int i) {
                if (i == 1) return -1.0 - 2.0 * n * x;
                if (i == 2) return -2.0 * n;
                return 0.0;
            }};
        auto [x_star, k0] = detect_k0(fam, 100.0, 4);
        CHECK(x_star == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(k0 == 2);
    }
}

TEST_CASE("detect_k0 via finite differences only") {
    IntegrandFamily fam{
        [](double n, double x) { return -n * (x - 1.0) * (x - 1.0); },
        Interval(neg_inf, pos_inf),
        nullptr};
    auto [x_star, k0] = detect_k0(fam, 10.0, 4);
    CHECK(x_star == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(k0 == 2);
}

TEST_CASE("scaled_integral matches the closed forms") {
    // -n x^p: the scaled integral equals Gamma(1/p + 1) for every n
    for (int p : {1, 2, 3}) {
        const double ref = std::exp(log_gamma_fn(1.0 / p + 1.0));
        for (double n : {1e2, 1e4, 1e6}) {
            auto rep = scaled_integral(power_family(p), n);
            CHECK(rep.scaled_integral == doctest::Approx(ref).epsilon(1e-7));
            CHECK(rep.k0 == p);
            CHECK(rep.boundary_mode);
        }
    }
    // -x - n x^2 over the real line: sqrt(n) * integral = sqrt(pi) exactly
    {
        auto rep = scaled_integral(shifted_gaussian(false), 1e6);
        CHECK(rep.scaled_integral == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-3));
        CHECK(rep.k0 == 2);
        CHECK_FALSE(rep.boundary_mode);
    }
    // gamma kernel: log integral equals the Gamma identity
    {
        const double n = 25.0;
        auto fam = gamma_kernel();
        const double raw =
            integrate_log([&](double x) { return fam.log_g(n, x); },
                          Interval(0.0, pos_inf), 1e-10)
                .log();
        const double identity = log_gamma_fn(n + 1.0);  // log Gamma(n+1) - (n+1) log 1
        CHECK(raw == doctest::Approx(identity).epsilon(1e-6));
    }
}

TEST_CASE("scaled_integral at n = 1e4 is within 1e-4 of Gamma(3/2)") {
    auto rep = scaled_integral(power_family(2), 1e4);
    CHECK(std::fabs(rep.scaled_integral - kGamma32) <= 1e-4);
}

TEST_CASE("Prop-1 consistency for n g(x) families") {
    // interior nondegenerate mode with a mild cubic perturbation
    auto g = [](double x) { return -(x - 1.0) * (x - 1.0) * (1.0 + 0.1 * x); };
    IntegrandFamily fam{
        [&](double n, double x) { return n * g(x); }, Interval(0.0, 2.5), nullptr};
    const double n = 1e4;
    auto rep = scaled_integral(fam, n);
    const double g2 = finite_diff_deriv(g, rep.x_star, 2, fd_default_step(rep.x_star, 2));
    // restore the raw integral, then compare against the classic approximation
    const double raw_log = std::log(rep.scaled_integral) - 0.5 * std::log(-g2 * n / 2.0);
    const double lhs = raw_log + n * g(rep.x_star);
    const double rhs = classic_laplace(g, g2, rep.x_star, n).log();
    CHECK(std::fabs(std::expm1(lhs - rhs)) <= 0.01);
}

TEST_CASE("check_lower_bound_sequence on the worked families") {
    const std::vector<double> ns{1e2, 1e4, 1e6};
    for (int p : {1, 2, 3}) {
        auto reps = check_lower_bound_sequence(power_family(p), ns);
        for (const auto& r : reps) {
            CHECK(r.bound_ok);
            CHECK(r.c1_bound > 0.0);
            CHECK(r.smoothness_ratio < 1.5);
        }
    }
    {
        auto reps = check_lower_bound_sequence(shifted_gaussian(false), ns);
        for (const auto& r : reps) {
            CHECK(r.bound_ok);
            CHECK(r.k0 == 2);
        }
    }
    {
        auto reps = check_lower_bound_sequence(gamma_kernel(), ns);
        for (const auto& r : reps) {
            CHECK(r.bound_ok);
            CHECK(r.k0 == 2);
        }
    }
}

TEST_CASE("forcing k0 = 1 on -x - n x^2 violates the smoothness hypothesis") {
    CHECK_THROWS_AS(
        check_lower_bound_sequence(shifted_gaussian(true), {1e2, 1e4, 1e6}, 1),
        SmoothnessViolation);
}

TEST_CASE("check_lower_bound_sequence input validation") {
    CHECK_THROWS_AS(check_lower_bound_sequence(power_family(2), {1e2, 1e4}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_lower_bound_sequence(power_family(2), {1e4, 1e2, 1e6}),
                    std::invalid_argument);
}

TEST_CASE("detect_k0 error when nothing is negative") {
    IntegrandFamily flat{[](double, double x) { return -std::pow(x, 6); },
                         Interval(neg_inf, pos_inf), nullptr};
    // sixth-order flatness: no derivative up to order 4 is negative at 0
    CHECK_THROWS_AS(detect_k0(flat, 1.0, 4), NoNegativeDerivative);
}
