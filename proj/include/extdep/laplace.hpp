#ifndef EXTDEP_LAPLACE_HPP
#define EXTDEP_LAPLACE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "extdep/numerics.hpp"

namespace extdep::laplace {

// A parameterized family of log-integrands g_n on a common domain I, with
// optional analytic derivatives; finite differences are used otherwise.
struct IntegrandFamily {
    std::function<double(double n, double x)> log_g;
    Interval domain;
    std::function<double(double n, double x, int order)> deriv;  // optional

    bool has_analytic_deriv() const { return static_cast<bool>(deriv); }
};

struct LaplaceReport {
    double n = 0.0;
    double x_star = 0.0;
    int k0 = 0;
    // int_I exp(g_n - g_n(x*)) dx * [-g_n^(k0)(x*) / k0!]^(1/k0); equals
    // Gamma(1/p + 1) identically for the -n x^p family
    double scaled_integral = 0.0;
    double smoothness_ratio = 0.0;
    bool boundary_mode = false;
    // cross-derivative smallness max_{i<k0} |g^(i)(x*)| [-g^(k0)(x*)]^{-i/k0}
    double cross_term = 0.0;
    // constructive lower bound and its verdict, filled by
    // check_lower_bound_sequence
    double c1_bound = 0.0;
    bool bound_ok = false;
};

struct NonNegativeCurvature : std::domain_error {
    explicit NonNegativeCurvature(const std::string& w) : std::domain_error(w) {}
};
struct NoNegativeDerivative : std::runtime_error {
    explicit NoNegativeDerivative(const std::string& w) : std::runtime_error(w) {}
};
struct SmoothnessViolation : std::runtime_error {
    explicit SmoothnessViolation(const std::string& w) : std::runtime_error(w) {}
};

// log[ e^{n g(x*)} sqrt(2 pi / (n (-g2))) ], the classic approximation of
// int e^{n g} with interior mode x* and curvature g2 = g''(x*) < 0.
LogValue classic_laplace(const std::function<double(double)>& g, double g2,
                         double x_star, double n);

// Mode and smallest derivative order that is strictly negative there. A
// candidate order is rejected when its finite-scale smoothness ratio already
// breaches 3/2, so the -x - n x^2 family on [0,inf) resolves to k0 = 2 even
// though its boundary slope is negative. forced_k0 > 0 bypasses detection.
std::pair<double, int> detect_k0(const IntegrandFamily& fam, double n,
                                 int max_order, int forced_k0 = 0);

LaplaceReport scaled_integral(const IntegrandFamily& fam, double n,
                              int forced_k0 = 0, double rel_tol = 1e-10);

// Runs scaled_integral along n_list, throws SmoothnessViolation if any ratio
// reaches 3/2, and checks every (k0!-restored) scaled integral against the
// constructive constant C1 = e^{-eps e^delta} int_{(-d,d) cap I'} ...
std::vector<LaplaceReport> check_lower_bound_sequence(
    const IntegrandFamily& fam, const std::vector<double>& n_list,
    int forced_k0 = 0);

// derivative of g_n at x, analytic when available
double family_deriv(const IntegrandFamily& fam, double n, double x, int order,
                    bool boundary, int side);

}  // namespace extdep::laplace

#endif
