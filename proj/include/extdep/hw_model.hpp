#ifndef EXTDEP_HW_MODEL_HPP
#define EXTDEP_HW_MODEL_HPP

#include <cmath>
#include <optional>

#include "extdep/margins.hpp"
#include "extdep/numerics.hpp"

namespace extdep::hw {

// Spliced log-normal / Weibull marginal for X with conditionally log-normal
// Y: median curve mu(x) = mu0 + mu1 x^mu2, variance curve
// sigma(x)^2 = sigma0 + sigma1 e^{-sigma2 x}.
struct HwParams {
    double alpha;   // log-normal scale
    double theta;   // log-normal location
    double u_thr;   // splice point
    double k;       // Weibull shape
    double lambda;  // Weibull scale
    double mu0, mu1, mu2;
    double sigma0, sigma1, sigma2;
    // log of the spliced density's total mass; 0 keeps the published
    // parameters as-is, validate().mass feeds the --renormalize path
    double log_mass = 0.0;

    HwParams(double alpha_, double theta_, double u_thr_, double k_,
             double lambda_, double mu0_, double mu1_, double mu2_,
             double sigma0_, double sigma1_, double sigma2_);

    double mu(double x) const;
    double sigma(double x) const;
    bool restricted_space() const { return mu2 > 0.0 && mu2 < 0.5 && 2.0 * mu2 < k; }

    HwParams renormalized() const;
};

struct HwDiagnostics {
    double mass;             // F_LN(u_thr) + S_Wb(u_thr), closed form
    double density_gap_rel;  // |f_LN(u_thr) - f_Wb(u_thr)| / f_Wb(u_thr)
    bool within_tolerance(double mass_tol = 5e-3, double continuity_tol = 1e-2) const {
        return std::fabs(mass - 1.0) <= mass_tol && density_gap_rel <= continuity_tol;
    }
};

struct HwModeReport {
    double y = 0.0;
    double x_star = 0.0;                // smaller maximum
    std::optional<double> x_min;        // interior minimum, when bimodal
    std::optional<double> x_star2;      // larger maximum
    double asymptotic_x_star = 0.0;
    double asymptotic_x_star2 = 0.0;
    double log_g_at_star = 0.0;
    double log_g_at_star2 = 0.0;
};

struct NonPositiveX : std::domain_error {
    explicit NonPositiveX(const std::string& w) : std::domain_error(w) {}
};
struct ThresholdTooLow : std::domain_error {
    explicit ThresholdTooLow(const std::string& w) : std::domain_error(w) {}
};
struct OutsideRestrictedSpace : std::domain_error {
    explicit OutsideRestrictedSpace(const std::string& w) : std::domain_error(w) {}
};

// The Table S1 parameter set (northern North Sea fit).
HwParams table_s1();

// Splice diagnostics from the closed-form branch CDFs; reports only, the CLI
// decides what is acceptable.
HwDiagnostics validate(const HwParams& p);

double log_density_x(const HwParams& p, double x);
LogValue cond_logsf_y(const HwParams& p, double y, double x);

// log g_y(x) = log Phibar((log y - mu(x))/sigma(x)) + log f_X(x)
double log_integrand(const HwParams& p, double y, double x);

HwModeReport integrand_modes(const HwParams& p, double y);

// log P(Y > y); the domain is split at the detected modes and at the splice
// point so every quadrature panel is unimodal
LogValue survival_y(const HwParams& p, double y, double rel_tol = 1e-8);

// two retained terms of the survival expansion
LogValue survival_y_asymptotic(const HwParams& p, double y);

// y with -log P(Y > y) = u, bisection in log y seeded at sqrt(2(s0+s1)u)
double quantile_y(const HwParams& p, margins::ProbLevel level,
                  double rel_tol = 1e-9);

// log P(Y > y_u, X > x_u) with both coordinates at their exponential-scale
// level-u thresholds; X threshold exact on the Weibull branch
LogValue chi_u(const HwParams& p, double u, double rel_tol = 1e-8);

// chi = 0 and eta = 1/(2 + sigma1/sigma0), valid on the restricted space
margins::DependenceSummary eta_closed(const HwParams& p);

// exponential-scale X threshold used by chi_u (exposed for tests)
double x_threshold(const HwParams& p, double u);

}  // namespace extdep::hw

#endif
