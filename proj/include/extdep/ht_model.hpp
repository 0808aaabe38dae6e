#ifndef EXTDEP_HT_MODEL_HPP
#define EXTDEP_HT_MODEL_HPP

#include <vector>

#include "extdep/margins.hpp"
#include "extdep/numerics.hpp"

namespace extdep::ht {

// Exact conditional-extremes model on standard Laplace margins: for x above
// the threshold, P(Y > y | X = x) = Hbar((y - alpha x) / x^beta) with
// Hbar(z) = exp(-gamma z^delta) for z > 0 and 1 otherwise.
struct HtParams {
    double alpha;
    double beta;
    double gamma;
    double delta;
    double u_thr = 3.0;
};

struct HtCase {
    int row = 0;           // Table row 1..7
    double c = 0.0;        // max(1, c0), rows with the c0 equation
    double c0 = 0.0;
    bool has_c = false;
};

struct DeltaTooSmall : std::domain_error {
    DeltaTooSmall(double delta, double required)
        : std::domain_error("HtParams: delta = " + std::to_string(delta) +
                            " below the Laplace-margin floor 1/(1-beta) = " +
                            std::to_string(required)),
          delta_(delta), required_(required) {}
    double delta_, required_;
};
struct BelowThreshold : std::domain_error {
    explicit BelowThreshold(const std::string& w) : std::domain_error(w) {}
};
struct Unclassifiable : std::logic_error {
    explicit Unclassifiable(const std::string& w) : std::logic_error(w) {}
};

// The only constructor path: rejects delta < 1/(1-beta), the compatibility
// floor for Laplace margins.
HtParams validate(const HtParams& p);

LogValue cond_logsf(const HtParams& p, double y, double x);

// unique root in (0, 1/alpha) of gamma (1-a c)^{d-1} (d-1+a c) = c^d
double solve_c0(double alpha, double gamma, double delta);

HtCase classify(const HtParams& p);

margins::DependenceSummary eta(const HtParams& p);

// log P(X > q, Y > q) for q at or above the threshold; for alpha > 0 the
// integration splits at q/alpha where the residual indicator switches
LogValue joint_logsf(const HtParams& p, double q, double rel_tol = 1e-10);

// Finite-level eta_HT at exponential-scale levels. Computed on standard
// exponential margins: both coordinates thresholded at u itself with the
// Laplace positive-half mass divided out, which is the convention that
// reproduces the reference curve (see README).
std::vector<std::pair<margins::ProbLevel, double>> eta_curve(
    const HtParams& p, const std::vector<double>& u_grid);

double eta_ht_at(const HtParams& p, double u, double rel_tol = 1e-10);

}  // namespace extdep::ht

#endif
