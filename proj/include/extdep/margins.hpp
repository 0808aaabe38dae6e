#ifndef EXTDEP_MARGINS_HPP
#define EXTDEP_MARGINS_HPP

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "extdep/numerics.hpp"

namespace extdep::margins {

// An extreme probability level held on the exponential scale u = -log(1-p).
// Never stored as p: at the levels probed here 1-p is one arithmetic step
// from catastrophic cancellation while u is exact.
class ProbLevel {
public:
    static ProbLevel from_u(double u);
    static ProbLevel from_p(double p);

    double u() const { return u_; }
    double p() const { return -std::expm1(-u_); }

private:
    explicit ProbLevel(double u) : u_(u) {}
    double u_;
};

struct DependenceSummary {
    double chi = 0.0;
    std::optional<double> eta;  // empty: not defined (HT Table row 5)
    std::vector<std::pair<ProbLevel, double>> chi_p_curve;
    std::vector<std::pair<ProbLevel, double>> eta_p_curve;
};

struct DegenerateJoint : std::domain_error {
    explicit DegenerateJoint(const std::string& w) : std::domain_error(w) {}
};

// upper-tail quantile of the standard Laplace: P(X > q) = e^{-u}
double laplace_quantile(ProbLevel level);

// log P(X > x) for the standard Laplace
LogValue laplace_logsf(double x);

// t_x = -log(1 - F_L(x)); log 2 + x for x >= 0, log 2 - log(2 - e^x) below
double t_transform(double x);
double t_inverse(double t);

// finite-level eta(p) = (-u) / log P(X > q, Y > q) at q = laplace_quantile
double eta_from_joint(ProbLevel level, LogValue log_joint_sf);

}  // namespace extdep::margins

#endif
