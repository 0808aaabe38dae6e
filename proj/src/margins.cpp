#include "extdep/margins.hpp"

#include <cmath>

namespace extdep::margins {

namespace {
const double kLog2 = std::log(2.0);
}

ProbLevel ProbLevel::from_u(double u) {
    if (!(u > kLog2))
        throw std::domain_error("ProbLevel: requires u > log 2 (p > 1/2)");
    return ProbLevel(u);
}

ProbLevel ProbLevel::from_p(double p) {
    if (!(p > 0.5) || !(p < 1.0))
        throw std::domain_error("ProbLevel: requires p in (1/2, 1)");
    return from_u(-std::log1p(-p));
}

double laplace_quantile(ProbLevel level) { return level.u() - kLog2; }

LogValue laplace_logsf(double x) {
    if (x >= 0.0) return LogValue::from_log(-x - kLog2);
    return LogValue::from_log(std::log1p(-0.5 * std::exp(x)));
}

double t_transform(double x) {
    if (x >= 0.0) return kLog2 + x;
    return kLog2 - std::log(2.0 - std::exp(x));
}

double t_inverse(double t) {
    if (t < 0.0) throw std::domain_error("t_inverse: requires t >= 0");
    if (t >= kLog2) return t - kLog2;
    return std::log(2.0 - 2.0 * std::exp(-t));
}

double eta_from_joint(ProbLevel level, LogValue log_joint_sf) {
    const double lj = log_joint_sf.log();
    if (lj == 0.0 || lj == neg_inf || !(lj < 0.0))
        throw DegenerateJoint("eta_from_joint: joint survival must be in (0, 1)");
    return -level.u() / lj;
}

}  // namespace extdep::margins
