#ifndef EXTDEP_EMPIRICAL_HPP
#define EXTDEP_EMPIRICAL_HPP

#include <optional>
#include <vector>

#include "extdep/invlogistic.hpp"
#include "extdep/margins.hpp"

namespace extdep::emp {

struct EtaEstimate {
    margins::ProbLevel level;
    double chi_hat = 0.0;
    double eta_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    long m_joint = 0;
    long n = 0;
};

struct ChiCounts {
    double chi_hat = 0.0;
    long m_joint = 0;
    long m_x = 0;
};

struct NoExceedances : std::runtime_error {
    explicit NoExceedances(const std::string& w) : std::runtime_error(w) {}
};
struct NoJointExceedances : std::runtime_error {
    explicit NoJointExceedances(const std::string& w) : std::runtime_error(w) {}
};

// type-7 empirical quantile (linear interpolation of order statistics)
double empirical_quantile(std::vector<double> values, double p);

// chi_hat(p) = #{x>qx and y>qy} / #{x>qx} at the per-coordinate empirical
// p-quantiles
ChiCounts chi_hat(const invlog::Sample& s, margins::ProbLevel level);

// eta_hat(p) = log(1-p) / log(m_joint/n) with a Clopper-Pearson 95% interval
// for the joint proportion mapped through the same monotone formula
EtaEstimate eta_hat(const invlog::Sample& s, margins::ProbLevel level);

// pointwise estimates; levels with no joint exceedance come back empty
std::vector<std::optional<EtaEstimate>> eta_hat_curve(
    const invlog::Sample& s, const std::vector<margins::ProbLevel>& levels);

// 95% Clopper-Pearson interval for a binomial proportion
std::pair<double, double> clopper_pearson(long m, long n, double conf = 0.95);

}  // namespace extdep::emp

#endif
