#include "extdep/empirical.hpp"

#include <algorithm>
#include <cmath>

namespace extdep::emp {

double empirical_quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("empirical_quantile: empty data");
    std::sort(values.begin(), values.end());
    const double h = (values.size() - 1) * p;
    const std::size_t i = static_cast<std::size_t>(h);
    if (i + 1 >= values.size()) return values.back();
    return values[i] + (h - i) * (values[i + 1] - values[i]);
}

ChiCounts chi_hat(const invlog::Sample& s, margins::ProbLevel level) {
    const long n = static_cast<long>(s.n());
    const double p = level.p();
    if (!(p < 1.0 - 1.0 / n))
        throw std::invalid_argument("chi_hat: level beyond one expected exceedance");
    std::vector<double> xs(s.n()), ys(s.n());
    for (std::size_t i = 0; i < s.n(); ++i) {
        xs[i] = s.pairs[i].first;
        ys[i] = s.pairs[i].second;
    }
    const double qx = empirical_quantile(xs, p);
    const double qy = empirical_quantile(ys, p);
    ChiCounts c;
    for (std::size_t i = 0; i < s.n(); ++i) {
        const bool ex = s.pairs[i].first > qx;
        if (ex) {
            ++c.m_x;
            if (s.pairs[i].second > qy) ++c.m_joint;
        }
    }
    if (c.m_x == 0) throw NoExceedances("chi_hat: no marginal exceedances");
    c.chi_hat = static_cast<double>(c.m_joint) / c.m_x;
    return c;
}

std::pair<double, double> clopper_pearson(long m, long n, double conf) {
    const double a = 0.5 * (1.0 - conf);
    const double lo = m == 0 ? 0.0 : inv_inc_beta_reg(m, n - m + 1, a);
    const double hi = m == n ? 1.0 : inv_inc_beta_reg(m + 1, n - m, 1.0 - a);
    return {lo, hi};
}

EtaEstimate eta_hat(const invlog::Sample& s, margins::ProbLevel level) {
    const ChiCounts c = chi_hat(s, level);
    if (c.m_joint == 0)
        throw NoJointExceedances("eta_hat: no joint exceedances at this level");
    const long n = static_cast<long>(s.n());
    const double u = level.u();
    // (1-p) chi(p) estimated by the joint proportion directly, so one
    // binomial interval maps through eta = u / (-log pi)
    auto to_eta = [&](double pi) {
        return pi <= 0.0 ? 0.0 : u / (-std::log(pi));
    };
    EtaEstimate e{level};
    e.chi_hat = c.chi_hat;
    e.m_joint = c.m_joint;
    e.n = n;
    e.eta_hat = to_eta(static_cast<double>(c.m_joint) / n);
    auto [plo, phi] = clopper_pearson(c.m_joint, n);
    e.ci_lo = to_eta(plo);
    e.ci_hi = to_eta(phi);
    if (e.ci_lo > e.ci_hi) std::swap(e.ci_lo, e.ci_hi);
    return e;
}

std::vector<std::optional<EtaEstimate>> eta_hat_curve(
    const invlog::Sample& s, const std::vector<margins::ProbLevel>& levels) {
    std::vector<std::optional<EtaEstimate>> out;
    out.reserve(levels.size());
    for (const auto& lv : levels) {
        try {
            out.push_back(eta_hat(s, lv));
        } catch (const NoJointExceedances&) {
            out.push_back(std::nullopt);
        }
    }
    return out;
}

}  // namespace extdep::emp
