#include "extdep/ht_model.hpp"

#include <algorithm>
#include <cmath>

namespace extdep::ht {

namespace {

const double kLog2 = std::log(2.0);
constexpr double kEqTol = 1e-12;  // relative tolerance for delta = 1/(1-beta)

bool delta_on_boundary(const HtParams& p) {
    const double req = 1.0 / (1.0 - p.beta);
    return std::fabs(p.delta - req) <= kEqTol * std::max(1.0, req);
}

double c0_equation(double alpha, double gamma, double delta, double c) {
    // clamp so rounding of alpha*c at the interval's upper end cannot push
    // the power term to pow(negative, fractional)
    const double z = std::max(0.0, 1.0 - alpha * c);
    return gamma * std::pow(z, delta - 1.0) * (delta - 1.0 + alpha * c) -
           std::pow(c, delta);
}

}  // namespace

HtParams validate(const HtParams& p) {
    if (!(p.alpha >= 0.0 && p.alpha < 1.0))
        throw std::domain_error("HtParams: alpha must be in [0, 1)");
    if (!(p.beta >= 0.0 && p.beta < 1.0))
        throw std::domain_error("HtParams: beta must be in [0, 1)");
    if (!(p.gamma > 0.0)) throw std::domain_error("HtParams: gamma must be > 0");
    if (!(p.u_thr > 0.0)) throw std::domain_error("HtParams: u_thr must be > 0");
    const double req = 1.0 / (1.0 - p.beta);
    if (p.delta < req * (1.0 - kEqTol)) throw DeltaTooSmall(p.delta, req);
    return p;
}

LogValue cond_logsf(const HtParams& p, double y, double x) {
    if (!(x > p.u_thr))
        throw BelowThreshold("cond_logsf: conditional law only holds for x > u_thr");
    const double z = (y - p.alpha * x) / std::pow(x, p.beta);
    if (z <= 0.0) return LogValue::one();
    return LogValue::from_log(-p.gamma * std::pow(z, p.delta));
}

double solve_c0(double alpha, double gamma, double delta) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("solve_c0: alpha must be in (0, 1)");
    if (!(gamma > 0.0) || !(delta > 1.0))
        throw std::domain_error("solve_c0: requires gamma > 0 and delta > 1");
    auto f = [&](double c) { return c0_equation(alpha, gamma, delta, c); };
    auto fprime = [&](double c) {
        const double t = std::max(0.0, 1.0 - alpha * c);
        return gamma * alpha * std::pow(t, delta - 2.0) *
                   (t - (delta - 1.0) * (delta - 1.0 + alpha * c)) -
               delta * std::pow(c, delta - 1.0);
    };
    const double hi = 1.0 / alpha;
    // f(0) = gamma (delta-1) > 0 and f(1/alpha) = -alpha^{-delta} < 0. For
    // delta barely above 1 the root can sit within an ulp of 1/alpha; when
    // even the last representable c below 1/alpha has not crossed zero, that
    // value is the correctly rounded root.
    const double c_hi = std::nextafter(hi, 0.0);
    if (f(c_hi) >= 0.0) return c_hi;
    double c = find_root(f, Interval(1e-14, c_hi), 1e-15 * hi);
    // Newton polish toward machine-level residual, kept inside (0, 1/alpha)
    double best = c, best_res = std::fabs(f(c));
    for (int it = 0; it < 4; ++it) {
        const double d = fprime(c);
        if (!std::isfinite(d) || d == 0.0) break;
        const double cn = c - f(c) / d;
        if (!std::isfinite(cn) || cn <= 0.0 || cn >= hi) break;
        c = cn;
        const double res = std::fabs(f(c));
        if (res < best_res) {
            best = c;
            best_res = res;
        }
    }
    return best;
}

HtCase classify(const HtParams& p) {
    HtCase hc;
    const bool boundary = delta_on_boundary(p);
    if (p.alpha > 0.0) {
        if (!boundary && p.delta > 1.0 / (1.0 - p.beta)) {
            hc.row = 1;
        } else if (p.beta > 0.0 && boundary) {
            hc.row = 2;
            hc.c0 = solve_c0(p.alpha, p.gamma, p.delta);
            hc.c = std::max(1.0, hc.c0);
            hc.has_c = true;
        } else if (p.beta == 0.0 && boundary) {  // delta = 1
            hc.row = p.gamma > 1.0 / p.alpha ? 3 : 4;
        } else {
            throw Unclassifiable("classify: parameters escaped Table coverage");
        }
    } else {
        if (!boundary && p.delta > 1.0 / (1.0 - p.beta)) {
            hc.row = 5;
        } else if (boundary) {
            const double split = p.beta > 0.0 ? (1.0 - p.beta) / p.beta : pos_inf;
            hc.row = p.gamma <= split ? 6 : 7;
        } else {
            throw Unclassifiable("classify: parameters escaped Table coverage");
        }
    }
    return hc;
}

margins::DependenceSummary eta(const HtParams& p) {
    const HtCase hc = classify(p);
    margins::DependenceSummary s;
    s.chi = 0.0;
    switch (hc.row) {
        case 1:
        case 3:
            s.eta = p.alpha;
            break;
        case 2: {
            const double c = hc.c;
            s.eta = 1.0 / (p.gamma * std::pow(1.0 - p.alpha * c, p.delta) /
                               std::pow(c, p.delta - 1.0) +
                           c);
            break;
        }
        case 4:
            s.eta = 1.0 / (p.gamma + 1.0 - p.gamma * p.alpha);
            break;
        case 5:
            s.eta.reset();  // Table prints "Not defined"
            break;
        case 6:
            s.eta = 1.0 / (p.gamma + 1.0);
            break;
        case 7:
            s.eta = std::pow(p.gamma, -1.0 / p.delta) *
                    std::pow(p.delta - 1.0, 1.0 - 1.0 / p.delta) / p.delta;
            break;
        default:
            throw Unclassifiable("eta: unknown row");
    }
    return s;
}

LogValue joint_logsf(const HtParams& p, double q, double rel_tol) {
    if (!(q >= p.u_thr))
        throw BelowThreshold("joint_logsf: requires q >= u_thr");
    if (p.alpha > 0.0) {
        const double split = q / p.alpha;
        auto f = [&](double x) {
            const double z = (q - p.alpha * x) / std::pow(x, p.beta);
            return (z > 0.0 ? -p.gamma * std::pow(z, p.delta) : 0.0) - x;
        };
        const double body = integrate_log(f, Interval(q, split), rel_tol).log();
        const double atom = -split;  // int_{q/alpha}^inf e^{-x} dx
        return LogValue::from_log(-kLog2 + log_add(body, atom));
    }
    const double c = p.gamma * std::pow(q, p.delta);
    auto f = [&](double x) { return -c * std::pow(x, -p.beta * p.delta) - x; };
    return LogValue::from_log(-kLog2 +
                              integrate_log(f, Interval(q, pos_inf), rel_tol).log());
}

double eta_ht_at(const HtParams& p, double u, double rel_tol) {
    // exponential margins: divide the Laplace positive-half mass back out
    const LogValue joint =
        LogValue::from_log(joint_logsf(p, u, rel_tol).log() + kLog2);
    return margins::eta_from_joint(margins::ProbLevel::from_u(u), joint);
}

std::vector<std::pair<margins::ProbLevel, double>> eta_curve(
    const HtParams& p, const std::vector<double>& u_grid) {
    const double u_min = std::max(kLog2, margins::t_transform(p.u_thr));
    std::vector<std::pair<margins::ProbLevel, double>> out;
    out.reserve(u_grid.size());
    for (double u : u_grid) {
        if (!(u > u_min))
            throw std::domain_error("eta_curve: level below the model threshold");
        out.emplace_back(margins::ProbLevel::from_u(u), eta_ht_at(p, u));
    }
    return out;
}

}  // namespace extdep::ht
