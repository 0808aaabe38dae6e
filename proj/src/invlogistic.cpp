#include "extdep/invlogistic.hpp"

#include <cmath>
#include <random>

namespace extdep::invlog {

namespace {

// log[(t_x^{1/xi} + t_y^{1/xi})], computed through logs so small xi cannot
// overflow the powers
double log_power_sum(double xi, double x, double y) {
    const double tx = margins::t_transform(x);
    const double ty = margins::t_transform(y);
    const double a = tx > 0.0 ? std::log(tx) / xi : neg_inf;
    const double b = ty > 0.0 ? std::log(ty) / xi : neg_inf;
    return log_add(a, b);
}

}  // namespace

LogValue joint_logsf(LogisticXi xi, double x, double y) {
    return LogValue::from_log(-std::exp(xi.xi * log_power_sum(xi.xi, x, y)));
}

margins::DependenceSummary eta_exact(LogisticXi xi) {
    margins::DependenceSummary s;
    s.chi = 0.0;  // at xi = 1 the copula is exact independence, chi = 0 too
    s.eta = std::pow(2.0, -xi.xi);
    return s;
}

ht::HtParams ht_limit(LogisticXi xi, double u_thr) {
    ht::HtParams p;
    p.alpha = 0.0;
    p.beta = 1.0 - xi.xi;
    p.gamma = xi.xi;
    p.delta = 1.0 / xi.xi;
    p.u_thr = u_thr;
    return ht::validate(p);
}

std::vector<double> cond_sf_limit_check(LogisticXi xi, double z,
                                        const std::vector<double>& x_grid) {
    if (!(z > 0.0))
        throw std::domain_error("cond_sf_limit_check: requires z > 0");
    std::vector<double> out;
    out.reserve(x_grid.size());
    for (double x : x_grid) {
        if (!(x > 0.0))
            throw std::domain_error("cond_sf_limit_check: x_grid must be positive");
        const double y = z * std::pow(x, 1.0 - xi.xi);
        const double tx = margins::t_transform(x);
        const double ls = log_power_sum(xi.xi, x, y);
        // P(Y > y | X = x) = S(x,y) (tx^{1/xi}+ty^{1/xi})^{xi-1} tx^{1/xi-1} e^{tx}
        const double lp = -std::exp(xi.xi * ls) + (xi.xi - 1.0) * ls +
                          (1.0 / xi.xi - 1.0) * std::log(tx) + tx;
        out.push_back(std::exp(lp));
    }
    return out;
}

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform on (0, 1), 53-bit mantissa, engine-specified so the stream is
    // identical across standard libraries
    double u01() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }
    double exp1() { return -std::log(u01()); }

private:
    std::mt19937_64 eng_;
};

// Kanter's positive-stable draw: S = (A(U)/W)^{(1-xi)/xi} with
// A(u) = sin(xi phi)^{xi/(1-xi)} sin((1-xi) phi) / sin(phi)^{1/(1-xi)},
// phi = pi u. Laplace transform of S is exp(-t^xi).
double positive_stable(double xi, double u, double w) {
    const double phi = M_PI * u;
    const double log_a = (xi * std::log(std::sin(xi * phi)) +
                          (1.0 - xi) * std::log(std::sin((1.0 - xi) * phi)) -
                          std::log(std::sin(phi))) /
                         (1.0 - xi);
    return std::exp((1.0 - xi) / xi * (log_a - std::log(w)));
}

}  // namespace

Sample simulate(LogisticXi xi, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("simulate: n must be >= 1");
    Rng rng(seed);
    Sample s;
    s.xi = xi.xi;
    s.seed = seed;
    s.pairs.reserve(n);
    const double x = xi.xi;
    for (std::size_t i = 0; i < n; ++i) {
        double t1, t2;
        if (x == 1.0) {  // Kanter's formula is singular here; S degenerates at 1
            t1 = rng.exp1();
            t2 = rng.exp1();
        } else {
            const double u = rng.u01();
            const double w = rng.exp1();
            const double stable = positive_stable(x, u, w);
            t1 = std::pow(rng.exp1() / stable, x);
            t2 = std::pow(rng.exp1() / stable, x);
        }
        s.pairs.emplace_back(margins::t_inverse(t1), margins::t_inverse(t2));
    }
    return s;
}

}  // namespace extdep::invlog
