#ifndef EXTDEP_INVLOGISTIC_HPP
#define EXTDEP_INVLOGISTIC_HPP

#include <cstdint>
#include <vector>

#include "extdep/ht_model.hpp"
#include "extdep/margins.hpp"
#include "extdep/numerics.hpp"

namespace extdep::invlog {

struct LogisticXi {
    double xi;
    explicit LogisticXi(double xi_) : xi(xi_) {
        if (!(xi > 0.0 && xi <= 1.0))
            throw std::domain_error("LogisticXi: xi must be in (0, 1]");
    }
};

// Paired draws on standard Laplace margins; the same seed reproduces the
// pairs bitwise.
struct Sample {
    std::vector<std::pair<double, double>> pairs;
    double xi = 0.0;
    std::uint64_t seed = 0;
    std::size_t n() const { return pairs.size(); }
};

// joint survival exp{-[t_x^{1/xi} + t_y^{1/xi}]^xi} on Laplace margins
LogValue joint_logsf(LogisticXi xi, double x, double y);

// chi = 0, eta = 2^{-xi}
margins::DependenceSummary eta_exact(LogisticXi xi);

// the conditional-extremes limit parameters (0, 1-xi, xi, 1/xi)
ht::HtParams ht_limit(LogisticXi xi, double u_thr = 3.0);

// exact P(Y > z x^{1-xi} | X = x) along x_grid, for comparison against the
// limit exp(-xi z^{1/xi}); analytic partial derivative of the joint survival
std::vector<double> cond_sf_limit_check(LogisticXi xi, double z,
                                        const std::vector<double>& x_grid);

// n pairs via the positive-stable mixture (Kanter's construction: one
// uniform and one exponential deviate per stable draw), mapped to Laplace
// margins through the inverse t-transform. Generator: mt19937_64 with an
// explicit 53-bit uniform mapping, four deviates per pair.
Sample simulate(LogisticXi xi, std::size_t n, std::uint64_t seed);

}  // namespace extdep::invlog

#endif
