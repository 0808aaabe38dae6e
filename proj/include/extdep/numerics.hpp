#ifndef EXTDEP_NUMERICS_HPP
#define EXTDEP_NUMERICS_HPP

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace extdep {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();
constexpr double pos_inf = std::numeric_limits<double>::infinity();

// A nonnegative quantity carried as its natural logarithm; log() == -inf
// encodes exact zero. Tail probabilities never leave this representation.
class LogValue {
public:
    LogValue() : log_v_(neg_inf) {}

    static LogValue from_log(double log_v) { return LogValue(log_v); }
    static LogValue from_linear(double v);
    static LogValue zero() { return LogValue(neg_inf); }
    static LogValue one() { return LogValue(0.0); }

    double log() const { return log_v_; }
    bool is_zero() const { return log_v_ == neg_inf; }

    friend bool operator<(LogValue a, LogValue b) { return a.log_v_ < b.log_v_; }
    friend bool operator>(LogValue a, LogValue b) { return a.log_v_ > b.log_v_; }
    friend bool operator==(LogValue a, LogValue b) { return a.log_v_ == b.log_v_; }

private:
    explicit LogValue(double log_v) : log_v_(log_v) {}
    double log_v_;
};

// log(e^a + e^b), stable for widely separated magnitudes
double log_add(double a, double b);
LogValue log_add(LogValue a, LogValue b);

// log(e^a - e^b); requires a >= b
double log_sub(double a, double b);

double log_sum_exp(const std::vector<double>& log_terms);

// Integration / root / mode domain. hi may be +inf, lo may be -inf.
struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo < hi)) throw std::invalid_argument("Interval: requires lo < hi");
    }
    bool lo_finite() const { return lo > neg_inf; }
    bool hi_finite() const { return hi < pos_inf; }
};

struct NonFinite : std::runtime_error {
    explicit NonFinite(const std::string& what) : std::runtime_error(what) {}
};
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};
struct NoSignChange : std::runtime_error {
    explicit NoSignChange(const std::string& what) : std::runtime_error(what) {}
};
struct EmptyDomain : std::runtime_error {
    explicit EmptyDomain(const std::string& what) : std::runtime_error(what) {}
};
struct NonPositive : std::domain_error {
    explicit NonPositive(const std::string& what) : std::domain_error(what) {}
};

// log of int_domain exp(f_log(x)) dx, with relative error on the linear
// scale <= rel_tol for piecewise smooth integrands with finitely many modes.
// Adaptive panel bisection with a 15-point Gauss-Legendre rule per panel;
// accumulation is log-sum-exp throughout, so integrands like exp(-3900) are
// fine. Infinite ends are truncated where a tangent-line envelope bound on
// the remaining tail drops below rel_tol of the accumulated mass.
LogValue integrate_log(const std::function<double(double)>& f_log,
                       Interval domain, double rel_tol = 1e-8);

// Brent's method; bracket endpoints must straddle a sign change.
double find_root(const std::function<double(double)>& f, Interval bracket,
                 double tol);

// All local maxima of f on the domain as (location, value), sorted by
// location. Seeds are log-spaced when lo > 0, linear otherwise; ascent sign
// changes of a central finite difference bracket interior maxima, each
// polished by golden section. A finite endpoint is included when the
// one-sided derivative points outward.
std::vector<std::pair<double, double>> maximize(
    const std::function<double(double)>& f, Interval domain, int n_seeds = 256);

// Golden-section refinement of a single maximum inside [a, b].
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double a, double b, double tol = 1e-12);

// log of the standard normal survival function. erfc up to x = 8, the Mills
// ratio asymptotic series beyond; relative error on the log scale <= 1e-10.
LogValue std_normal_logsf(double x);

double std_normal_logpdf(double x);
double std_normal_cdf(double x);

// log Gamma(z), z > 0
double log_gamma_fn(double z);

// Central finite difference of derivative `order` in {1,2,3,4}, one
// Richardson step. h is the base stencil width.
double finite_diff_deriv(const std::function<double(double)>& f, double x,
                         int order, double h);
double fd_default_step(double x, int order);

// One-sided variant for boundary points; side=+1 differences forward from x,
// side=-1 backward.
double finite_diff_deriv_onesided(const std::function<double(double)>& f,
                                  double x, int order, double h, int side);

// Regularized incomplete beta I_x(a,b) and its inverse in x.
double inc_beta_reg(double a, double b, double x);
double inv_inc_beta_reg(double a, double b, double p);

}  // namespace extdep

#endif
