#include "extdep/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "extdep/empirical.hpp"
#include "extdep/hw_model.hpp"
#include "extdep/ht_model.hpp"
#include "extdep/invlogistic.hpp"
#include "extdep/laplace.hpp"
#include "extdep/margins.hpp"
#include "extdep/params_io.hpp"

namespace extdep::cli {

namespace {

using io::format_g17;

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw CLI::ValidationError("empty numeric list");
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    return f;
}

hw::HwParams load_hw(const std::string& params, bool renormalize) {
    hw::HwParams p = (params.empty() || params == "table_s1")
                         ? hw::table_s1()
                         : io::read_hw_params_file(params);
    return renormalize ? p.renormalized() : p;
}

// ---- the three worked integrand families ----------------------------------

laplace::IntegrandFamily family_power(int p) {
    laplace::IntegrandFamily fam{
        [p](double n, double x) { return -n * std::pow(x, p); },
        Interval(0.0, pos_inf),
        [p](double n, double x, int i) {
            if (i > p) return 0.0;
            double coef = 1.0;
            for (int j = 0; j < i; ++j) coef *= (p - j);
            return -n * coef * std::pow(x, p - i);
        }};
    return fam;
}

laplace::IntegrandFamily family_shifted_gaussian(bool half_line) {
    laplace::IntegrandFamily fam{
        [](double n, double x) { return -x - n * x * x; },
        Interval(half_line ? 0.0 : neg_inf, pos_inf),
        [](double n, double x, int i) {
            if (i == 1) return -1.0 - 2.0 * n * x;
            if (i == 2) return -2.0 * n;
            return 0.0;
        }};
    return fam;
}

laplace::IntegrandFamily family_gamma_kernel(double beta_n) {
    laplace::IntegrandFamily fam{
        [beta_n](double n, double x) { return n * std::log(x) - beta_n * x; },
        Interval(0.0, pos_inf),
        [beta_n](double n, double x, int i) {
            if (i == 1) return n / x - beta_n;
            double sgn = (i % 2 == 0) ? -1.0 : 1.0;  // d^i log x = (-1)^{i-1}(i-1)!/x^i
            double fac = 1.0;
            for (int j = 2; j < i; ++j) fac *= j;
            return sgn * n * fac / std::pow(x, i);
        }};
    return fam;
}

// ---- subcommands -----------------------------------------------------------

int cmd_laplace_verify(int example, int p_power, const std::vector<double>& n_list,
                       double tol, double rel_tol, std::ostream& out) {
    out << "example,n,scaled_integral,reference,abs_err\n";
    bool ok = true;
    for (double n : n_list) {
        double value = 0.0, reference = 0.0;
        switch (example) {
            case 1: {
                auto rep = laplace::scaled_integral(family_power(p_power), n, 0, rel_tol);
                value = rep.scaled_integral;
                reference = std::exp(log_gamma_fn(1.0 / p_power + 1.0));
                break;
            }
            case 2: {
                auto rep = laplace::scaled_integral(family_shifted_gaussian(false), n, 0, rel_tol);
                value = rep.scaled_integral;
                reference = std::sqrt(M_PI);
                break;
            }
            case 3: {
                const double beta_n = 1.0;
                auto rep = laplace::scaled_integral(family_gamma_kernel(beta_n), n, 0, rel_tol);
                value = rep.scaled_integral;
                reference = std::exp(log_gamma_fn(n + 1.0) - n * std::log(n) + n -
                                     0.5 * std::log(2.0 * n));
                break;
            }
            default:
                throw CLI::ValidationError("example must be 1, 2 or 3");
        }
        const double err = std::fabs(value - reference);
        ok = ok && err <= tol;
        out << example << "," << format_g17(n) << "," << format_g17(value) << ","
            << format_g17(reference) << "," << format_g17(err) << "\n";
    }
    return ok ? 0 : 1;
}

void cmd_fig1(const hw::HwParams& p, std::ostream& out) {
    out << "x,y,log_g\n";
    const int nx = 600;
    for (double y : {10.0, 20.0, 30.0, 40.0, 50.0, 100.0}) {
        for (int i = 0; i < nx; ++i) {
            const double t = static_cast<double>(i) / (nx - 1);
            const double x = std::exp(std::log(1e-3) + t * (std::log(200.0) - std::log(1e-3)));
            out << format_g17(x) << "," << format_g17(y) << ","
                << format_g17(hw::log_integrand(p, y, x)) << "\n";
        }
    }
}

void cmd_fig2(std::ostream& out) {
    out << "gamma,alpha,beta,boundary_fn,c0,region\n";
    const int m = 40;
    for (double g : {1.0, 1.5, 2.0, 5.0}) {
        for (int i = 1; i <= m; ++i) {
            for (int j = 1; j <= m; ++j) {
                const double a = static_cast<double>(i) / (m + 1);
                const double b = static_cast<double>(j) / (m + 1);
                const double d = 1.0 / (1.0 - b);
                const double bf = g * std::pow(1.0 - a, d - 1.0) * (d - 1.0 + a);
                const double c0 = ht::solve_c0(a, g, d);
                out << format_g17(g) << "," << format_g17(a) << "," << format_g17(b)
                    << "," << format_g17(bf) << "," << format_g17(c0) << ","
                    << (c0 < 1.0 ? "2a" : "2b") << "\n";
            }
        }
    }
}

void cmd_fig3(std::ostream& out) {
    out << "gamma,alpha,beta,eta\n";
    for (double g : {1.0, 1.5, 2.0, 5.0}) {
        for (int i = 0; i < 20; ++i) {
            for (int j = 0; j < 20; ++j) {
                const double a = 0.05 * i;
                const double b = 0.05 * j;
                ht::HtParams p;
                p.alpha = a;
                p.beta = b;
                p.gamma = g;
                p.delta = 1.0 / (1.0 - b);
                const auto s = ht::eta(ht::validate(p));
                out << format_g17(g) << "," << format_g17(a) << "," << format_g17(b)
                    << "," << format_g17(s.eta.value()) << "\n";
            }
        }
    }
}

std::vector<double> fig4_curve_grid() {
    std::vector<double> us;
    for (double u = 4.0; u <= 20.0; u += 1.0) us.push_back(u);
    for (double u = 22.0; u <= 50.0; u += 2.0) us.push_back(u);
    for (double u = 55.0; u <= 100.0; u += 5.0) us.push_back(u);
    for (double u = 110.0; u <= 200.0; u += 10.0) us.push_back(u);
    return us;
}

void cmd_fig4(double xi_v, std::uint64_t seed, double rel_tol, std::ostream& out) {
    const invlog::LogisticXi xi(xi_v);
    const auto limit = invlog::ht_limit(xi);
    const double eta_true = invlog::eta_exact(xi).eta.value();
    const double eta_ht = ht::eta(limit).eta.value();

    out << "series,u,p,value,ci_lo,ci_hi,m_joint,n\n";
    auto row = [&](const std::string& series, double u, double value) {
        const double p = -std::expm1(-u);
        out << series << "," << format_g17(u) << "," << format_g17(p) << ","
            << format_g17(value) << ",,,,\n";
    };
    const auto grid = fig4_curve_grid();
    for (double u : grid) row("eta_true", u, eta_true);
    for (double u : grid) row("eta_ht", u, eta_ht);
    for (double u : grid) row("eta_ht_p", u, ht::eta_ht_at(limit, u, rel_tol));

    const auto sample = invlog::simulate(xi, 10000, seed);
    std::vector<margins::ProbLevel> levels;
    for (double u = 0.75; u <= 8.01; u += 0.25)
        levels.push_back(margins::ProbLevel::from_u(u));
    const auto ests = emp::eta_hat_curve(sample, levels);
    for (const auto& e : ests) {
        if (!e) continue;
        out << "eta_hat," << format_g17(e->level.u()) << ","
            << format_g17(e->level.p()) << "," << format_g17(e->eta_hat) << ","
            << format_g17(e->ci_lo) << "," << format_g17(e->ci_hi) << ","
            << e->m_joint << "," << e->n << "\n";
    }
}

int cmd_eta_hw(const std::string& params, bool renormalize, std::ostream& out) {
    const hw::HwParams p = load_hw(params, renormalize);
    const auto s = hw::eta_closed(p);
    out << "hw," << format_g17(s.chi) << "," << format_g17(s.eta.value())
        << ",closed_form\n";
    return 0;
}

int cmd_eta_ht(const ht::HtParams& raw, std::ostream& out) {
    const ht::HtParams p = ht::validate(raw);
    const auto hc = ht::classify(p);
    const auto s = ht::eta(p);
    out << "ht," << format_g17(s.chi) << ","
        << (s.eta ? format_g17(*s.eta) : "not_defined") << ",row " << hc.row << "\n";
    return 0;
}

int cmd_eta_invlog(double xi_v, std::ostream& out) {
    const auto s = invlog::eta_exact(invlog::LogisticXi(xi_v));
    out << "invlog," << format_g17(s.chi) << "," << format_g17(s.eta.value())
        << ",closed_form\n";
    return 0;
}

int cmd_validate(const std::string& params, bool renormalize, std::ostream& out) {
    const hw::HwParams p = load_hw(params, renormalize);
    const auto d = hw::validate(p);
    out << "mass," << format_g17(d.mass) << "\n";
    out << "density_gap_rel," << format_g17(d.density_gap_rel) << "\n";
    out << "within_tolerance," << (d.within_tolerance() ? "yes" : "no") << "\n";
    return d.within_tolerance() ? 0 : 1;
}

int cmd_eta_hat(const std::string& sample_path, const std::vector<double>& u_list,
                std::ostream& out) {
    const auto sample = io::read_sample_csv_file(sample_path);
    std::vector<margins::ProbLevel> levels;
    for (double u : u_list) levels.push_back(margins::ProbLevel::from_u(u));
    const auto ests = emp::eta_hat_curve(sample, levels);
    out << "u,p,chi_hat,eta_hat,ci_lo,ci_hi,m_joint,n\n";
    for (const auto& e : ests) {
        if (!e) continue;
        out << format_g17(e->level.u()) << "," << format_g17(e->level.p()) << ","
            << format_g17(e->chi_hat) << "," << format_g17(e->eta_hat) << ","
            << format_g17(e->ci_lo) << "," << format_g17(e->ci_hi) << ","
            << e->m_joint << "," << e->n << "\n";
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"extremal dependence characteristics of conditional models"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value config file; flags take precedence");

    // laplace-verify
    auto* lv = app.add_subcommand("laplace-verify",
                                  "check the worked integrand families against "
                                  "their closed forms");
    int lv_example = 1, lv_p = 2;
    std::string lv_nlist = "1e2,1e4,1e6", lv_out;
    double lv_tol = 1e-3, lv_rel_tol = 1e-10;
    lv->add_option("--example", lv_example, "worked example 1, 2 or 3")
        ->check(CLI::Range(1, 3));
    lv->add_option("--p", lv_p, "power p for example 1")->check(CLI::Range(1, 3));
    lv->add_option("--n-list", lv_nlist, "comma-separated n values");
    lv->add_option("--tol", lv_tol, "abs_err gate for the exit status");
    lv->add_option("--rel-tol", lv_rel_tol, "quadrature relative tolerance");
    lv->add_option("--out", lv_out, "CSV output path (default stdout)");

    // fig
    auto* fig = app.add_subcommand("fig", "emit the data behind one figure as CSV");
    int fig_id = 1;
    std::string fig_out, fig_params;
    double fig_xi = 0.35, fig_rel_tol = 1e-10;
    std::uint64_t fig_seed = 0;
    bool fig_seed_set = false;
    fig->add_option("--id", fig_id, "figure id 1..4")->required()->check(CLI::Range(1, 4));
    fig->add_option("--out", fig_out, "CSV output path (default stdout)");
    fig->add_option("--params", fig_params, "HW parameter file for figure 1 (default table_s1)");
    fig->add_option("--xi", fig_xi, "logistic dependence parameter for figure 4");
    fig->add_option("--rel-tol", fig_rel_tol, "quadrature relative tolerance for figure 4");
    fig->add_option("--seed", fig_seed, "simulation seed, required for figure 4")
        ->each([&](const std::string&) { fig_seed_set = true; });

    // eta
    auto* et = app.add_subcommand("eta", "closed-form dependence summary for one model");
    std::string et_model, et_params;
    bool et_renorm = false;
    double et_alpha = 0.0, et_beta = 0.0, et_gamma = 1.0, et_delta = 1.0, et_uthr = 3.0;
    double et_xi = 0.35;
    et->add_option("--model", et_model, "hw, ht or invlog")->required();
    et->add_option("--params", et_params, "parameter file (hw/ht); 'table_s1' for hw");
    et->add_flag("--renormalize", et_renorm, "divide the HW density by its computed mass");
    et->add_option("--alpha", et_alpha);
    et->add_option("--beta", et_beta);
    et->add_option("--gamma", et_gamma);
    et->add_option("--delta", et_delta);
    et->add_option("--u-thr", et_uthr);
    et->add_option("--xi", et_xi, "logistic dependence parameter");

    // simulate
    auto* sim = app.add_subcommand("simulate", "draw an inverted-logistic sample on Laplace margins");
    double sim_xi = 0.35;
    std::uint64_t sim_seed = 1;
    std::size_t sim_n = 10000;
    std::string sim_out;
    sim->add_option("--xi", sim_xi)->required();
    sim->add_option("--n", sim_n)->required();
    sim->add_option("--seed", sim_seed)->required();
    sim->add_option("--out", sim_out, "sample CSV path (default stdout)");

    // eta-hat
    auto* eh = app.add_subcommand("eta-hat", "empirical chi/eta estimates from a sample CSV");
    std::string eh_sample, eh_ulist = "2,3,4,5", eh_out;
    eh->add_option("--sample", eh_sample)->required();
    eh->add_option("--u-list", eh_ulist, "comma-separated exponential-scale levels");
    eh->add_option("--out", eh_out, "CSV output path (default stdout)");

    // validate
    auto* va = app.add_subcommand("validate", "HW splice diagnostics");
    std::string va_params;
    bool va_renorm = false;
    va->add_option("--params", va_params, "HW parameter file (default table_s1)");
    va->add_flag("--renormalize", va_renorm);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        std::ofstream file_out;
        auto pick_out = [&](const std::string& path) -> std::ostream& {
            if (path.empty()) return std::cout;
            file_out = open_out(path);
            return file_out;
        };

        if (*lv) return cmd_laplace_verify(lv_example, lv_p, parse_list(lv_nlist),
                                           lv_tol, lv_rel_tol, pick_out(lv_out));
        if (*fig) {
            std::ostream& out = pick_out(fig_out);
            switch (fig_id) {
                case 1: cmd_fig1(load_hw(fig_params, false), out); break;
                case 2: cmd_fig2(out); break;
                case 3: cmd_fig3(out); break;
                case 4:
                    if (!fig_seed_set)
                        throw CLI::ValidationError("figure 4 requires --seed");
                    cmd_fig4(fig_xi, fig_seed, fig_rel_tol, out);
                    break;
            }
            return 0;
        }
        if (*et) {
            if (et_model == "hw") return cmd_eta_hw(et_params, et_renorm, std::cout);
            if (et_model == "ht") {
                ht::HtParams p;
                if (!et_params.empty()) {
                    p = io::read_ht_params_file(et_params);
                } else {
                    p.alpha = et_alpha;
                    p.beta = et_beta;
                    p.gamma = et_gamma;
                    p.delta = et_delta;
                    p.u_thr = et_uthr;
                }
                return cmd_eta_ht(p, std::cout);
            }
            if (et_model == "invlog") return cmd_eta_invlog(et_xi, std::cout);
            throw CLI::ValidationError("--model must be hw, ht or invlog");
        }
        if (*sim) {
            const auto s = invlog::simulate(invlog::LogisticXi(sim_xi), sim_n, sim_seed);
            if (sim_out.empty())
                io::write_sample_csv(std::cout, s);
            else
                io::write_sample_csv_file(sim_out, s);
            return 0;
        }
        if (*eh) return cmd_eta_hat(eh_sample, parse_list(eh_ulist), pick_out(eh_out));
        if (*va) return cmd_validate(va_params, va_renorm, std::cout);
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const NoConvergence& e) {
        std::cerr << "NoConvergence: " << e.what() << "\n";
        return 3;
    } catch (const ht::DeltaTooSmall& e) {
        std::cerr << "DeltaTooSmall: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace extdep::cli
