#include "fracstefan/stefan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracstefan/errors.hpp"

namespace fracstefan {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("StefanProblem: ") + name +
                                    " must be positive, got " + std::to_string(v));
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

StefanProblem::StefanProblem(const StefanParams& p) : p_(p), alpha_(p.alpha) {
    require_positive(p.k1, "k1");
    require_positive(p.k2, "k2");
    require_positive(p.c1, "c1");
    require_positive(p.c2, "c2");
    require_positive(p.rho, "rho");
    require_positive(p.latent_heat, "latent_heat");
    if (!(p.ui < p.um)) {
        throw std::invalid_argument("StefanProblem: requires ui < um < u0; violated ui < um (ui = " +
                                    fmt(p.ui) + ", um = " + fmt(p.um) + ")");
    }
    if (!(p.um < p.u0)) {
        throw std::invalid_argument("StefanProblem: requires ui < um < u0; violated um < u0 (um = " +
                                    fmt(p.um) + ", u0 = " + fmt(p.u0) + ")");
    }
    d_.lambda1 = std::sqrt(p.k1 / (p.rho * p.c1));
    d_.lambda2 = std::sqrt(p.k2 / (p.rho * p.c2));
    d_.ratio = d_.lambda1 / d_.lambda2;
}

StefanProblem StefanProblem::with_alpha(double alpha) const {
    StefanParams q = p_;
    q.alpha = alpha;
    return StefanProblem(q);
}

double f1(double x, FractionalOrder alpha, const WrightEvalConfig& cfg) {
    if (!(x > 0.0)) {
        throw std::domain_error("f1: requires x > 0 (F1 diverges at 0+)");
    }
    const double fe = frac_erf(x, alpha, cfg);
    if (!(fe > 0.0)) {
        return std::numeric_limits<double>::infinity();  // denominator underflow sentinel
    }
    return mainardi(x, alpha, cfg).value / fe;
}

double f2(double x, FractionalOrder alpha, const WrightEvalConfig& cfg) {
    if (!(x >= 0.0)) {
        throw std::domain_error("f2: requires x >= 0");
    }
    cfg.validate();
    const double nu = alpha.nu();
    if (alpha.classical()) {
        // erfc underflows near x ~ 106; the ratio tends to x/2 + 1/x + O(1/x^3)
        if (x > 35.0) return 0.5 * x + 1.0 / x;
        return mainardi(x, alpha, cfg).value / std::erfc(0.5 * x);
    }
    if (x <= cfg.crossover_x) {
        return mainardi(x, alpha, cfg).value / wright(x, alpha, 1.0, cfg).value;
    }
    const detail::AsymCalibration cm = detail::calibrate_asym(nu, 1.0 - nu, cfg);
    const detail::AsymCalibration cw = detail::calibrate_asym(nu, 1.0, cfg);
    const double lead = std::pow(nu * x, nu / (1.0 - nu));
    if (cm.usable && cw.usable) {
        const double fade = std::pow(cfg.crossover_x / x, 1.0 / (1.0 - nu));
        return lead * (1.0 + (cm.c0 - 1.0) * fade) / (1.0 + (cw.c0 - 1.0) * fade);
    }
    // calibration unavailable (very small alpha): wright() serves the series here
    const double w = wright(x, alpha, 1.0, cfg).value;
    if (w > 0.0) return mainardi(x, alpha, cfg).value / w;
    return lead;
}

double big_f(double x, const StefanProblem& problem, const WrightEvalConfig& cfg) {
    if (!(x > 0.0)) {
        throw std::domain_error("big_f: requires x > 0");
    }
    const StefanParams& p = problem.params();
    const Diffusivities& d = problem.diffusivities();
    const double denom = p.rho * p.latent_heat;
    const double c_liquid = p.k2 * (p.u0 - p.um) / (denom * d.lambda1 * d.lambda2);
    const double c_solid = p.k1 * (p.um - p.ui) / (denom * d.lambda1 * d.lambda1);
    return c_liquid * f1(d.ratio * x, problem.alpha(), cfg) -
           c_solid * f2(x, problem.alpha(), cfg);
}

RootReport solve_xi(const StefanProblem& problem, double tol, double scan_max,
                    const WrightEvalConfig& cfg) {
    if (!(tol > 0.0) || !(tol <= 1e-4)) {
        throw std::invalid_argument("solve_xi: tol must lie in (0, 1e-4]");
    }
    if (!(scan_max > 0.0) || !std::isfinite(scan_max)) {
        throw std::invalid_argument("solve_xi: scan_max must be positive and finite");
    }
    const double g = gamma_ratio(problem.alpha());
    auto G = [&](double x) { return big_f(x, problem, cfg) - g * x; };

    RootReport report;
    report.bracket_scan_max = scan_max;

    // G(0+) = +inf through F1; expand brackets geometrically from the left edge
    constexpr double kLeftEdge = 1e-8;
    constexpr double kGrowth = 1.06;
    const double eps = std::numeric_limits<double>::epsilon();

    struct Bracket {
        double lo, hi, g_lo;
    };
    std::vector<Bracket> brackets;

    double x_prev = kLeftEdge;
    double g_prev = G(x_prev);
    bool reached_end = false;
    while (!reached_end) {
        double x_next = x_prev * kGrowth;
        if (x_next >= scan_max) {
            x_next = scan_max;
            reached_end = true;
        }
        const double g_next = G(x_next);
        if (std::isfinite(g_prev) && std::isfinite(g_next)) {
            if (g_next == 0.0) {
                brackets.push_back({x_next, x_next, g_prev});
            } else if ((g_prev > 0.0) != (g_next > 0.0)) {
                brackets.push_back({x_prev, x_next, g_prev});
            }
        }
        x_prev = x_next;
        g_prev = g_next;
    }

    int rejected = 0;
    for (const Bracket& b : brackets) {
        double lo = b.lo, hi = b.hi, g_lo = b.g_lo;
        double mid = 0.5 * (lo + hi);
        double g_mid = (lo == hi) ? 0.0 : G(mid);
        for (int it = 0; lo < hi && it < 240; ++it) {
            mid = 0.5 * (lo + hi);
            g_mid = G(mid);
            if ((g_mid > 0.0) == (g_lo > 0.0)) {
                lo = mid;
                g_lo = g_mid;
            } else {
                hi = mid;
            }
            const double width = hi - lo;
            if (width <= tol && std::fabs(g_mid) <= 0.5 * tol * (1.0 + g * mid)) break;
            if (width <= 16.0 * eps * mid) break;
        }
        const double residual = std::fabs(g_mid);
        if (residual <= tol * (1.0 + g * mid)) {
            report.roots.push_back(mid);
            report.residuals.push_back(residual);
        } else {
            ++rejected;  // a sign flip that bisection could not certify (e.g. a jump)
        }
    }

    if (report.roots.empty()) {
        throw NoRootError(
            "solve_xi: no sign change of F(x) - gamma_ratio(alpha) x in (0, " + fmt(scan_max) +
            "]; parameters may be pathological or scan_max too small");
    }

    std::ostringstream note;
    if (report.roots.size() == 1) {
        note << "one root found in (0, " << scan_max
             << "]; uniqueness is not established in general, canonical xi is this root";
    } else {
        note << report.roots.size() << " roots found in (0, " << scan_max
             << "]; uniqueness is an open question, canonical xi is the smallest root";
    }
    if (rejected > 0) {
        note << "; " << rejected << " sign change(s) failed residual validation and were dropped";
    }
    report.multiplicity_note = note.str();
    return report;
}

NeumannSolution::NeumannSolution(const StefanProblem& problem, double xi,
                                 const WrightEvalConfig& cfg)
    : problem_(problem), cfg_(cfg), xi_(xi) {
    if (!(xi > 0.0) || !std::isfinite(xi)) {
        throw std::invalid_argument("NeumannSolution: xi must be positive, got " + fmt(xi));
    }
    const StefanParams& p = problem_.params();
    const Diffusivities& d = problem_.diffusivities();
    fe_at_xilam_ = frac_erf(xi_ * d.ratio, problem_.alpha(), cfg_);
    w_at_xi_ = wright(xi_, problem_.alpha(), 1.0, cfg_).value;
    if (!(fe_at_xilam_ > 0.0) || !(w_at_xi_ > 0.0)) {
        throw std::domain_error("NeumannSolution: Wright denominators underflow at xi = " + fmt(xi));
    }
    a_ = p.u0;
    b_ = -(p.u0 - p.um) / fe_at_xilam_;
    c_ = p.ui + (p.um - p.ui) / w_at_xi_;
    d_ = -(p.um - p.ui) / w_at_xi_;
}

double NeumannSolution::front(double t) const {
    if (!(t >= 0.0)) {
        throw std::domain_error("front: requires t >= 0");
    }
    const Diffusivities& d = problem_.diffusivities();
    return xi_ * d.lambda1 * std::pow(t, problem_.alpha().nu());
}

double NeumannSolution::u2_formula(double x, double t) const {
    if (!(x >= 0.0) || !(t >= 0.0)) {
        throw std::domain_error("u2_formula: requires x >= 0 and t >= 0");
    }
    const StefanParams& p = problem_.params();
    if (t == 0.0) {
        // limit of the ansatz as t -> 0+ (frac_erf -> 1 for x > 0)
        return (x == 0.0) ? p.u0 : p.u0 - (p.u0 - p.um) / fe_at_xilam_;
    }
    const double eta = x / (problem_.diffusivities().lambda2 * std::pow(t, problem_.alpha().nu()));
    return p.u0 - (p.u0 - p.um) * frac_erf(eta, problem_.alpha(), cfg_) / fe_at_xilam_;
}

double NeumannSolution::u1_formula(double x, double t) const {
    if (!(x >= 0.0) || !(t >= 0.0)) {
        throw std::domain_error("u1_formula: requires x >= 0 and t >= 0");
    }
    const StefanParams& p = problem_.params();
    if (t == 0.0) {
        return (x == 0.0) ? p.ui + (p.um - p.ui) / w_at_xi_ : p.ui;
    }
    const double eta = x / (problem_.diffusivities().lambda1 * std::pow(t, problem_.alpha().nu()));
    return p.ui + (p.um - p.ui) * wright(eta, problem_.alpha(), 1.0, cfg_).value / w_at_xi_;
}

double NeumannSolution::eval_u2(double x, double t) const {
    if (!(t > 0.0)) {
        throw std::domain_error("eval_u2: requires t > 0");
    }
    const double s = front(t);
    if (!(x >= 0.0) || x > s * (1.0 + 1e-12)) {
        throw std::domain_error("eval_u2: x = " + fmt(x) + " outside the liquid region [0, s(t) = " +
                                fmt(s) + "] at t = " + fmt(t));
    }
    return u2_formula(std::min(x, s), t);
}

double NeumannSolution::eval_u1(double x, double t) const {
    if (!(t > 0.0)) {
        throw std::domain_error("eval_u1: requires t > 0");
    }
    const double s = front(t);
    if (x < s * (1.0 - 1e-12)) {
        throw std::domain_error("eval_u1: x = " + fmt(x) + " outside the solid region [s(t) = " +
                                fmt(s) + ", inf) at t = " + fmt(t));
    }
    return u1_formula(std::max(x, s), t);
}

std::pair<double, double> NeumannSolution::flux_at_front(double t) const {
    if (!(t > 0.0)) {
        throw std::domain_error("flux_at_front: requires t > 0");
    }
    const Diffusivities& d = problem_.diffusivities();
    const double tpow = std::pow(t, problem_.alpha().nu());
    const double liquid = b_ / (d.lambda2 * tpow) *
                          mainardi(xi_ * d.ratio, problem_.alpha(), cfg_).value;
    const double solid = d_ / (d.lambda1 * tpow) * mainardi(xi_, problem_.alpha(), cfg_).value;
    return {liquid, solid};
}

NeumannSolution build_solution(const StefanProblem& problem, double root,
                               const WrightEvalConfig& cfg) {
    return NeumannSolution(problem, root, cfg);
}

double classical_mu(const StefanProblem& problem, double tol) {
    if (!(tol > 0.0) || !(tol <= 1e-4)) {
        throw std::invalid_argument("classical_mu: tol must lie in (0, 1e-4]");
    }
    const StefanParams& p = problem.params();
    const Diffusivities& d = problem.diffusivities();
    const double lam = d.ratio;
    const double a2 = p.k2 * (p.u0 - p.um) / (p.rho * p.latent_heat * d.lambda1 * d.lambda2);
    const double b1 = p.k1 * (p.um - p.ui) / (p.rho * p.latent_heat * d.lambda1 * d.lambda1);
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    auto G = [&](double m) {
        return a2 * std::exp(-lam * lam * m * m) / (sqrt_pi * std::erf(lam * m)) -
               b1 * std::exp(-m * m) / (sqrt_pi * std::erfc(m)) - m;
    };

    double lo = 1e-9;
    if (!(G(lo) > 0.0)) {
        throw NoRootError("classical_mu: equation has no positive bracket near 0");
    }
    double hi = 0.5;
    while (G(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 64.0) {
            throw NoRootError("classical_mu: no sign change found for mu <= 64");
        }
    }
    double mid = 0.5 * (lo + hi);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 240; ++it) {
        mid = 0.5 * (lo + hi);
        const double gm = G(mid);
        if (gm > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= tol && std::fabs(gm) <= 0.5 * tol * (1.0 + mid)) break;
        if (hi - lo <= 16.0 * eps * mid) break;
    }
    return mid;
}

NeumannSolution classical_neumann(const StefanProblem& problem, double tol,
                                  const WrightEvalConfig& cfg) {
    if (!problem.alpha().classical()) {
        throw std::invalid_argument("classical_neumann: requires alpha = 1");
    }
    const double mu = classical_mu(problem, tol);
    return NeumannSolution(problem, 2.0 * mu, cfg);
}

}  // namespace fracstefan
