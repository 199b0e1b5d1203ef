#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fracstefan/special.hpp"

namespace fracstefan {

/// Similarity scale factors lambda_j = sqrt(k_j / (rho c_j)), j = 1 solid,
/// j = 2 liquid. For alpha < 1 these carry dimension length * time^{-alpha/2}
/// (not a classical root-diffusivity); the similarity variable
/// x / (lambda_j t^{alpha/2}) is dimensionless either way.
struct Diffusivities {
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double ratio = 1.0;  // lambda = lambda1 / lambda2
};

struct StefanParams {
    double k1 = 1.0;           // solid conductivity, W/(m K)
    double k2 = 1.0;           // liquid conductivity, W/(m K)
    double c1 = 1.0;           // solid specific heat, J/(kg K)
    double c2 = 1.0;           // liquid specific heat, J/(kg K)
    double rho = 1.0;          // density, kg/m^3
    double latent_heat = 1.0;  // l, J/kg
    double u0 = 1.5;           // boundary temperature at x = 0 (liquid side)
    double um = 0.0;           // melting temperature
    double ui = -0.5;          // initial / far-field temperature (solid side)
    double alpha = 0.75;       // Caputo order
};

/// Two-phase melting problem data. Construction enforces positivity of the
/// material constants and the temperature ordering ui < um < u0; the mirrored
/// freezing problem is obtained by the caller relabeling, not by sign juggling.
class StefanProblem {
public:
    explicit StefanProblem(const StefanParams& p);

    const StefanParams& params() const noexcept { return p_; }
    FractionalOrder alpha() const noexcept { return alpha_; }
    const Diffusivities& diffusivities() const noexcept { return d_; }

    /// Same constants with a different order (used by limit sweeps).
    StefanProblem with_alpha(double alpha) const;

private:
    StefanParams p_;
    Diffusivities d_;
    FractionalOrder alpha_;
};

/// F1(x) = M_{alpha/2}(x) / [1 - W(-x, -alpha/2, 1)]; positive, decreasing,
/// diverging at 0+ and vanishing at infinity. Returns +inf when the
/// denominator underflows (x below the evaluable range).
double f1(double x, FractionalOrder alpha, const WrightEvalConfig& cfg = {});

/// F2(x) = M_{alpha/2}(x) / W(-x, -alpha/2, 1); positive with
/// F2(0) = 1/Gamma(1 - alpha/2), growing like ((alpha/2) x)^{alpha/(2-alpha)}.
/// Beyond the crossover the ratio is taken analytically: both Wright factors
/// sit on the asymptotic branch and their common exponential cancels, which
/// also sidesteps the 0/0 underflow at very large x.
double f2(double x, FractionalOrder alpha, const WrightEvalConfig& cfg = {});

/// F(x) = k2 (u0-um) / (rho l lambda1 lambda2) F1(lambda x)
///      - k1 (um-ui) / (rho l lambda1^2)      F2(x).
double big_f(double x, const StefanProblem& problem, const WrightEvalConfig& cfg = {});

/// Roots of F(x) = gamma_ratio(alpha) x found in (0, scan_max].
struct RootReport {
    std::vector<double> roots;      // ascending, residual-validated
    std::vector<double> residuals;  // |F(r) - gamma_ratio r| per root
    double bracket_scan_max = 0.0;
    std::string multiplicity_note;

    /// Canonical front coefficient: the smallest root (uniqueness is open).
    double xi() const { return roots.front(); }
};

/// Scans G(x) = F(x) - gamma_ratio(alpha) x for sign changes from x = 1e-8
/// (where G > 0) geometrically up to scan_max and refines every bracket by
/// bisection. All validated roots are reported; throws NoRootError when no
/// sign change exists in the window.
RootReport solve_xi(const StefanProblem& problem, double tol, double scan_max,
                    const WrightEvalConfig& cfg = {});

/// The generalized Neumann solution: front coefficient xi plus the four
/// ansatz coefficients, with evaluators for both temperature profiles and the
/// interface trajectory s(t) = xi lambda1 t^{alpha/2}.
class NeumannSolution {
public:
    NeumannSolution(const StefanProblem& problem, double xi, const WrightEvalConfig& cfg);

    double xi() const noexcept { return xi_; }
    double coeff_a() const noexcept { return a_; }
    double coeff_b() const noexcept { return b_; }
    double coeff_c() const noexcept { return c_; }
    double coeff_d() const noexcept { return d_; }
    const StefanProblem& problem() const noexcept { return problem_; }
    const WrightEvalConfig& eval_config() const noexcept { return cfg_; }

    /// s(t) = xi lambda1 t^{alpha/2}; s(0) = 0.
    double front(double t) const;

    /// Ansatz formulas, defined for all x >= 0, t >= 0 (the t = 0 values are
    /// the limits). These are what the governing equations are verified
    /// against; the eval_* wrappers add the phase-region domain checks.
    double u2_formula(double x, double t) const;
    double u1_formula(double x, double t) const;

    /// Liquid profile on 0 <= x <= s(t), t > 0; u2(0,t) = u0, u2(s(t),t) = um.
    double eval_u2(double x, double t) const;

    /// Solid profile on x >= s(t), t > 0; u1(s(t),t) = um, u1 -> ui as x -> inf.
    double eval_u1(double x, double t) const;

    /// Spatial gradients at the moving interface:
    /// (u2_x(s(t),t), u1_x(s(t),t)) = (B M(lambda xi)/(lambda2 t^{alpha/2}),
    ///                                 D M(xi)/(lambda1 t^{alpha/2})).
    std::pair<double, double> flux_at_front(double t) const;

private:
    StefanProblem problem_;
    WrightEvalConfig cfg_;
    double xi_;
    double a_, b_, c_, d_;
    double fe_at_xilam_;  // 1 - W(-xi lambda)
    double w_at_xi_;      // W(-xi)
};

NeumannSolution build_solution(const StefanProblem& problem, double root,
                               const WrightEvalConfig& cfg = {});

/// mu > 0 solving the classical two-phase transcendental equation
///   k2(u0-um)/(rho l lambda1 lambda2) exp(-lambda^2 mu^2)/(sqrt(pi) erf(lambda mu))
/// - k1(um-ui)/(rho l lambda1^2)       exp(-mu^2)/(sqrt(pi) erfc(mu)) = mu,
/// by bisection; only erf/erfc are used. Ignores problem.alpha().
double classical_mu(const StefanProblem& problem, double tol);

/// Classical Neumann solution (requires alpha = 1): the erf/erfc profiles
/// with front s(t) = 2 mu lambda1 sqrt(t), i.e. xi_1 = 2 mu.
NeumannSolution classical_neumann(const StefanProblem& problem, double tol,
                                  const WrightEvalConfig& cfg = {});

}  // namespace fracstefan
