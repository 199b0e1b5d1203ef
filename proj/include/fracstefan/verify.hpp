#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fracstefan/caputo.hpp"
#include "fracstefan/stefan.hpp"

namespace fracstefan {

enum class Phase { Liquid, Solid };

/// |D^alpha u - lambda^2 u_xx| of an arbitrary field at one point, with the
/// Caputo derivative by the L1 scheme on `grid` rescaled to [0, t] and u_xx
/// by a central second difference (alpha = 1 uses a central time difference).
double pde_residual(const std::function<double(double, double)>& u, double lambda,
                    FractionalOrder alpha, double x, double t, const TimeGrid& grid, double h_x);

struct PdePointResidual {
    double x = 0.0;
    double t = 0.0;
    double residual = 0.0;
};

struct PdeCheck {
    Phase phase = Phase::Liquid;
    double max_residual = 0.0;
    double scale = 1.0;  // max(|u0 - ui|, 1) * lambda_j^2 / x_char^2
    int n_time_steps = 0;
    double h_x = 0.0;
    std::vector<PdePointResidual> points;
};

/// Residual |D^alpha u_j(x, .) - lambda_j^2 u_xx| of the governing equation
/// at interior sample points, with the Caputo derivative taken by the L1
/// scheme on `grid` rescaled to each sample's [0, t] and u_xx by a central
/// second difference of step h_x. The ansatz formulas (globally defined) are
/// differentiated, with the time integral starting at the t = 0 limit value.
///
/// Points closer than 3 h_x to the moving boundary are rejected, as are
/// liquid points the front has not comfortably passed (t <= 2 t_min(x) with
/// t_min(x) = (x/(xi lambda1))^{2/alpha}).
///
/// At alpha = 1 the classical residual |u_t - lambda_j^2 u_xx| is computed
/// with a central time difference instead.
PdeCheck check_pde(const NeumannSolution& sol, Phase phase,
                   const std::vector<std::pair<double, double>>& sample_points,
                   const TimeGrid& grid, double h_x);

/// max_residual of check_pde at `levels` successive refinements, doubling the
/// time steps and halving h_x together.
std::vector<double> pde_refinement_residuals(const NeumannSolution& sol, Phase phase,
                                             const std::vector<std::pair<double, double>>& pts,
                                             const TimeGrid& base_grid, double base_h_x,
                                             int levels);

struct StefanConditionCheck {
    std::vector<double> times;
    std::vector<double> closed_form_residual;   // |k1 u1x - k2 u2x - rho l D^alpha s|
    std::vector<double> scale;                  // |rho l D^alpha s| at each time
    std::vector<double> fd_flux_gap_liquid;     // |Richardson one-sided FD - closed form|
    std::vector<double> fd_flux_gap_solid;
    std::vector<double> fd_error_bound_liquid;  // |D_h - D_{h/2}| spread per time
    std::vector<double> fd_error_bound_solid;
};

/// Both sides of the free-boundary energy balance: fluxes from the closed
/// forms AND from one-sided finite differences (Richardson-extrapolated); the
/// right side from the Caputo power rule applied to s(t). h_x is the
/// difference step relative to s(t), in (0, 0.5).
StefanConditionCheck check_stefan_condition(const NeumannSolution& sol,
                                            const std::vector<double>& times,
                                            double h_x = 1e-4);

enum class QuarterPlaneKind { StepInitial, BoundarySignal };

struct QuarterPlaneCheck {
    QuarterPlaneKind kind = QuarterPlaneKind::StepInitial;
    double boundary_gap = 0.0;  // |v(0,t)| or |w(0,t) - g0|, algebraic identities
    double initial_gap = 0.0;   // approach to the t -> 0+ limit at the sampled x
    double max_pde_residual = 0.0;
    std::vector<PdePointResidual> points;
};

/// The two quarter-plane building blocks: v = f0 [1 - W(-x/(lambda t^{a/2}))]
/// (step initial data, zero boundary) and w = g0 W(-x/(lambda t^{a/2}))
/// (zero initial data, boundary signal g0). Verifies the boundary/initial
/// identities and the fractional PDE residual at the samples.
QuarterPlaneCheck check_quarter_plane(FractionalOrder alpha, QuarterPlaneKind kind,
                                      double amplitude, double lambda,
                                      const std::vector<std::pair<double, double>>& samples,
                                      const TimeGrid& grid, double h_x,
                                      const WrightEvalConfig& cfg = {});

std::vector<double> quarter_plane_refinement_residuals(
    FractionalOrder alpha, QuarterPlaneKind kind, double amplitude, double lambda,
    const std::vector<std::pair<double, double>>& samples, const TimeGrid& base_grid,
    double base_h_x, int levels, const WrightEvalConfig& cfg = {});

struct LimitSweepRow {
    double alpha = 0.0;
    double xi_alpha = 0.0;
    double xi_gap = 0.0;     // |xi_alpha - 2 mu|
    double sup_u_gap = 0.0;  // max over probes of |u^alpha - u^classical|
    double front_gap = 0.0;  // |s_alpha(t_probe) - s_1(t_probe)|
    bool ok = false;
    std::string error;
};

struct LimitSweepTable {
    std::vector<LimitSweepRow> rows;
    double mu = 0.0;
    double xi_classical = 0.0;  // 2 mu
    double t_probe = 1.0;
};

/// Convergence evidence for the alpha -> 1 limit: per order, the front
/// coefficient gap and pointwise temperature gaps against the classical
/// erf/erfc solution of the same constants. Per-alpha solver failures are
/// recorded in the row and the sweep continues.
LimitSweepTable limit_sweep(const StefanProblem& base, const std::vector<double>& alphas,
                            double t_probe, const std::vector<double>& x_probes, double tol,
                            const WrightEvalConfig& cfg = {});

struct ReportLine {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ResidualReport {
    double pde_residual_liquid = 0.0;  // finest-level max residuals
    double pde_residual_solid = 0.0;
    double stefan_residual = 0.0;
    std::map<std::string, double> bc_residuals;
    std::string grid_meta;
    std::vector<ReportLine> lines;

    bool passed() const;
    std::string to_text() const;
};

struct VerifyOptions {
    double tol = 1e-10;
    double scan_max = 50.0;
    int base_time_steps = 256;
    double base_h_x = 0.04;
    int refinement_levels = 3;
    double min_refinement_ratio = 1.4;
    std::vector<double> stefan_times = {0.5, 1.0, 2.0};
    std::vector<double> limit_alphas = {0.8, 0.9, 0.95, 0.99};
};

/// Runs the whole harness on one problem: PDE residuals in both phases under
/// refinement, the free-boundary balance, the quarter-plane identities, and
/// (for alpha < 1) the classical-limit sweep. Every line carries the
/// tolerance it was judged against.
ResidualReport run_verification(const StefanProblem& problem, const VerifyOptions& options,
                                const WrightEvalConfig& cfg = {});

}  // namespace fracstefan
