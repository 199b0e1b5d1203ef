#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracstefan/special.hpp"

namespace fracstefan {

enum class GridSpacing { Uniform, Graded };

/// Nodes on [0, t_end]. The graded variant places t_j = t_end (j/n)^r with
/// r > 1, clustering nodes near t = 0 where self-similar fields behave like
/// t^{alpha/2}; r = 2/alpha is the default used for verifying the solution.
struct TimeGrid {
    double t_end = 1.0;
    int n_steps = 256;
    GridSpacing spacing = GridSpacing::Uniform;
    double grade_exponent = 2.0;

    static TimeGrid uniform(double t_end, int n_steps) {
        TimeGrid g{t_end, n_steps, GridSpacing::Uniform, 2.0};
        g.validate();
        return g;
    }

    static TimeGrid graded(double t_end, int n_steps, double exponent) {
        TimeGrid g{t_end, n_steps, GridSpacing::Graded, exponent};
        g.validate();
        return g;
    }

    void validate() const {
        if (!(t_end > 0.0) || !std::isfinite(t_end)) {
            throw std::invalid_argument("TimeGrid: t_end must be positive");
        }
        if (n_steps < 8) {
            throw std::invalid_argument("TimeGrid: n_steps must be >= 8");
        }
        if (spacing == GridSpacing::Graded && !(grade_exponent > 1.0)) {
            throw std::invalid_argument("TimeGrid: graded exponent must be > 1");
        }
    }

    Eigen::ArrayXd nodes() const {
        validate();
        Eigen::ArrayXd out(n_steps + 1);
        for (int j = 0; j <= n_steps; ++j) {
            const double r = static_cast<double>(j) / n_steps;
            out[j] = (spacing == GridSpacing::Graded) ? t_end * std::pow(r, grade_exponent)
                                                      : t_end * r;
        }
        return out;
    }

    TimeGrid refined(int factor) const {
        TimeGrid g = *this;
        g.n_steps *= factor;
        return g;
    }

    TimeGrid rescaled(double new_t_end) const {
        TimeGrid g = *this;
        g.t_end = new_t_end;
        return g;
    }
};

/// L1-scheme approximation of the Caputo derivative (D^alpha f)(t_n) of order
/// alpha in (0,1) with base point 0, from samples f(t_j) on a strictly
/// increasing grid starting at t_0 = 0:
///   sum_j w_j (f_{j+1} - f_j),
///   w_j = [(t_n - t_j)^{1-alpha} - (t_n - t_{j+1})^{1-alpha}] / (Gamma(2-alpha) (t_{j+1} - t_j)).
inline double caputo_l1(const Eigen::Ref<const Eigen::ArrayXd>& t,
                        const Eigen::Ref<const Eigen::ArrayXd>& f,
                        FractionalOrder alpha) {
    if (alpha.classical()) {
        throw std::invalid_argument(
            "caputo_l1: requires alpha in (0,1); alpha = 1 is the ordinary derivative");
    }
    if (t.size() != f.size() || t.size() < 2) {
        throw std::invalid_argument("caputo_l1: need matching sample arrays with at least 2 nodes");
    }
    if (t[0] != 0.0) {
        throw std::invalid_argument("caputo_l1: samples must start at t = 0 (Caputo base point)");
    }
    for (Eigen::Index j = 0; j + 1 < t.size(); ++j) {
        if (!(t[j + 1] > t[j])) {
            throw std::invalid_argument("caputo_l1: sample times must be strictly increasing");
        }
    }

    const long double a = alpha.value();
    const long double p = 1.0L - a;
    const long double T = t[t.size() - 1];
    const long double inv_g = 1.0L / std::tgamma(2.0L - a);
    long double sum = 0.0L, comp = 0.0L;
    for (Eigen::Index j = 0; j + 1 < t.size(); ++j) {
        const long double tj = t[j];
        const long double tj1 = t[j + 1];
        const long double dt = tj1 - tj;
        // (T-tj)^p - (T-tj1)^p without cancellation: on graded meshes the
        // early nodes sit many ulps below T and the naive difference is zero
        long double diff;
        if (tj1 == T) {
            diff = std::pow(T - tj, p);
        } else {
            diff = std::pow(T - tj1, p) * std::expm1(p * std::log1p(dt / (T - tj1)));
        }
        const long double wj = diff * inv_g / dt;
        const long double term = wj * (static_cast<long double>(f[j + 1]) - f[j]);
        const long double y = term - comp;
        const long double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return static_cast<double>(sum);
}

/// Convenience overload sampling a callable on a TimeGrid.
template <class F>
double caputo_l1(F&& f, const TimeGrid& grid, FractionalOrder alpha) {
    const Eigen::ArrayXd t = grid.nodes();
    Eigen::ArrayXd y(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) y[i] = f(t[i]);
    return caputo_l1(t, y, alpha);
}

struct CaputoEstimate {
    double value = 0.0;        // finer-grid result
    double est_rel_err = 0.0;  // disagreement between the two grids
    bool grid_converged = false;
};

/// caputo_l1 with a built-in coarseness check: evaluates on `grid` and on its
/// 2x refinement and flags grid_converged = false (the "grid too coarse"
/// warning) when the two disagree by more than rel_tol.
template <class F>
CaputoEstimate caputo_l1_estimate(F&& f, const TimeGrid& grid, FractionalOrder alpha,
                                  double rel_tol) {
    if (!(rel_tol > 0.0)) {
        throw std::invalid_argument("caputo_l1_estimate: rel_tol must be positive");
    }
    const double coarse = caputo_l1(f, grid, alpha);
    const double fine = caputo_l1(f, grid.refined(2), alpha);
    const double scale = std::max(std::fabs(fine), 1e-300);
    CaputoEstimate out;
    out.value = fine;
    out.est_rel_err = std::fabs(fine - coarse) / scale;
    out.grid_converged = out.est_rel_err <= rel_tol;
    return out;
}

/// Caputo power rule: D^alpha t^beta = Gamma(beta+1)/Gamma(1+beta-alpha) t^{beta-alpha}
/// for beta > -1, with the Caputo convention D^alpha const = 0. When
/// 1+beta-alpha is a nonpositive integer the derivative vanishes (entire
/// reciprocal Gamma), and 0 is returned.
inline double caputo_power(double beta, FractionalOrder alpha, double t) {
    if (!(beta > -1.0)) {
        throw std::domain_error("caputo_power: requires beta > -1");
    }
    if (!(t > 0.0)) {
        throw std::domain_error("caputo_power: requires t > 0");
    }
    if (beta == 0.0) return 0.0;
    const double a = alpha.value();
    return std::tgamma(beta + 1.0) * recip_gamma(1.0 + beta - a) * std::pow(t, beta - a);
}

}  // namespace fracstefan
