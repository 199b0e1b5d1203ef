#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracstefan/verify.hpp"
#include "support/frozen_values.hpp"

using namespace fracstefan;
namespace oracle = fracstefan::test_oracle;

namespace {

const WrightEvalConfig kCfg;

StefanProblem default_problem(double alpha) {
    StefanParams p;
    p.alpha = alpha;
    return StefanProblem(p);
}

NeumannSolution solve_default(double alpha) {
    const StefanProblem pr = default_problem(alpha);
    if (pr.alpha().classical()) return classical_neumann(pr, 1e-10, kCfg);
    return build_solution(pr, solve_xi(pr, 1e-10, 50.0, kCfg).xi(), kCfg);
}

}  // namespace

TEST_CASE("pde_residual vanishes on constant fields") {
    const TimeGrid g = TimeGrid::graded(1.0, 64, 4.0);
    auto constant = [](double, double) { return 1.5; };
    CHECK(pde_residual(constant, 1.0, FractionalOrder(0.5), 0.7, 1.0, g, 0.01) == 0.0);
    CHECK(pde_residual(constant, 2.0, FractionalOrder(1.0), 0.7, 1.0, g, 0.01) == 0.0);
}

TEST_CASE("classical erf solution satisfies the heat equation within discretization error") {
    auto u = [](double x, double t) { return std::erf(x / (2.0 * std::sqrt(t))); };
    const TimeGrid g = TimeGrid::uniform(1.0, 512);
    const double r = pde_residual(u, 1.0, FractionalOrder(1.0), 0.8, 1.0, g, 0.005);
    CHECK(r < 1e-4);
}

TEST_CASE("check_pde residuals shrink under joint refinement (both phases)") {
    const NeumannSolution sol = solve_default(0.75);
    const double s1 = sol.front(1.0);
    std::vector<std::pair<double, double>> liquid, solid;
    const double cap = 0.9 * std::pow(2.0, -0.375);
    for (double f : {0.3, 0.45, 0.6, 0.8, 1.0}) liquid.push_back({f * cap * s1, 1.0});
    for (double f : {1.35, 1.7, 2.1, 2.6, 3.2}) solid.push_back({f * s1, 1.0});
    const TimeGrid base = TimeGrid::graded(1.0, 256, 2.0 / 0.75);

    for (Phase phase : {Phase::Liquid, Phase::Solid}) {
        const auto& pts = (phase == Phase::Liquid) ? liquid : solid;
        const std::vector<double> res = pde_refinement_residuals(sol, phase, pts, base, 0.04, 3);
        REQUIRE(res.size() == 3);
        CHECK(res[0] / res[1] >= 1.4);
        CHECK(res[1] / res[2] >= 1.4);
        const PdeCheck check = check_pde(sol, phase, pts, base, 0.04);
        CHECK(check.max_residual == res[0]);
        CHECK(check.points.size() == pts.size());
        CHECK(check.scale > 0.0);
    }
}

TEST_CASE("check_pde at alpha = 1 is refinement-convergent too") {
    const NeumannSolution sol = solve_default(1.0);
    const double s1 = sol.front(1.0);
    std::vector<std::pair<double, double>> liquid, solid;
    const double cap = 0.9 * std::pow(2.0, -0.5);
    for (double f : {0.4, 0.7, 1.0}) liquid.push_back({f * cap * s1, 1.0});
    for (double f : {1.4, 2.0, 2.8}) solid.push_back({f * s1, 1.0});
    const TimeGrid base = TimeGrid::uniform(1.0, 256);
    for (Phase phase : {Phase::Liquid, Phase::Solid}) {
        const auto& pts = (phase == Phase::Liquid) ? liquid : solid;
        const std::vector<double> res = pde_refinement_residuals(sol, phase, pts, base, 0.04, 3);
        CHECK(res[0] / res[1] >= 1.4);
        CHECK(res[1] / res[2] >= 1.4);
    }
}

TEST_CASE("check_pde rejects ill-placed samples") {
    const NeumannSolution sol = solve_default(0.75);
    const TimeGrid g = TimeGrid::graded(1.0, 64, 2.0 / 0.75);
    const double s1 = sol.front(1.0);
    // liquid point on the solid side
    CHECK_THROWS_AS(check_pde(sol, Phase::Liquid, {{1.5 * s1, 1.0}}, g, 0.01),
                    std::invalid_argument);
    // solid point on the liquid side
    CHECK_THROWS_AS(check_pde(sol, Phase::Solid, {{0.5 * s1, 1.0}}, g, 0.01),
                    std::invalid_argument);
    // too close to the front
    CHECK_THROWS_AS(check_pde(sol, Phase::Solid, {{s1 + 0.02, 1.0}}, g, 0.01),
                    std::invalid_argument);
    // liquid point the front has only just passed (t <= 2 t_min)
    CHECK_THROWS_AS(check_pde(sol, Phase::Liquid, {{0.95 * s1, 1.0}}, g, 0.01),
                    std::invalid_argument);
    // nonpositive time
    CHECK_THROWS_AS(check_pde(sol, Phase::Liquid, {{0.3 * s1, 0.0}}, g, 0.01),
                    std::invalid_argument);
}

TEST_CASE("stefan condition: closed-form balance, FD cross-check, t-scaling") {
    for (double a : {0.5, 0.75}) {
        const NeumannSolution sol = solve_default(a);
        const StefanConditionCheck sc = check_stefan_condition(sol, {0.5, 1.0, 2.0});
        REQUIRE(sc.times.size() == 3);
        const double nu = 0.5 * a;
        const double ref = sc.closed_form_residual[1];  // t = 1
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(sc.closed_form_residual[i] <= 1e-8 * sc.scale[i]);
            CHECK(sc.fd_flux_gap_liquid[i] <=
                  sc.fd_error_bound_liquid[i] + 1e-7 * sc.scale[i]);
            CHECK(sc.fd_flux_gap_solid[i] <= sc.fd_error_bound_solid[i] + 1e-7 * sc.scale[i]);
            if (ref > 0.0) {
                CHECK(std::fabs(sc.closed_form_residual[i] * std::pow(sc.times[i], nu) / ref -
                                1.0) <= 0.01);
            }
        }
    }
}

TEST_CASE("corrupted front coefficient breaks the stefan balance (negative control)") {
    const StefanProblem pr = default_problem(0.75);
    const double xi = solve_xi(pr, 1e-10, 50.0, kCfg).xi();
    const NeumannSolution bad = build_solution(pr, 1.1 * xi, kCfg);
    const StefanConditionCheck sc = check_stefan_condition(bad, {1.0});
    CHECK(sc.closed_form_residual[0] > 1e-3 * sc.scale[0]);
}

TEST_CASE("quarter-plane: boundary identities exact, PDE residual refinement-convergent") {
    const FractionalOrder half(0.5);
    const std::vector<std::pair<double, double>> samples = {{0.5, 1.0}, {1.0, 1.0}, {1.5, 0.8}};
    const TimeGrid base = TimeGrid::graded(1.0, 256, 4.0);
    for (QuarterPlaneKind kind :
         {QuarterPlaneKind::StepInitial, QuarterPlaneKind::BoundarySignal}) {
        const QuarterPlaneCheck qc =
            check_quarter_plane(half, kind, 2.0, 1.3, samples, base, 0.02, kCfg);
        CHECK(qc.boundary_gap <= 1e-14);
        CHECK(qc.initial_gap <= 1e-12);
        const std::vector<double> res = quarter_plane_refinement_residuals(
            half, kind, 2.0, 1.3, samples, base, 0.02, 3, kCfg);
        CHECK(res[0] / res[1] >= 1.4);
        CHECK(res[1] / res[2] >= 1.4);
    }
    CHECK_THROWS_AS(
        check_quarter_plane(half, QuarterPlaneKind::StepInitial, 1.0, 1.0, {{-1.0, 1.0}}, base,
                            0.02, kCfg),
        std::invalid_argument);
    CHECK_THROWS_AS(
        check_quarter_plane(half, QuarterPlaneKind::StepInitial, 1.0, 0.0, samples, base, 0.02,
                            kCfg),
        std::invalid_argument);
}

TEST_CASE("limit sweep: gaps decrease monotonically toward the classical solution") {
    const StefanProblem base = default_problem(0.75);
    std::vector<double> probes;
    for (int i = 0; i < 20; ++i) probes.push_back(0.05 + 3.0 * i / 19.0);
    const LimitSweepTable table =
        limit_sweep(base, {0.8, 0.9, 0.95, 0.99}, 1.0, probes, 1e-10, kCfg);
    REQUIRE(table.rows.size() == 4);
    CHECK(std::fabs(table.mu - oracle::kClassicalMu) <= 1e-9);
    CHECK(table.xi_classical == doctest::Approx(2.0 * table.mu));
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        CHECK(table.rows[i].ok);
        CHECK(table.rows[i].xi_alpha > 0.0);
        if (i > 0) {
            CHECK(table.rows[i].xi_gap < table.rows[i - 1].xi_gap);
            CHECK(table.rows[i].sup_u_gap < table.rows[i - 1].sup_u_gap);
            CHECK(table.rows[i].front_gap < table.rows[i - 1].front_gap);
        }
    }
    CHECK_THROWS_AS(limit_sweep(base, {0.9, 0.8}, 1.0, probes, 1e-10, kCfg),
                    std::invalid_argument);
}

TEST_CASE("run_verification passes on the default problem and reports structure") {
    VerifyOptions options;  // defaults match the documented grids
    const ResidualReport report = run_verification(default_problem(0.75), options, kCfg);
    CHECK(report.passed());
    CHECK(report.pde_residual_liquid > 0.0);
    CHECK(report.pde_residual_solid > 0.0);
    CHECK(report.stefan_residual <= 1e-8);
    CHECK(report.bc_residuals.count("interface continuity") == 1);
    CHECK(!report.lines.empty());
    const std::string text = report.to_text();
    CHECK(text.find("[PASS]") != std::string::npos);
    CHECK(text.find("FAIL") == std::string::npos);
    CHECK(text.find("all checks passed") != std::string::npos);
}

TEST_CASE("run_verification handles the classical configuration") {
    VerifyOptions options;
    options.limit_alphas.clear();  // nothing to sweep at alpha = 1
    const ResidualReport report = run_verification(default_problem(1.0), options, kCfg);
    CHECK(report.passed());
}
