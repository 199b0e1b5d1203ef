// Command-line front end: solves the free-boundary coefficient, emits
// temperature profiles and F2 scans as CSV/JSON, and runs the verification
// harness. Exit codes: 0 success, 1 usage/config error, 2 no root found,
// 3 verification failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fracstefan/run_config.hpp"
#include "fracstefan/verify.hpp"

namespace {

using namespace fracstefan;

struct Row {
    std::vector<std::pair<std::string, std::string>> cells;  // column -> formatted value
};

class TableWriter {
public:
    TableWriter(std::vector<std::string> columns, OutputFormat format)
        : columns_(std::move(columns)), format_(format) {}

    void add_row(const std::vector<std::string>& values) {
        rows_.push_back(values);
    }

    void write(std::ostream& os) const {
        if (format_ == OutputFormat::Csv) {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                os << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
            }
            for (const auto& row : rows_) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    os << row[i] << (i + 1 < row.size() ? "," : "\n");
                }
            }
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& row : rows_) {
                nlohmann::json obj;
                for (std::size_t i = 0; i < columns_.size(); ++i) {
                    // numeric cells stay numeric in the JSON mirror
                    try {
                        std::size_t pos = 0;
                        const double v = std::stod(row[i], &pos);
                        if (pos == row[i].size()) {
                            obj[columns_[i]] = v;
                            continue;
                        }
                    } catch (...) {
                    }
                    obj[columns_[i]] = row[i];
                }
                arr.push_back(obj);
            }
            os << arr.dump(2) << "\n";
        }
    }

private:
    std::vector<std::string> columns_;
    OutputFormat format_;
    std::vector<std::vector<std::string>> rows_;
};

/// Data goes to `path` when given, stdout otherwise; the human summary goes
/// to stdout, or stderr when the data itself occupies stdout.
struct OutputStreams {
    std::unique_ptr<std::ofstream> file;
    std::ostream* data = &std::cout;
    std::ostream* summary = &std::cerr;

    explicit OutputStreams(const std::string& path) {
        if (!path.empty()) {
            file = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file) {
                throw std::invalid_argument("cannot open output file '" + path + "'");
            }
            data = file.get();
            summary = &std::cout;
        }
    }
};

int cmd_xi(const RunConfig& cfg) {
    const StefanProblem problem = cfg.stefan_problem();
    if (problem.alpha().classical()) {
        const double mu = classical_mu(problem, cfg.tol);
        std::cout << "classical problem (alpha = 1)\n";
        std::cout << "mu  = " << format_double(mu) << "\n";
        std::cout << "xi1 = 2 mu = " << format_double(2.0 * mu) << "\n";
        return 0;
    }
    const RootReport report = solve_xi(problem, cfg.tol, cfg.scan_max, cfg.eval);
    const double g = gamma_ratio(problem.alpha());
    std::cout << "gamma(alpha) = " << format_double(g)
              << "  lambda = " << format_double(problem.diffusivities().ratio) << "\n";
    for (std::size_t i = 0; i < report.roots.size(); ++i) {
        std::cout << "root " << i << ": xi = " << format_double(report.roots[i])
                  << "  residual = " << format_double(report.residuals[i]) << "\n";
    }
    std::cout << report.multiplicity_note << "\n";
    return 0;
}

int cmd_profile(const RunConfig& cfg) {
    const StefanProblem problem = cfg.stefan_problem();
    const NeumannSolution sol =
        problem.alpha().classical()
            ? classical_neumann(problem, cfg.tol, cfg.eval)
            : build_solution(problem, solve_xi(problem, cfg.tol, cfg.scan_max, cfg.eval).xi(),
                             cfg.eval);

    OutputStreams out(cfg.output.path);
    TableWriter table({"x", "t", "phase", "u"}, cfg.output.format);
    const Eigen::ArrayXd xs =
        Eigen::ArrayXd::LinSpaced(cfg.output.n_x, cfg.output.x_min, cfg.output.x_max);
    std::vector<double> times = cfg.output.times;
    std::sort(times.begin(), times.end());
    for (double t : times) {
        const double s = sol.front(t);
        bool front_written = false;
        auto write_front = [&] {
            table.add_row({format_double(s), format_double(t), "front",
                           format_double(problem.params().um)});
            front_written = true;
        };
        for (Eigen::Index i = 0; i < xs.size(); ++i) {
            const double x = xs[i];
            if (!front_written && x >= s) write_front();
            if (x < s) {
                table.add_row({format_double(x), format_double(t), "liquid",
                               format_double(sol.eval_u2(x, t))});
            } else if (x > s) {
                table.add_row({format_double(x), format_double(t), "solid",
                               format_double(sol.eval_u1(x, t))});
            }
        }
        if (!front_written) write_front();
    }
    table.write(*out.data);
    *out.summary << "front s(t) = " << format_double(sol.xi()) << " * lambda1 * t^(alpha/2)\n";
    return 0;
}

int cmd_f2_scan(const RunConfig& cfg, const std::vector<double>& alphas, double x_max, int n) {
    if (n < 2) {
        throw std::invalid_argument("f2-scan: n must be >= 2");
    }
    if (!(x_max > 0.0)) {
        throw std::invalid_argument("f2-scan: x-max must be positive");
    }
    for (double a : alphas) {
        if (!(a > 0.0) || !(a < 1.0)) {
            throw std::invalid_argument("f2-scan: alphas must lie in (0, 1)");
        }
    }
    OutputStreams out(cfg.output.path);
    TableWriter table({"alpha", "x", "f2"}, cfg.output.format);
    const Eigen::ArrayXd xs = Eigen::ArrayXd::LinSpaced(n, 0.0, x_max);
    std::ostringstream summary;
    for (double a : alphas) {
        const FractionalOrder order(a);
        Eigen::ArrayXd vals(xs.size());
        for (Eigen::Index i = 0; i < xs.size(); ++i) {
            vals[i] = f2(xs[i], order, cfg.eval);
            table.add_row({format_double(a), format_double(xs[i]), format_double(vals[i])});
        }
        bool increasing = true;
        for (Eigen::Index i = 0; i + 1 < vals.size(); ++i) {
            if (!(vals[i + 1] > vals[i])) increasing = false;
        }
        summary << "alpha=" << format_double(a)
                << ": strictly increasing over " << n << " samples: "
                << (increasing ? "yes" : "NO") << "  F2(0)=" << format_double(vals[0])
                << "  1/Gamma(1-alpha/2)=" << format_double(recip_gamma(1.0 - 0.5 * a)) << "\n";
    }
    table.write(*out.data);
    *out.summary << summary.str();
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const StefanProblem problem = cfg.stefan_problem();
    VerifyOptions options;
    options.tol = cfg.tol;
    options.scan_max = cfg.scan_max;
    const ResidualReport report = run_verification(problem, options, cfg.eval);
    std::cout << report.to_text();
    return report.passed() ? 0 : 3;
}

int cmd_limit_sweep(const RunConfig& cfg, const std::vector<double>& alphas) {
    const StefanProblem problem = cfg.stefan_problem();
    OutputStreams out(cfg.output.path);

    const StefanProblem classical_problem = problem.with_alpha(1.0);
    const double mu = classical_mu(classical_problem, cfg.tol);
    const Diffusivities& d = classical_problem.diffusivities();
    const double width = std::max({d.lambda1, d.lambda2, 2.0 * mu * d.lambda1});
    std::vector<double> probes;
    for (int i = 0; i < 20; ++i) probes.push_back(width * (0.05 + 3.0 * i / 19.0));

    const LimitSweepTable table = limit_sweep(problem, alphas, 1.0, probes, cfg.tol, cfg.eval);
    TableWriter writer({"alpha", "xi_alpha", "xi_gap", "sup_u_gap", "front_gap"},
                       cfg.output.format);
    for (const LimitSweepRow& row : table.rows) {
        if (row.ok) {
            writer.add_row({format_double(row.alpha), format_double(row.xi_alpha),
                            format_double(row.xi_gap), format_double(row.sup_u_gap),
                            format_double(row.front_gap)});
        } else {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            writer.add_row({format_double(row.alpha), format_double(nan), format_double(nan),
                            format_double(nan), format_double(nan)});
            *out.summary << "alpha=" << format_double(row.alpha) << " failed: " << row.error
                         << "\n";
        }
    }
    // final row: the classical limit itself
    writer.add_row({format_double(1.0), format_double(table.xi_classical), format_double(0.0),
                    format_double(0.0), format_double(0.0)});
    writer.write(*out.data);
    *out.summary << "mu = " << format_double(table.mu)
                 << "  xi_classical = 2 mu = " << format_double(table.xi_classical) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Neumann solution of the two-phase fractional Stefan problem"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format;
    double tol = -1.0;
    double scan_max = -1.0;
    std::vector<double> alphas;
    double x_max = 5.0;
    int n_scan = 500;

    app.add_option("--config", config_path, "JSON config file (flat key-value)");
    app.add_option("--out", out_path, "output path (default: stdout)");
    app.add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tol", tol, "root solver tolerance, in (0, 1e-4]");
    app.add_option("--scan-max", scan_max, "upper end of the root scan window");
    app.add_option("--alphas", alphas, "comma-separated fractional orders")->delimiter(',');

    CLI::App* sub_xi = app.add_subcommand("xi", "solve the free-boundary coefficient equation");
    CLI::App* sub_profile =
        app.add_subcommand("profile", "write temperature profiles and front positions");
    CLI::App* sub_scan = app.add_subcommand("f2-scan", "sample F2 on a grid per alpha");
    sub_scan->add_option("--x-max", x_max, "scan upper end (default 5)");
    sub_scan->add_option("--n", n_scan, "number of samples (default 500)");
    CLI::App* sub_verify = app.add_subcommand("verify", "run the verification harness");
    CLI::App* sub_sweep =
        app.add_subcommand("limit-sweep", "convergence table toward the classical solution");
    for (CLI::App* sub : {sub_xi, sub_profile, sub_scan, sub_verify, sub_sweep}) {
        sub->fallthrough();  // global flags may follow the subcommand name
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            cfg = RunConfig::load_file(config_path);
        }
        if (!out_path.empty()) cfg.output.path = out_path;
        if (!format.empty()) {
            cfg.output.format = (format == "json") ? OutputFormat::Json : OutputFormat::Csv;
        }
        if (tol > 0.0) cfg.tol = tol;
        if (scan_max > 0.0) cfg.scan_max = scan_max;
        cfg.validate();

        if (sub_xi->parsed()) return cmd_xi(cfg);
        if (sub_profile->parsed()) return cmd_profile(cfg);
        if (sub_scan->parsed()) {
            if (alphas.empty()) {
                alphas = {1.0 / 16, 1.0 / 8, 1.0 / 4, 3.0 / 8, 1.0 / 2,
                          5.0 / 8, 3.0 / 4, 7.0 / 8, 15.0 / 16};
            }
            return cmd_f2_scan(cfg, alphas, x_max, n_scan);
        }
        if (sub_verify->parsed()) return cmd_verify(cfg);
        if (sub_sweep->parsed()) {
            if (alphas.empty()) alphas = {0.8, 0.9, 0.95, 0.99};
            return cmd_limit_sweep(cfg, alphas);
        }
        std::cerr << "no subcommand given\n";
        return 1;
    } catch (const fracstefan::NoRootError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
