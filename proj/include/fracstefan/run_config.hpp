#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fracstefan/special.hpp"
#include "fracstefan/stefan.hpp"

namespace fracstefan {

enum class OutputFormat { Csv, Json };

struct OutputSpec {
    OutputFormat format = OutputFormat::Csv;
    std::string path;  // empty = stdout
    double x_min = 0.0;
    double x_max = 4.0;
    int n_x = 201;
    std::vector<double> times = {0.5, 1.0, 2.0};
};

/// One flat key-value document driving every CLI command. Keys mirror the
/// StefanParams / WrightEvalConfig / solver / output fields one-to-one;
/// unknown keys are rejected so typos surface at parse time.
struct RunConfig {
    StefanParams problem;
    WrightEvalConfig eval;
    double tol = 1e-10;
    double scan_max = 50.0;
    OutputSpec output;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load_file(const std::string& path);
    nlohmann::json to_json() const;

    /// Enforces every invariant with a diagnostic naming the violated
    /// inequality (problem invariants included, at parse time).
    void validate() const;

    StefanProblem stefan_problem() const { return StefanProblem(problem); }
};

bool operator==(const OutputSpec& a, const OutputSpec& b);
bool operator==(const RunConfig& a, const RunConfig& b);

/// Fixed-format double: 17 significant digits, '.' decimal point, no locale.
std::string format_double(double v);

}  // namespace fracstefan
