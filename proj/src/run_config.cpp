#include "fracstefan/run_config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace fracstefan {

namespace {

const std::set<std::string> kKnownKeys = {
    "alpha", "k1", "k2", "c1", "c2", "rho", "latent_heat", "u0", "um", "ui",
    "series_terms_max", "crossover_x", "target_rel_err",
    "tol", "scan_max",
    "format", "out", "x_min", "x_max", "n_x", "times"};

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("config: expected a flat JSON object");
    }
    for (const auto& item : j.items()) {
        if (kKnownKeys.find(item.key()) == kKnownKeys.end()) {
            throw std::invalid_argument("config: unknown key '" + item.key() + "'");
        }
    }
    RunConfig c;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) {
            try {
                field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
            } catch (const nlohmann::json::exception& e) {
                throw std::invalid_argument(std::string("config: bad value for '") + key +
                                            "': " + e.what());
            }
        }
    };
    get("alpha", c.problem.alpha);
    get("k1", c.problem.k1);
    get("k2", c.problem.k2);
    get("c1", c.problem.c1);
    get("c2", c.problem.c2);
    get("rho", c.problem.rho);
    get("latent_heat", c.problem.latent_heat);
    get("u0", c.problem.u0);
    get("um", c.problem.um);
    get("ui", c.problem.ui);
    get("series_terms_max", c.eval.series_terms_max);
    get("crossover_x", c.eval.crossover_x);
    get("target_rel_err", c.eval.target_rel_err);
    get("tol", c.tol);
    get("scan_max", c.scan_max);
    get("out", c.output.path);
    get("x_min", c.output.x_min);
    get("x_max", c.output.x_max);
    get("n_x", c.output.n_x);
    get("times", c.output.times);
    if (j.contains("format")) {
        const std::string f = j.at("format").get<std::string>();
        if (f == "csv") {
            c.output.format = OutputFormat::Csv;
        } else if (f == "json") {
            c.output.format = OutputFormat::Json;
        } else {
            throw std::invalid_argument("config: format must be 'csv' or 'json', got '" + f + "'");
        }
    }
    c.validate();
    return c;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot open '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config: parse error in '" + path + "': " + e.what());
    }
    return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["alpha"] = problem.alpha;
    j["k1"] = problem.k1;
    j["k2"] = problem.k2;
    j["c1"] = problem.c1;
    j["c2"] = problem.c2;
    j["rho"] = problem.rho;
    j["latent_heat"] = problem.latent_heat;
    j["u0"] = problem.u0;
    j["um"] = problem.um;
    j["ui"] = problem.ui;
    j["series_terms_max"] = eval.series_terms_max;
    j["crossover_x"] = eval.crossover_x;
    j["target_rel_err"] = eval.target_rel_err;
    j["tol"] = tol;
    j["scan_max"] = scan_max;
    j["format"] = (output.format == OutputFormat::Csv) ? "csv" : "json";
    j["out"] = output.path;
    j["x_min"] = output.x_min;
    j["x_max"] = output.x_max;
    j["n_x"] = output.n_x;
    j["times"] = output.times;
    return j;
}

void RunConfig::validate() const {
    StefanProblem check(problem);  // enforces positivity and ui < um < u0
    (void)check;
    eval.validate();
    if (!(tol > 0.0) || !(tol <= 1e-4)) {
        throw std::invalid_argument("config: tol must lie in (0, 1e-4]");
    }
    if (!(scan_max > 0.0)) {
        throw std::invalid_argument("config: scan_max must be positive");
    }
    if (!(output.x_min >= 0.0)) {
        throw std::invalid_argument("config: x_min must be >= 0");
    }
    if (!(output.x_max > output.x_min)) {
        throw std::invalid_argument("config: requires x_max > x_min");
    }
    if (output.n_x < 2) {
        throw std::invalid_argument("config: n_x must be >= 2");
    }
    if (output.times.empty()) {
        throw std::invalid_argument("config: times must be nonempty");
    }
    for (double t : output.times) {
        if (!(t > 0.0)) {
            throw std::invalid_argument("config: every entry of times must be > 0");
        }
    }
}

bool operator==(const OutputSpec& a, const OutputSpec& b) {
    return a.format == b.format && a.path == b.path && a.x_min == b.x_min && a.x_max == b.x_max &&
           a.n_x == b.n_x && a.times == b.times;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    const StefanParams& p = a.problem;
    const StefanParams& q = b.problem;
    return p.k1 == q.k1 && p.k2 == q.k2 && p.c1 == q.c1 && p.c2 == q.c2 && p.rho == q.rho &&
           p.latent_heat == q.latent_heat && p.u0 == q.u0 && p.um == q.um && p.ui == q.ui &&
           p.alpha == q.alpha && a.eval.series_terms_max == b.eval.series_terms_max &&
           a.eval.crossover_x == b.eval.crossover_x &&
           a.eval.target_rel_err == b.eval.target_rel_err && a.tol == b.tol &&
           a.scan_max == b.scan_max && a.output == b.output;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace fracstefan
