#pragma once

#include <string>

#include <json.hpp>

#include "qom/model.hpp"

namespace qom::cli {

// Zero means "derive a default at run time" for every field commented so.
struct NumericsConfig {
    int dim_cavity = 0;     // 0: occupation-based default
    int dim_mech = 0;       // 0: occupation-based default
    double dt_max = 0.0;    // time units of 1/kappa; 0: stability bound only
    double stop_tol = 1e-10;
    double t_cap = 0.0;     // time units of 1/kappa; 0: rate-based default
};

struct WignerConfig {
    double x_max = 0.0;  // dimensionless quadrature; 0: occupation-based default
    int n_points = 161;
};

struct OutputConfig {
    std::string directory = ".";
    std::string format = "csv";  // tabular datasets only; sidecars are always JSON
};

// Rates (g2, kappa, gamma) share one inverse-time unit; r, theta, n_th are
// dimensionless. Matches the JSON schema section for section.
struct RunConfig {
    double r = 1.0;
    double theta = 0.0;
    double g2 = 0.05;
    double kappa = 1.0;
    double gamma = 0.0;
    double n_th = 0.0;
    bool include_mech_bath = false;
    NumericsConfig numerics;
    WignerConfig wigner;
    OutputConfig output;
};

// Strict parse: unknown keys anywhere are rejected, wrong JSON types are
// rejected, partial sections are fine (absent fields keep defaults).
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

void validate(const RunConfig& c);

// Canonical serialization of the fully resolved configuration; hashing this
// identifies a run.
nlohmann::json config_to_json(const RunConfig& c);

// Model parameters with truncations resolved: explicit numerics values win,
// otherwise the occupation-based defaults. The effective model takes the
// tail-checked mechanical default; the two-mode model takes the occupation
// floor only, since its cost scales with the product of both dimensions.
model::ModelParams resolve_params(const RunConfig& c, bool two_mode);

}  // namespace qom::cli
