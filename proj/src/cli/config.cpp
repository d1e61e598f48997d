#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string>

#include "qom/errors.hpp"
#include "qom/oracle.hpp"

namespace qom::cli {

namespace {

void check_keys(const nlohmann::json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
    require(obj.is_object(), std::string("config section '") + where + "' must be a JSON object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        require(known, std::string("unknown config key '") + item.key() + "' in '" + where + "'");
    }
}

double get_real(const nlohmann::json& sec, const char* key, double fallback) {
    if (!sec.contains(key)) return fallback;
    require(sec[key].is_number(), std::string("config key '") + key + "' must be a number");
    return sec[key].get<double>();
}

int get_int(const nlohmann::json& sec, const char* key, int fallback) {
    if (!sec.contains(key)) return fallback;
    require(sec[key].is_number_integer(), std::string("config key '") + key + "' must be an integer");
    return sec[key].get<int>();
}

bool get_bool(const nlohmann::json& sec, const char* key, bool fallback) {
    if (!sec.contains(key)) return fallback;
    require(sec[key].is_boolean(), std::string("config key '") + key + "' must be a boolean");
    return sec[key].get<bool>();
}

std::string get_string(const nlohmann::json& sec, const char* key, const std::string& fallback) {
    if (!sec.contains(key)) return fallback;
    require(sec[key].is_string(), std::string("config key '") + key + "' must be a string");
    return sec[key].get<std::string>();
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
    RunConfig c;
    check_keys(j, "<root>", {"model", "numerics", "wigner", "output"});
    if (j.contains("model")) {
        const auto& m = j["model"];
        check_keys(m, "model", {"r", "theta", "g2", "kappa", "gamma", "n_th", "include_mech_bath"});
        c.r = get_real(m, "r", c.r);
        c.theta = get_real(m, "theta", c.theta);
        c.g2 = get_real(m, "g2", c.g2);
        c.kappa = get_real(m, "kappa", c.kappa);
        c.gamma = get_real(m, "gamma", c.gamma);
        c.n_th = get_real(m, "n_th", c.n_th);
        c.include_mech_bath = get_bool(m, "include_mech_bath", c.include_mech_bath);
    }
    if (j.contains("numerics")) {
        const auto& n = j["numerics"];
        check_keys(n, "numerics", {"dim_cavity", "dim_mech", "dt_max", "stop_tol", "t_cap"});
        c.numerics.dim_cavity = get_int(n, "dim_cavity", c.numerics.dim_cavity);
        c.numerics.dim_mech = get_int(n, "dim_mech", c.numerics.dim_mech);
        c.numerics.dt_max = get_real(n, "dt_max", c.numerics.dt_max);
        c.numerics.stop_tol = get_real(n, "stop_tol", c.numerics.stop_tol);
        c.numerics.t_cap = get_real(n, "t_cap", c.numerics.t_cap);
    }
    if (j.contains("wigner")) {
        const auto& w = j["wigner"];
        check_keys(w, "wigner", {"x_max", "n_points"});
        c.wigner.x_max = get_real(w, "x_max", c.wigner.x_max);
        c.wigner.n_points = get_int(w, "n_points", c.wigner.n_points);
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        check_keys(o, "output", {"directory", "format"});
        c.output.directory = get_string(o, "directory", c.output.directory);
        c.output.format = get_string(o, "format", c.output.format);
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    require(f.good(), "cannot open config file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw domain_error(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

void validate(const RunConfig& c) {
    require(c.r >= 0.0 && c.r <= oracle::max_squeeze,
            "model.r must lie in [0, " + std::to_string(oracle::max_squeeze) + "]");
    require(std::isfinite(c.theta), "model.theta must be finite");
    require(c.g2 >= 0.0, "model.g2 must be >= 0");
    require(c.kappa > 0.0, "model.kappa must be > 0");
    require(c.gamma >= 0.0, "model.gamma must be >= 0");
    require(c.n_th >= 0.0, "model.n_th must be >= 0");
    require(!c.include_mech_bath || c.gamma > 0.0,
            "model.include_mech_bath requires model.gamma > 0");
    require(c.numerics.dim_cavity >= 0, "numerics.dim_cavity must be >= 0 (0 = default)");
    require(c.numerics.dim_mech >= 0, "numerics.dim_mech must be >= 0 (0 = default)");
    require(c.numerics.dt_max >= 0.0, "numerics.dt_max must be >= 0 (0 = stability bound)");
    require(c.numerics.stop_tol > 0.0, "numerics.stop_tol must be > 0");
    require(c.numerics.t_cap >= 0.0, "numerics.t_cap must be >= 0 (0 = default)");
    require(c.wigner.x_max >= 0.0, "wigner.x_max must be >= 0 (0 = default)");
    require(c.wigner.n_points >= 3, "wigner.n_points must be >= 3");
    require(c.output.format == "csv" || c.output.format == "json",
            "output.format must be 'csv' or 'json'");
    require(!c.output.directory.empty(), "output.directory must be nonempty");
}

nlohmann::json config_to_json(const RunConfig& c) {
    return nlohmann::json{
        {"model",
         {{"r", c.r},
          {"theta", c.theta},
          {"g2", c.g2},
          {"kappa", c.kappa},
          {"gamma", c.gamma},
          {"n_th", c.n_th},
          {"include_mech_bath", c.include_mech_bath}}},
        {"numerics",
         {{"dim_cavity", c.numerics.dim_cavity},
          {"dim_mech", c.numerics.dim_mech},
          {"dt_max", c.numerics.dt_max},
          {"stop_tol", c.numerics.stop_tol},
          {"t_cap", c.numerics.t_cap}}},
        {"wigner", {{"x_max", c.wigner.x_max}, {"n_points", c.wigner.n_points}}},
        {"output", {{"directory", c.output.directory}, {"format", c.output.format}}}};
}

model::ModelParams resolve_params(const RunConfig& c, bool two_mode) {
    model::ModelParams p;
    p.squeeze = model::squeeze_coeffs(c.r, c.theta);
    p.g2 = c.g2;
    p.kappa = c.kappa;
    p.gamma = c.gamma;
    p.n_th = c.n_th;
    p.include_mech_bath = c.include_mech_bath;
    if (c.numerics.dim_cavity > 0) {
        p.dim_cavity = c.numerics.dim_cavity;
    } else {
        p.dim_cavity = std::max(8, model::default_dim_cavity(c.r));
    }
    if (c.numerics.dim_mech > 0) {
        p.dim_mech = c.numerics.dim_mech;
    } else if (two_mode) {
        // Occupation floor only: the tail-checked default is sized for
        // single-mode fidelity studies and would blow up the product space.
        int d = 32 + static_cast<int>(std::ceil(12.0 * oracle::mean_phonon(c.r)));
        p.dim_mech = ((d + 3) / 4) * 4;
    } else {
        p.dim_mech = model::default_dim_mech(c.r);
    }
    return p;
}

}  // namespace qom::cli
