#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <optional>

#include "cli/io.hpp"
#include "qom/errors.hpp"
#include "qom/liouvillian.hpp"
#include "qom/model.hpp"
#include "qom/observables.hpp"
#include "qom/oracle.hpp"
#include "qom/wigner.hpp"

namespace qom::cli {

namespace {

std::string ensure_outdir(const RunConfig& c) {
    std::filesystem::create_directories(c.output.directory);
    return c.output.directory;
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

Cell cell_or_undefined(const std::optional<double>& v) {
    if (v) return *v;
    return std::string("undefined");
}

nlohmann::json json_or_undefined(const std::optional<double>& v) {
    if (v) return *v;
    return "undefined";
}

nlohmann::json json_or_unbounded(double v) {
    if (std::isinf(v)) return "unbounded";
    return v;
}

// Reporting helper: fields that cannot be computed faithfully at the
// configured truncation degrade to "undefined" instead of aborting the run.
std::optional<double> try_field(const std::function<double()>& f) {
    try {
        return f();
    } catch (const domain_error&) {
        return std::nullopt;
    }
}

struct SteadyRun {
    model::ModelParams params;
    fock::DensityMatrix mech;  // single-mode state, or the mechanical marginal
    double residual = 0.0;
    double t_cap = 0.0;
    std::optional<double> fidelity_cavity;  // two-mode runs only
};

// The slow scale of the two-mode model is the emergent engineered rate
// 4 g2^2 / kappa, invisible to the generator's term log; cap the relaxation
// horizon from it explicitly unless the config already does.
double two_mode_t_cap(const model::ModelParams& p, double configured) {
    if (configured > 0.0) return configured;
    if (p.g2 > 0.0) return 50.0 * p.kappa / (4.0 * p.g2 * p.g2);
    return 0.0;  // no coupling: term rates describe the dynamics fully
}

SteadyRun run_steady(const RunConfig& c, bool two_mode) {
    SteadyRun out;
    out.params = resolve_params(c, two_mode);
    const auto& p = out.params;
    if (two_mode) {
        const auto gen = model::full_generator(p);
        out.t_cap = two_mode_t_cap(p, c.numerics.t_cap);
        const auto rho0 = fock::ket_density(fock::basis_ket(p.dim_cavity * p.dim_mech, 0));
        const auto rho = liou::steady_state(gen, rho0, c.numerics.stop_tol, out.t_cap);
        out.residual = liou::residual_max(gen, rho);
        out.mech = obs::partial_trace(rho, p.dim_cavity, p.dim_mech, obs::Mode::mech);
        const auto rho_cav = obs::partial_trace(rho, p.dim_cavity, p.dim_mech, obs::Mode::cavity);
        // The cavity jump i(mu a - nu a^dag) annihilates the squeezed vacuum
        // of opposite phase, so that is the reference the marginal approaches.
        out.fidelity_cavity = try_field([&] {
            const auto ref = fock::squeezed_vacuum_ket(p.dim_cavity, c.r,
                                                       c.theta + std::numbers::pi);
            return obs::fidelity_ket(ref, rho_cav);
        });
    } else {
        const double override_rate = p.gamma > 0.0 ? 0.0 : 4.0 * p.g2 * p.g2 / p.kappa;
        const auto gen = model::effective_generator(p, override_rate);
        out.t_cap = c.numerics.t_cap;
        const auto rho0 = fock::ket_density(fock::basis_ket(p.dim_mech, 0));
        out.mech = liou::steady_state(gen, rho0, c.numerics.stop_tol, out.t_cap);
        out.residual = liou::residual_max(gen, out.mech);
        if (out.t_cap == 0.0) out.t_cap = liou::default_t_cap(gen);
    }
    return out;
}

Table populations_table(const Eigen::VectorXd& pops) {
    Table t;
    t.columns = {"n", "P_n"};
    for (Eigen::Index n = 0; n < pops.size(); ++n)
        t.rows.push_back({static_cast<long long>(n), pops(n)});
    return t;
}

std::string r_label(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", r);
    return buf;
}

Table wigner_table(const wigner::WignerGrid& grid) {
    Table t;
    t.columns = {"x", "p", "W"};
    const auto n = grid.xs.size();
    t.rows.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            t.rows.push_back({grid.xs(i), grid.ps(j), grid.values(i, j)});
    return t;
}

nlohmann::json wigner_meta(const wigner::WignerGrid& grid, int dim, const std::string& source,
                           const RunConfig& c, double x_max) {
    const auto neg = wigner::negativity(grid);
    return nlohmann::json{{"source", source},
                          {"r", c.r},
                          {"theta", c.theta},
                          {"dim", dim},
                          {"x_max", x_max},
                          {"n_points", c.wigner.n_points},
                          {"cell_area", grid.cell_area},
                          {"min_w", neg.min_value},
                          {"negative_volume", neg.negative_volume},
                          {"fourfold_defect", wigner::fourfold_defect(grid)},
                          {"riemann_integral", grid.values.sum() * grid.cell_area},
                          {"contour_levels", {0.25, 0.15, 0.05}}};
}

}  // namespace

std::vector<std::string> cmd_steady(const RunConfig& c, const std::string& which) {
    require(which == "full" || which == "effective", "model must be 'full' or 'effective'");
    const bool two_mode = which == "full";
    const std::string dir = ensure_outdir(c);
    std::vector<std::string> written;

    const auto run = run_steady(c, two_mode);
    const auto& p = run.params;
    const auto& rho = run.mech;
    const int dim = static_cast<int>(rho.rows());

    write_json(join(dir, "density.json"), density_to_json(rho));
    written.push_back("density.json");

    written.push_back(
        write_table(populations_table(obs::populations(rho)), dir, "populations", c.output.format));

    const double n_bar = obs::expect(fock::number_operator(dim), rho).real();
    const auto ys = obs::y_pair(dim, c.theta);
    const auto dy1 = try_field([&] { return std::sqrt(obs::variance(ys.y1, rho)); });
    const auto dy2 = try_field([&] { return std::sqrt(obs::variance(ys.y2, rho)); });
    const auto g2z = try_field([&] { return obs::g2_from_state(rho); });
    const auto fid = try_field(
        [&] { return obs::fidelity_ket(oracle::steady_ket(dim, c.r, c.theta, 2.0), rho); });

    nlohmann::json observables{{"model", which},
                               {"dim_cavity", two_mode ? nlohmann::json(p.dim_cavity)
                                                       : nlohmann::json(nullptr)},
                               {"dim_mech", p.dim_mech},
                               {"t_cap", run.t_cap},
                               {"stop_tol", c.numerics.stop_tol},
                               {"n_bar", n_bar},
                               {"g2_zero", json_or_undefined(g2z)},
                               {"delta_y1", json_or_undefined(dy1)},
                               {"delta_y2", json_or_undefined(dy2)},
                               {"purity", obs::purity(rho)},
                               {"fidelity_oracle", json_or_undefined(fid)},
                               {"residual", run.residual}};
    if (two_mode)
        observables["fidelity_cavity_squeezed_vacuum"] = json_or_undefined(run.fidelity_cavity);
    write_json(join(dir, "observables.json"), observables);
    written.push_back("observables.json");

    const auto reg = model::regime_check(p);
    write_json(join(dir, "regime.json"),
               nlohmann::json{{"decoherence_ratio", json_or_unbounded(reg.decoherence_ratio)},
                              {"decoherence_ok", reg.decoherence_ok},
                              {"kappa_over_g2", json_or_unbounded(reg.kappa_over_g2)},
                              {"weak_coupling_ok", reg.weak_coupling_ok},
                              {"kappa_over_gamma", json_or_unbounded(reg.kappa_over_gamma)},
                              {"cavity_fast_ok", reg.cavity_fast_ok}});
    written.push_back("regime.json");
    return written;
}

std::vector<std::string> cmd_oracle(const RunConfig& c, std::vector<double> r_grid) {
    if (r_grid.empty())
        for (int i = 0; i <= 40; ++i) r_grid.push_back(i / 20.0);
    const std::string dir = ensure_outdir(c);
    std::vector<std::string> written;

    Table summary;
    summary.columns = {"r", "n_bar", "g2_zero", "dy1", "dy2", "bound"};
    for (double r : r_grid) {
        require(r >= 0.0 && r <= oracle::max_squeeze,
                "oracle grid value r = " + r_label(r) + " is outside [0, 3]");
        const auto ys = oracle::y_variances(r);
        const std::optional<double> g2z =
            r > 0.0 ? std::optional<double>(oracle::g2_zero(r)) : std::nullopt;
        summary.rows.push_back(
            {r, oracle::mean_phonon(r), cell_or_undefined(g2z), ys.dy1, ys.dy2, ys.bound});

        const auto dist = oracle::phonon_distribution(r, c.theta, oracle::family_cutoff(r));
        written.push_back(write_table(populations_table(dist.probabilities), dir,
                                      "oracle_populations_r" + r_label(r), c.output.format));
    }
    written.push_back(write_table(summary, dir, "oracle_summary", c.output.format));
    return written;
}

std::vector<std::string> cmd_wigner(const RunConfig& c, const std::string& source) {
    require(source == "oracle" || source == "numeric", "source must be 'oracle' or 'numeric'");
    const std::string dir = ensure_outdir(c);
    std::vector<std::string> written;

    fock::DensityMatrix rho;
    if (source == "oracle") {
        const auto p = resolve_params(c, false);
        rho = fock::ket_density(oracle::steady_ket(p.dim_mech, c.r, c.theta));
    } else {
        rho = run_steady(c, false).mech;
    }
    const int dim = static_cast<int>(rho.rows());

    const double n_bar = obs::expect(fock::number_operator(dim), rho).real();
    const double x_max = c.wigner.x_max > 0.0 ? c.wigner.x_max : wigner::default_x_max(n_bar);
    const auto grid = wigner::wigner_grid(rho, x_max, c.wigner.n_points);

    written.push_back(write_table(wigner_table(grid), dir, "wigner", c.output.format));
    write_json(join(dir, "wigner_meta.json"), wigner_meta(grid, dim, source, c, x_max));
    written.push_back("wigner_meta.json");
    return written;
}

std::vector<std::string> cmd_figures(const RunConfig& c) {
    const std::string dir = ensure_outdir(c);
    const std::string& fmt = c.output.format;
    std::vector<std::pair<std::string, std::string>> artifacts;  // name -> bytes

    auto serialize = [&fmt](const Table& t) {
        return fmt == "json" ? to_json_table(t).dump(2) + "\n" : to_csv(t);
    };
    auto add_table = [&](const Table& t, const std::string& stem) {
        artifacts.emplace_back(stem + (fmt == "json" ? ".json" : ".csv"), serialize(t));
    };

    {
        const auto dist = oracle::phonon_distribution(2.0, c.theta, oracle::family_cutoff(2.0));
        add_table(populations_table(dist.probabilities), "fig1_populations_r2");
    }
    {
        Table inset;
        inset.columns = {"r", "n_bar"};
        Table variances;
        variances.columns = {"r", "dy1", "dy2", "bound"};
        for (int i = 0; i <= 40; ++i) {
            const double r = i / 20.0;
            inset.rows.push_back({r, oracle::mean_phonon(r)});
            const auto ys = oracle::y_variances(r);
            variances.rows.push_back({r, ys.dy1, ys.dy2, ys.bound});
        }
        add_table(inset, "fig1_inset_nbar");
        add_table(variances, "fig2_variances");
    }
    {
        const struct {
            const char* stem;
            double r;
            double theta;
        } panels[] = {{"fig3_wigner_a_r0", 0.0, 0.0},
                      {"fig3_wigner_b_r0.5", 0.5, 0.0},
                      {"fig3_wigner_c_r1", 1.0, 0.0},
                      {"fig3_wigner_d_r1_thetapi", 1.0, std::numbers::pi}};
        for (const auto& panel : panels) {
            const int dim = model::default_dim_mech(panel.r);
            const auto rho = fock::ket_density(oracle::steady_ket(dim, panel.r, panel.theta));
            const double x_max = wigner::default_x_max(oracle::mean_phonon(panel.r));
            const auto grid = wigner::wigner_grid(rho, x_max, c.wigner.n_points);
            add_table(wigner_table(grid), panel.stem);
        }
    }

    check_internal(artifacts.size() == 7, "figure run must produce exactly 7 datasets");
    std::vector<std::string> written;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& [name, bytes] : artifacts) {
        write_text(join(dir, name), bytes);
        written.push_back(name);
        files.push_back(nlohmann::json{
            {"name", name}, {"bytes", bytes.size()}, {"fnv1a64", fnv1a64_hex(bytes)}});
    }
    write_json(join(dir, "manifest.json"),
               nlohmann::json{{"config_hash", fnv1a64_hex(config_to_json(c).dump())},
                              {"files", std::move(files)}});
    written.push_back("manifest.json");
    return written;
}

}  // namespace qom::cli
