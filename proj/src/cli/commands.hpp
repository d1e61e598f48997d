#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"

namespace qom::cli {

// Each command writes its artifacts into config.output.directory (created if
// absent) and returns the artifact file names in write order.

// Stationary state of the chosen model from ground-state initialization:
// density matrix JSON (two-mode runs store the mechanical marginal), phonon
// populations table, observables JSON, and the parameter-regime report.
std::vector<std::string> cmd_steady(const RunConfig& c, const std::string& which);

// Closed-form stationary observables over a squeezing grid: summary table
// (r, n_bar, g2_zero, dy1, dy2, bound) plus one populations table per r.
// Empty grid means r = 0..2 in steps of 0.05.
std::vector<std::string> cmd_oracle(const RunConfig& c, std::vector<double> r_grid);

// Phase-space distribution of the stationary state, sampled on the symmetric
// square grid: (x, p, W) table plus a metadata sidecar JSON. source picks the
// closed-form ket ("oracle") or the computed steady state ("numeric").
std::vector<std::string> cmd_wigner(const RunConfig& c, const std::string& source);

// All figure datasets in one run: stationary populations at r = 2, mean
// occupation and variance curves over r in [0, 2] step 0.05, and four
// phase-space grids at (r, theta) in {(0,0), (0.5,0), (1,0), (1,pi)}; plus a
// manifest listing the config hash and per-file checksums.
std::vector<std::string> cmd_figures(const RunConfig& c);

}  // namespace qom::cli
