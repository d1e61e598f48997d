#pragma once

#include <Eigen/Dense>

#include "qom/fock.hpp"

namespace qom::wigner {

// Square symmetric phase-space grid with sampled W values; values(i, j) is
// W(xs(i), ps(j)). Dimensionless quadratures, alpha = (x + ip)/sqrt(2).
struct WignerGrid {
    Eigen::VectorXd xs;
    Eigen::VectorXd ps;
    Eigen::MatrixXd values;
    double cell_area = 0.0;
};

// W(x,p) from the Fock-basis Laguerre kernel: for m >= n,
//   W_{mn} = (1/pi)(-1)^n sqrt(n!/m!) (2 conj(alpha))^{m-n} e^{-2|alpha|^2}
//            L_n^{m-n}(4|alpha|^2),
// with factorial ratios in log space; rho must be Hermitian (makes the sum
// real identically) with top-two-level population < 1e-8.
double wigner_point(const fock::DensityMatrix& rho, double x, double p);

// Samples W on the symmetric square grid xs = ps = linspace(-x_max, x_max,
// n_points). n_points must be odd so the lattice maps onto itself under
// quarter rotation and contains the origin.
WignerGrid wigner_grid(const fock::DensityMatrix& rho, double x_max, int n_points);

struct Negativity {
    double min_value;
    double negative_volume;  // integral of the negative part, Riemann cells
};

Negativity negativity(const WignerGrid& grid);

// Max over grid points of |W(x, p) - W(-p, x)|, i.e. the breach of quarter-
// rotation symmetry; the rotation permutes lattice points exactly, so no
// interpolation is involved.
double fourfold_defect(const WignerGrid& grid);

// 3 sqrt(2 n_bar + 1) rounded up to an integer: covers the state with margin.
double default_x_max(double n_bar);

}  // namespace qom::wigner
