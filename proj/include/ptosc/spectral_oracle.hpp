#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ptosc/errors.hpp"

namespace ptosc {

/// Uniform symmetric grid on [-L, L] with N nodes (endpoints included).
struct Grid1D {
  double half_width = 0.0;
  int points = 0;

  Grid1D(double L, int N) : half_width(L), points(N) {
    if (N < 3 || L <= 0) throw Error("Grid1D: need N >= 3 and L > 0");
  }

  double dx() const { return 2.0 * half_width / (points - 1); }
  double node(int i) const { return -half_width + i * dx(); }
  Eigen::VectorXd nodes() const {
    return Eigen::VectorXd::LinSpaced(points, -half_width, half_width);
  }
};

/// Real symmetric tridiagonal matrix: diag (length N) and offdiag (N-1).
struct TridiagSym {
  Eigen::VectorXd diag;
  Eigen::VectorXd offdiag;
};

/// Second-order central-difference discretization of h = 1/2 p^2 + 1/2 x^2
/// with Dirichlet boundaries:
///   diag_i = 1/dx^2 + x_i^2/2,   offdiag = -1/(2 dx^2).
TridiagSym discretize_h(const Grid1D& grid);

/// The k smallest eigenvalues, ascending. Implicit-shift QL with Wilkinson
/// shifts, EISPACK-style sweeps, no eigenvectors. Throws NoConvergence if
/// an eigenvalue needs more than 50 sweeps.
std::vector<double> eigenvalues_tridiag(const TridiagSym& m, int k);

}  // namespace ptosc
