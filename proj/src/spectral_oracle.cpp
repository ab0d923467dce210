#include "ptosc/spectral_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ptosc {

TridiagSym discretize_h(const Grid1D& grid) {
  const double dx = grid.dx();
  const double kinetic = 1.0 / (dx * dx);
  TridiagSym m;
  m.diag.resize(grid.points);
  for (int i = 0; i < grid.points; ++i) {
    const double x = grid.node(i);
    m.diag[i] = kinetic + 0.5 * x * x;
  }
  m.offdiag = Eigen::VectorXd::Constant(grid.points - 1, -0.5 * kinetic);
  return m;
}

std::vector<double> eigenvalues_tridiag(const TridiagSym& m, int k) {
  const int n = static_cast<int>(m.diag.size());
  if (n < 1 || m.offdiag.size() != n - 1) {
    throw Error("eigenvalues_tridiag: inconsistent tridiagonal shape");
  }
  if (k < 0 || k > n) {
    throw IndexTooLarge("eigenvalues_tridiag: k must be in [0, N]");
  }

  std::vector<double> d(m.diag.data(), m.diag.data() + n);
  std::vector<double> e(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = m.offdiag[i];

  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int split;
    do {
      // Negligible subdiagonal entry => the block [l, split] is decoupled.
      for (split = l; split < n - 1; ++split) {
        const double scale = std::abs(d[split]) + std::abs(d[split + 1]);
        if (std::abs(e[split]) <= eps * scale) break;
      }
      if (split != l) {
        if (iter++ == 50) {
          throw NoConvergence("eigenvalues_tridiag: no convergence in 50 sweeps");
        }
        // Wilkinson shift from the leading 2x2 of the block.
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[split] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = split - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[split] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (!underflow) {
          d[l] -= p;
          e[l] = g;
          e[split] = 0.0;
        }
      }
    } while (split != l);
  }

  std::sort(d.begin(), d.end());
  d.resize(k);
  return d;
}

}  // namespace ptosc
