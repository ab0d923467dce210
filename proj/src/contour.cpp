#include "ptosc/contour.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ptosc/format.hpp"
#include "ptosc/parallel.hpp"

namespace ptosc {

ContourSample contour_point(const PTSystem& sys, double q) {
  const Complex sb = sys.sbar(Complex(q, 0));
  return {q, q / sb, 1.0 / (sb * sb)};
}

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  nodes.resize(n);
  weights.resize(n);
  // Newton on P_n from the Chebyshev initial guess; symmetric pairs share
  // one solve.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

QuadratureRule QuadratureRule::composite_gauss(double half_width,
                                               double panel_width,
                                               int nodes_per_panel) {
  if (half_width <= 0 || panel_width <= 0 || nodes_per_panel < 1) {
    throw std::invalid_argument("composite_gauss: invalid rule parameters");
  }
  Eigen::VectorXd xg, wg;
  gauss_legendre(nodes_per_panel, xg, wg);

  const int npanels =
      std::max(1, static_cast<int>(std::ceil(2.0 * half_width / panel_width)));
  QuadratureRule rule;
  rule.half_width = half_width;
  rule.panels = npanels;
  rule.nodes.resize(npanels * nodes_per_panel);
  rule.weights.resize(npanels * nodes_per_panel);
  for (int p = 0; p < npanels; ++p) {
    const double a = -half_width + 2.0 * half_width * p / npanels;
    const double b = -half_width + 2.0 * half_width * (p + 1) / npanels;
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    for (int i = 0; i < nodes_per_panel; ++i) {
      rule.nodes[p * nodes_per_panel + i] = mid + hw * xg[i];
      rule.weights[p * nodes_per_panel + i] = hw * wg[i];
    }
  }
  return rule;
}

QuadratureRule QuadratureRule::for_states(int n_max) {
  const double q_cut = std::sqrt(2.0 * (2.0 * n_max + 1.0));
  return composite_gauss(q_cut + 8.0);
}

Complex inner_product(const PTSystem& sys, int n, int m, const QuadratureRule& rule) {
  const EigenState sn(n), sm(m);
  Complex acc(0);
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
    const ContourSample cp = contour_point(sys, rule.nodes[k]);
    acc += rule.weights[k] * cp.dz_dq * phi_value(sys, sn, cp.z) *
           phi_value(sys, sm, cp.z);
  }
  return acc;
}

Complex cpt_pairing(const PTSystem& sys, int n, const QuadratureRule& rule) {
  const EigenState state(n);
  auto phi = [&](Complex z) { return phi_value(sys, state, z); };
  // C phi sampled along the path as a function of the real parameter.
  auto c_on_path = [&](double qp) {
    return c_apply(sys, phi, contour_point(sys, qp).z);
  };
  Complex acc(0);
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
    const ContourSample cp = contour_point(sys, rule.nodes[k]);
    acc += rule.weights[k] * cp.dz_dq * phi(cp.z) * pt_apply(c_on_path, cp.q);
  }
  return acc;
}

double reduce_cpt_pairing(Complex pairing) {
  if (std::abs(pairing.imag()) > 1e-8) {
    throw NonRealNorm("cpt_norm: imaginary residue above 1e-8");
  }
  return pairing.real();
}

double cpt_norm(const PTSystem& sys, int n, const QuadratureRule& rule) {
  return reduce_cpt_pairing(cpt_pairing(sys, n, rule));
}

GramReport gram_matrix(const PTSystem& sys, int n_max, const QuadratureRule& rule) {
  if (n_max < 0 || n_max > 20) {
    throw IndexTooLarge("gram_matrix: n_max must be in [0, 20]");
  }
  GramReport report;
  report.n_max = n_max;
  report.matrix.setZero(n_max + 1, n_max + 1);

  // Upper triangle as a flat index set; the mirrored entry is identical
  // because the integrand is symmetric in (n, m).
  std::vector<std::pair<int, int>> entries;
  for (int n = 0; n <= n_max; ++n)
    for (int m = n; m <= n_max; ++m) entries.emplace_back(n, m);

  parallel_for(static_cast<std::ptrdiff_t>(entries.size()), [&](std::ptrdiff_t i) {
    const auto [n, m] = entries[i];
    const Complex g = inner_product(sys, n, m, rule);
    report.matrix(n, m) = g;
    report.matrix(m, n) = g;
  });

  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; m <= n_max; ++m) {
      const double dev = n == m ? std::abs(report.matrix(n, m) - 1.0)
                                : std::abs(report.matrix(n, m));
      auto& slot = n == m ? report.max_diag_dev : report.max_offdiag;
      slot = std::max(slot, dev);
    }
  }
  return report;
}

ContourTable export_contour(const PTSystem& sys, double q_range, int samples) {
  if (samples < 2) throw std::invalid_argument("export_contour: samples must be >= 2");
  if (q_range <= 0) throw std::invalid_argument("export_contour: q_range must be > 0");
  ContourTable table;
  table.q = Eigen::VectorXd::LinSpaced(samples, -q_range, q_range);
  table.z.resize(samples);
  for (int i = 0; i < samples; ++i) table.z[i] = contour_point(sys, table.q[i]).z;
  table.endpoint = sys.pole();
  return table;
}

std::string to_csv(const ContourTable& table) {
  std::string out;
  out += "# endpoint: re=" + format_shortest(table.endpoint.real()) +
         " im=" + format_shortest(table.endpoint.imag()) + "\n";
  out += "q,re_z,im_z\n";
  for (Eigen::Index i = 0; i < table.q.size(); ++i) {
    out += format_shortest(table.q[i]);
    out += ',';
    out += format_shortest(table.z[i].real());
    out += ',';
    out += format_shortest(table.z[i].imag());
    out += '\n';
  }
  return out;
}

std::string to_json(const GramReport& report) {
  std::string out = "{\"n_max\":" + std::to_string(report.n_max) + ",\"entries\":[";
  for (Eigen::Index r = 0; r < report.matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < report.matrix.cols(); ++c) {
      if (r != 0 || c != 0) out += ',';
      out += '[' + format_17(report.matrix(r, c).real()) + ',' +
             format_17(report.matrix(r, c).imag()) + ']';
    }
  }
  out += "],\"max_offdiag\":" + format_17(report.max_offdiag) +
         ",\"max_diag_dev\":" + format_17(report.max_diag_dev) + "}";
  return out;
}

}  // namespace ptosc
