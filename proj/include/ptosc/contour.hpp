#pragma once

#include <Eigen/Dense>
#include <string>

#include "ptosc/pt_model.hpp"

namespace ptosc {

/// One point of the integration path z(q) = q / (1 - 2i eps q), together
/// with the exact parametric derivative dz/dq = 1 / (1 - 2i eps q)^2.
/// For eps > 0 the path leaves the origin along the real axis and bends
/// toward the endpoint i/2eps in the upper half plane.
struct ContourSample {
  double q = 0.0;
  Complex z{};
  Complex dz_dq{};
};

ContourSample contour_point(const PTSystem& sys, double q);

/// Nodes and weights for integration over the real parameter interval
/// [-Q, Q]. Composite Gauss-Legendre panels: exact on polynomials of degree
/// 2*nodes_per_panel - 1 per panel, which is far more than the smooth
/// Gaussian-decay integrands here need.
struct QuadratureRule {
  Eigen::VectorXd nodes;    // q_k, ascending
  Eigen::VectorXd weights;  // w_k > 0, sum = 2 Q
  double half_width = 0.0;  // Q
  int panels = 0;

  static QuadratureRule composite_gauss(double half_width,
                                        double panel_width = 0.5,
                                        int nodes_per_panel = 16);

  /// Rule sized for Gram matrices up to n_max: Q = sqrt(2(2 n_max + 1)) + 8
  /// puts the highest classical turning point well inside the window and
  /// leaves a sub-1e-12 Gaussian tail.
  static QuadratureRule for_states(int n_max);
};

/// Reference Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// Pairwise inner products of the deformed states along the path, with the
/// deviation of the matrix from the identity.
struct GramReport {
  int n_max = 0;
  Eigen::MatrixXcd matrix;
  double max_offdiag = 0.0;
  double max_diag_dev = 0.0;
};

/// Path integral of phi_n(z) phi_m(z) dz in the real-parameter form
/// integral dq dz/dq phi_n(z(q)) phi_m(z(q)). The pairing is bilinear:
/// no complex conjugation anywhere in the integrand.
Complex inner_product(const PTSystem& sys, int n, int m, const QuadratureRule& rule);

/// Raw complex value of the path integral of phi_n * (CPT phi_n) dz. The C
/// step is the closed-form c_apply; the PT step acts in the real parameter
/// q, where the path symmetry -conj(z(q)) = z(-q) keeps every evaluation on
/// the path.
Complex cpt_pairing(const PTSystem& sys, int n, const QuadratureRule& rule);

/// Reduces a pairing value to the real norm. Throws NonRealNorm if the
/// imaginary residue exceeds 1e-8 (that would signal a quadrature or
/// implementation fault, since the parametrized integrand is pointwise
/// real); otherwise discards it and returns the real part.
double reduce_cpt_pairing(Complex pairing);

/// reduce_cpt_pairing composed with cpt_pairing.
double cpt_norm(const PTSystem& sys, int n, const QuadratureRule& rule);

/// Full (n_max+1)^2 matrix of inner products plus deviation summary.
/// Entries are independent and computed in parallel; each entry sums its
/// nodes in a fixed order, so results are deterministic.
GramReport gram_matrix(const PTSystem& sys, int n_max, const QuadratureRule& rule);

/// Plot-ready sampling of the path for q in [-q_range, q_range].
struct ContourTable {
  Eigen::VectorXd q;
  Eigen::VectorXcd z;
  Complex endpoint{};  // analytic limit i/2eps of z(q) as q -> +-inf
};

ContourTable export_contour(const PTSystem& sys, double q_range, int samples);

/// CSV with header `q,re_z,im_z`, shortest round-trip number formatting,
/// '\n' newlines, and one leading comment line carrying the endpoint.
std::string to_csv(const ContourTable& table);

/// JSON of a GramReport:
/// {"n_max":..., "entries":[[re,im],...], "max_offdiag":..., "max_diag_dev":...}
/// with entries in row-major order and 17-significant-digit floats.
std::string to_json(const GramReport& report);

}  // namespace ptosc
