#include "ptosc/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ptosc/contour.hpp"
#include "ptosc/format.hpp"
#include "ptosc/operator_algebra.hpp"
#include "ptosc/parallel.hpp"
#include "ptosc/pt_model.hpp"
#include "ptosc/spectral_oracle.hpp"

namespace ptosc {

namespace {

constexpr int kGridPoints = 64;
constexpr double kGridHalfWidth = 6.0;

Eigen::VectorXd sample_grid() {
  return Eigen::VectorXd::LinSpaced(kGridPoints, -kGridHalfWidth, kGridHalfWidth);
}

double override_or(const RunConfig& cfg, double def) {
  return std::isnan(cfg.tol) ? def : cfg.tol;
}

void validate(const RunConfig& cfg, int n_max) {
  if (n_max < 0 || n_max > 20) {
    throw std::invalid_argument("verify: n_max must be in [0, 20]");
  }
  for (double e : cfg.eps_list) {
    if (!std::isfinite(e)) throw std::invalid_argument("verify: eps must be finite");
  }
}

/// Deterministic uniform double in [lo, hi) independent of the standard
/// library's distribution implementation.
double uniform(std::mt19937_64& gen, double lo, double hi) {
  const double u = std::ldexp(static_cast<double>(gen() >> 11), -53);
  return lo + (hi - lo) * u;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

void add(VerificationReport& r, std::string name, double measured, double threshold) {
  r.checks.push_back({std::move(name), measured, threshold, measured <= threshold});
}

/// Max over the grid of |H phi_n - E phi_n| scaled by the grid max of |phi_n|.
double eigen_residual(const PTSystem& sys, int n, double expected_energy) {
  const EigenState state(n);
  const Eigen::VectorXd xs = sample_grid();
  double max_res = 0.0, max_mag = 0.0;
  for (int i = 0; i < xs.size(); ++i) {
    const Complex x(xs[i], 0.0);
    const Jet2C j = phi_jet(sys, state, x);
    const Complex hv = apply_H(sys, [&](Complex) { return j; }, x);
    max_res = std::max(max_res, std::abs(hv - expected_energy * j.v));
    max_mag = std::max(max_mag, std::abs(j.v));
  }
  return max_res / max_mag;
}

}  // namespace

VerificationReport verify_spectrum(const RunConfig& cfg) {
  const Timer timer;
  const int n_max = cfg.n_max < 0 ? 12 : cfg.n_max;
  validate(cfg, n_max);
  std::vector<double> eps_list =
      cfg.eps_list.empty() ? std::vector<double>{0.05, 0.1, 0.25} : cfg.eps_list;
  // Oscillator regression always runs.
  if (std::find(eps_list.begin(), eps_list.end(), 0.0) == eps_list.end()) {
    eps_list.insert(eps_list.begin(), 0.0);
  }

  VerificationReport report;
  report.suite = "spectrum";
  const double tol = override_or(cfg, 1e-10);
  const double shift = cfg.fault == Fault::EnergyShift ? 1e-6 : 0.0;

  // One slot per (eps, n); independent, so the sweep parallelizes.
  std::vector<double> residual(eps_list.size() * (n_max + 1));
  parallel_for(static_cast<std::ptrdiff_t>(residual.size()), [&](std::ptrdiff_t i) {
    const PTSystem sys{eps_list[i / (n_max + 1)]};
    const int n = static_cast<int>(i % (n_max + 1));
    residual[i] = eigen_residual(sys, n, energy(EigenState(n)) + shift);
  });
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n) worst = std::max(worst, residual[k * (n_max + 1) + n]);
    add(report, "eigen_residual eps=" + format_shortest(eps_list[k]) +
                    " n<=" + std::to_string(n_max),
        worst, tol);
  }

  // Independent oracle: discretized Hermitian partner.
  const int k_eigs = 6;
  const std::vector<int> grids = {501, 1001, 2001};
  Eigen::MatrixXd errs(grids.size(), k_eigs);
  for (std::size_t g = 0; g < grids.size(); ++g) {
    const auto eigs = eigenvalues_tridiag(discretize_h(Grid1D(10.0, grids[g])), k_eigs);
    for (int j = 0; j < k_eigs; ++j) errs(g, j) = std::abs(eigs[j] - (j + 0.5));
  }
  double worst_rel = 0.0;
  for (int j = 0; j < k_eigs; ++j) {
    worst_rel = std::max(worst_rel, errs(2, j) / (j + 0.5));
  }
  add(report, "oracle_spectrum_rel_dev L=10 N=2001 k=6", worst_rel, 1e-4);

  // O(dx^2) convergence: least-squares slope of log err vs log dx per state.
  double worst_slope_dev = 0.0;
  for (int j = 0; j < k_eigs; ++j) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t g = 0; g < grids.size(); ++g) {
      const double lx = std::log(20.0 / (grids[g] - 1));
      const double ly = std::log(errs(g, j));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double np = static_cast<double>(grids.size());
    const double slope = (np * sxy - sx * sy) / (np * sxx - sx * sx);
    worst_slope_dev = std::max(worst_slope_dev, std::abs(slope - 2.0));
  }
  add(report, "oracle_convergence_slope_dev", worst_slope_dev, 0.2);

  report.elapsed_seconds = timer.seconds();
  return report;
}

VerificationReport verify_orthonormality(const RunConfig& cfg) {
  const Timer timer;
  const int n_max = cfg.n_max < 0 ? 6 : cfg.n_max;
  validate(cfg, n_max);
  const std::vector<double> eps_list =
      cfg.eps_list.empty() ? std::vector<double>{0.2} : cfg.eps_list;

  VerificationReport report;
  report.suite = "orthonormality";
  const double tol = override_or(cfg, 1e-8);
  const QuadratureRule rule = QuadratureRule::for_states(n_max);

  for (double eps : eps_list) {
    const PTSystem sys{eps};
    const std::string tag = " eps=" + format_shortest(eps) + " n<=" + std::to_string(n_max);
    const GramReport gram = gram_matrix(sys, n_max, rule);
    add(report, "gram_max_offdiag" + tag, gram.max_offdiag, tol);
    add(report, "gram_max_diag_dev" + tag, gram.max_diag_dev, tol);

    double norm_dev = 0.0, imag_dev = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      const Complex pairing = cpt_pairing(sys, n, rule);
      norm_dev = std::max(norm_dev, std::abs(pairing.real() - 1.0));
      imag_dev = std::max(imag_dev, std::abs(pairing.imag()));
    }
    add(report, "cpt_norm_dev" + tag, norm_dev, tol);
    add(report, "cpt_norm_imag" + tag, imag_dev, tol);
  }

  // Undeformed regression: the path is the real axis and the Gram matrix is
  // plain oscillator orthonormality.
  const GramReport flat = gram_matrix(PTSystem{0.0}, n_max, rule);
  add(report, "gram_identity_dev eps=0 n<=" + std::to_string(n_max),
      std::max(flat.max_offdiag, flat.max_diag_dev), 1e-12);

  report.elapsed_seconds = timer.seconds();
  return report;
}

VerificationReport verify_operators(const RunConfig& cfg) {
  const Timer timer;
  const int n_max = cfg.n_max < 0 ? 8 : cfg.n_max;
  validate(cfg, n_max);
  const std::vector<double> eps_list =
      cfg.eps_list.empty() ? std::vector<double>{0.15} : cfg.eps_list;

  VerificationReport report;
  report.suite = "operators";
  const double tol = override_or(cfg, 1e-12);
  const Eigen::VectorXd xs = sample_grid();
  const double flip = cfg.fault == Fault::SignFlip ? -1.0 : 1.0;

  for (double eps : eps_list) {
    const PTSystem sys{eps};
    const std::string tag = " eps=" + format_shortest(eps);

    double pt_dev = 0.0, c_dev = 0.0, cpt_dev = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      const EigenState state(n);
      auto phi_c = [&](Complex z) { return phi_value(sys, state, z); };
      auto phi_r = [&](double x) { return phi_value(sys, state, Complex(x, 0)); };
      auto c_phi_r = [&](double x) { return c_apply(sys, phi_c, Complex(x, 0)); };
      const double sign = flip * (n % 2 == 0 ? 1.0 : -1.0);

      double max_mag = 0.0, pt_res = 0.0, c_res = 0.0, cpt_res = 0.0;
      for (int i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const Complex val = phi_r(x);
        max_mag = std::max(max_mag, std::abs(val));
        pt_res = std::max(pt_res, std::abs(pt_apply(phi_r, x) - sign * val));
        c_res = std::max(c_res, std::abs(c_apply(sys, phi_c, Complex(x, 0)) - sign * val));
        // C then PT multiplies the state by unity.
        cpt_res = std::max(cpt_res, std::abs(pt_apply(c_phi_r, x) - flip * val));
      }
      pt_dev = std::max(pt_dev, pt_res / max_mag);
      c_dev = std::max(c_dev, c_res / max_mag);
      cpt_dev = std::max(cpt_dev, cpt_res / max_mag);
    }
    add(report, "pt_eigenvalue_residual" + tag + " n<=" + std::to_string(n_max), pt_dev, tol);
    add(report, "c_eigenvalue_residual" + tag + " n<=" + std::to_string(n_max), c_dev, tol);
    add(report, "cpt_composite_residual" + tag + " n<=" + std::to_string(n_max), cpt_dev, tol);

    // Scaling identities behind the closed-form C action: the transform
    // fixes 1/s and flips the sign of x/s.
    std::mt19937_64 gen(cfg.seed);
    double inv_s_dev = 0.0, x_over_s_dev = 0.0;
    auto inv_s = [&](Complex z) { return 1.0 / sys.s(z); };
    for (int i = 0; i < 20; ++i) {
      const double x = uniform(gen, -3.0, 3.0);
      const Complex s = sys.s(Complex(x, 0));
      inv_s_dev = std::max(inv_s_dev,
                           std::abs(c_apply(sys, inv_s, Complex(x, 0)) - 1.0 / s));
      const Complex t = 1.0 + Complex(0, 4.0 * eps) * x;
      for (int p = 1; p <= 4; ++p) {
        auto x_over_s_pow = [&](Complex z) { return std::pow(z / sys.s(z), p); };
        // Pure argument substitution, no 1/t measure factor.
        const Complex lhs = t * c_apply(sys, x_over_s_pow, Complex(x, 0));
        const Complex rhs = std::pow(-1.0, p) * std::pow(x / s, p);
        x_over_s_dev = std::max(x_over_s_dev, std::abs(lhs - rhs));
      }
    }
    add(report, "c_scaling_identity_inv_s" + tag, inv_s_dev, tol);
    add(report, "c_scaling_identity_x_over_s" + tag, x_over_s_dev, tol);
  }

  report.elapsed_seconds = timer.seconds();
  return report;
}

VerificationReport verify_algebra(const RunConfig& cfg) {
  const Timer timer;
  const int order = cfg.order;
  if (order < 0 || order > 16) {
    throw std::invalid_argument("verify: algebra order must be in [0, 16]");
  }
  const std::vector<double> eps_list =
      cfg.eps_list.empty() ? std::vector<double>{0.1} : cfg.eps_list;

  VerificationReport report;
  report.suite = "algebra";

  // Exact grade-by-grade equality of the nested-commutator series and the
  // direct Taylor expansion; zero tolerance.
  const EpsSeries bch = bch_series(order);
  const EpsSeries target = target_expansion(order);
  int mismatches = 0;
  for (int k = 0; k <= order; ++k) {
    if (!(bch.grade(k) == target.grade(k))) ++mismatches;
  }
  add(report, "bch_target_mismatch order<=" + std::to_string(order),
      static_cast<double>(mismatches), 0.0);

  // Series vs closed form, sampled inside the convergence disc where the
  // 40-term tail sits far below the tolerance.
  const double tol = override_or(cfg, 1e-10);
  const std::vector<std::pair<std::string, PolyC>> seeds = {
      {"1", PolyC::constant(Complex(1))},
      {"x", PolyC::identity()},
      {"x^2", PolyC({Complex(0), Complex(0), Complex(1)})},
      {"1+2x^3", PolyC({Complex(1), Complex(0), Complex(0), Complex(2)})},
  };
  for (double eps : eps_list) {
    if (eps == 0.0) continue;
    const PTSystem sys{eps};
    const double x_cap = 0.35 / (2.0 * std::abs(eps));
    double worst = 0.0;
    for (const auto& [name, U] : seeds) {
      for (int i = 0; i < 25; ++i) {
        const Complex x(-x_cap + 2.0 * x_cap * i / 24.0, 0.0);
        worst = std::max(worst,
                         std::abs(lemma_series_sum(U, sys, x, 40) -
                                  lemma_closed_form(U, sys, x)));
      }
    }
    add(report, "lemma_series_vs_closed eps=" + format_shortest(eps) + " 40 terms",
        worst, tol);
  }

  // The divergence guard must actually fire.
  bool raised = false;
  try {
    lemma_series_sum(PolyC::identity(), PTSystem{0.25}, Complex(2.5, 0), 40);
  } catch (const ConvergenceDomainError&) {
    raised = true;
  }
  add(report, "lemma_domain_guard", raised ? 0.0 : 1.0, 0.0);

  report.elapsed_seconds = timer.seconds();
  return report;
}

std::vector<VerificationReport> verify_all(const RunConfig& cfg) {
  RunConfig sweep = cfg;
  if (sweep.eps_list.empty()) sweep.eps_list = {0.05, 0.1, 0.25};
  std::vector<VerificationReport> reports;
  reports.push_back(verify_spectrum(sweep));
  reports.push_back(verify_orthonormality(sweep));
  reports.push_back(verify_operators(sweep));
  reports.push_back(verify_algebra(sweep));
  return reports;
}

namespace {

std::string check_json(const CheckRecord& c) {
  return "{\"name\":\"" + c.name + "\",\"measured\":" + format_17(c.measured) +
         ",\"threshold\":" + format_17(c.threshold) +
         ",\"pass\":" + (c.pass ? "true" : "false") + "}";
}

}  // namespace

std::string to_json(const VerificationReport& report) {
  std::string out = "{\"suite\":\"" + report.suite + "\",\"checks\":[";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    if (i) out += ',';
    out += check_json(report.checks[i]);
  }
  out += std::string("],\"status\":\"") + (report.passed() ? "pass" : "fail") + "\"}";
  return out;
}

std::string to_json(const std::vector<VerificationReport>& reports) {
  std::string out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) out += ',';
    out += to_json(reports[i]);
  }
  return out + "]";
}

std::string to_csv(const VerificationReport& report) {
  std::string out = "suite,name,measured,threshold,pass\n";
  for (const auto& c : report.checks) {
    out += report.suite + "," + c.name + "," + format_shortest(c.measured) + "," +
           format_shortest(c.threshold) + "," + (c.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::string to_csv(const std::vector<VerificationReport>& reports) {
  std::string out = "suite,name,measured,threshold,pass\n";
  for (const auto& report : reports) {
    for (const auto& c : report.checks) {
      out += report.suite + "," + c.name + "," + format_shortest(c.measured) + "," +
             format_shortest(c.threshold) + "," + (c.pass ? "true" : "false") + "\n";
    }
  }
  return out;
}

std::string to_text(const VerificationReport& report) {
  std::string out = "suite: " + report.suite + "\n";
  for (const auto& c : report.checks) {
    char line[256];
    std::snprintf(line, sizeof line, "  [%s] %-55s measured=%.3e threshold=%.3e\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.threshold);
    out += line;
  }
  char tail[96];
  std::snprintf(tail, sizeof tail, "status: %s (%.2f s)\n",
                report.passed() ? "PASS" : "FAIL", report.elapsed_seconds);
  return out + tail;
}

std::string to_text(const std::vector<VerificationReport>& reports) {
  std::string out;
  bool all = true;
  for (const auto& r : reports) {
    out += to_text(r);
    all = all && r.passed();
  }
  return out + (all ? "all suites passed\n" : "at least one suite failed\n");
}

}  // namespace ptosc
