#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace ptosc {

/// Deliberate defects for negative-control runs: a verification that cannot
/// be made to fail proves nothing.
enum class Fault {
  None,
  EnergyShift,  // expected eigenvalues shifted by 1e-6 in the residual check
  SignFlip,     // expected PT/C parity signs flipped
};

/// Settings shared by the verification suites. Empty eps_list / negative
/// n_max mean "use the suite default".
struct RunConfig {
  std::vector<double> eps_list;
  int n_max = -1;
  int order = 12;
  double tol = std::numeric_limits<double>::quiet_NaN();  // override when set
  std::uint64_t seed = 12345;
  Fault fault = Fault::None;
};

struct CheckRecord {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  double elapsed_seconds = 0.0;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Pointwise eigen-residual sweep |H phi_n - (n+1/2) phi_n| over the real
/// grid for each eps, plus the finite-difference confirmation that the
/// Hermitian partner has spectrum n + 1/2.
VerificationReport verify_spectrum(const RunConfig& cfg = {});

/// Gram matrix along the path vs the identity, eps = 0 regression, and
/// CPT-norm positivity.
VerificationReport verify_orthonormality(const RunConfig& cfg = {});

/// PT, C and CPT eigenvalue actions on the sample grid plus the C scaling
/// identities on 1/s and (x/s)^n.
VerificationReport verify_operators(const RunConfig& cfg = {});

/// Exact BCH-vs-Taylor operator comparison and the lemma series vs its
/// closed form.
VerificationReport verify_algebra(const RunConfig& cfg = {});

/// The four suites in order; spectrum/orthonormality/operators run with
/// eps set {0.05, 0.1, 0.25} unless the config names its own.
std::vector<VerificationReport> verify_all(const RunConfig& cfg = {});

/// Deterministic JSON: fixed field order (suite, checks, status), floats as
/// 17-significant-digit scientific, no timing. Identical configs give
/// byte-identical output.
std::string to_json(const VerificationReport& report);
std::string to_json(const std::vector<VerificationReport>& reports);

/// CSV rows `name,measured,threshold,pass` (one header line).
std::string to_csv(const VerificationReport& report);
std::string to_csv(const std::vector<VerificationReport>& reports);

/// Human-readable listing, includes timing.
std::string to_text(const VerificationReport& report);
std::string to_text(const std::vector<VerificationReport>& reports);

}  // namespace ptosc
