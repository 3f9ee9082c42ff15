#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "morpho/catalog.hpp"
#include "morpho/families.hpp"

namespace morpho {

struct Tolerances {
  double jet = 1e-9;
  double fd = 1e-4;
  double invariance = 1e-8;
  double row_independence = 1e-10;
};

struct VerificationConfig {
  FamilyParams family;
  int samples = 50;
  std::uint64_t seed = 42;
  Tolerances tol;
  int invariance_trials = 20;
  int invariance_points = 20;
  int fd_points = 10;
  double fd_step = 5e-4;
  double slack = 1e-6;
  /// Minimum pole margin of sampled points (Family::margin).
  double margin = 0.1;

  void validate() const;
};

/// More than 99% of model-space draws were rejected by the domain predicate.
class SamplerStarvation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FamilyReport {
  VerificationConfig config;
  std::string family;
  Algebra algebra = Algebra::Real;
  Variant variant = Variant::Noncompact;
  int p = 0;
  int q = 0;
  std::optional<int> r;
  int components = 0;

  double max_tau = 0.0;
  double max_kappa = 0.0;
  /// Per-pair maxima of |kappa(phi_i, phi_j)|, symmetric.
  Eigen::MatrixXd kappa_pair_max;
  std::optional<double> invariance_max;
  std::optional<double> row_independence_max;
  std::optional<double> engines_agree;
  int engine_warnings = 0;
  bool pass = false;
  double wall_ms = 0.0;

  /// Recomputes `pass` from the recorded maxima and tolerances.
  bool within_tolerances() const;
};

/// Accepted model-space points (Sigma or Sigma* draws passing `accepts`).
std::vector<Eigen::VectorXd> sample_points(const Family& fam, int n, Rng& rng, double slack, double margin = 0.0);

/// tau of every component and kappa of every pair at `config.samples` points.
FamilyReport residual_report(const Family& fam, const VerificationConfig& config);

/// max |phi(X g) - phi(X)| / (1 + |phi(X)|) over points and group samples.
double invariance_report(const Family& fam, const VerificationConfig& config);

/// max |Jet2 - finite differences| over first and second partials.
double cross_engine_check(const Family& fam, const VerificationConfig& config, int* warnings = nullptr);

/// max |d phi / dx|, |d^2 phi / dx^2| over the dropped-row coordinates of the lift.
double row_independence(const Family& fam, const VerificationConfig& config);

/// Residuals, invariance, row independence and engine agreement of one family.
FamilyReport certify(const Family& fam, const VerificationConfig& config);
FamilyReport certify(const VerificationConfig& config);

/// Certifies each config; `threads` = 0 picks the hardware concurrency.
/// Output order follows input order regardless of scheduling.
std::vector<FamilyReport> run_suite(const std::vector<VerificationConfig>& configs, int threads = 1);
/// Same for already-built families (duals, controls); `base` supplies
/// everything but the family parameters.
std::vector<FamilyReport> run_suite(const std::vector<Family>& families, const VerificationConfig& base,
                                    int threads = 1);

/// Pointwise max-merge of two reports of the same family (e.g. two shards).
/// Samples add up; the smaller seed is kept as provenance.
FamilyReport merge(const FamilyReport& a, const FamilyReport& b);

/// The default grid over all ten constructions.
std::vector<VerificationConfig> default_grid(const VerificationConfig& base);
/// Dualized real and quaternionic families.
std::vector<Family> duality_families(std::uint64_t skew_seed);
/// Negative controls; each is expected to fail.
std::vector<Family> control_families();

/// Rng stream `stream` derived from `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

}  // namespace morpho
