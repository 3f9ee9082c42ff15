#include "morpho/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "morpho/calculus.hpp"

namespace morpho {

namespace {

enum Stream : std::uint64_t { kResidual = 1, kInvariance = 2, kGroup = 3, kRow = 4 };

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double opt_max(const std::optional<double>& a, const std::optional<double>& b, bool& present) {
  present = a.has_value() || b.has_value();
  return std::max(a.value_or(0.0), b.value_or(0.0));
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

void VerificationConfig::validate() const {
  if (samples < 1) throw ShapeError("samples must be >= 1");
  if (tol.jet <= 0 || tol.fd <= 0 || tol.invariance <= 0 || tol.row_independence <= 0)
    throw ShapeError("tolerances must be positive");
  if (fd_step <= 0) throw ShapeError("fd_step must be positive");
  if (slack < 0) throw ShapeError("slack must be non-negative");
  if (margin < 0 || margin >= 1) throw ShapeError("margin must lie in [0, 1)");
}

bool FamilyReport::within_tolerances() const {
  bool ok = max_tau <= config.tol.jet && max_kappa <= config.tol.jet;
  if (invariance_max) ok = ok && *invariance_max <= config.tol.invariance;
  if (row_independence_max) ok = ok && *row_independence_max <= config.tol.row_independence;
  if (engines_agree) ok = ok && *engines_agree <= config.tol.fd;
  return ok;
}

std::vector<Eigen::VectorXd> sample_points(const Family& fam, int n, Rng& rng, double slack, double margin) {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(n);
  const long max_draws = 100L * std::max(n, 1);
  long draws = 0;
  while (static_cast<int>(pts.size()) < n) {
    if (draws >= max_draws)
      throw SamplerStarvation(fam.label + ": domain predicate rejected more than 99% of draws");
    ++draws;
    Eigen::VectorXd x = fam.chart.pack(sample_sigma(fam.chart.space(), rng));
    if (fam.accepts(x, slack, margin)) pts.push_back(std::move(x));
  }
  return pts;
}

FamilyReport residual_report(const Family& fam, const VerificationConfig& config) {
  config.validate();
  FamilyReport rep;
  rep.config = config;
  rep.family = fam.label;
  rep.algebra = fam.chart.space().algebra;
  rep.variant = fam.chart.space().variant;
  rep.p = fam.chart.space().p;
  rep.q = fam.chart.space().q;
  rep.r = config.family.r;
  rep.components = fam.size();
  rep.kappa_pair_max = Eigen::MatrixXd::Zero(fam.size(), fam.size());

  Rng rng = make_rng(config.seed, kResidual);
  const auto& sig = fam.chart.signature();
  for (const auto& x : sample_points(fam, config.samples, rng, config.slack, config.margin)) {
    const DerivativeTable t = jet_table(fam.map, x);
    rep.max_tau = std::max(rep.max_tau, tau_all(t, sig).cwiseAbs().maxCoeff());
    const Eigen::MatrixXd k = kappa_matrix(t, sig).cwiseAbs();
    rep.kappa_pair_max = rep.kappa_pair_max.cwiseMax(k);
  }
  rep.max_kappa = rep.kappa_pair_max.maxCoeff();
  rep.pass = rep.within_tolerances();
  return rep;
}

double invariance_report(const Family& fam, const VerificationConfig& config) {
  if (fam.invariance == Invariance::None) throw ShapeError(fam.label + " declares no invariance group");
  Rng rng = make_rng(config.seed, kInvariance);
  Rng group_rng = make_rng(config.seed, kGroup);
  const ModelSpace& s = fam.chart.space();
  double worst = 0.0;
  for (const auto& x : sample_points(fam, config.invariance_points, rng, config.slack, config.margin)) {
    const Eigen::VectorXcd base = fam.map(x);
    for (int t = 0; t < config.invariance_trials; ++t) {
      const GroupElement g = sample_gl(s.p, s.algebra, group_rng);
      const Eigen::VectorXd xg = act(fam.chart, x, g);
      if (!fam.regular(xg.cast<cplx>())) continue;
      const Eigen::VectorXcd moved = fam.map(xg);
      for (Eigen::Index i = 0; i < base.size(); ++i)
        worst = std::max(worst, std::abs(moved[i] - base[i]) / (1.0 + std::abs(base[i])));
    }
  }
  return worst;
}

double cross_engine_check(const Family& fam, const VerificationConfig& config, int* warnings) {
  Rng rng = make_rng(config.seed, kResidual);
  const double h = config.fd_step;
  double worst = 0.0;
  int warn = 0;
  for (const auto& x : sample_points(fam, config.fd_points, rng, config.slack, config.margin)) {
    // Points whose stencil leaves the regular set sit at the predicate
    // boundary; report them instead of failing.
    bool stencil_ok = true;
    for (Eigen::Index a = 0; a < x.size() && stencil_ok; ++a) {
      for (int k : {-2, 2}) {
        Eigen::VectorXd y = x;
        y[a] += k * h;
        if (!fam.regular(y.cast<cplx>())) stencil_ok = false;
      }
    }
    if (!stencil_ok) {
      ++warn;
      continue;
    }
    const DerivativeTable jet = jet_table(fam.map, x);
    const DerivativeTable fd = fd_table(fam.map, x, h);
    worst = std::max({worst, max_abs(jet.d1 - fd.d1), max_abs(jet.d2 - fd.d2)});
  }
  if (warnings) *warnings = warn;
  return worst;
}

double row_independence(const Family& fam, const VerificationConfig& config) {
  if (!fam.lift) throw ShapeError(fam.label + " is not induced from a larger row space");
  const Family& full = *fam.lift;
  Rng rng = make_rng(config.seed, kRow);
  double worst = 0.0;
  for (const auto& x : sample_points(full, config.samples, rng, config.slack, config.margin)) {
    const DerivativeTable t = jet_table(full.map, x);
    for (int a : fam.dropped) worst = std::max({worst, max_abs(t.d1.row(a)), max_abs(t.d2.row(a))});
  }
  return worst;
}

FamilyReport certify(const Family& fam, const VerificationConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  FamilyReport rep = residual_report(fam, config);
  if (fam.invariance == Invariance::GeneralLinear) rep.invariance_max = invariance_report(fam, config);
  if (fam.lift) rep.row_independence_max = row_independence(fam, config);
  if (config.fd_points > 0) rep.engines_agree = cross_engine_check(fam, config, &rep.engine_warnings);
  rep.pass = rep.within_tolerances();
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

FamilyReport certify(const VerificationConfig& config) {
  VerificationConfig c = config;
  c.family = resolve(config.family);
  return certify(build_family(c.family), c);
}

namespace {

// Runs job(i) for i in [0, n) on a small pool; results stay indexed by i.
template <class Job>
void parallel_for(std::size_t n, int threads, Job job) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(std::max<std::size_t>(n, 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<FamilyReport> run_suite(const std::vector<VerificationConfig>& configs, int threads) {
  std::vector<FamilyReport> out(configs.size());
  parallel_for(configs.size(), threads, [&](std::size_t i) { out[i] = certify(configs[i]); });
  return out;
}

std::vector<FamilyReport> run_suite(const std::vector<Family>& families, const VerificationConfig& base,
                                    int threads) {
  std::vector<FamilyReport> out(families.size());
  parallel_for(families.size(), threads, [&](std::size_t i) {
    VerificationConfig c = base;
    c.family.label = families[i].label;
    c.family.p = families[i].chart.space().p;
    c.family.q = families[i].chart.space().q;
    c.family.r.reset();
    out[i] = certify(families[i], c);
  });
  return out;
}

FamilyReport merge(const FamilyReport& a, const FamilyReport& b) {
  if (a.family != b.family || a.components != b.components)
    throw ShapeError("merge: reports belong to different families");
  const Tolerances& ta = a.config.tol;
  const Tolerances& tb = b.config.tol;
  if (ta.jet != tb.jet || ta.fd != tb.fd || ta.invariance != tb.invariance ||
      ta.row_independence != tb.row_independence)
    throw ShapeError("merge: reports were certified with different tolerances");
  // Shards: the merged report covers both sample sets; provenance keeps the
  // smaller seed so that the result does not depend on argument order.
  FamilyReport m = a.config.seed <= b.config.seed ? a : b;
  m.config.samples = a.config.samples + b.config.samples;
  m.max_tau = std::max(a.max_tau, b.max_tau);
  m.kappa_pair_max = a.kappa_pair_max.cwiseMax(b.kappa_pair_max);
  m.max_kappa = std::max(a.max_kappa, b.max_kappa);
  bool present = false;
  double v = opt_max(a.invariance_max, b.invariance_max, present);
  m.invariance_max = present ? std::optional<double>(v) : std::nullopt;
  v = opt_max(a.row_independence_max, b.row_independence_max, present);
  m.row_independence_max = present ? std::optional<double>(v) : std::nullopt;
  v = opt_max(a.engines_agree, b.engines_agree, present);
  m.engines_agree = present ? std::optional<double>(v) : std::nullopt;
  m.engine_warnings = a.engine_warnings + b.engine_warnings;
  m.wall_ms = a.wall_ms + b.wall_ms;
  m.pass = m.within_tolerances();
  return m;
}

std::vector<VerificationConfig> default_grid(const VerificationConfig& base) {
  std::vector<VerificationConfig> grid;
  auto add = [&](const std::string& label, int p, std::optional<int> q, std::optional<int> r) {
    VerificationConfig c = base;
    c.family.label = label;
    c.family.p = p;
    c.family.q = q;
    c.family.r = r;
    grid.push_back(c);
  };
  const std::vector<std::pair<int, int>> complex_pq = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}};
  const std::vector<std::pair<int, int>> real_pr = {{1, 1}, {1, 2}, {2, 1}};
  const std::vector<std::pair<int, int>> s_pr = {{1, 2}, {2, 2}};
  for (const auto& label : {"complex-noncompact", "complex-compact"})
    for (auto [p, q] : complex_pq) add(label, p, q, std::nullopt);
  for (const auto& label : {"real-m-method", "real-w-over-a", "real-compact-m-method", "real-compact-w-over-z"})
    for (auto [p, r] : real_pr) add(label, p, std::nullopt, r);
  for (const auto& label : {"real-s-method", "real-compact-s-method"})
    for (auto [p, r] : s_pr) add(label, p, std::nullopt, r);
  for (const auto& label : {"quat-noncompact", "quat-compact"})
    for (auto [p, r] : real_pr) add(label, p, std::nullopt, r);
  return grid;
}

std::vector<Family> duality_families(std::uint64_t skew_seed) {
  std::vector<Family> out;
  const std::vector<std::pair<int, int>> pr = {{1, 1}, {1, 2}, {2, 1}};
  for (auto [p, r] : pr) {
    Rng rng(skew_seed);
    out.push_back(dualize_real(real_w_over_a(p, r)));
    out.push_back(dualize_real(real_linear_m(p, r, SkewParam::random_indefinite(p, r, rng))));
  }
  for (auto [p, r] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}}) {
    Rng rng(skew_seed);
    out.push_back(dualize_real(real_s_method(p, r, SkewParam::random_complex(r, rng))));
  }
  for (auto [p, r] : pr) out.push_back(dualize_quat(quat_noncompact(p, r)));
  return out;
}

std::vector<Family> control_families() { return {control_tau(), control_kappa(), control_wrong_sign(1, 1)}; }

}  // namespace morpho
