#include <gtest/gtest.h>

#include <cmath>

#include "morpho/calculus.hpp"
#include "morpho/catalog.hpp"
#include "morpho/families.hpp"
#include "morpho/verify.hpp"
#include "oracles.hpp"

using namespace morpho;

namespace {

const double kRt2 = std::sqrt(2.0);

void expect_close(cplx got, cplx want, double tol = 1e-14) {
  EXPECT_NEAR(got.real(), want.real(), tol) << got << " vs " << want;
  EXPECT_NEAR(got.imag(), want.imag(), tol) << got << " vs " << want;
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

// Quaternion column packed as (Re z, Im z, Re w, Im w) per row.
Eigen::VectorXd quat_column(std::initializer_list<Quaternion> rows) {
  Eigen::VectorXd x(4 * static_cast<Eigen::Index>(rows.size()));
  int k = 0;
  for (const auto& q : rows) {
    x.segment(4 * k++, 4) << q.z.real(), q.z.imag(), q.w.real(), q.w.imag();
  }
  return x;
}

VerificationConfig quick(int samples = 20) {
  VerificationConfig c;
  c.samples = samples;
  c.fd_points = 0;
  return c;
}

void expect_harmonic(const Family& fam, int samples = 30) {
  const FamilyReport r = residual_report(fam, quick(samples));
  EXPECT_LE(r.max_tau, 1e-9) << fam.label;
  EXPECT_LE(r.max_kappa, 1e-9) << fam.label;
}

// Linear family: rows of L are the coefficient vectors, read off by
// evaluating at unit vectors; kappa matrix is L diag(eps) L^T.
Eigen::MatrixXcd linear_kappa_oracle(const Family& fam) {
  const int d = fam.chart.dim();
  const Eigen::VectorXcd base = fam.map(Eigen::VectorXd(Eigen::VectorXd::Zero(d)));
  Eigen::MatrixXcd l(fam.size(), d);
  for (int a = 0; a < d; ++a) l.col(a) = fam.map(Eigen::VectorXd(Eigen::VectorXd::Unit(d, a))) - base;
  return l * fam.chart.signature().cast<cplx>().asDiagonal() * l.transpose();
}

}  // namespace

// --- complex ---------------------------------------------------------------

TEST(ComplexNoncompact, ScalarDivisionExample) {
  const Family f = complex_noncompact(1, 1);
  expect_close(f.map(vec({1, 0, 0, 0.5}))[0], {0.0, 0.5});
}

TEST(ComplexNoncompact, ScalarMultipleGivesSameValue) {
  const Family f = complex_noncompact(1, 1);
  const cplx z0(0.8, -0.3), z1(0.2, 0.4), g(-1.3, 0.7);
  const cplx a = z0 * g, b = z1 * g;
  expect_close(f.map(vec({a.real(), a.imag(), b.real(), b.imag()}))[0], z1 / z0);
}

TEST(ComplexNoncompact, Harmonic) { expect_harmonic(complex_noncompact(1, 2), 50); }

TEST(ComplexCompact, Examples) {
  const Family f = complex_compact(1, 1);
  const Eigen::VectorXd x = vec({1 / kRt2, 0, 1 / kRt2, 0});
  EXPECT_TRUE(f.accepts(x, 1e-6));
  expect_close(f.map(x)[0], 1.0);
  EXPECT_FALSE(f.regular(vec({0, 0, 1, 0}).cast<cplx>()));
  expect_harmonic(complex_compact(2, 3));
}

// --- real ------------------------------------------------------------------

TEST(RealLinearM, ZeroParameterGivesCoordinates) {
  const Family f = real_linear_m(1, 1, SkewParam::zero_indefinite(1, 1));
  const Eigen::VectorXcd v = f.map(vec({2, 1, 1, 1}));
  ASSERT_EQ(v.size(), 2);
  expect_close(v[0], 1.0);
  expect_close(v[1], {1.0, 1.0});
}

TEST(RealLinearM, KappaMatchesLinearOracleAndVanishes) {
  Rng rng(41);
  for (auto [p, r] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
    const Family f = real_linear_m(p, r, SkewParam::random_indefinite(p, r, rng));
    const Eigen::MatrixXcd k = linear_kappa_oracle(f);
    EXPECT_LE(k.cwiseAbs().maxCoeff(), 1e-12);
    const FamilyReport rep = residual_report(f, quick(50));
    EXPECT_EQ(rep.max_tau, 0.0);
    EXPECT_LE(rep.max_kappa, 1e-10);
  }
}

TEST(RealLinearM, RelationIsNeeded) {
  // A plain complex-skew matrix breaks the indefinite relation when p, r >= 1:
  // the linear oracle then sees a nonzero kappa entry.
  const int p = 1, r = 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = -1.0;
  EXPECT_THROW(SkewParam::indefinite(p, r, m), ShapeError);
  Family bad = real_compact_linear_m(p, r, SkewParam::complex(m));
  bad.chart = Chart({Algebra::Real, p, p + 2 * r, Variant::Noncompact});
  EXPECT_GT(linear_kappa_oracle(bad).cwiseAbs().maxCoeff(), 1.0);
}

TEST(SkewParam, RejectsInvalidMatrices) {
  EXPECT_THROW(SkewParam::complex(Eigen::MatrixXcd::Identity(2, 2)), ShapeError);
  EXPECT_THROW(SkewParam::complex(Eigen::MatrixXcd::Zero(2, 3)), ShapeError);
  EXPECT_THROW(SkewParam::indefinite(1, 2, Eigen::MatrixXcd::Zero(2, 2)), ShapeError);
  Rng rng(42);
  const SkewParam s = SkewParam::random_indefinite(2, 3, rng);
  EXPECT_LE(s.residual(), 1e-12);
  EXPECT_EQ(s.matrix().topRightCorner(2, 3), s.matrix().bottomLeftCorner(3, 2).transpose());
  EXPECT_THROW(real_linear_m(1, 1, SkewParam::zero_complex(2)), ShapeError);
  EXPECT_THROW(real_compact_linear_m(1, 1, SkewParam::zero_indefinite(1, 1)), ShapeError);
}

TEST(RealWOverA, Examples) {
  const Family f = real_w_over_a(1, 1);
  const Eigen::VectorXd x = vec({2, 1, 1, 1});
  EXPECT_TRUE(f.accepts(x, 1e-6));
  expect_close(f.map(x)[0], {1.0, 1.0});
  Rng rng(43);
  for (int t = 0; t < 10; ++t) {
    const GroupElement g = sample_gl(1, Algebra::Real, rng);
    expect_close(f.map(act(f.chart, x, g))[0], {1.0, 1.0}, 1e-12);
  }
}

TEST(RealWOverA, Harmonic) {
  for (auto [p, r] : {std::pair{1, 1}, {1, 2}, {2, 1}}) expect_harmonic(real_w_over_a(p, r), 50);
}

TEST(RealSMethod, ZeroParameterTruncatesWOverA) {
  Rng rng(44);
  for (auto [p, r] : {std::pair{1, 2}, {2, 3}}) {
    const Family s = real_s_method(p, r, SkewParam::zero_complex(r));
    const Family w = real_w_over_a(p, r);
    ASSERT_TRUE(s.lift);
    for (int t = 0; t < 5; ++t) {
      const Eigen::VectorXd x = w.chart.pack(sample_sigma(w.chart.space(), rng));
      const Eigen::VectorXcd a = s.lift->map(x), b = w.map(x);
      ASSERT_EQ(a.size(), (r - 1) * p);
      EXPECT_LE((a - b.head(a.size())).cwiseAbs().maxCoeff(), 1e-13);
    }
  }
}

TEST(RealSMethod, LastRowDerivativesVanish) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = kI;
  m(1, 0) = -kI;
  for (bool compact : {false, true}) {
    const Family s = compact ? real_compact_s_method(1, 2, SkewParam::complex(m))
                             : real_s_method(1, 2, SkewParam::complex(m));
    ASSERT_EQ(s.dropped.size(), 1u);
    EXPECT_EQ(s.dropped[0], s.lift->chart.dim() - 1);
    Rng rng(45);
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXd x = s.lift->chart.pack(sample_sigma(s.lift->chart.space(), rng));
      if (!s.lift->regular(x.cast<cplx>())) continue;
      const DerivativeTable tab = jet_table(s.lift->map, x);
      EXPECT_LE(tab.d1.row(s.dropped[0]).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LE(tab.d2.row(s.dropped[0]).cwiseAbs().maxCoeff(), 1e-10);
    }
    // The dropped coordinate really is a coordinate of W: W A^-1 itself depends on it.
    const Family w = compact ? real_compact_w_over_z(1, 2) : real_w_over_a(1, 2);
    const Eigen::VectorXd x = w.chart.pack(sample_sigma(w.chart.space(), rng));
    EXPECT_GT(jet_table(w.map, x).d1.row(s.dropped[0]).cwiseAbs().maxCoeff(), 1e-3);
  }
}

TEST(RealSMethod, InducedFamilyHarmonic) {
  Rng rng(46);
  for (auto [p, r] : {std::pair{1, 2}, {2, 2}}) {
    expect_harmonic(real_s_method(p, r, SkewParam::random_complex(r, rng)));
    expect_harmonic(real_compact_s_method(p, r, SkewParam::random_complex(r, rng)));
  }
}

TEST(RealCompact, WOverZExamples) {
  const Family f = real_compact_w_over_z(1, 1);
  // X0 = 1, X1 = 1 -> Z = 1 + i; X2 = 1, X3 = 0 -> W = 1.
  expect_close(f.map(vec({1, 1, 1, 0}))[0], {0.5, -0.5});
  EXPECT_FALSE(f.regular(vec({0, 0, 1, 0}).cast<cplx>()));
  expect_harmonic(real_compact_w_over_z(2, 1));
}

TEST(RealCompact, LinearMKappa) {
  Rng rng(47);
  const Family zero = real_compact_linear_m(1, 1, SkewParam::zero_complex(2));
  EXPECT_EQ(linear_kappa_oracle(zero).cwiseAbs().maxCoeff(), 0.0);
  for (auto [p, r] : {std::pair{1, 1}, {2, 1}}) {
    const Family f = real_compact_linear_m(p, r, SkewParam::random_complex(p + r, rng));
    EXPECT_LE(linear_kappa_oracle(f).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE(residual_report(f, quick(50)).max_kappa, 1e-10);
  }
}

TEST(Structure, ConstructorsRejectBadLayouts) {
  try {
    real_s_method(1, 1, SkewParam::zero_complex(1));
    FAIL() << "expected ShapeError";
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("independent of the last row"), std::string::npos);
  }
  EXPECT_THROW(real_compact_s_method(2, 1, SkewParam::zero_complex(1)), ShapeError);
  EXPECT_THROW(quat_noncompact(1, 0), ShapeError);
  EXPECT_THROW(quat_compact(2, 0), ShapeError);
  EXPECT_THROW(real_w_over_a(0, 1), ShapeError);
  EXPECT_THROW(complex_noncompact(1, 0), ShapeError);
  EXPECT_THROW(real_s_method(1, 3, SkewParam::zero_complex(2)), ShapeError);
}

// --- quaternionic ----------------------------------------------------------

TEST(QuatNoncompact, FormulaValue) {
  const Family f = quat_noncompact(1, 1);
  const Eigen::VectorXcd v = f.map(quat_column({{1.0, 0.0}, {}, {0.0, 1.0}}));
  ASSERT_EQ(v.size(), 2);
  expect_close(v[0], 0.0);
  expect_close(v[1], 1.0);
}

TEST(QuatNoncompact, ZeroLowerBlockGivesZero) {
  Rng rng(48);
  for (auto [p, r] : {std::pair{1, 1}, {2, 1}}) {
    const Family f = quat_noncompact(p, r);
    DivisionMatrix x = sample_sigma(f.chart.space(), rng);
    for (int i = 2 * p; i < 2 * p + r; ++i)
      for (int j = 0; j < p; ++j) x.set_entry(i, j, {});
    EXPECT_EQ(f.map(f.chart.pack(x)).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(QuatNoncompact, Harmonic) {
  for (auto [p, r] : {std::pair{1, 1}, {1, 2}, {2, 1}}) expect_harmonic(quat_noncompact(p, r), 50);
}

TEST(QuatCompact, FormulaValue) {
  // Q = (1; 0; j) / sqrt2: denominator (1/sqrt2) I_2, numerator (0, -1/sqrt2).
  const Family f = quat_compact(1, 1);
  const Eigen::VectorXd x = quat_column({{1.0 / kRt2, 0.0}, {}, {0.0, 1.0 / kRt2}});
  EXPECT_TRUE(f.accepts(x, 1e-6));
  const Eigen::VectorXcd v = f.map(x);
  expect_close(v[0], 0.0);
  expect_close(v[1], -1.0);
  EXPECT_FALSE(f.regular(quat_column({{}, {}, {1.0, 0.0}}).cast<cplx>()));
}

TEST(QuatCompact, Harmonic) {
  for (auto [p, r] : {std::pair{1, 1}, {2, 1}}) expect_harmonic(quat_compact(p, r));
}

// --- composition -------------------------------------------------------------

TEST(Compose, IdentityLeavesFamilyUnchanged) {
  Rng rng(49);
  const Family f = complex_noncompact(2, 2);
  const Family g = compose_holomorphic(f, RationalMap::identity(f.size()));
  for (int t = 0; t < 5; ++t) {
    const Eigen::VectorXd x = f.chart.pack(sample_sigma(f.chart.space(), rng));
    EXPECT_EQ(g.map(x), f.map(x));
  }
}

TEST(Compose, SquareOfFirstComponent) {
  const Family f = complex_noncompact(1, 2);
  std::vector<int> e{2, 0};
  const Family g = compose_holomorphic(f, RationalMap::polynomial(2, {Polynomial{{{1.0, e}}}}));
  EXPECT_EQ(g.size(), 1);
  expect_harmonic(g, 50);
}

TEST(Compose, ProductAndSum) {
  for (const Family& f : {real_w_over_a(1, 2), quat_noncompact(1, 1), complex_compact(2, 1)}) {
    ASSERT_GE(f.size(), 2);
    std::vector<int> prod(f.size(), 0), e0(f.size(), 0), e1(f.size(), 0);
    prod[0] = prod[1] = 1;
    e0[0] = 1;
    e1[1] = 1;
    const RationalMap m = RationalMap::polynomial(f.size(), {Polynomial{{{1.0, prod}}}, Polynomial{{{1.0, e0}, {1.0, e1}}}});
    expect_harmonic(compose_holomorphic(f, m));
  }
}

TEST(Compose, RandomRationalMapsKeepHarmonicity) {
  Rng rng(50);
  const Family f = real_w_over_a(2, 1);
  for (int t = 0; t < 3; ++t) expect_harmonic(compose_holomorphic(f, RationalMap::random(f.size(), 2, 3, rng)));
}

TEST(Compose, ArityMismatchThrows) {
  EXPECT_THROW(compose_holomorphic(complex_noncompact(1, 1), RationalMap::identity(2)), ShapeError);
}

TEST(Compose, NonHolomorphicPostCompositionIsCaught) {
  // |phi|^2 is not of the allowed form; the residual suite must see it.
  const Family f = complex_noncompact(1, 1);
  Family g = f;
  g.map = VectorMap::generic(f.chart.dim(), 1, [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    const ComplexView<T> z = complex_matrix<T>(x, 2, 1);
    VecX<T> out(1);
    out[0] = (z.z(1, 0) / z.z(0, 0)) * (z.zbar(1, 0) / z.zbar(0, 0));
    return out;
  });
  EXPECT_GT(residual_report(g, quick()).max_tau, 1e-3);
}

// --- duality ---------------------------------------------------------------

TEST(DualizeReal, WOverASubstitutionValue) {
  const Family d = dualize_real(real_w_over_a(1, 1));
  EXPECT_EQ(d.chart.space().variant, Variant::Compact);
  std::mt19937_64 rng(51);
  std::normal_distribution<double> g;
  for (int t = 0; t < 10; ++t) {
    const double x0 = g(rng), y1 = g(rng), y2 = g(rng), y3 = g(rng);
    const cplx want = cplx(-y3, y2) / cplx(x0, -y1);
    expect_close(d.map(vec({x0, y1, y2, y3}))[0], want, 1e-12 * (1 + std::abs(want)));
  }
}

TEST(DualizeReal, LinearCoordinateBecomesIY) {
  // phi = the X2 coordinate, as the first W component of the M-method with M = 0.
  const Family d = dualize_real(real_linear_m(1, 1, SkewParam::zero_indefinite(1, 1)));
  const Eigen::VectorXd x = vec({0.3, 0.4, 0.5, 0.0});
  expect_close(d.map(x)[1], cplx(0.0, 0.5));
  const DerivativeTable t = jet_table(d.map, x);
  EXPECT_EQ(tau_all(t, d.chart.signature()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(DualizeReal, IsIWOverConjZ) {
  // On the compact chart the dual of W A^-1 is i W conj(Z)^-1: compare to the
  // compact W Z^-1 evaluated at the conjugated Z block.
  Rng rng(52);
  const Family d = dualize_real(real_w_over_a(2, 1));
  const Family c = real_compact_w_over_z(2, 1);
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXd x = c.chart.pack(sample_sigma(c.chart.space(), rng));
    Eigen::VectorXd xc = x;
    xc.segment(2 * 2, 2 * 2) *= -1.0;  // X1 -> -X1 turns Z into conj Z
    const Eigen::VectorXcd want = kI * c.map(xc);
    EXPECT_LE((d.map(x) - want).cwiseAbs().maxCoeff(), 1e-12 * (1 + want.cwiseAbs().maxCoeff()));
  }
}

TEST(DualizeReal, DualFamiliesHarmonic) {
  Rng rng(53);
  for (auto [p, r] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
    expect_harmonic(dualize_real(real_w_over_a(p, r)));
    expect_harmonic(dualize_real(real_linear_m(p, r, SkewParam::random_indefinite(p, r, rng))));
  }
  expect_harmonic(dualize_real(real_s_method(1, 2, SkewParam::random_complex(2, rng))));
}

TEST(DualizeReal, RejectsWrongChart) {
  EXPECT_THROW(dualize_real(real_compact_w_over_z(1, 1)), ShapeError);
  EXPECT_THROW(dualize_real(complex_noncompact(1, 1)), ShapeError);
  EXPECT_THROW(dualize_quat(quat_compact(1, 1)), ShapeError);
}

TEST(DualizeQuat, ZeroLowerBlockGivesZero) {
  const Family d = dualize_quat(quat_noncompact(1, 1));
  const Eigen::VectorXd x = quat_column({{0.6, 0.0}, {{0.0, 0.3}, {0.2, 0.1}}, {}});
  EXPECT_EQ(d.map(x).cwiseAbs().maxCoeff(), 0.0);
}

TEST(DualizeQuat, LinearRecombinationOfCompactFamily) {
  // Least-squares fit of dual = compact * C over 20 samples; the fit must be
  // exact and C invertible.
  Rng rng(54);
  const Family d = dualize_quat(quat_noncompact(1, 1));
  const Family c = quat_compact(1, 1);
  const int n = 20;
  Eigen::MatrixXcd a(n, c.size()), b(n, d.size());
  for (int t = 0; t < n; ++t) {
    const Eigen::VectorXd x = sample_points(c, 1, rng, 1e-6, 0.1)[0];
    a.row(t) = c.map(x).transpose();
    b.row(t) = d.map(x).transpose();
  }
  const Eigen::MatrixXcd fit = a.colPivHouseholderQr().solve(b);
  EXPECT_LE((a * fit - b).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_GT(std::abs(fit.determinant()), 1e-6);
  EXPECT_LE((fit - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(DualizeQuat, DualFamiliesHarmonic) {
  for (auto [p, r] : {std::pair{1, 1}, {1, 2}, {2, 1}}) expect_harmonic(dualize_quat(quat_noncompact(p, r)));
}

// --- controls ----------------------------------------------------------------

TEST(Controls, WrongSignPairIsNotOrthogonal) {
  const Family f = control_wrong_sign(1, 1);
  const FamilyReport r = residual_report(f, quick());
  EXPECT_EQ(r.max_tau, 0.0);
  EXPECT_GT(r.max_kappa, 1e-3);
}

// --- catalog -----------------------------------------------------------------

TEST(Catalog, TenConstructionsAndLayouts) {
  ASSERT_EQ(catalog().size(), 10u);
  FamilyParams p{"real-s-method", 1, std::nullopt, 2};
  EXPECT_EQ(resolve(p).q, 4);
  p = {"real-w-over-a", 2, 6, std::nullopt};
  EXPECT_EQ(resolve(p).r, 2);
  p = {"quat-compact", 2, std::nullopt, 1};
  EXPECT_EQ(resolve(p).q, 3);
  p = {"real-w-over-a", 2, 5, std::nullopt};
  EXPECT_THROW(resolve(p), ShapeError);
  p = {"real-s-method", 1, std::nullopt, 1};
  EXPECT_THROW(resolve(p), ShapeError);
  p = {"complex-noncompact", 1, std::nullopt, 1};
  EXPECT_THROW(resolve(p), ShapeError);
  p = {"nope", 1, 1, std::nullopt};
  EXPECT_THROW(resolve(p), ShapeError);
  p = {"quat-noncompact", 2, 3, 1};
  EXPECT_EQ(resolve(resolve(p)).r, 1);
  for (const auto& e : catalog()) {
    FamilyParams fp{e.label, 1, std::nullopt, std::nullopt};
    if (e.size_param == SizeParam::Q)
      fp.q = 2;
    else
      fp.r = 2;
    const Family f = build_family(fp);
    EXPECT_EQ(f.chart.space().algebra, e.algebra) << e.label;
    EXPECT_EQ(f.chart.space().variant, e.variant) << e.label;
    EXPECT_EQ(f.invariance == Invariance::GeneralLinear, e.invariant) << e.label;
  }
}
