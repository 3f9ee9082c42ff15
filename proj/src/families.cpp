#include "morpho/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "morpho/linalg.hpp"

namespace morpho {

namespace {

template <class X>
using ScalarOf = typename std::decay_t<X>::Scalar;

template <class T>
MatX<T> to_scalar(const Eigen::MatrixXcd& m) {
  MatX<T> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = T(m(i, j));
  return out;
}

template <class T>
MatX<T> vstack(const MatX<T>& top, const MatX<T>& bottom) {
  MatX<T> out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

template <class T>
MatX<T> hstack(const MatX<T>& left, const MatX<T>& right) {
  MatX<T> out(left.rows(), left.cols() + right.cols());
  out << left, right;
  return out;
}

template <class T>
MatX<T> blocks(const MatX<T>& a, const MatX<T>& b, const MatX<T>& c, const MatX<T>& d) {
  return vstack<T>(hstack<T>(a, b), hstack<T>(c, d));
}

void require_positive(int v, const char* what) {
  if (v < 1) throw ShapeError(std::string(what) + " must be a positive integer");
}

Chart real_chart(int p, int q, Variant v) { return Chart({Algebra::Real, p, q, v}); }

// (I_{r-1} | last column of M above the diagonal), (r-1) x r.
Eigen::MatrixXcd s_matrix(const Eigen::MatrixXcd& m) {
  const auto r = m.rows();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(r - 1, r);
  s.leftCols(r - 1).setIdentity();
  s.col(r - 1) = m.col(r - 1).head(r - 1);
  return s;
}

// Real-chart predicate: the head block (A or Z) is well conditioned.
Predicate head_regular(const Chart& chart) {
  return [chart](const Eigen::VectorXcd& x) {
    try {
      return det_well_posed(real_split<cplx>(x, chart).head);
    } catch (const DomainError&) {
      return false;
    }
  };
}

std::function<double(const Eigen::VectorXcd&)> head_margin(const Chart& chart) {
  return [chart](const Eigen::VectorXcd& x) { return denominator_margin(real_split<cplx>(x, chart).head); };
}

// Appends a zero last row: coordinates on p+s-1 rows -> p+s rows.
CoordinateSubstitution drop_last_row(int dim_small, int p) {
  CoordinateSubstitution sub;
  for (int k = 0; k < dim_small; ++k) {
    sub.source.push_back(k);
    sub.factor.push_back(1.0);
  }
  for (int k = 0; k < p; ++k) {
    sub.source.push_back(0);
    sub.factor.push_back(0.0);
  }
  sub.inputs_ = dim_small;
  return sub;
}

Family induce_without_last_row(Family full, const std::string& label) {
  const ModelSpace& big = full.chart.space();
  const Chart small(ModelSpace{big.algebra, big.p, big.q - 1, big.variant});
  const CoordinateSubstitution embed = drop_last_row(small.dim(), big.p);

  Family fam;
  fam.label = label;
  fam.chart = small;
  fam.map = pre_compose(full.map, embed);
  fam.invariance = full.invariance;
  fam.regular = [reg = full.regular, embed](const Eigen::VectorXcd& x) { return reg(embed.apply(x)); };
  fam.margin = [m = full.margin, embed](const Eigen::VectorXcd& x) { return m(embed.apply(x)); };
  for (int k = 0; k < big.p; ++k) fam.dropped.push_back(full.chart.dim() - big.p + k);
  fam.lift = std::make_shared<const Family>(std::move(full));
  return fam;
}

void check_real_split(int p, int r) {
  require_positive(p, "p");
  require_positive(r, "r");
}

}  // namespace

ScalarField Family::component(int i) const { return {map.select(i), regular}; }

bool Family::accepts(const Eigen::VectorXd& x, double slack) const {
  if (x.size() != chart.dim()) throw ShapeError("Family::accepts: coordinate count mismatch");
  if (!in_model(chart.unpack(x), chart.space(), slack)) return false;
  return regular(x.cast<cplx>());
}

bool Family::accepts(const Eigen::VectorXd& x, double slack, double min_margin) const {
  return accepts(x, slack) && margin(x.cast<cplx>()) >= min_margin;
}

Eigen::VectorXd act(const Chart& chart, const Eigen::VectorXd& x, const GroupElement& g) {
  return chart.pack(right_act(chart.unpack(x), g));
}

// ---------------------------------------------------------------------------
// Skew parameters

SkewParam SkewParam::indefinite(int p, int r, Eigen::MatrixXcd m) {
  if (m.rows() != p + r || m.cols() != p + r) throw ShapeError("SkewParam: expected a (p+r) x (p+r) matrix");
  SkewParam s(Kind::Indefinite, p, std::move(m));
  if (s.residual() > 1e-12) throw ShapeError("SkewParam: matrix violates M^T I_pr + I_pr M = 0");
  return s;
}

SkewParam SkewParam::complex(Eigen::MatrixXcd m) {
  if (m.rows() != m.cols()) throw ShapeError("SkewParam: matrix is not square");
  SkewParam s(Kind::Complex, 0, std::move(m));
  if (s.residual() > 1e-12) throw ShapeError("SkewParam: matrix is not skew-symmetric");
  return s;
}

double SkewParam::residual() const {
  if (m_.size() == 0) return 0.0;
  if (kind_ == Kind::Complex) return (m_.transpose() + m_).cwiseAbs().maxCoeff();
  Eigen::VectorXcd d = Eigen::VectorXcd::Ones(m_.rows());
  d.head(p_).setConstant(-1.0);
  const Eigen::MatrixXcd ipr = d.asDiagonal();
  return (m_.transpose() * ipr + ipr * m_).cwiseAbs().maxCoeff();
}

namespace {

Eigen::MatrixXcd random_complex_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = n01(rng);
      const double im = n01(rng);
      m(i, j) = {re, im};
    }
  return m;
}

Eigen::MatrixXcd skew_part(const Eigen::MatrixXcd& m) { return 0.5 * (m - m.transpose()); }

}  // namespace

SkewParam SkewParam::random_indefinite(int p, int r, Rng& rng) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(p + r, p + r);
  m.topLeftCorner(p, p) = skew_part(random_complex_matrix(p, p, rng));
  m.bottomRightCorner(r, r) = skew_part(random_complex_matrix(r, r, rng));
  const Eigen::MatrixXcd c = random_complex_matrix(p, r, rng);
  m.topRightCorner(p, r) = c;
  m.bottomLeftCorner(r, p) = c.transpose();
  return indefinite(p, r, m);
}

SkewParam SkewParam::random_complex(int n, Rng& rng) { return complex(skew_part(random_complex_matrix(n, n, rng))); }

// ---------------------------------------------------------------------------
// Rational maps

int Polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms) {
    int s = 0;
    for (int e : t.exponents) s += e;
    d = std::max(d, s);
  }
  return d;
}

bool RationalMap::regular_at(const Eigen::VectorXcd& y, double slack) const {
  return std::all_of(denominators.begin(), denominators.end(),
                     [&](const Polynomial& d) { return std::abs(d(y)) >= slack; });
}

double RationalMap::margin_at(const Eigen::VectorXcd& y) const {
  double m = 1.0;
  for (const auto& d : denominators) {
    const double a = std::abs(d(y));
    m = std::min(m, a / std::max(1.0, a));
  }
  return m;
}

namespace {

Polynomial constant(int n, cplx c) { return {{{c, std::vector<int>(n, 0)}}}; }

}  // namespace

RationalMap RationalMap::identity(int n) {
  std::vector<Polynomial> outs;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    outs.push_back({{{1.0, e}}});
  }
  return polynomial(n, std::move(outs));
}

RationalMap RationalMap::polynomial(int n, std::vector<Polynomial> outputs) {
  RationalMap f;
  f.inputs = n;
  f.numerators = std::move(outputs);
  f.denominators.assign(f.numerators.size(), constant(n, 1.0));
  return f;
}

RationalMap RationalMap::random(int n, int m, int degree, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> deg(0, degree);
  auto coef = [&] {
    const double re = n01(rng);
    const double im = n01(rng);
    return cplx(re, im) / std::sqrt(2.0);
  };
  RationalMap f;
  f.inputs = n;
  for (int i = 0; i < m; ++i) {
    Polynomial num;
    for (int t = 0; t < 4; ++t) {
      std::vector<int> e(n, 0);
      const int d = deg(rng);
      for (int k = 0; k < d; ++k) ++e[pick(rng)];
      num.terms.push_back({coef(), e});
    }
    f.numerators.push_back(std::move(num));
    Polynomial den = constant(n, 2.0);
    for (int k = 0; k < n; ++k) {
      std::vector<int> e(n, 0);
      e[k] = 1;
      den.terms.push_back({0.25 * coef() / static_cast<double>(n), e});
    }
    f.denominators.push_back(std::move(den));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Complex Grassmannians: Z1 Z0^{-1}

namespace {

Family complex_ratio(int p, int q, Variant v, const std::string& label) {
  require_positive(p, "p");
  require_positive(q, "q");
  Family fam;
  fam.label = label;
  fam.chart = Chart({Algebra::Complex, p, q, v});
  fam.map = VectorMap::generic(fam.chart.dim(), p * q, [p, q](const auto& x) {
    using T = ScalarOf<decltype(x)>;
    const ComplexView<T> z = complex_matrix<T>(x, p + q, p);
    return flatten_rows<T>(right_divide<T>(z.z.bottomRows(q), z.z.topRows(p)));
  });
  fam.invariance = Invariance::GeneralLinear;
  fam.regular = [p, q](const Eigen::VectorXcd& x) {
    return det_well_posed(complex_matrix<cplx>(x, p + q, p).z.topRows(p));
  };
  fam.margin = [p, q](const Eigen::VectorXcd& x) {
    return denominator_margin(complex_matrix<cplx>(x, p + q, p).z.topRows(p));
  };
  return fam;
}

}  // namespace

Family complex_noncompact(int p, int q) { return complex_ratio(p, q, Variant::Noncompact, "complex-noncompact"); }

Family complex_compact(int p, int q) { return complex_ratio(p, q, Variant::Compact, "complex-compact"); }

// ---------------------------------------------------------------------------
// Real Grassmannians

namespace {

// (head; W) + M (head_dual; conj W)
Family real_linear(int p, int r, const Eigen::MatrixXcd& m, Variant v, const std::string& label) {
  Family fam;
  fam.label = label;
  fam.chart = real_chart(p, p + 2 * r, v);
  fam.map = VectorMap::generic(fam.chart.dim(), (p + r) * p, [chart = fam.chart, m](const auto& x) {
    using T = ScalarOf<decltype(x)>;
    const RealSplit<T> s = real_split<T>(x, chart);
    const MatX<T> lhs = vstack<T>(s.head, s.w);
    const MatX<T> rhs = vstack<T>(s.head_dual, s.wbar);
    return flatten_rows<T>(MatX<T>(lhs + to_scalar<T>(m) * rhs));
  });
  return fam;
}

// S (W + M conj W) head^{-1}; with M = 0 and S = I this is W head^{-1}.
Family real_ratio(int p, int r, const Eigen::MatrixXcd& s, const Eigen::MatrixXcd& m, Variant v,
                  const std::string& label) {
  Family fam;
  fam.label = label;
  fam.chart = real_chart(p, p + 2 * r, v);
  fam.map = VectorMap::generic(fam.chart.dim(), static_cast<int>(s.rows()) * p,
                               [chart = fam.chart, s, m](const auto& x) {
                                 using T = ScalarOf<decltype(x)>;
                                 const RealSplit<T> sp = real_split<T>(x, chart);
                                 const MatX<T> num = to_scalar<T>(s) * (sp.w + to_scalar<T>(m) * sp.wbar);
                                 return flatten_rows<T>(right_divide<T>(num, sp.head));
                               });
  fam.invariance = Invariance::GeneralLinear;
  fam.regular = head_regular(fam.chart);
  fam.margin = head_margin(fam.chart);
  return fam;
}

Family s_method(int p, int r, const SkewParam& m, Variant v, const std::string& label) {
  check_real_split(p, r);
  if (r < 2) throw ShapeError("independent of the last row requires r >= 2");
  if (m.kind() != SkewParam::Kind::Complex || m.size() != r)
    throw ShapeError("S-method parameter must be an r x r complex skew-symmetric matrix");
  Family full = real_ratio(p, r, s_matrix(m.matrix()), m.matrix(), v, label + "-lift");
  return induce_without_last_row(std::move(full), label);
}

}  // namespace

Family real_linear_m(int p, int r, const SkewParam& mhat) {
  check_real_split(p, r);
  if (mhat.kind() != SkewParam::Kind::Indefinite || mhat.p() != p || mhat.size() != p + r)
    throw ShapeError("M-method parameter must lie in so(p,r)^C");
  return real_linear(p, r, mhat.matrix(), Variant::Noncompact, "real-m-method");
}

Family real_w_over_a(int p, int r) {
  check_real_split(p, r);
  return real_ratio(p, r, Eigen::MatrixXcd::Identity(r, r), Eigen::MatrixXcd::Zero(r, r), Variant::Noncompact,
                    "real-w-over-a");
}

Family real_s_method(int p, int r, const SkewParam& m) { return s_method(p, r, m, Variant::Noncompact, "real-s-method"); }

Family real_compact_linear_m(int p, int r, const SkewParam& mhat) {
  check_real_split(p, r);
  if (mhat.kind() != SkewParam::Kind::Complex || mhat.size() != p + r)
    throw ShapeError("compact M-method parameter must lie in so(p+r, C)");
  return real_linear(p, r, mhat.matrix(), Variant::Compact, "real-compact-m-method");
}

Family real_compact_w_over_z(int p, int r) {
  check_real_split(p, r);
  return real_ratio(p, r, Eigen::MatrixXcd::Identity(r, r), Eigen::MatrixXcd::Zero(r, r), Variant::Compact,
                    "real-compact-w-over-z");
}

Family real_compact_s_method(int p, int r, const SkewParam& m) {
  return s_method(p, r, m, Variant::Compact, "real-compact-s-method");
}

// ---------------------------------------------------------------------------
// Quaternionic Grassmannians

namespace {

template <class T>
struct QuatParts {
  MatX<T> z, w, x, y, u, v, zb, wb, xb, yb;
};

template <class T>
QuatParts<T> quat_parts(const VecX<T>& coords, int p, int r) {
  const QuatView<T> q = quat_matrix<T>(coords, 2 * p + r, p);
  return {q.a.topRows(p),         q.b.topRows(p),       q.a.middleRows(p, p), q.b.middleRows(p, p),
          q.a.bottomRows(r),      q.b.bottomRows(r),    q.abar.topRows(p),    q.bbar.topRows(p),
          q.abar.middleRows(p, p), q.bbar.middleRows(p, p)};
}

// [[Z-X, W-Y], [conj Y - conj W, conj Z - conj X]]
template <class T>
MatX<T> quat_denominator(const QuatParts<T>& q) {
  return blocks<T>(q.z - q.x, q.w - q.y, q.yb - q.wb, q.zb - q.xb);
}

// [[Z-X, Y-W], [conj Y + conj W, conj Z + conj X]]
template <class T>
MatX<T> quat_compact_denominator(const QuatParts<T>& q) {
  return blocks<T>(q.z - q.x, q.y - q.w, q.yb + q.wb, q.zb + q.xb);
}

void check_quat(int p, int r) {
  require_positive(p, "p");
  if (r < 1) throw ShapeError("quaternionic constructions require q = p + r with r >= 1 (p = q excluded)");
}

}  // namespace

Family quat_noncompact(int p, int r) {
  check_quat(p, r);
  Family fam;
  fam.label = "quat-noncompact";
  fam.chart = Chart({Algebra::Quaternion, p, p + r, Variant::Noncompact});
  fam.map = VectorMap::generic(fam.chart.dim(), 2 * r * p, [p, r](const auto& x) {
    using T = ScalarOf<decltype(x)>;
    const QuatParts<T> q = quat_parts<T>(x, p, r);
    return flatten_rows<T>(right_divide<T>(hstack<T>(q.u, q.v), quat_denominator<T>(q)));
  });
  fam.invariance = Invariance::GeneralLinear;
  fam.regular = [p, r](const Eigen::VectorXcd& x) {
    return det_well_posed(quat_denominator<cplx>(quat_parts<cplx>(x, p, r)));
  };
  fam.margin = [p, r](const Eigen::VectorXcd& x) {
    return denominator_margin(quat_denominator<cplx>(quat_parts<cplx>(x, p, r)));
  };
  return fam;
}

Family quat_compact(int p, int r) {
  check_quat(p, r);
  Family fam;
  fam.label = "quat-compact";
  fam.chart = Chart({Algebra::Quaternion, p, p + r, Variant::Compact});
  fam.map = VectorMap::generic(fam.chart.dim(), 2 * r * p, [p, r](const auto& x) {
    using T = ScalarOf<decltype(x)>;
    const QuatParts<T> q = quat_parts<T>(x, p, r);
    const MatX<T> num = hstack<T>(q.u, MatX<T>(-q.v));
    return flatten_rows<T>(right_divide<T>(num, quat_compact_denominator<T>(q)));
  });
  fam.invariance = Invariance::GeneralLinear;
  fam.regular = [p, r](const Eigen::VectorXcd& x) {
    return det_well_posed(quat_compact_denominator<cplx>(quat_parts<cplx>(x, p, r)));
  };
  fam.margin = [p, r](const Eigen::VectorXcd& x) {
    return denominator_margin(quat_compact_denominator<cplx>(quat_parts<cplx>(x, p, r)));
  };
  return fam;
}

// ---------------------------------------------------------------------------
// Composition and duality

Family compose_holomorphic(const Family& fam, const RationalMap& f) {
  if (f.inputs != fam.size()) throw ShapeError("compose_holomorphic: map arity does not match family size");
  Family out;
  out.label = fam.label + "+composed";
  out.chart = fam.chart;
  out.map = VectorMap::generic(fam.chart.dim(), f.outputs(),
                               [inner = fam.map, f](const auto& x) { return f(inner(x)); });
  out.invariance = fam.invariance;
  out.regular = [reg = fam.regular, inner = fam.map, f](const Eigen::VectorXcd& x) {
    return reg(x) && f.regular_at(inner(x));
  };
  out.margin = [m = fam.margin, inner = fam.map, f](const Eigen::VectorXcd& x) {
    return std::min(m(x), f.margin_at(inner(x)));
  };
  out.dropped = fam.dropped;
  if (fam.lift) out.lift = std::make_shared<const Family>(compose_holomorphic(*fam.lift, f));
  return out;
}

CoordinateSubstitution real_dual_substitution(const Chart& chart) {
  const ModelSpace& s = chart.space();
  CoordinateSubstitution sub;
  for (int k = 0; k < chart.dim(); ++k) {
    sub.source.push_back(k);
    sub.factor.push_back(k < s.p * s.p ? cplx(1.0) : kI);
  }
  return sub;
}

CoordinateSubstitution quat_dual_substitution(const Chart& chart) {
  const ModelSpace& s = chart.space();
  CoordinateSubstitution sub;
  sub.source.resize(chart.dim());
  sub.factor.resize(chart.dim());
  for (int row = 0; row < s.rows(); ++row) {
    for (int col = 0; col < s.p; ++col) {
      const int k = chart.index(row, col);
      if (row < s.p) {
        // (Re z, Im z, Re w, Im w) -> (Re z, Im z, -Re w, -Im w)
        const std::array<int, 4> src{0, 1, 2, 3};
        const std::array<cplx, 4> fac{1.0, 1.0, -1.0, -1.0};
        for (int c = 0; c < 4; ++c) {
          sub.source[k + c] = k + src[c];
          sub.factor[k + c] = fac[c];
        }
      } else {
        // (Re z, Im z, Re w, Im w) -> (i Im z, -i Re z, -i Im w, i Re w)
        const std::array<int, 4> src{1, 0, 3, 2};
        const std::array<cplx, 4> fac{kI, -kI, -kI, kI};
        for (int c = 0; c < 4; ++c) {
          sub.source[k + c] = k + src[c];
          sub.factor[k + c] = fac[c];
        }
      }
    }
  }
  return sub;
}

namespace {

Family dualize_with(const Family& fam, CoordinateSubstitution (*make)(const Chart&)) {
  const ModelSpace& s = fam.chart.space();
  const CoordinateSubstitution sub = make(fam.chart);
  Family out;
  out.label = "dual-" + fam.label;
  out.chart = Chart(ModelSpace{s.algebra, s.p, s.q, Variant::Compact});
  out.map = pre_compose(fam.map, sub);
  out.invariance = fam.invariance;
  out.regular = [reg = fam.regular, sub](const Eigen::VectorXcd& x) { return reg(sub.apply(x)); };
  out.margin = [m = fam.margin, sub](const Eigen::VectorXcd& x) { return m(sub.apply(x)); };
  out.dropped = fam.dropped;
  if (fam.lift) out.lift = std::make_shared<const Family>(dualize_with(*fam.lift, make));
  return out;
}

}  // namespace

Family dualize_real(const Family& fam) {
  const ModelSpace& s = fam.chart.space();
  if (s.algebra != Algebra::Real || s.variant != Variant::Noncompact)
    throw ShapeError("dualize_real: expected a family on a noncompact real chart");
  return dualize_with(fam, &real_dual_substitution);
}

Family dualize_quat(const Family& fam) {
  const ModelSpace& s = fam.chart.space();
  if (s.algebra != Algebra::Quaternion || s.variant != Variant::Noncompact)
    throw ShapeError("dualize_quat: expected a family on a noncompact quaternionic chart");
  return dualize_with(fam, &quat_dual_substitution);
}

// ---------------------------------------------------------------------------
// Negative controls

Family control_tau() {
  Family fam;
  fam.label = "control-tau";
  fam.chart = Chart({Algebra::Complex, 1, 1, Variant::Noncompact});
  fam.map = VectorMap::generic(fam.chart.dim(), 1, [](const auto& x) {
    using T = ScalarOf<decltype(x)>;
    const ComplexView<T> z = complex_matrix<T>(x, 2, 1);
    VecX<T> out(1);
    out[0] = z.z(0, 0) * z.zbar(0, 0);
    return out;
  });
  fam.invariance = Invariance::None;
  return fam;
}

Family control_kappa() {
  Family fam;
  fam.label = "control-kappa";
  fam.chart = Chart({Algebra::Complex, 1, 1, Variant::Noncompact});
  fam.map = VectorMap::generic(fam.chart.dim(), 1, [](const auto& x) {
    using T = ScalarOf<decltype(x)>;
    const ComplexView<T> z = complex_matrix<T>(x, 2, 1);
    VecX<T> out(1);
    out[0] = z.z(0, 0) + z.zbar(0, 0);
    return out;
  });
  fam.invariance = Invariance::None;
  return fam;
}

Family control_wrong_sign(int p, int r) {
  check_real_split(p, r);
  Family fam;
  fam.label = "control-wrong-sign";
  fam.chart = real_chart(p, p + 2 * r, Variant::Noncompact);
  fam.map = VectorMap::generic(fam.chart.dim(), 2 * r * p, [chart = fam.chart](const auto& x) {
    using T = ScalarOf<decltype(x)>;
    const RealSplit<T> s = real_split<T>(x, chart);
    const MatX<T> ainv = generic_inverse<T>(s.head);
    return flatten_rows<T>(vstack<T>(s.w * ainv, s.wbar * ainv));
  });
  fam.invariance = Invariance::GeneralLinear;
  fam.regular = head_regular(fam.chart);
  fam.margin = head_margin(fam.chart);
  return fam;
}

}  // namespace morpho
