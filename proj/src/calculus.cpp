#include "morpho/calculus.hpp"

#include <algorithm>
#include <array>

namespace morpho {

namespace {

JetVector seed(const Eigen::VectorXcd& x, const Eigen::VectorXcd& dir) {
  JetVector j(x.size());
  for (Eigen::Index b = 0; b < x.size(); ++b) j[b] = Jet2::seed(x[b], dir[b]);
  return j;
}

JetVector seed_axis(const Eigen::VectorXd& x, int a) {
  JetVector j(x.size());
  for (Eigen::Index b = 0; b < x.size(); ++b) j[b] = Jet2::seed(x[b], b == a ? 1.0 : 0.0);
  return j;
}

void require_domain(const ScalarField& f, const Eigen::VectorXcd& x) {
  if (!f.domain(x)) throw DomainError("point outside the field's domain");
}

void require_chart(const ScalarField& f, const Chart& chart) {
  if (f.inputs() != chart.dim()) throw ShapeError("field arity does not match the chart dimension");
}

// d_u d_v f by polarization: (D^2_{u+v} - D^2_{u-v}) / 4.
cplx mixed(const ScalarField& f, const Eigen::VectorXcd& x, const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  const cplx plus = directional(f, x, u + v).d2;
  const cplx minus = directional(f, x, u - v).d2;
  return 0.25 * (plus - minus);
}

}  // namespace

Partials partials2(const ScalarField& f, const Eigen::VectorXd& x, int a) {
  if (a < 0 || a >= x.size()) throw ShapeError("partials2: coordinate index out of range");
  require_domain(f, x.cast<cplx>());
  const Jet2 r = f(seed_axis(x, a));
  return {r.value(), r.d1(), r.d2()};
}

Partials directional(const ScalarField& f, const Eigen::VectorXcd& x, const Eigen::VectorXcd& dir) {
  require_domain(f, x);
  const Jet2 r = f(seed(x, dir));
  return {r.value(), r.d1(), r.d2()};
}

cplx tau(const ScalarField& f, const Eigen::VectorXd& x, const Chart& chart) {
  require_chart(f, chart);
  require_domain(f, x.cast<cplx>());
  const auto& sig = chart.signature();
  cplx sum = 0.0;
  for (int a = 0; a < chart.dim(); ++a) sum += sig[a] * f(seed_axis(x, a)).d2();
  return sum;
}

cplx kappa(const ScalarField& f, const ScalarField& g, const Eigen::VectorXd& x, const Chart& chart) {
  require_chart(f, chart);
  require_chart(g, chart);
  require_domain(f, x.cast<cplx>());
  require_domain(g, x.cast<cplx>());
  const auto& sig = chart.signature();
  cplx sum = 0.0;
  for (int a = 0; a < chart.dim(); ++a) {
    const JetVector s = seed_axis(x, a);
    sum += sig[a] * (f(s).d1() * g(s).d1());
  }
  return sum;
}

FdPartials fd_partials(const ScalarField& f, const Eigen::VectorXd& x, int a, double h) {
  if (a < 0 || a >= x.size()) throw ShapeError("fd_partials: coordinate index out of range");
  std::array<cplx, 5> v{};
  for (int k = -2; k <= 2; ++k) {
    Eigen::VectorXd y = x;
    y[a] += k * h;
    require_domain(f, y.cast<cplx>());
    v[k + 2] = f(y);
  }
  const cplx d1 = (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
  const cplx d2 = (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
  return {d1, d2};
}

cplx tau_wirtinger(const ScalarField& f, const Eigen::VectorXd& x, const Chart& chart) {
  require_chart(f, chart);
  const Eigen::VectorXcd xc = x.cast<cplx>();
  cplx sum = 0.0;
  for (const auto& t : chart.wirtinger_terms()) sum += t.tau_coef * mixed(f, xc, t.u, t.v);
  return sum;
}

cplx kappa_wirtinger(const ScalarField& f, const ScalarField& g, const Eigen::VectorXd& x, const Chart& chart) {
  require_chart(f, chart);
  require_chart(g, chart);
  const Eigen::VectorXcd xc = x.cast<cplx>();
  cplx sum = 0.0;
  for (const auto& t : chart.wirtinger_terms()) {
    const cplx fu = directional(f, xc, t.u).d1;
    const cplx fv = directional(f, xc, t.v).d1;
    const cplx gu = directional(g, xc, t.u).d1;
    const cplx gv = directional(g, xc, t.v).d1;
    sum += t.kappa_coef * (fu * gv + fv * gu);
  }
  return sum;
}

double wirtinger_check(const ScalarField& f, const Eigen::VectorXd& x, const Chart& chart) {
  return std::abs(tau(f, x, chart) - tau_wirtinger(f, x, chart));
}

double wirtinger_kappa_check(const ScalarField& f, const ScalarField& g, const Eigen::VectorXd& x,
                             const Chart& chart) {
  return std::abs(kappa(f, g, x, chart) - kappa_wirtinger(f, g, x, chart));
}

DerivativeTable jet_table(const VectorMap& map, const Eigen::VectorXd& x) {
  const auto n = x.size();
  DerivativeTable t{map(x), Eigen::MatrixXcd(n, map.outputs()), Eigen::MatrixXcd(n, map.outputs())};
  for (Eigen::Index a = 0; a < n; ++a) {
    const JetVector r = map(seed_axis(x, static_cast<int>(a)));
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      t.d1(a, i) = r[i].d1();
      t.d2(a, i) = r[i].d2();
    }
  }
  return t;
}

DerivativeTable fd_table(const VectorMap& map, const Eigen::VectorXd& x, double h) {
  const auto n = x.size();
  DerivativeTable t{map(x), Eigen::MatrixXcd(n, map.outputs()), Eigen::MatrixXcd(n, map.outputs())};
  for (Eigen::Index a = 0; a < n; ++a) {
    std::array<Eigen::VectorXcd, 5> v;
    for (int k = -2; k <= 2; ++k) {
      Eigen::VectorXd y = x;
      y[a] += k * h;
      v[k + 2] = map(y);
    }
    t.d1.row(a) = ((v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h)).transpose();
    t.d2.row(a) = ((-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h)).transpose();
  }
  return t;
}

Eigen::VectorXcd tau_all(const DerivativeTable& t, const Eigen::VectorXd& signature) {
  return t.d2.transpose() * signature.cast<cplx>();
}

Eigen::MatrixXcd kappa_matrix(const DerivativeTable& t, const Eigen::VectorXd& signature) {
  const auto m = t.d1.cols();
  Eigen::MatrixXcd k(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      cplx s = 0.0;
      for (Eigen::Index a = 0; a < t.d1.rows(); ++a) s += signature[a] * (t.d1(a, i) * t.d1(a, j));
      k(i, j) = s;
      k(j, i) = s;
    }
  }
  return k;
}

}  // namespace morpho
