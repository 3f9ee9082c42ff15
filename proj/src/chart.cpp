#include "morpho/chart.hpp"

namespace morpho {

Chart::Chart(ModelSpace space) : space_(space), signature_(space.signature()) {
  if (space_.p < 1 || space_.q < 1) throw ShapeError("Chart: p and q must be positive");
}

Eigen::VectorXd Chart::pack(const DivisionMatrix& x) const {
  space_.check(x);
  return morpho::pack(x);
}

DivisionMatrix Chart::unpack(const Eigen::VectorXd& coords) const { return morpho::unpack(coords, space_); }

int Chart::x2_rows() const { return (space_.q - space_.p + 1) / 2; }

int Chart::x3_rows() const { return (space_.q - space_.p) / 2; }

int Chart::index(int row, int col, int component) const {
  return real_dim(space_.algebra) * (row * space_.p + col) + component;
}

namespace {

Eigen::VectorXcd unit(int dim, int i) {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
  e[i] = 1.0;
  return e;
}

// d/dz and d/dzbar for z = x_re + i x_im.
WirtingerTerm complex_pair(int dim, int re, int im, double sign) {
  WirtingerTerm t;
  t.tau_coef = 4.0 * sign;
  t.kappa_coef = 2.0 * sign;
  t.u = 0.5 * (unit(dim, re) - kI * unit(dim, im));
  t.v = 0.5 * (unit(dim, re) + kI * unit(dim, im));
  return t;
}

WirtingerTerm plain(int dim, int i, double sign) {
  WirtingerTerm t;
  t.tau_coef = sign;
  t.kappa_coef = 0.5 * sign;
  t.u = unit(dim, i);
  t.v = unit(dim, i);
  return t;
}

}  // namespace

std::vector<WirtingerTerm> Chart::wirtinger_terms() const {
  const int n = dim();
  const int p = space_.p;
  std::vector<WirtingerTerm> terms;
  const auto sign_of_row = [&](int row) {
    return space_.variant == Variant::Noncompact && row < p ? -1.0 : 1.0;
  };

  switch (space_.algebra) {
    case Algebra::Complex:
      for (int i = 0; i < space_.rows(); ++i)
        for (int j = 0; j < p; ++j) terms.push_back(complex_pair(n, index(i, j, 0), index(i, j, 1), sign_of_row(i)));
      return terms;
    case Algebra::Quaternion:
      for (int i = 0; i < space_.rows(); ++i) {
        for (int j = 0; j < p; ++j) {
          terms.push_back(complex_pair(n, index(i, j, 0), index(i, j, 1), sign_of_row(i)));
          terms.push_back(complex_pair(n, index(i, j, 2), index(i, j, 3), sign_of_row(i)));
        }
      }
      return terms;
    case Algebra::Real:
      break;
  }

  if (space_.q < p) {
    for (int i = 0; i < space_.rows(); ++i)
      for (int j = 0; j < p; ++j) terms.push_back(plain(n, index(i, j), sign_of_row(i)));
    return terms;
  }

  for (int k = 0; k < p; ++k) {
    for (int l = 0; l < p; ++l) {
      const int i0 = index(k, l);
      const int i1 = index(p + k, l);
      if (compact()) {
        terms.push_back(complex_pair(n, i0, i1, 1.0));
      } else {
        // a = x0 - x1, b = x0 + x1: d/da = (d0 - d1)/2, d/db = (d0 + d1)/2
        WirtingerTerm t;
        t.tau_coef = -4.0;
        t.kappa_coef = -2.0;
        t.u = 0.5 * (unit(n, i0) - unit(n, i1));
        t.v = 0.5 * (unit(n, i0) + unit(n, i1));
        terms.push_back(t);
      }
    }
  }
  const int r2 = x2_rows();
  const int r3 = x3_rows();
  for (int k = 0; k < r2; ++k) {
    for (int l = 0; l < p; ++l) {
      const int re = index(2 * p + k, l);
      if (k < r3)
        terms.push_back(complex_pair(n, re, index(2 * p + r2 + k, l), 1.0));
      else
        terms.push_back(plain(n, re, 1.0));
    }
  }
  return terms;
}

}  // namespace morpho
