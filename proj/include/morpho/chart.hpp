#pragma once

#include <vector>

#include <Eigen/Dense>

#include "morpho/algebra.hpp"
#include "morpho/scalar.hpp"

namespace morpho {

/// One summand of a complexified coordinate expression of tau and kappa:
///   tau   += tau_coef   * d_u d_v f
///   kappa += kappa_coef * (d_u f d_v g + d_v f d_u g)
/// with u, v complex directions in the real coordinate space.
struct WirtingerTerm {
  double tau_coef = 0.0;
  double kappa_coef = 0.0;
  Eigen::VectorXcd u;
  Eigen::VectorXcd v;
};

/// Flat coordinates of a model space. Entries are flattened row-major with
/// d real coordinates per entry; the signature is index-aligned.
///
/// Real charts carry the complexified block split used by the real
/// constructions: rows X0 | X1 | X2 | X3 with X0, X1 of height p and the
/// remaining q - p rows split as X2 (ceil) and X3 (floor). Noncompact charts
/// pair them as A = X0 - X1, B = X0 + X1, W = X2 + i X3; compact charts as
/// Z = X0 + i X1, W = X2 + i X3.
class Chart {
 public:
  Chart() : Chart(ModelSpace{}) {}
  explicit Chart(ModelSpace space);

  const ModelSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  const Eigen::VectorXd& signature() const { return signature_; }
  bool compact() const { return space_.variant == Variant::Compact; }

  Eigen::VectorXd pack(const DivisionMatrix& x) const;
  DivisionMatrix unpack(const Eigen::VectorXd& coords) const;

  /// Rows of X2 and X3 in the real split (undefined for non-real charts).
  int x2_rows() const;
  int x3_rows() const;

  /// Complexified-coordinate expression of the flat operators.
  std::vector<WirtingerTerm> wirtinger_terms() const;

  /// Index of the real coordinate for entry (row, col), component c < d.
  int index(int row, int col, int component = 0) const;

 private:
  ModelSpace space_;
  Eigen::VectorXd signature_;
};

template <class T>
VecX<T> flatten_rows(const MatX<T>& m) {
  VecX<T> out(m.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[k++] = m(i, j);
  return out;
}

/// Real coordinates viewed as a rows x cols matrix.
template <class T>
MatX<T> real_matrix(const VecX<T>& x, int rows, int cols) {
  MatX<T> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = x[i * cols + j];
  return m;
}

/// Complex entries z = x + i y together with the formal conjugate x - i y.
/// The formal conjugate is the holomorphic extension of conj: it stays
/// correct when the coordinates themselves are complex.
template <class T>
struct ComplexView {
  MatX<T> z;
  MatX<T> zbar;
};

template <class T>
ComplexView<T> complex_matrix(const VecX<T>& x, int rows, int cols) {
  ComplexView<T> v{MatX<T>(rows, cols), MatX<T>(rows, cols)};
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const T& re = x[2 * (i * cols + j)];
      const T& im = x[2 * (i * cols + j) + 1];
      v.z(i, j) = re + kI * im;
      v.zbar(i, j) = re - kI * im;
    }
  }
  return v;
}

/// Quaternion entries a + b j with formal conjugates of a and b.
template <class T>
struct QuatView {
  MatX<T> a;
  MatX<T> b;
  MatX<T> abar;
  MatX<T> bbar;

  /// Formal complex representation [[A, B], [-conj B, conj A]] of rows [r0, r0+n).
  MatX<T> rep_rows(int r0, int n) const {
    const auto c = a.cols();
    MatX<T> out(2 * n, 2 * c);
    out.topLeftCorner(n, c) = a.middleRows(r0, n);
    out.topRightCorner(n, c) = b.middleRows(r0, n);
    out.bottomLeftCorner(n, c) = -bbar.middleRows(r0, n);
    out.bottomRightCorner(n, c) = abar.middleRows(r0, n);
    return out;
  }
};

template <class T>
QuatView<T> quat_matrix(const VecX<T>& x, int rows, int cols) {
  QuatView<T> v{MatX<T>(rows, cols), MatX<T>(rows, cols), MatX<T>(rows, cols), MatX<T>(rows, cols)};
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int k = 4 * (i * cols + j);
      v.a(i, j) = x[k] + kI * x[k + 1];
      v.abar(i, j) = x[k] - kI * x[k + 1];
      v.b(i, j) = x[k + 2] + kI * x[k + 3];
      v.bbar(i, j) = x[k + 2] - kI * x[k + 3];
    }
  }
  return v;
}

/// Complexified blocks of a real chart. `head` is A (noncompact) or Z
/// (compact); `head_dual` is B or conj Z respectively. W has x2_rows rows;
/// a missing X3 row counts as zero.
template <class T>
struct RealSplit {
  MatX<T> head;
  MatX<T> head_dual;
  MatX<T> w;
  MatX<T> wbar;
};

template <class T>
RealSplit<T> real_split(const VecX<T>& x, const Chart& chart) {
  const int p = chart.space().p;
  const MatX<T> m = real_matrix<T>(x, chart.space().rows(), p);
  const MatX<T> x0 = m.topRows(p);
  const MatX<T> x1 = m.middleRows(p, p);
  RealSplit<T> s;
  if (chart.compact()) {
    s.head = x0 + kI * x1;
    s.head_dual = x0 - kI * x1;
  } else {
    s.head = x0 - x1;
    s.head_dual = x0 + x1;
  }
  const int r2 = chart.x2_rows();
  const int r3 = chart.x3_rows();
  MatX<T> x3 = MatX<T>::Zero(r2, p);
  x3.topRows(r3) = m.middleRows(2 * p + r2, r3);
  s.w = m.middleRows(2 * p, r2) + kI * x3;
  s.wbar = m.middleRows(2 * p, r2) - kI * x3;
  return s;
}

}  // namespace morpho
