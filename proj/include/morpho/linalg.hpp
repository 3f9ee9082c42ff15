#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "morpho/scalar.hpp"

namespace morpho {

/// Pivots whose value part falls below this magnitude are treated as singular.
inline constexpr double kPivotFloor = 1e-10;

/// Gauss-Jordan inverse over a generic ring scalar (complex or Jet2).
/// Partial pivoting on |lead(a_ij)|, i.e. on the value at the base point.
template <class T>
MatX<T> generic_inverse(MatX<T> a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw ShapeError("generic_inverse: matrix is not square");
  MatX<T> inv = MatX<T>::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    double best = std::abs(lead(a(col, col)));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const double m = std::abs(lead(a(r, col)));
      if (m > best) {
        best = m;
        piv = r;
      }
    }
    if (best < kPivotFloor) throw DomainError("generic_inverse: singular pivot");
    if (piv != col) {
      a.row(col).swap(a.row(piv));
      inv.row(col).swap(inv.row(piv));
    }
    const T scale = T(1.0) / a(col, col);
    a.row(col) *= scale;
    inv.row(col) *= scale;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = a(r, col);
      a.row(r) -= f * a.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

/// B * A^{-1} without forming the inverse twice.
template <class T>
MatX<T> right_divide(const MatX<T>& b, const MatX<T>& a) {
  return b * generic_inverse<T>(a);
}

/// Determinant test used by the det-type domain predicates: accept when
/// |det M| >= rel * ||M||_F^n.
inline bool det_well_posed(const Eigen::MatrixXcd& m, double rel = 1e-6) {
  const double scale = m.norm();
  if (scale == 0.0) return false;
  const double det = std::abs(m.determinant());
  return det >= rel * std::pow(scale, static_cast<double>(m.rows()));
}

/// sigma_min / max(1, sigma_max): distance to the singular set, relative once
/// the block is larger than unit scale.
inline double denominator_margin(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 1.0;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues();
  return sv.minCoeff() / std::max(1.0, sv.maxCoeff());
}

}  // namespace morpho
