#pragma once
// Independent reference computations for the tests. Nothing here calls into
// the library's arithmetic: quaternion products go through the Hamilton
// table on four reals, matrix products through explicit index loops.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "morpho/algebra.hpp"
#include "morpho/field.hpp"

namespace oracle {

using morpho::cplx;
using H4 = std::array<double, 4>;  // 1, i, j, k

inline H4 to_h4(const morpho::Quaternion& q) { return {q.z.real(), q.z.imag(), q.w.real(), q.w.imag()}; }
inline morpho::Quaternion from_h4(const H4& h) { return {{h[0], h[1]}, {h[2], h[3]}}; }

inline H4 hamilton(const H4& a, const H4& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

inline H4 hconj(const H4& a) { return {a[0], -a[1], -a[2], -a[3]}; }

inline morpho::Quaternion random_quat(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {{n(rng), n(rng)}, {n(rng), n(rng)}};
}

/// (X^* Y)_{ij} = sum_k conj(x_ki) y_kj over entries, rows [r0, r0+n).
inline std::vector<H4> block_adj_product(const morpho::DivisionMatrix& x, const morpho::DivisionMatrix& y, int r0,
                                         int n) {
  const auto p = x.cols();
  std::vector<H4> out(p * p, H4{0, 0, 0, 0});
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int k = r0; k < r0 + n; ++k) {
        const H4 t = hamilton(hconj(to_h4(x.entry(k, i))), to_h4(y.entry(k, j)));
        for (int c = 0; c < 4; ++c) out[i * p + j][c] += t[c];
      }
  return out;
}

/// Sum of squared real coordinates, walking entries one by one.
inline double coord_square_sum(const morpho::DivisionMatrix& x) {
  double s = 0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) s += x.entry(i, j).norm2();
  return s;
}

/// Random polynomial of degree <= 3 in the real coordinates, unit-scale
/// complex coefficients, stored as monomial list.
struct Cubic {
  struct Mono {
    cplx c;
    std::vector<int> vars;
  };
  std::vector<Mono> monos;

  template <class T>
  T operator()(const morpho::VecX<T>& x) const {
    T sum(0.0);
    for (const auto& m : monos) {
      T t(m.c);
      for (int v : m.vars) t = t * x[v];
      sum = sum + t;
    }
    return sum;
  }

  morpho::ScalarField field(int n) const {
    const Cubic self = *this;
    return morpho::ScalarField::generic(n, [self](const auto& x) { return self(x); });
  }
};

inline Cubic random_cubic(int n, std::mt19937_64& rng, int terms = 8) {
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> var(0, n - 1), deg(0, 3);
  Cubic f;
  for (int t = 0; t < terms; ++t) {
    Cubic::Mono m{{g(rng) / std::sqrt(2.0), g(rng) / std::sqrt(2.0)}, {}};
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) m.vars.push_back(var(rng));
    f.monos.push_back(m);
  }
  return f;
}

/// Second derivative of a monomial list along x_a, by the power rule.
inline cplx cubic_d2(const Cubic& f, const Eigen::VectorXd& x, int a) {
  cplx sum = 0;
  for (const auto& m : f.monos) {
    int e = 0;
    cplx rest = m.c;
    for (int v : m.vars) {
      if (v == a)
        ++e;
      else
        rest *= x[v];
    }
    if (e >= 2) sum += rest * double(e * (e - 1)) * std::pow(x[a], e - 2);
  }
  return sum;
}

inline cplx cubic_d1(const Cubic& f, const Eigen::VectorXd& x, int a) {
  cplx sum = 0;
  for (const auto& m : f.monos) {
    int e = 0;
    cplx rest = m.c;
    for (int v : m.vars) {
      if (v == a)
        ++e;
      else
        rest *= x[v];
    }
    if (e >= 1) sum += rest * double(e) * std::pow(x[a], e - 1);
  }
  return sum;
}

}  // namespace oracle
