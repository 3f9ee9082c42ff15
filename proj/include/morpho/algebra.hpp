#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "morpho/scalar.hpp"

namespace morpho {

/// Quaternion z + w j with z, w complex. Multiplication follows from
/// j z = conj(z) j and j^2 = -1.
struct Quaternion {
  cplx z{0.0};
  cplx w{0.0};

  Quaternion conj() const { return {std::conj(z), -w}; }
  double norm2() const { return std::norm(z) + std::norm(w); }

  /// z + w j  ->  [[z, w], [-conj(w), conj(z)]]
  Eigen::Matrix2cd rep() const {
    Eigen::Matrix2cd m;
    m << z, w, -std::conj(w), std::conj(z);
    return m;
  }

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.z * b.z - a.w * std::conj(b.w), a.z * b.w + a.w * std::conj(b.z)};
  }
  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) { return {a.z + b.z, a.w + b.w}; }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) { return {a.z - b.z, a.w - b.w}; }
  friend bool operator==(const Quaternion& a, const Quaternion& b) { return a.z == b.z && a.w == b.w; }
};

inline Quaternion quat_mul(const Quaternion& a, const Quaternion& b) { return a * b; }

enum class Algebra { Real, Complex, Quaternion };

/// Real dimension d of the division algebra: 1, 2 or 4.
int real_dim(Algebra alg);
std::string to_string(Algebra alg);

/// Matrix over R, C or H stored as A + B j with complex blocks A, B.
/// For R the blocks are real-valued and B = 0; for C, B = 0.
class DivisionMatrix {
 public:
  DivisionMatrix() = default;
  DivisionMatrix(Algebra alg, Eigen::MatrixXcd a);
  DivisionMatrix(Algebra alg, Eigen::MatrixXcd a, Eigen::MatrixXcd b);

  static DivisionMatrix zero(Algebra alg, Eigen::Index rows, Eigen::Index cols);
  static DivisionMatrix identity(Algebra alg, Eigen::Index n);
  /// Pulls back a 2m x 2n complex representation by reading its top blocks.
  static DivisionMatrix from_rep(const Eigen::MatrixXcd& rep);

  Algebra algebra() const { return alg_; }
  Eigen::Index rows() const { return a_.rows(); }
  Eigen::Index cols() const { return a_.cols(); }
  const Eigen::MatrixXcd& a() const { return a_; }
  const Eigen::MatrixXcd& b() const { return b_; }

  Quaternion entry(Eigen::Index i, Eigen::Index j) const { return {a_(i, j), b_(i, j)}; }
  void set_entry(Eigen::Index i, Eigen::Index j, const Quaternion& q);

  DivisionMatrix top_rows(Eigen::Index n) const;
  DivisionMatrix bottom_rows(Eigen::Index n) const;
  DivisionMatrix middle_rows(Eigen::Index start, Eigen::Index n) const;

  DivisionMatrix adjoint() const;
  /// Complex representation; for R and C this is the matrix itself.
  Eigen::MatrixXcd rep() const;
  /// Inverse through the representation.
  DivisionMatrix inverse() const;

  double max_abs_diff(const DivisionMatrix& o) const;

  friend DivisionMatrix operator*(const DivisionMatrix& x, const DivisionMatrix& y);
  friend DivisionMatrix operator+(const DivisionMatrix& x, const DivisionMatrix& y);
  friend DivisionMatrix operator-(const DivisionMatrix& x, const DivisionMatrix& y);
  friend DivisionMatrix operator*(double s, const DivisionMatrix& x);

 private:
  Algebra alg_ = Algebra::Real;
  Eigen::MatrixXcd a_;
  Eigen::MatrixXcd b_;
};

/// Representation A + Bj -> [[A, B], [-conj(B), conj(A)]] of an H-matrix.
Eigen::MatrixXcd mat_rep(const DivisionMatrix& m);

enum class Variant { Noncompact, Compact };

std::string to_string(Variant v);

/// D^{(p+q) x p} with either the semi-Euclidean (noncompact) or Euclidean
/// (compact) flat metric.
struct ModelSpace {
  Algebra algebra = Algebra::Real;
  int p = 1;
  int q = 1;
  Variant variant = Variant::Noncompact;

  int rows() const { return p + q; }
  /// Number of real coordinates d (p+q) p.
  int dim() const;
  /// Metric sign per real coordinate, row-major over entries, d per entry.
  Eigen::VectorXd signature() const;
  void check(const DivisionMatrix& x) const;
};

/// Real coordinates of x, row-major, d per entry: x | (re, im) | (re z, im z, re w, im w).
Eigen::VectorXd pack(const DivisionMatrix& x);
DivisionMatrix unpack(const Eigen::VectorXd& coords, const ModelSpace& space);

/// Re trace(X^* I_pq Y).
double semi_inner(const DivisionMatrix& x, const DivisionMatrix& y, const ModelSpace& space);
/// Re trace(X^* Y).
double eucl_inner(const DivisionMatrix& x, const DivisionMatrix& y);
/// -X0^*X0 + X1^*X1 (noncompact) or X0^*X0 + X1^*X1 (compact).
DivisionMatrix gram(const DivisionMatrix& x, const ModelSpace& space);
/// Membership of U_pq (gram negative definite with margin) or U*_pq (gram
/// invertible with margin).
bool in_model(const DivisionMatrix& x, const ModelSpace& space, double slack = 1e-6);

using Rng = std::mt19937_64;

DivisionMatrix gaussian(Algebra alg, Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Point on Sigma_pq (gram = -I) or Sigma*_pq (gram = I).
DivisionMatrix sample_sigma(const ModelSpace& space, Rng& rng);
/// Noncompact Sigma point with prescribed lower block B.
DivisionMatrix sigma_from_lower(Algebra alg, const DivisionMatrix& lower);

/// Element of GL_p(D), or of K_p(D) when `compact` is set.
struct GroupElement {
  DivisionMatrix g;
  bool compact = false;
};

DivisionMatrix right_act(const DivisionMatrix& x, const GroupElement& g);
/// I + 0.2 * Gaussian, resampled until cond(rep(g)) <= 100.
GroupElement sample_gl(int p, Algebra alg, Rng& rng);
/// Polar factor of a GL sample; g^* g = I.
GroupElement sample_k(int p, Algebra alg, Rng& rng);

/// Hermitian square root / inverse square root of a positive definite matrix.
Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd hermitian_inv_sqrt(const Eigen::MatrixXcd& m);
double condition_number(const Eigen::MatrixXcd& m);

}  // namespace morpho
