#include "morpho/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace morpho {

int real_dim(Algebra alg) {
  switch (alg) {
    case Algebra::Real:
      return 1;
    case Algebra::Complex:
      return 2;
    case Algebra::Quaternion:
      return 4;
  }
  return 1;
}

std::string to_string(Algebra alg) {
  switch (alg) {
    case Algebra::Real:
      return "R";
    case Algebra::Complex:
      return "C";
    case Algebra::Quaternion:
      return "H";
  }
  return "?";
}

std::string to_string(Variant v) { return v == Variant::Noncompact ? "noncompact" : "compact"; }

namespace {

// Keeps the storage inside the sub-algebra the tag promises.
void normalize(Algebra alg, Eigen::MatrixXcd& a, Eigen::MatrixXcd& b) {
  if (alg == Algebra::Real) a = a.real().cast<cplx>();
  if (alg != Algebra::Quaternion) b.setZero();
}

DivisionMatrix vstack(const DivisionMatrix& top, const DivisionMatrix& bottom) {
  Eigen::MatrixXcd a(top.rows() + bottom.rows(), top.cols());
  Eigen::MatrixXcd b(top.rows() + bottom.rows(), top.cols());
  a << top.a(), bottom.a();
  b << top.b(), bottom.b();
  return {top.algebra(), a, b};
}

void require_same(const DivisionMatrix& x, const DivisionMatrix& y, const char* what) {
  if (x.algebra() != y.algebra()) throw ShapeError(std::string(what) + ": algebra mismatch");
}

}  // namespace

DivisionMatrix::DivisionMatrix(Algebra alg, Eigen::MatrixXcd a)
    : DivisionMatrix(alg, a, Eigen::MatrixXcd::Zero(a.rows(), a.cols())) {}

DivisionMatrix::DivisionMatrix(Algebra alg, Eigen::MatrixXcd a, Eigen::MatrixXcd b)
    : alg_(alg), a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != b_.rows() || a_.cols() != b_.cols())
    throw ShapeError("DivisionMatrix: block shapes differ");
  normalize(alg_, a_, b_);
}

DivisionMatrix DivisionMatrix::zero(Algebra alg, Eigen::Index rows, Eigen::Index cols) {
  return {alg, Eigen::MatrixXcd::Zero(rows, cols)};
}

DivisionMatrix DivisionMatrix::identity(Algebra alg, Eigen::Index n) {
  return {alg, Eigen::MatrixXcd::Identity(n, n)};
}

DivisionMatrix DivisionMatrix::from_rep(const Eigen::MatrixXcd& rep) {
  if (rep.rows() % 2 != 0 || rep.cols() % 2 != 0)
    throw ShapeError("from_rep: representation must have even dimensions");
  const Eigen::Index m = rep.rows() / 2;
  const Eigen::Index n = rep.cols() / 2;
  return {Algebra::Quaternion, rep.topLeftCorner(m, n), rep.topRightCorner(m, n)};
}

void DivisionMatrix::set_entry(Eigen::Index i, Eigen::Index j, const Quaternion& q) {
  a_(i, j) = alg_ == Algebra::Real ? cplx(q.z.real()) : q.z;
  b_(i, j) = alg_ == Algebra::Quaternion ? q.w : cplx(0.0);
}

DivisionMatrix DivisionMatrix::top_rows(Eigen::Index n) const { return middle_rows(0, n); }

DivisionMatrix DivisionMatrix::bottom_rows(Eigen::Index n) const { return middle_rows(rows() - n, n); }

DivisionMatrix DivisionMatrix::middle_rows(Eigen::Index start, Eigen::Index n) const {
  return {alg_, a_.middleRows(start, n), b_.middleRows(start, n)};
}

DivisionMatrix DivisionMatrix::adjoint() const {
  // (A + Bj)^* = A^* - B^T j
  return {alg_, a_.adjoint(), -b_.transpose()};
}

Eigen::MatrixXcd DivisionMatrix::rep() const {
  if (alg_ != Algebra::Quaternion) return a_;
  return mat_rep(*this);
}

DivisionMatrix DivisionMatrix::inverse() const {
  if (rows() != cols()) throw ShapeError("inverse: matrix is not square");
  const Eigen::FullPivLU<Eigen::MatrixXcd> lu(rep());
  if (!lu.isInvertible()) throw DomainError("inverse: singular matrix");
  const Eigen::MatrixXcd inv = lu.inverse();
  if (alg_ == Algebra::Quaternion) return from_rep(inv);
  return {alg_, inv};
}

double DivisionMatrix::max_abs_diff(const DivisionMatrix& o) const {
  if (rows() != o.rows() || cols() != o.cols()) throw ShapeError("max_abs_diff: shape mismatch");
  if (rows() == 0 || cols() == 0) return 0.0;
  return std::max((a_ - o.a_).cwiseAbs().maxCoeff(), (b_ - o.b_).cwiseAbs().maxCoeff());
}

DivisionMatrix operator*(const DivisionMatrix& x, const DivisionMatrix& y) {
  require_same(x, y, "operator*");
  if (x.cols() != y.rows()) throw ShapeError("operator*: inner dimensions differ");
  // (A1 + B1 j)(A2 + B2 j) = (A1 A2 - B1 conj(B2)) + (A1 B2 + B1 conj(A2)) j
  Eigen::MatrixXcd a = x.a_ * y.a_ - x.b_ * y.b_.conjugate();
  Eigen::MatrixXcd b = x.a_ * y.b_ + x.b_ * y.a_.conjugate();
  return {x.alg_, a, b};
}

DivisionMatrix operator+(const DivisionMatrix& x, const DivisionMatrix& y) {
  require_same(x, y, "operator+");
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw ShapeError("operator+: shape mismatch");
  return {x.alg_, x.a_ + y.a_, x.b_ + y.b_};
}

DivisionMatrix operator-(const DivisionMatrix& x, const DivisionMatrix& y) {
  require_same(x, y, "operator-");
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw ShapeError("operator-: shape mismatch");
  return {x.alg_, x.a_ - y.a_, x.b_ - y.b_};
}

DivisionMatrix operator*(double s, const DivisionMatrix& x) { return {x.alg_, s * x.a_, s * x.b_}; }

Eigen::MatrixXcd mat_rep(const DivisionMatrix& m) {
  const Eigen::Index r = m.rows();
  const Eigen::Index c = m.cols();
  Eigen::MatrixXcd out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = m.a();
  out.topRightCorner(r, c) = m.b();
  out.bottomLeftCorner(r, c) = -m.b().conjugate();
  out.bottomRightCorner(r, c) = m.a().conjugate();
  return out;
}

int ModelSpace::dim() const { return real_dim(algebra) * rows() * p; }

Eigen::VectorXd ModelSpace::signature() const {
  const int d = real_dim(algebra);
  Eigen::VectorXd sig = Eigen::VectorXd::Ones(dim());
  if (variant == Variant::Noncompact) sig.head(d * p * p).setConstant(-1.0);
  return sig;
}

void ModelSpace::check(const DivisionMatrix& x) const {
  if (x.algebra() != algebra || x.rows() != rows() || x.cols() != p)
    throw ShapeError("point does not belong to the model space's matrix shape");
}

Eigen::VectorXd pack(const DivisionMatrix& x) {
  const int d = real_dim(x.algebra());
  Eigen::VectorXd out(d * x.rows() * x.cols());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const cplx z = x.a()(i, j);
      const cplx w = x.b()(i, j);
      out[k++] = z.real();
      if (d >= 2) out[k++] = z.imag();
      if (d == 4) {
        out[k++] = w.real();
        out[k++] = w.imag();
      }
    }
  }
  return out;
}

DivisionMatrix unpack(const Eigen::VectorXd& coords, const ModelSpace& space) {
  if (coords.size() != space.dim()) throw ShapeError("unpack: coordinate count does not match space");
  const int d = real_dim(space.algebra);
  Eigen::MatrixXcd a(space.rows(), space.p);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(space.rows(), space.p);
  Eigen::Index k = 0;
  for (int i = 0; i < space.rows(); ++i) {
    for (int j = 0; j < space.p; ++j) {
      const double re = coords[k++];
      const double im = d >= 2 ? coords[k++] : 0.0;
      a(i, j) = {re, im};
      if (d == 4) {
        const double wre = coords[k++];
        const double wim = coords[k++];
        b(i, j) = {wre, wim};
      }
    }
  }
  return {space.algebra, a, b};
}

double semi_inner(const DivisionMatrix& x, const DivisionMatrix& y, const ModelSpace& space) {
  space.check(x);
  space.check(y);
  const DivisionMatrix iy = vstack(-1.0 * y.top_rows(space.p), y.bottom_rows(space.q));
  return (x.adjoint() * iy).a().trace().real();
}

double eucl_inner(const DivisionMatrix& x, const DivisionMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw ShapeError("eucl_inner: shape mismatch");
  return (x.adjoint() * y).a().trace().real();
}

DivisionMatrix gram(const DivisionMatrix& x, const ModelSpace& space) {
  space.check(x);
  const DivisionMatrix x0 = x.top_rows(space.p);
  const DivisionMatrix x1 = x.bottom_rows(space.q);
  const DivisionMatrix g0 = x0.adjoint() * x0;
  const DivisionMatrix g1 = x1.adjoint() * x1;
  return space.variant == Variant::Noncompact ? g1 - g0 : g0 + g1;
}

bool in_model(const DivisionMatrix& x, const ModelSpace& space, double slack) {
  const Eigen::MatrixXcd g = gram(x, space).rep();
  if (space.variant == Variant::Noncompact) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff() <= -slack;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
  return svd.singularValues().minCoeff() >= slack;
}

DivisionMatrix gaussian(Algebra alg, Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  DivisionMatrix out = DivisionMatrix::zero(alg, rows, cols);
  // Fixed draw order keeps samples reproducible across algebras.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      Quaternion q;
      const double zr = n01(rng);
      const double zi = alg == Algebra::Real ? 0.0 : n01(rng);
      q.z = {zr, zi};
      if (alg == Algebra::Quaternion) {
        const double wr = n01(rng);
        const double wi = n01(rng);
        q.w = {wr, wi};
      }
      out.set_entry(i, j, q);
    }
  }
  return out;
}

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.eigenvalues().minCoeff() <= 0.0) throw DomainError("hermitian_sqrt: matrix is not positive definite");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd hermitian_inv_sqrt(const Eigen::MatrixXcd& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw DomainError("hermitian_inv_sqrt: matrix is not positive definite");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().adjoint();
}

double condition_number(const Eigen::MatrixXcd& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s.minCoeff();
  return smin == 0.0 ? std::numeric_limits<double>::infinity() : s.maxCoeff() / smin;
}

namespace {

DivisionMatrix pull_back(Algebra alg, const Eigen::MatrixXcd& rep) {
  if (alg == Algebra::Quaternion) return DivisionMatrix::from_rep(rep);
  return {alg, rep};
}

}  // namespace

DivisionMatrix sigma_from_lower(Algebra alg, const DivisionMatrix& lower) {
  const auto p = lower.cols();
  const DivisionMatrix s = DivisionMatrix::identity(alg, p) + lower.adjoint() * lower;
  const DivisionMatrix x0 = pull_back(alg, hermitian_sqrt(s.rep()));
  return vstack(x0, lower);
}

DivisionMatrix sample_sigma(const ModelSpace& space, Rng& rng) {
  if (space.variant == Variant::Noncompact)
    return sigma_from_lower(space.algebra, gaussian(space.algebra, space.q, space.p, rng));
  for (;;) {
    const DivisionMatrix x = gaussian(space.algebra, space.rows(), space.p, rng);
    const Eigen::MatrixXcd n = (x.adjoint() * x).rep();
    if (condition_number(n) > 1e8) continue;  // near rank deficient draw
    return x * pull_back(space.algebra, hermitian_inv_sqrt(n));
  }
}

DivisionMatrix right_act(const DivisionMatrix& x, const GroupElement& g) { return x * g.g; }

GroupElement sample_gl(int p, Algebra alg, Rng& rng) {
  for (;;) {
    DivisionMatrix g = DivisionMatrix::identity(alg, p) + 0.2 * gaussian(alg, p, p, rng);
    if (condition_number(g.rep()) <= 100.0) return {std::move(g), false};
  }
}

GroupElement sample_k(int p, Algebra alg, Rng& rng) {
  const GroupElement g = sample_gl(p, alg, rng);
  const Eigen::MatrixXcd n = (g.g.adjoint() * g.g).rep();
  return {g.g * pull_back(alg, hermitian_inv_sqrt(n)), true};
}

}  // namespace morpho
