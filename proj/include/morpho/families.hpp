#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "morpho/algebra.hpp"
#include "morpho/chart.hpp"
#include "morpho/field.hpp"

namespace morpho {

enum class Invariance { None, GeneralLinear };

struct Family;

/// A family of complex functions on a chart: an orthogonal harmonic family
/// candidate. Components are the outputs of `map`.
struct Family {
  std::string label;
  Chart chart;
  VectorMap map;
  Invariance invariance = Invariance::None;
  /// Denominator conditions; defined on complex coordinates so that they can
  /// be transported through duality substitutions.
  Predicate regular = always();
  /// How far the point sits from the poles (see denominator_margin); the
  /// samplers keep away from small values. 1 for polynomial families.
  std::function<double(const Eigen::VectorXcd&)> margin = [](const Eigen::VectorXcd&) { return 1.0; };
  /// Map on one more row, with the coordinates it must not depend on. Present
  /// for families induced from a larger space by row independence.
  std::shared_ptr<const Family> lift;
  std::vector<int> dropped;

  int size() const { return map.outputs(); }
  ScalarField component(int i) const;
  /// Model-space membership with margin `slack`, plus `regular`.
  bool accepts(const Eigen::VectorXd& x, double slack) const;
  /// accepts() and margin at least `min_margin`.
  bool accepts(const Eigen::VectorXd& x, double slack, double min_margin) const;
};

/// Coordinates of x * g.
Eigen::VectorXd act(const Chart& chart, const Eigen::VectorXd& x, const GroupElement& g);

/// Complexified skew parameter: so(p,r)^C, i.e. M^T I_pr + I_pr M = 0, or
/// so(n, C), i.e. M^T = -M.
class SkewParam {
 public:
  enum class Kind { Indefinite, Complex };

  static SkewParam indefinite(int p, int r, Eigen::MatrixXcd m);
  static SkewParam complex(Eigen::MatrixXcd m);
  static SkewParam random_indefinite(int p, int r, Rng& rng);
  static SkewParam random_complex(int n, Rng& rng);
  static SkewParam zero_indefinite(int p, int r) { return indefinite(p, r, Eigen::MatrixXcd::Zero(p + r, p + r)); }
  static SkewParam zero_complex(int n) { return complex(Eigen::MatrixXcd::Zero(n, n)); }

  Kind kind() const { return kind_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  int p() const { return p_; }
  int size() const { return static_cast<int>(m_.rows()); }
  /// Max-norm of the defining relation.
  double residual() const;

 private:
  SkewParam(Kind kind, int p, Eigen::MatrixXcd m) : kind_(kind), p_(p), m_(std::move(m)) {}

  Kind kind_;
  int p_ = 0;
  Eigen::MatrixXcd m_;
};

/// Multivariate polynomial with complex coefficients.
struct Polynomial {
  struct Term {
    cplx coef;
    std::vector<int> exponents;
  };
  std::vector<Term> terms;

  int degree() const;

  template <class T>
  T operator()(const VecX<T>& y) const {
    T sum(0.0);
    for (const auto& t : terms) {
      T m(t.coef);
      for (std::size_t k = 0; k < t.exponents.size(); ++k)
        for (int e = 0; e < t.exponents[k]; ++e) m = m * y[static_cast<Eigen::Index>(k)];
      sum = sum + m;
    }
    return sum;
  }
};

/// F : C^n -> C^m, each output a ratio of polynomials.
struct RationalMap {
  int inputs = 0;
  std::vector<Polynomial> numerators;
  std::vector<Polynomial> denominators;

  int outputs() const { return static_cast<int>(numerators.size()); }

  template <class T>
  VecX<T> operator()(const VecX<T>& y) const {
    VecX<T> out(outputs());
    for (int i = 0; i < outputs(); ++i) out[i] = numerators[i](y) / denominators[i](y);
    return out;
  }

  /// All denominators at least `slack` in modulus at y.
  bool regular_at(const Eigen::VectorXcd& y, double slack = 1e-6) const;
  /// min |denominator| / max(1, |denominator|) at y.
  double margin_at(const Eigen::VectorXcd& y) const;

  static RationalMap identity(int n);
  static RationalMap polynomial(int n, std::vector<Polynomial> outputs);
  /// Random map with numerators of degree <= `degree` and denominators
  /// 2 + (small terms of degree <= 1).
  static RationalMap random(int n, int m, int degree, Rng& rng);
};

Family complex_noncompact(int p, int q);
Family complex_compact(int p, int q);
Family real_linear_m(int p, int r, const SkewParam& mhat);
Family real_w_over_a(int p, int r);
Family real_s_method(int p, int r, const SkewParam& m);
Family real_compact_linear_m(int p, int r, const SkewParam& mhat);
Family real_compact_w_over_z(int p, int r);
Family real_compact_s_method(int p, int r, const SkewParam& m);
Family quat_noncompact(int p, int r);
Family quat_compact(int p, int r);

/// psi = F(phi_1, ..., phi_n).
Family compose_holomorphic(const Family& fam, const RationalMap& f);

/// (X; Y) -> phi(X; i Y) on the compact chart.
Family dualize_real(const Family& fam);
/// Quaternionic analogue: on the complex representation, rows
/// (Z,W; X,Y; U,V; -conj W, conj Z; ...) are evaluated at
/// (Z,-W; X,-Y; U,-V; conj W, conj Z; -conj Y, -conj X; -conj V, -conj U).
Family dualize_quat(const Family& fam);

CoordinateSubstitution real_dual_substitution(const Chart& chart);
CoordinateSubstitution quat_dual_substitution(const Chart& chart);

/// Deliberately non-harmonic families used as negative controls.
Family control_tau();                      // {z zbar}
Family control_kappa();                    // {z + zbar}
Family control_wrong_sign(int p, int r);  // {W A^-1, conj(W) A^-1}

}  // namespace morpho
