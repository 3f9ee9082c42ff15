#pragma once

#include <functional>
#include <memory>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "morpho/scalar.hpp"

namespace morpho {

/// Domain test on (possibly complex-substituted) coordinates.
using Predicate = std::function<bool(const Eigen::VectorXcd&)>;

inline Predicate always() {
  return [](const Eigen::VectorXcd&) { return true; };
}

/// Vector-valued map of real coordinates, evaluable over complex scalars
/// (plain values and analytic continuation) and over Jet2 (derivatives).
/// Both evaluators are instantiations of the same generic expression.
class VectorMap {
 public:
  using ComplexFn = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;
  using JetFn = std::function<JetVector(const JetVector&)>;

  VectorMap() = default;
  VectorMap(int inputs, int outputs, ComplexFn c, JetFn j)
      : inputs_(inputs), outputs_(outputs), complex_(std::move(c)), jet_(std::move(j)) {}

  /// Wraps a generic callable `f(const VecX<T>&) -> VecX<T>`.
  template <class F>
  static VectorMap generic(int inputs, int outputs, F f) {
    return {inputs, outputs, [f](const Eigen::VectorXcd& x) -> Eigen::VectorXcd { return f(x); },
            [f](const JetVector& x) -> JetVector { return f(x); }};
  }

  int inputs() const { return inputs_; }
  int outputs() const { return outputs_; }

  Eigen::VectorXcd operator()(const Eigen::VectorXcd& x) const { return complex_(x); }
  Eigen::VectorXcd operator()(const Eigen::VectorXd& x) const { return complex_(x.cast<cplx>()); }
  JetVector operator()(const JetVector& x) const { return jet_(x); }

  /// Single output i as a one-component map.
  VectorMap select(int i) const;

  /// Concatenation of several maps over the same coordinates.
  static VectorMap concat(const std::vector<VectorMap>& parts);

 private:
  int inputs_ = 0;
  int outputs_ = 0;
  ComplexFn complex_;
  JetFn jet_;
};

/// Complex-valued function of real coordinates with a domain predicate.
struct ScalarField {
  VectorMap map;
  Predicate domain = always();

  /// Wraps a generic callable `f(const VecX<T>&) -> T`.
  template <class F>
  static ScalarField generic(int inputs, F f, Predicate domain = always()) {
    auto g = [f](const auto& x) {
      using T = typename std::decay_t<decltype(x)>::Scalar;
      VecX<T> out(1);
      out[0] = f(x);
      return out;
    };
    return {VectorMap::generic(inputs, 1, g), std::move(domain)};
  }

  int inputs() const { return map.inputs(); }
  cplx operator()(const Eigen::VectorXd& x) const { return map(x)[0]; }
  cplx operator()(const Eigen::VectorXcd& x) const { return map(x)[0]; }
  Jet2 operator()(const JetVector& x) const { return map(x)[0]; }
  bool contains(const Eigen::VectorXd& x) const { return domain(x.cast<cplx>()); }
};

/// Linear combination a f + b g of two fields (domain: intersection).
ScalarField linear_combination(cplx a, const ScalarField& f, cplx b, const ScalarField& g);

/// x'_k = factor_k * x_{source_k}: the complex-linear substitutions used by
/// the compact/non-compact duality.
struct CoordinateSubstitution {
  std::vector<int> source;
  std::vector<cplx> factor;
  /// Length of x; -1 means the same as the output length.
  int inputs_ = -1;

  int size() const { return static_cast<int>(source.size()); }
  int inputs() const { return inputs_ < 0 ? size() : inputs_; }

  template <class T>
  VecX<T> apply(const VecX<T>& x) const {
    if (x.size() != inputs()) throw ShapeError("CoordinateSubstitution: input length mismatch");
    VecX<T> out(size());
    for (int k = 0; k < size(); ++k) out[k] = factor[k] * x[source[k]];
    return out;
  }
};

VectorMap pre_compose(const VectorMap& map, const CoordinateSubstitution& sub);

}  // namespace morpho
