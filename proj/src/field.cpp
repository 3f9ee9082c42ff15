#include "morpho/field.hpp"

namespace morpho {

VectorMap VectorMap::select(int i) const {
  if (i < 0 || i >= outputs_) throw ShapeError("VectorMap::select: index out of range");
  const VectorMap self = *this;
  return VectorMap::generic(inputs_, 1, [self, i](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    VecX<T> out(1);
    out[0] = self(x)[i];
    return out;
  });
}

VectorMap VectorMap::concat(const std::vector<VectorMap>& parts) {
  if (parts.empty()) throw ShapeError("VectorMap::concat: no parts");
  int outputs = 0;
  for (const auto& m : parts) {
    if (m.inputs() != parts.front().inputs()) throw ShapeError("VectorMap::concat: input mismatch");
    outputs += m.outputs();
  }
  return VectorMap::generic(parts.front().inputs(), outputs, [parts, outputs](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::Scalar;
    VecX<T> out(outputs);
    Eigen::Index k = 0;
    for (const auto& m : parts) {
      const VecX<T> y = m(x);
      out.segment(k, y.size()) = y;
      k += y.size();
    }
    return out;
  });
}

ScalarField linear_combination(cplx a, const ScalarField& f, cplx b, const ScalarField& g) {
  if (f.inputs() != g.inputs()) throw ShapeError("linear_combination: input mismatch");
  Predicate dom = [df = f.domain, dg = g.domain](const Eigen::VectorXcd& x) { return df(x) && dg(x); };
  return ScalarField::generic(
      f.inputs(), [f, g, a, b](const auto& x) { return a * f(x) + b * g(x); }, dom);
}

VectorMap pre_compose(const VectorMap& map, const CoordinateSubstitution& sub) {
  if (sub.size() != map.inputs()) throw ShapeError("pre_compose: substitution size mismatch");
  return VectorMap::generic(sub.inputs(), map.outputs(),
                            [map, sub](const auto& x) { return map(sub.apply(x)); });
}

}  // namespace morpho
