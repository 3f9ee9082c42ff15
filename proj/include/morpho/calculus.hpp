#pragma once

#include <Eigen/Dense>

#include "morpho/chart.hpp"
#include "morpho/field.hpp"

namespace morpho {

/// f(x + t e) = value + d1 t + (d2 / 2) t^2 + O(t^3)
struct Partials {
  cplx value;
  cplx d1;
  cplx d2;
};

/// Exact first and second partials along coordinate a, by Jet2 evaluation.
Partials partials2(const ScalarField& f, const Eigen::VectorXd& x, int a);

/// Same along an arbitrary complex direction from a complex base point.
Partials directional(const ScalarField& f, const Eigen::VectorXcd& x, const Eigen::VectorXcd& dir);

/// Flat tension field sum_a eps_a d^2 f / dx_a^2 with the chart signature.
cplx tau(const ScalarField& f, const Eigen::VectorXd& x, const Chart& chart);

/// Complex-bilinear conformality operator sum_a eps_a (d_a f)(d_a g).
cplx kappa(const ScalarField& f, const ScalarField& g, const Eigen::VectorXd& x, const Chart& chart);

struct FdPartials {
  cplx d1;
  cplx d2;
};

/// Fourth-order central differences with step h. Independent oracle for
/// partials2; throws DomainError if the five-point stencil leaves the domain.
FdPartials fd_partials(const ScalarField& f, const Eigen::VectorXd& x, int a, double h);

/// tau and kappa assembled from the chart's Wirtinger-type sums; mixed
/// second derivatives come from polarization of complex directional jets.
cplx tau_wirtinger(const ScalarField& f, const Eigen::VectorXd& x, const Chart& chart);
cplx kappa_wirtinger(const ScalarField& f, const ScalarField& g, const Eigen::VectorXd& x, const Chart& chart);

/// |tau(f) - tau_wirtinger(f)|
double wirtinger_check(const ScalarField& f, const Eigen::VectorXd& x, const Chart& chart);
/// |kappa(f, g) - kappa_wirtinger(f, g)|
double wirtinger_kappa_check(const ScalarField& f, const ScalarField& g, const Eigen::VectorXd& x,
                             const Chart& chart);

/// First and second partials of every output along every coordinate.
/// Row a holds direction a, column i holds output i.
struct DerivativeTable {
  Eigen::VectorXcd value;
  Eigen::MatrixXcd d1;
  Eigen::MatrixXcd d2;
};

DerivativeTable jet_table(const VectorMap& map, const Eigen::VectorXd& x);
DerivativeTable fd_table(const VectorMap& map, const Eigen::VectorXd& x, double h);

/// tau of every output from a derivative table.
Eigen::VectorXcd tau_all(const DerivativeTable& t, const Eigen::VectorXd& signature);
/// Full symmetric kappa matrix of the outputs.
Eigen::MatrixXcd kappa_matrix(const DerivativeTable& t, const Eigen::VectorXd& signature);

}  // namespace morpho
