#pragma once

#include <functional>

#include <Eigen/Dense>

#include "poisext/grid.hpp"

namespace poisext {

// Scalar function on R^d evaluable at arbitrary points.
using Evaluable = std::function<double(const Eigen::VectorXd&)>;

// Degenerate-elliptic operator x_n^2 Lap + a x_n d/dx_n applied with
// second-order central differences; x_n is the last axis.  The one-cell
// margin is zeroed.
RealField apply_delta_a(const RealField& u, double a);

// Same stencil applied to an evaluable at a single point.
double delta_a_at(const Evaluable& f, const Eigen::VectorXd& x, double h,
                  double a);

// Gradient and Laplacian stencils on evaluables, shared by the residual
// checks.
double laplacian_at(const Evaluable& f, const Eigen::VectorXd& x, double h);
double partial_at(const Evaluable& f, const Eigen::VectorXd& x, int axis,
                  double h);

// Restriction to the hyperplane x_last = 0 (the distinguished boundary).
RealField trace_restrict(const RealField& u);

// Principal-series actions on the function model; mu_rho stands for the
// weight mu + rho of the representation.
Evaluable group_translate(Evaluable f, Eigen::VectorXd v);
Evaluable group_dilate(Evaluable f, double s, double mu_rho);
Evaluable group_invert(Evaluable f, double mu_rho);

}  // namespace poisext
