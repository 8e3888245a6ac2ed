#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "poisext/euclid_field.hpp"
#include "poisext/grid.hpp"

namespace poisext {

// Point of H^{2n+1}.  z stores (x_1, y_1, ..., x_n, y_n); t is the central
// coordinate.  Group law: (z,t)(z',t') = (z+z', t+t'+2 Im(z . conj z')).
struct HeisPoint {
  Eigen::VectorXd z;
  double t = 0.0;

  int pairs() const { return static_cast<int>(z.size()) / 2; }
};

HeisPoint heis_identity(int n);
HeisPoint heis_mul(const HeisPoint& p, const HeisPoint& q);
HeisPoint heis_inv(const HeisPoint& p);
// Parabolic dilation (z,t) -> (r z, r^2 t); Koranyi norm is 1-homogeneous
// under it.
HeisPoint heis_dilate(const HeisPoint& p, double r);
// (|z|^4 + t^2)^{1/4}
double koranyi_norm(const HeisPoint& p);

// Flat layout (x_1, y_1, ..., x_n, y_n, t) used by grid fields and
// evaluables.
Eigen::VectorXd heis_to_flat(const HeisPoint& p);
HeisPoint heis_from_flat(const Eigen::VectorXd& v);

// CR-Laplacian sum_j ((d_{x_j} + 2 y_j d_t)^2 + (d_{y_j} - 2 x_j d_t)^2),
// expanded into pure and mixed partials with coefficients at grid points:
//   sum_j (d_{x_j}^2 + d_{y_j}^2) + 4 sum_j (y_j d_{x_j} - x_j d_{y_j}) d_t
//   + 4 |z|^2 d_t^2.
// Grid axes are ordered (x_1, y_1, ..., x_n, y_n, t); second-order central
// stencils, zero on the outermost layer.
RealField apply_cr_laplacian(const RealField& u);

// L_a = |z_n|^2 L + a (x_n d_{x_n} + y_n d_{y_n}).
RealField apply_L_a(const RealField& u, double a);

// The same operators as point stencils on closed-form fields over the flat
// layout.
double cr_laplacian_at(const Evaluable& f, const Eigen::VectorXd& p,
                       double h);
double L_a_at(const Evaluable& f, const Eigen::VectorXd& p, double h,
              double a);

// z_n-radial reduction of L_a:
//   rho^2 (L' + (a+1) rho^{-1} d_rho + d_rho^2 + 4 rho^2 d_t^2)
// on a 2n-axis grid (x_1, y_1, ..., x_{n-1}, y_{n-1}, rho, t), where L' is
// the CR-Laplacian of the boundary group H^{2n-1} in (z', t).  The rho axis
// is read at half cells, rho_i = (i + 1/2) h, so the grid never touches the
// coefficient singularity at rho = 0.
RealField radial_reduced_apply(const RealField& u, double a);

// rho value of a reduced-grid index along the rho axis.
double reduced_rho(const GridGeometry& geo, int index);

}  // namespace poisext
