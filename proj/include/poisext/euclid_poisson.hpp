#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "poisext/euclid_field.hpp"
#include "poisext/grid.hpp"
#include "poisext/model.hpp"
#include "poisext/quadrature.hpp"

namespace poisext {

// Thrown when the improper-integral quadrature cannot certify the requested
// tolerance; carries the bound it did achieve.
struct ToleranceError : std::runtime_error {
  ToleranceError(const std::string& what, double achieved_)
      : std::runtime_error(what), achieved(achieved_) {}
  double achieved;
};

// Kernel of P_a on R^n x R^{n-1}:
//   c_{n,a} |x_n|^{1-a} / (|x'-y|^2 + x_n^2)^{(n-a)/2}.
double poisson_kernel_real(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const ModelParams& mp);

// Quadrature form of P_a f at one point / at several points.  f is a
// closed-form evaluable on R^{n-1}; the integral is reduced to the unit
// profile by the substitution y = x' + x_n v.  Defined for a < 1, the full
// convergence domain of the kernel.
double poisson_transform_real_at(const Evaluable& f, const Eigen::VectorXd& x,
                                 const ModelParams& mp,
                                 const QuadOptions& opt = {});
std::vector<double> poisson_transform_real(
    const Evaluable& f, const std::vector<Eigen::VectorXd>& points,
    const ModelParams& mp, const QuadOptions& opt = {});

// Modified-Bessel K_nu for nu >= 0, w > 0 (cosh-integral evaluation).
double bessel_k(double nu, double w);

// Per-mode extension profile: the partial Fourier transform in x_n of the
// algebraic spectral profile.  phi_a(0) = 1 and
//   phi_a(w) = 2 (w/2)^m K_m(w) / Gamma(m),   m = (1-a)/2.
double poisson_profile(double a, double w);

// Spectral form of the solution on the dual grid of `geo` (whose leading
// axes must match the boundary grid): u^(xi', xi_n) =
// sqrt(2) Gamma((2-a)/2)/Gamma((1-a)/2) |xi'|^{-1} f^(xi')
// (1+(xi_n/|xi'|)^2)^{(a-2)/2}, with the xi' = 0 line set to zero.
SpectralField solution_spectrum_real(const RealField& f,
                                     const GridGeometry& geo, double a);

// Multiplier form of P_a f on the grid `geo`.  Uses the same spectral
// profile but inverts the x_n direction analytically per boundary mode
// (poisson_profile), so only the boundary axes are discretized; the
// boundary DC bin is carried as an exact constant [P_a 1 = 1].
RealField poisson_multiplier_real(const RealField& f, const GridGeometry& geo,
                                  double a);

// Closed-form pair: the rotation-invariant boundary function
// (1+|y|^2)^{-(a+n-2)/2} and its Poisson transform (a Gauss-hypergeometric
// expression in 1 - 4 x_n^2/(1+|x|^2)^2).  Requires 2-n <= a < 1.
double kinv_boundary_real(const Eigen::VectorXd& y, const ModelParams& mp);
double kinv_solution_real(const Eigen::VectorXd& x, const ModelParams& mp);

// Boundary operator D_{a,j}: the normalized two-variable Gegenbauer
// polynomial in (-Lap', d/dx_n) evaluated on the slice x_n = 0; the
// tangential Laplacian acts spectrally, the normal derivative by central
// differences across the slice.  Requires j < (1-a)/2.
RealField boundary_op_real(const RealField& u, int j, double a);

// Higher Poisson transform P_{a,j} (quadrature form); the image satisfies
// Delta_a u = j(j+a-1) u.  Requires 2-n < a < 1-2j.
double higher_poisson_real_at(const Evaluable& f, int j,
                              const Eigen::VectorXd& x, const ModelParams& mp,
                              const QuadOptions& opt = {});
std::vector<double> higher_poisson_real(
    const Evaluable& f, int j, const std::vector<Eigen::VectorXd>& points,
    const ModelParams& mp, const QuadOptions& opt = {});

// Continuous family P_{a,nu,eps} (quadrature form), complex-valued; the
// image satisfies Delta_a u = -(((1-a)/2)^2 + nu^2) u.  f should decay fast
// enough for absolute convergence (the kernel alone is borderline).
std::complex<double> continuous_family_real_at(const Evaluable& f, double nu,
                                               int eps,
                                               const Eigen::VectorXd& x,
                                               const ModelParams& mp,
                                               const QuadOptions& opt = {});
std::vector<std::complex<double>> continuous_family_real(
    const Evaluable& f, double nu, int eps,
    const std::vector<Eigen::VectorXd>& points, const ModelParams& mp,
    const QuadOptions& opt = {});

// Fundamental system of the boundary-profile ODE
//   (1+z^2) phi'' - (a-4) z phi' - (a-2) phi = 0:
// phi1 = (1+z^2)^{(a-2)/2} and phi2 = phi1 * int_0^z (1+s^2)^{-a/2} ds,
// the second factor evaluated through its hypergeometric form.
struct OdeSolution {
  enum class Branch { phi1, phi2 };
  Branch branch;
  double a;

  double value(double z) const;
  double derivative(double z) const;
  double second_derivative(double z) const;
};

OdeSolution ode_solution(OdeSolution::Branch branch, double a);

// D_{a,z} phi at z (zero for both branches up to evaluation error).
double ode_residual(const OdeSolution& sol, double z);

// Adaptive evaluation of int_R phi1; equals
// sqrt(pi) Gamma((1-a)/2) / Gamma((2-a)/2) for a < 1.
double phi1_integral(double a, const QuadOptions& opt = {});

}  // namespace poisext
