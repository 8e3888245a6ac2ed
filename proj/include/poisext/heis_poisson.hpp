#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "poisext/euclid_field.hpp"
#include "poisext/euclid_poisson.hpp"
#include "poisext/grid.hpp"
#include "poisext/heis_core.hpp"
#include "poisext/model.hpp"
#include "poisext/quadrature.hpp"
#include "poisext/rational.hpp"

namespace poisext {

// Kernel of P_a on H^{2n+1} x H^{2n-1}:
//   c_{n,a} |z_n|^{-a} / |p^{-1} (z',0,t')|^{2n-a}
// with the Koranyi norm of the group quotient.  q is a boundary point in
// the flat layout (x_1, y_1, ..., x_{n-1}, y_{n-1}, t'); the boundary
// embeds with a zero n-th pair.  Finite for z_n != 0.
double heis_poisson_kernel(const HeisPoint& p, const Eigen::VectorXd& q,
                           const ModelParams& mp);

// Quadrature form of P_a f at one point / at several points.  Writing
// p = q0 (0, z_n, 0) with q0 = (z', 0, t) and |z_n| = rho, the substitution
// q = q0 delta_rho(v, sigma) reduces the boundary integral to
//   c_{n,a} int f(q0 delta_rho(v, sigma)) ((1+|v|^2)^2+sigma^2)^{-(2n-a)/4}
// over (v, sigma), which is independent of the phase of z_n; the output is
// z_n-radial by construction.  The generic tensor quadrature (half-line x
// circle x line) is implemented for n = 2.
double heis_poisson_transform_at(const Evaluable& f, const HeisPoint& p,
                                 const ModelParams& mp,
                                 const QuadOptions& opt = {});
std::vector<double> heis_poisson_transform(
    const Evaluable& f, const std::vector<HeisPoint>& points,
    const ModelParams& mp, const QuadOptions& opt = {});

// Closed-form pair: the U(n-1)-invariant boundary function
//   f(z',t') = ((1+|z'|^2)^2+t'^2)^{-(a+2n)/4}
// and its Poisson transform
//   P_a f = pf * 2F1((a+2n)/4, (a+2n)/4; n; w) ((1+|z|^2)^2+t^2)^{-(a+2n)/4},
//   w = 1 - 4|z_n|^2/((1+|z|^2)^2+t^2) in [0,1],
// where pf collects 2^{(a+2n)/2} pi^{n-1/2} Gamma(n-1/2)/Gamma(2n-1) c_{n,a}.
// At z_n = 0 the product collapses to f itself.
double kinv_boundary_heis(const Eigen::VectorXd& q, const ModelParams& mp);
double kinv_solution_heis(const HeisPoint& p, const ModelParams& mp);

// Higher Poisson transform with the unnormalized kernel
//   |z_n|^{-a-2k} / |p^-1 (z',0,t')|^{2n-a-4k};
// the image solves L_a u = 2k(2k+a) u.  The reduction above gives rho^{2k}
// times the k = 0 integral at the shifted parameter a + 4k, so the
// quadrature is shared and the admissible range is the shifted Dirichlet
// range -2n-4k < a < -4k (wider than the Sobolev mapping range, which is
// empty already for k = 1, n = 2).  Multiply by the calibrated
// higher_poisson_constant to normalize; at k = 0 that constant is c_{n,a}.
double higher_poisson_heis_at(const Evaluable& f, int k, const HeisPoint& p,
                              const ModelParams& mp,
                              const QuadOptions& opt = {});
std::vector<double> higher_poisson_heis(const Evaluable& f, int k,
                                        const std::vector<HeisPoint>& points,
                                        const ModelParams& mp,
                                        const QuadOptions& opt = {});

// The closed-form pair for the higher transform: boundary data of the
// invariant family at parameter a + 4k, and its unnormalized image
//   rho^{2k} kinv_solution(p; a+4k) / c_{n,a+4k}.
double higher_kinv_boundary_heis(const Eigen::VectorXd& q, int k,
                                 const ModelParams& mp);
double higher_kinv_solution_heis(const HeisPoint& p, int k,
                                 const ModelParams& mp);

// Empirical normalization of the higher transform: the constant c making
// restrict_D_ak(c * u) = f on the closed-form pair, averaged over probe
// nodes of an internal reduced grid; spread is the relative deviation
// across probes (a grid-resolution diagnostic, not a tolerance).
struct HigherConstant {
  double value = 0.0;
  double spread = 0.0;
};
HigherConstant higher_poisson_constant(int k, const ModelParams& mp);

// Composition trees over the generators of the boundary operator family:
// L is the CR-Laplacian of H^{2n+1} acting on z_n-radial functions, Lp the
// CR-Laplacian of the subgroup H^{2n-1}, T the second derivative in the
// central variable.  A term is an exact rational coefficient times a word
// of generators; word[0] acts last.  Terms are kept sorted by word length,
// then lexicographically (L < Lp < T).
enum class JuhlGen { L, Lp, T };

struct JuhlTerm {
  Rational coeff;
  std::vector<JuhlGen> word;
};

struct JuhlOperator {
  Rational s;
  int k = 0;
  int n = 0;
  std::vector<JuhlTerm> terms;
};

// Build the k-th operator of the inductive family
//   D_{s,0} = 1,  D_{s,1} = [(2s+n-1) L - (2s+n) Lp] / (16 s^2 (2s+n)),
//   D_{s,k+1} = [((2s+n-2k-1) L - (2s+n) Lp) D_{s,k}
//                - k^2 (2s+n-2k-1) / (16 s^2 (2s+n-1) (2s+n))
//                  (L^2 + 16 (2s+n)^2 T) D_{s-1,k-1}]
//               / (16 (s-k)^2 (2s+n))
// in exact rational arithmetic, composing exactly as parenthesized.
// Throws std::domain_error when a denominator along the recursion
// vanishes.  The double overload snaps s to a nearby small-denominator
// rational (exact for dyadic inputs).
JuhlOperator juhl_build(const Rational& s, int k, int n);
JuhlOperator juhl_build(double s, int k, int n);

// Textual form for diffing against hand expansions:
//   (juhl :s <rat> :k <int> :n <int> (term <rat> <gen>*)*)
// where <rat> is num or num/den and <gen> is L, Lp or T.
std::string juhl_sexpr(const JuhlOperator& op);

// Apply the tree to a field on the reduced grid (x_1, y_1, ..., x_{n-1},
// y_{n-1}, rho, t) of heis_core::radial_reduced_apply, realizing each
// generator by second-order central stencils; the rho axis reads half
// cells and reflects evenly across rho = 0, so the bottom face stays
// valid.  After a word of length m the outermost m layers of the other
// faces are zero.
RealField juhl_apply(const JuhlOperator& op, const RealField& u);

// D_{a,k} u = (D_{-(a+2n)/4,k} u)|_{z_n = 0} on reduced-grid data: applies
// the tree and extrapolates the even rho-profile to rho = 0 through the
// first two half cells, (9 v(h/2) - v(3h/2))/8.  Returns boundary data on
// the grid with the rho axis dropped; the outermost k layers are zero.
RealField restrict_D_ak(const RealField& u, int k, const ModelParams& mp);

// Node coordinates of a reduced grid: GridGeometry::point with the rho
// axis (second to last) read at half cells, and sampling over them.
Eigen::VectorXd reduced_point(const GridGeometry& geo, std::int64_t flat);
RealField sample_reduced_field(const GridGeometry& geo, const Evaluable& f);

// Embed reduced coordinates (z', rho, t) as the Heisenberg point
// (z', (rho, 0), t); closed-form z_n-radial solutions are sampled through
// this map.
HeisPoint reduced_to_heis(const Eigen::VectorXd& red);

// Riemann L^p norm of a reduced-grid field against the ambient measure:
// the z_n polar reduction contributes the weight 2 pi rho per node.
// p = infinity gives the plain grid max.
double lp_norm_reduced(const RealField& u, double p);

// Radial Fourier coefficients of the k-th mode: T[l] is the l-th
// coefficient normalized to T[0] = 1,
//   T[l] = (k+n/2+a/4)_l / (k+n/2-a/4+1)_l.
struct RadialCoeffSeq {
  int k = 0;
  int n = 0;
  double a = 0.0;
  std::vector<double> values;  // T[0..M]
};

RadialCoeffSeq radial_coeffs(int k, int M, const ModelParams& mp);

// Maximum absolute residual of the three-term recursion
//   (l+1) (2(2k+2l+n+2)-a) T[l+1] - (2(2l+1)(2k+2l+n)+a) T[l]
//     + l (2(2k+2l+n-2)+a) T[l-1] = 0,   T[-1] := 0,
// over l < M, normalized by max_l |T[l]|.
double recursion_residual(const RadialCoeffSeq& seq);

// sum_l T[l] = (a-2n-4k)/(2a).  The terms only decay like l^{a/2-1}, so
// the sum is an explicit partial sum plus the exact tail resummation
//   sum_{l>=M} T[l] = T[M] (y+M-1)/(y-x-1),  x = k+n/2+a/4, y = k+n/2-a/4+1,
// from the shifted Pochhammer-quotient identity; y-x-1 = -a/2 > 0 on the
// whole admissible range, so no truncation failure path remains.
double partial_trace_factor(int k, int M, const ModelParams& mp);

// Per-mode ratio of solution-side to boundary-side Sobolev weight mass:
//   2 pi a^2 (1+n/2-a/4)_k S_k / ((4k+2n-a)^2 (n/2-a/4)_k),
// with S_k = sum_m (k+n/2+a/4)_m/(k+n/2-a/4+1)_m summed like the partial
// trace.  Constant in k, equal to pi a/(a-2n).
double isometry_weight_ratio(int k, int M, const ModelParams& mp);

}  // namespace poisext
