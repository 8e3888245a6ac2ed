#pragma once

#include <vector>

#include "poisext/model.hpp"
#include "poisext/rational.hpp"

namespace poisext {

// Gamma function via the Lanczos approximation (g = 7, 9 terms) with the
// reflection formula for x < 1/2.  Relative error stays below ~1e-13 for
// |x| <= 50 away from the poles at nonpositive integers (which throw).
double gamma_fn(double x);

// log |Gamma(x)| for x > 0 (thin wrapper, kept for large-argument ratios).
double log_gamma(double x);

// Digamma, trigamma and tetragamma for x > 0 (recurrence into the
// asymptotic region).  Used by the Euler-Maclaurin tail corrections.
double digamma(double x);
double trigamma(double x);
double tetragamma(double x);

// Rising factorial (x)_m.  Direct product for m <= 64; gamma-function
// ratios beyond that (requires x > 0 in the ratio branch).
double pochhammer(double x, int m);

struct RatioSum {
  double value = 0.0;       // partial sum plus tail correction
  double tail = 0.0;        // tail correction that was added
  double tail_error = 0.0;  // bound on the tail-correction error
};

// Sum_{m>=0} (x)_m / (y)_m computed as an explicit partial sum over
// m < terms plus an Euler-Maclaurin tail.  The terms decay like
// m^{x-y}, so plain truncation converges far too slowly; the tail is
// integrated from the gamma-ratio form directly and never uses the
// closed form of the sum.  Requires x > 0 and y > x + 1.
RatioSum pochhammer_ratio_sum(double x, double y, int terms);

// Gauss hypergeometric function 2F1(alpha, beta; gamma; z) for real
// parameters and z <= 1.  Evaluation strategy:
//   - terminating series when alpha or beta is a nonpositive integer,
//   - direct series for |z| <= 1/2,
//   - Pfaff transformation to z/(z-1) for z < -1/2,
//   - connection formula in 1-z for 1/2 < z < 1, switching to the
//     logarithmic expansion when gamma-alpha-beta is an integer,
//   - Gauss summation at z = 1 (requires gamma-alpha-beta > 0).
double gauss_2f1(double alpha, double beta, double gamma, double z);

// d/dz 2F1(alpha, beta; gamma; z).
double gauss_2f1_derivative(double alpha, double beta, double gamma, double z);

// Two-variable Gegenbauer polynomial C_j^alpha(x, y): the classical
// polynomial with y^m inflated to x^{(j-m)/2} y^m so that every monomial
// satisfies 2*deg_x + deg_y = j.  Specializing x = 1 recovers C_j^alpha(y).
struct GegenbauerPoly {
  int degree = 0;
  double alpha = 0.0;
  struct Term {
    int xpow;
    int ypow;
    double coeff;
  };
  std::vector<Term> terms;

  double evaluate(double x, double y) const;
};

struct GegenbauerPolyExact {
  int degree = 0;
  Rational alpha;
  struct Term {
    int xpow;
    int ypow;
    Rational coeff;
  };
  std::vector<Term> terms;

  Rational evaluate(const Rational& x, const Rational& y) const;
  GegenbauerPoly to_double() const;
};

GegenbauerPoly gegenbauer_two_var(int j, double alpha);
GegenbauerPolyExact gegenbauer_two_var_exact(int j, const Rational& alpha);

// Closed-form constants of the boundary value theory.  Fields that are
// undefined at the given (n, a) are set to NaN; the checked accessors
// below throw on inadmissible parameters instead.
struct ClosedFormConstants {
  int n = 0;
  double a = 0.0;
  double c_real = 0.0;    // Dirichlet kernel normalization, half-space
  double c_heis = 0.0;    // Dirichlet kernel normalization, Heisenberg
  double iso_real = 0.0;  // Sobolev isometry constant, half-space
  double iso_heis = 0.0;  // Sobolev isometry constant, Heisenberg
  double lp_real = 0.0;   // L^p bound base 2 c^{1/(n-1)} (raise to 1/q)
  double lp_heis = 0.0;   // L^p bound base pi c^{1/n} (raise to 1/q)
};

ClosedFormConstants closed_form_constants(int n, double a);

double dirichlet_constant_real(int n, double a);
double dirichlet_constant_heis(int n, double a);
double isometry_constant_real(double a);
double isometry_constant_heis(int n, double a);
double lp_bound_base_real(int n, double a);
double lp_bound_base_heis(int n, double a);

// Eigenvalue of the k-th boundary value problem.  Preconditions:
// euclidean k < (1-a)/2, heisenberg 2k < -a/2.
double eigenvalue(Field field, int k, double a);

}  // namespace poisext
