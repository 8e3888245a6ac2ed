#pragma once

#include <stdexcept>
#include <string>

namespace poisext {

enum class Field { euclidean, heisenberg };

inline const char* field_name(Field f) {
  return f == Field::euclidean ? "euclidean" : "heisenberg";
}

// Parameter bundle for the two degenerate-elliptic models.
//
//   euclidean:   ambient R^n, boundary R^{n-1}, operator
//                D_a = x_n^2 Lap + a x_n d/dx_n
//   heisenberg:  ambient H^{2n+1}, boundary H^{2n-1} x R^2 embedding,
//                operator L_a = |z_n|^2 L + a (x_n d/dx_n + y_n d/dy_n)
//
// Derived representation constants: mu = (a-2)/2 throughout; rho and rho'
// are the ambient/boundary half-sums; d is the step between consecutive
// boundary-value spectral modes.
struct ModelParams {
  Field field = Field::euclidean;
  int n = 3;
  double a = 0.0;

  ModelParams() = default;
  ModelParams(Field f, int n_, double a_) : field(f), n(n_), a(a_) {
    if (n < 1) throw std::domain_error("ModelParams: n must be >= 1");
  }

  int ambient_dim() const { return field == Field::euclidean ? n : 2 * n + 1; }
  int boundary_dim() const {
    return field == Field::euclidean ? n - 1 : 2 * n - 1;
  }
  // Homogeneous dimension of the ambient space (grading weight).
  int homogeneous_dim() const {
    return field == Field::euclidean ? n : 2 * n + 2;
  }

  double mu() const { return (a - 2.0) / 2.0; }
  double rho() const { return field == Field::euclidean ? n / 2.0 : n + 1.0; }
  double rho_prime() const {
    return field == Field::euclidean ? (n - 1) / 2.0 : n;
  }
  int d() const { return field == Field::euclidean ? 1 : 2; }
  // Spectral parameter of the k-th boundary mode; nu0() is the Dirichlet one.
  double nu0() const { return mu() + rho() - rho_prime(); }
  double mode_nu(int k) const { return nu0() + d() * k; }

  // Constant term of the Casimir acting through the induced representation:
  // dpi(C) = (principal part) + casimir_const(), so eigenvalues of the
  // principal part on the k-th mode are mode_nu(k)^2 - rho'^2 - const.
  double casimir_const() const {
    return (mu() + rho()) * (mu() - rho() + d());
  }

  // Dirichlet problem well-posedness range for the boundary-value theory.
  bool dirichlet_range() const {
    if (field == Field::euclidean) return 2.0 - n < a && a < 1.0;
    return -2.0 * n < a && a < 0.0;
  }
  // Essential self-adjointness range of the operator.
  bool selfadjoint_range() const {
    if (field == Field::euclidean) return 2.0 - n < a && a <= 2.0;
    return -2.0 * n < a && a <= 2.0;
  }

  std::string describe() const {
    return std::string(field_name(field)) + " n=" + std::to_string(n) +
           " a=" + std::to_string(a);
  }
};

}  // namespace poisext
