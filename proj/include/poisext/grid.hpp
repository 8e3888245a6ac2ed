#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace poisext {

using Complex = std::complex<double>;

// Uniform origin-centered Cartesian grid with odd point counts per axis, so
// that x = 0 is a node and the hyperplane x_last = 0 is resolved exactly.
// Axis 0 spans [-L, L]; other axes reuse the spacing with their own counts.
// Storage order is row major with the last axis fastest.
struct GridGeometry {
  std::vector<int> dims;
  double h = 0.0;

  GridGeometry() = default;
  GridGeometry(std::vector<int> dims_, double half_width);

  int dim() const { return static_cast<int>(dims.size()); }
  std::int64_t size() const;
  double half_width(int axis) const { return 0.5 * (dims[axis] - 1) * h; }
  double half_width() const { return half_width(0); }

  double coord(int axis, int index) const {
    return (index - (dims[axis] - 1) / 2) * h;
  }
  double freq_step(int axis) const {
    return 2.0 * 3.141592653589793238462643 / (dims[axis] * h);
  }
  double freq(int axis, int index) const {
    return (index - (dims[axis] - 1) / 2) * freq_step(axis);
  }

  std::int64_t stride(int axis) const;
  std::int64_t flatten(const std::vector<int>& idx) const;
  std::vector<int> unflatten(std::int64_t flat) const;
  // Coordinates of the node with the given flat index.
  Eigen::VectorXd point(std::int64_t flat) const;
  Eigen::VectorXd frequency(std::int64_t flat) const;

  bool operator==(const GridGeometry& o) const {
    return dims == o.dims && h == o.h;
  }
};

template <class Scalar>
struct GridField {
  GridGeometry geo;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> samples;

  GridField() = default;
  explicit GridField(GridGeometry g)
      : geo(std::move(g)),
        samples(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(geo.size())) {}

  Scalar& at(const std::vector<int>& idx) {
    return samples[geo.flatten(idx)];
  }
  Scalar at(const std::vector<int>& idx) const {
    return samples[geo.flatten(idx)];
  }

  // Fraction of the peak magnitude still present on the outermost layer;
  // large values mean the box truncates the field visibly.
  double boundary_decay_ratio() const;
};

using RealField = GridField<double>;
using ComplexField = GridField<Complex>;

// Sample an evaluable on a grid.
template <class F>
RealField sample_field(const GridGeometry& geo, F&& f) {
  RealField u(geo);
  for (std::int64_t i = 0; i < geo.size(); ++i)
    u.samples[i] = f(geo.point(i));
  return u;
}

// Spectral coefficients on the dual grid.  Frequencies are centered like the
// spatial nodes: xi(k) = (k - (N-1)/2) * 2*pi/(N*h).
struct SpectralField {
  GridGeometry geo;  // the spatial geometry it came from
  Eigen::VectorXcd coef;

  double freq_cell() const;  // dual volume element, prod of freq steps
};

// Symmetric-normalization discrete Fourier transform:
//   uhat(k) = (2pi)^{-d/2} h^d sum_j u(j) exp(-i xi_k . x_j)
// with the exact inverse
//   u(j) = (2pi)^{-d/2} prod(dxi) sum_k uhat(k) exp(+i xi_k . x_j).
// Round trip is an identity up to rounding; Parseval holds exactly:
//   sum |u|^2 h^d = sum |uhat|^2 prod(dxi).
SpectralField dft(const RealField& u);
SpectralField dft(const ComplexField& u);
ComplexField idft(const SpectralField& s);
RealField idft_real(const SpectralField& s);

// Squared homogeneous Sobolev norm of degree s:
//   sum_k |xi_k|^{2s} |uhat(k)|^2 * prod(dxi).
// The zero-frequency bin is skipped for s < 0 (the weight diverges there);
// at s = 0 it enters with weight 1 so the p = 2 Parseval identity is exact.
// Requires -d/2 < s < d/2.
double sobolev_norm_sq(const RealField& u, double s);
double sobolev_norm_sq(const SpectralField& su, double s);

// Riemann-sum L^p norm; p = infinity gives the grid max.  Requires p >= 1.
double lp_norm(const RealField& u, double p);
double lp_norm(const ComplexField& u, double p);

// CSV serialization: one header line, then index columns, coordinate
// columns and the value (re, im for complex fields), written losslessly.
void write_csv(const RealField& u, const std::string& path);
void write_csv(const ComplexField& u, const std::string& path);
RealField read_csv_real(const std::string& path);

// Little-endian binary dump with a 64-byte header:
//   bytes  0-7   magic "PXGRID01"
//   bytes  8-11  u32 scalar kind (0 real, 1 complex)
//   bytes 12-15  u32 number of axes (<= 6)
//   bytes 16-39  u32 dims[6], unused entries zero
//   bytes 40-47  f64 spacing h
//   bytes 48-55  f64 half width of axis 0
//   bytes 56-63  reserved, zero
// followed by the samples as f64 (interleaved re, im when complex).
void write_binary(const RealField& u, const std::string& path);
void write_binary(const ComplexField& u, const std::string& path);
RealField read_binary_real(const std::string& path);
ComplexField read_binary_complex(const std::string& path);

}  // namespace poisext
