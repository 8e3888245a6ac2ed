#include "poisext/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace poisext {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
constexpr char kMagic[8] = {'P', 'X', 'G', 'R', 'I', 'D', '0', '1'};
}  // namespace

GridGeometry::GridGeometry(std::vector<int> dims_, double half_width)
    : dims(std::move(dims_)) {
  if (dims.empty() || dims.size() > 6)
    throw std::domain_error("GridGeometry: need 1..6 axes");
  for (int nPoints : dims) {
    if (nPoints < 3 || nPoints % 2 == 0)
      throw std::domain_error("GridGeometry: odd point counts >= 3 required");
  }
  if (!(half_width > 0.0))
    throw std::domain_error("GridGeometry: half width must be positive");
  h = 2.0 * half_width / (dims[0] - 1);
}

std::int64_t GridGeometry::size() const {
  std::int64_t s = 1;
  for (int nPoints : dims) s *= nPoints;
  return s;
}

std::int64_t GridGeometry::stride(int axis) const {
  std::int64_t s = 1;
  for (int a = axis + 1; a < dim(); ++a) s *= dims[a];
  return s;
}

std::int64_t GridGeometry::flatten(const std::vector<int>& idx) const {
  std::int64_t flat = 0;
  for (int a = 0; a < dim(); ++a) flat = flat * dims[a] + idx[a];
  return flat;
}

std::vector<int> GridGeometry::unflatten(std::int64_t flat) const {
  std::vector<int> idx(dim());
  for (int a = dim() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % dims[a]);
    flat /= dims[a];
  }
  return idx;
}

Eigen::VectorXd GridGeometry::point(std::int64_t flat) const {
  Eigen::VectorXd x(dim());
  for (int a = dim() - 1; a >= 0; --a) {
    x[a] = coord(a, static_cast<int>(flat % dims[a]));
    flat /= dims[a];
  }
  return x;
}

Eigen::VectorXd GridGeometry::frequency(std::int64_t flat) const {
  Eigen::VectorXd xi(dim());
  for (int a = dim() - 1; a >= 0; --a) {
    xi[a] = freq(a, static_cast<int>(flat % dims[a]));
    flat /= dims[a];
  }
  return xi;
}

template <class Scalar>
double GridField<Scalar>::boundary_decay_ratio() const {
  double peak = 0.0, edge = 0.0;
  for (std::int64_t i = 0; i < geo.size(); ++i) {
    double mag = std::abs(samples[i]);
    peak = std::max(peak, mag);
    std::int64_t rest = i;
    bool outer = false;
    for (int a = geo.dim() - 1; a >= 0; --a) {
      int ia = static_cast<int>(rest % geo.dims[a]);
      rest /= geo.dims[a];
      if (ia == 0 || ia == geo.dims[a] - 1) outer = true;
    }
    if (outer) edge = std::max(edge, mag);
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

template double GridField<double>::boundary_decay_ratio() const;
template double GridField<Complex>::boundary_decay_ratio() const;

double SpectralField::freq_cell() const {
  double cell = 1.0;
  for (int a = 0; a < geo.dim(); ++a) cell *= geo.freq_step(a);
  return cell;
}

namespace {

// One axis of the separable transform: contracts the N x N phase matrix F
// against the tensor viewed as (outer, N, inner).
void apply_axis(Eigen::VectorXcd& data, const GridGeometry& geo, int axis,
                const Eigen::MatrixXcd& F) {
  const int nPoints = geo.dims[axis];
  const std::int64_t inner = geo.stride(axis);
  const std::int64_t outer = geo.size() / (inner * nPoints);
  Eigen::MatrixXcd slab(nPoints, inner);
  for (std::int64_t o = 0; o < outer; ++o) {
    const std::int64_t base = o * nPoints * inner;
    for (int j = 0; j < nPoints; ++j)
      for (std::int64_t i = 0; i < inner; ++i)
        slab(j, i) = data[base + j * inner + i];
    Eigen::MatrixXcd out = F * slab;
    for (int j = 0; j < nPoints; ++j)
      for (std::int64_t i = 0; i < inner; ++i)
        data[base + j * inner + i] = out(j, i);
  }
}

Eigen::MatrixXcd phase_matrix(const GridGeometry& geo, int axis,
                              double sign) {
  const int nPoints = geo.dims[axis];
  Eigen::MatrixXcd F(nPoints, nPoints);
  for (int k = 0; k < nPoints; ++k)
    for (int j = 0; j < nPoints; ++j) {
      double phase = sign * geo.freq(axis, k) * geo.coord(axis, j);
      F(k, j) = Complex(std::cos(phase), std::sin(phase));
    }
  return F;
}

SpectralField dft_impl(const GridGeometry& geo, Eigen::VectorXcd data) {
  for (int nPoints : geo.dims)
    if (nPoints < 8)
      throw std::domain_error("dft: needs at least 8 points per axis");
  for (int a = 0; a < geo.dim(); ++a)
    apply_axis(data, geo, a, phase_matrix(geo, a, -1.0));
  double scale =
      std::pow(2.0 * kPi, -0.5 * geo.dim()) * std::pow(geo.h, geo.dim());
  SpectralField s;
  s.geo = geo;
  s.coef = scale * data;
  return s;
}

}  // namespace

SpectralField dft(const RealField& u) {
  return dft_impl(u.geo, u.samples.cast<Complex>());
}

SpectralField dft(const ComplexField& u) { return dft_impl(u.geo, u.samples); }

ComplexField idft(const SpectralField& s) {
  Eigen::VectorXcd data = s.coef;
  for (int a = 0; a < s.geo.dim(); ++a)
    apply_axis(data, s.geo, a, phase_matrix(s.geo, a, +1.0));
  double scale = std::pow(2.0 * kPi, -0.5 * s.geo.dim()) * s.freq_cell();
  ComplexField u(s.geo);
  u.samples = scale * data;
  return u;
}

RealField idft_real(const SpectralField& s) {
  ComplexField c = idft(s);
  RealField u(c.geo);
  u.samples = c.samples.real();
  return u;
}

double sobolev_norm_sq(const SpectralField& su, double s) {
  const int d = su.geo.dim();
  // s > -d/2 keeps the weight integrable at frequency zero; no upper bound
  // is needed on decaying fields (the dual grid is bounded anyway).
  if (!(s > -0.5 * d))
    throw std::domain_error("sobolev_norm_sq: requires s > -dim/2");
  const double cell = su.freq_cell();
  double acc = 0.0;
  for (std::int64_t i = 0; i < su.geo.size(); ++i) {
    double xi2 = su.geo.frequency(i).squaredNorm();
    if (xi2 == 0.0) {
      if (s < 0.0) continue;
      if (s > 0.0) continue;  // weight |0|^{2s} = 0
      acc += std::norm(su.coef[i]);
      continue;
    }
    acc += std::pow(xi2, s) * std::norm(su.coef[i]);
  }
  return acc * cell;
}

double sobolev_norm_sq(const RealField& u, double s) {
  return sobolev_norm_sq(dft(u), s);
}

namespace {
template <class Scalar>
double lp_norm_impl(const GridField<Scalar>& u, double p) {
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: requires p >= 1");
  if (std::isinf(p)) {
    double mx = 0.0;
    for (std::int64_t i = 0; i < u.geo.size(); ++i)
      mx = std::max(mx, std::abs(u.samples[i]));
    return mx;
  }
  double cell = std::pow(u.geo.h, u.geo.dim());
  double acc = 0.0;
  for (std::int64_t i = 0; i < u.geo.size(); ++i)
    acc += std::pow(std::abs(u.samples[i]), p);
  return std::pow(acc * cell, 1.0 / p);
}
}  // namespace

double lp_norm(const RealField& u, double p) { return lp_norm_impl(u, p); }
double lp_norm(const ComplexField& u, double p) { return lp_norm_impl(u, p); }

namespace {

template <class Scalar>
void write_csv_impl(const GridField<Scalar>& u, const std::string& path,
                    bool complex_vals) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_csv: cannot open " + path);
  const int d = u.geo.dim();
  for (int a = 0; a < d; ++a) std::fprintf(f, "i%d,", a);
  for (int a = 0; a < d; ++a) std::fprintf(f, "x%d,", a);
  std::fprintf(f, complex_vals ? "re,im\n" : "value\n");
  for (std::int64_t i = 0; i < u.geo.size(); ++i) {
    auto idx = u.geo.unflatten(i);
    for (int a = 0; a < d; ++a) std::fprintf(f, "%d,", idx[a]);
    for (int a = 0; a < d; ++a)
      std::fprintf(f, "%.17g,", u.geo.coord(a, idx[a]));
    if constexpr (std::is_same_v<Scalar, double>)
      std::fprintf(f, "%.17g\n", u.samples[i]);
    else
      std::fprintf(f, "%.17g,%.17g\n", u.samples[i].real(),
                   u.samples[i].imag());
  }
  std::fclose(f);
}

struct BinaryHeader {
  char magic[8];
  std::uint32_t kind;
  std::uint32_t ndim;
  std::uint32_t dims[6];
  double h;
  double half_width;
  std::uint64_t reserved;
};
static_assert(sizeof(BinaryHeader) == 64);

template <class Scalar>
void write_binary_impl(const GridField<Scalar>& u, const std::string& path,
                       std::uint32_t kind) {
  BinaryHeader hdr{};
  std::memcpy(hdr.magic, kMagic, 8);
  hdr.kind = kind;
  hdr.ndim = static_cast<std::uint32_t>(u.geo.dim());
  for (int a = 0; a < u.geo.dim(); ++a)
    hdr.dims[a] = static_cast<std::uint32_t>(u.geo.dims[a]);
  hdr.h = u.geo.h;
  hdr.half_width = u.geo.half_width();
  hdr.reserved = 0;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_binary: cannot open " + path);
  out.write(reinterpret_cast<const char*>(&hdr), sizeof(hdr));
  out.write(reinterpret_cast<const char*>(u.samples.data()),
            static_cast<std::streamsize>(sizeof(Scalar) * u.samples.size()));
  if (!out) throw std::runtime_error("write_binary: short write " + path);
}

BinaryHeader read_header(std::ifstream& in, const std::string& path) {
  BinaryHeader hdr{};
  in.read(reinterpret_cast<char*>(&hdr), sizeof(hdr));
  if (!in || std::memcmp(hdr.magic, kMagic, 8) != 0)
    throw std::runtime_error("read_binary: bad header in " + path);
  if (hdr.ndim < 1 || hdr.ndim > 6)
    throw std::runtime_error("read_binary: bad axis count in " + path);
  return hdr;
}

GridGeometry geometry_of(const BinaryHeader& hdr) {
  std::vector<int> dims(hdr.ndim);
  for (std::uint32_t a = 0; a < hdr.ndim; ++a)
    dims[a] = static_cast<int>(hdr.dims[a]);
  return GridGeometry(dims, hdr.half_width);
}

}  // namespace

void write_csv(const RealField& u, const std::string& path) {
  write_csv_impl(u, path, false);
}
void write_csv(const ComplexField& u, const std::string& path) {
  write_csv_impl(u, path, true);
}

RealField read_csv_real(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  std::string header;
  std::getline(in, header);
  int d = 0;
  {
    std::stringstream ss(header);
    std::string col;
    while (std::getline(ss, col, ','))
      if (col.size() >= 2 && col[0] == 'i') ++d;
  }
  if (d < 1) throw std::runtime_error("read_csv: no index columns in " + path);
  std::vector<std::vector<int>> indices;
  std::vector<double> values;
  std::vector<double> coords0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cellText;
    std::vector<int> idx(d);
    for (int a = 0; a < d; ++a) {
      std::getline(ss, cellText, ',');
      idx[a] = std::stoi(cellText);
    }
    double x0 = 0.0;
    for (int a = 0; a < d; ++a) {
      std::getline(ss, cellText, ',');
      if (a == 0) x0 = std::stod(cellText);
    }
    std::getline(ss, cellText, ',');
    indices.push_back(idx);
    values.push_back(std::stod(cellText));
    coords0.push_back(x0);
  }
  std::vector<int> dims(d, 0);
  for (const auto& idx : indices)
    for (int a = 0; a < d; ++a) dims[a] = std::max(dims[a], idx[a] + 1);
  double half = 0.0;
  for (double c : coords0) half = std::max(half, std::fabs(c));
  GridGeometry geo(dims, half);
  RealField u(geo);
  for (std::size_t r = 0; r < indices.size(); ++r)
    u.at(indices[r]) = values[r];
  return u;
}

void write_binary(const RealField& u, const std::string& path) {
  write_binary_impl(u, path, 0);
}
void write_binary(const ComplexField& u, const std::string& path) {
  write_binary_impl(u, path, 1);
}

RealField read_binary_real(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_binary: cannot open " + path);
  BinaryHeader hdr = read_header(in, path);
  if (hdr.kind != 0)
    throw std::runtime_error("read_binary: not a real field: " + path);
  RealField u(geometry_of(hdr));
  in.read(reinterpret_cast<char*>(u.samples.data()),
          static_cast<std::streamsize>(sizeof(double) * u.samples.size()));
  if (!in) throw std::runtime_error("read_binary: short read " + path);
  return u;
}

ComplexField read_binary_complex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_binary: cannot open " + path);
  BinaryHeader hdr = read_header(in, path);
  if (hdr.kind != 1)
    throw std::runtime_error("read_binary: not a complex field: " + path);
  ComplexField u(geometry_of(hdr));
  in.read(reinterpret_cast<char*>(u.samples.data()),
          static_cast<std::streamsize>(sizeof(Complex) * u.samples.size()));
  if (!in) throw std::runtime_error("read_binary: short read " + path);
  return u;
}

}  // namespace poisext
