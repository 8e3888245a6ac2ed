#include "poisext/heis_core.hpp"

#include <cmath>
#include <vector>

namespace poisext {

namespace {

void require_same_group(const HeisPoint& p, const HeisPoint& q) {
  if (p.z.size() != q.z.size())
    throw std::domain_error("heis point arity mismatch");
}

// 2 Im(z . conj w) for the packed real layout.
double twist(const Eigen::VectorXd& z, const Eigen::VectorXd& w) {
  double s = 0.0;
  for (int j = 0; j + 1 < z.size(); j += 2)
    s += z[j + 1] * w[j] - z[j] * w[j + 1];
  return 2.0 * s;
}

}  // namespace

HeisPoint heis_identity(int n) {
  if (n < 1) throw std::domain_error("heis_identity: n >= 1");
  return HeisPoint{Eigen::VectorXd::Zero(2 * n), 0.0};
}

HeisPoint heis_mul(const HeisPoint& p, const HeisPoint& q) {
  require_same_group(p, q);
  return HeisPoint{p.z + q.z, p.t + q.t + twist(p.z, q.z)};
}

HeisPoint heis_inv(const HeisPoint& p) { return HeisPoint{-p.z, -p.t}; }

HeisPoint heis_dilate(const HeisPoint& p, double r) {
  return HeisPoint{r * p.z, r * r * p.t};
}

double koranyi_norm(const HeisPoint& p) {
  double z2 = p.z.squaredNorm();
  return std::pow(z2 * z2 + p.t * p.t, 0.25);
}

Eigen::VectorXd heis_to_flat(const HeisPoint& p) {
  Eigen::VectorXd v(p.z.size() + 1);
  v.head(p.z.size()) = p.z;
  v[p.z.size()] = p.t;
  return v;
}

HeisPoint heis_from_flat(const Eigen::VectorXd& v) {
  if (v.size() < 3 || v.size() % 2 == 0)
    throw std::domain_error("heis_from_flat: needs odd length >= 3");
  return HeisPoint{v.head(v.size() - 1), v[v.size() - 1]};
}

namespace {

int full_pairs(const GridGeometry& geo) {
  int d = geo.dim();
  if (d < 3 || d % 2 == 0)
    throw std::domain_error("heis grid: needs 2n+1 axes");
  return (d - 1) / 2;
}

// Walks interior points of `geo`, handing the flat index and per-axis
// indices to the body.
template <class Body>
void for_interior(const GridGeometry& geo, Body&& body) {
  const int d = geo.dim();
  std::vector<int> idx(d);
  for (std::int64_t i = 0; i < geo.size(); ++i) {
    std::int64_t rest = i;
    bool interior = true;
    for (int ax = d - 1; ax >= 0; --ax) {
      idx[ax] = static_cast<int>(rest % geo.dims[ax]);
      rest /= geo.dims[ax];
      if (idx[ax] == 0 || idx[ax] == geo.dims[ax] - 1) interior = false;
    }
    if (interior) body(i, idx);
  }
}

}  // namespace

RealField apply_cr_laplacian(const RealField& u) {
  const GridGeometry& geo = u.geo;
  const int n = full_pairs(geo);
  const int d = geo.dim();
  const double inv_h2 = 1.0 / (geo.h * geo.h);
  const double inv_4h2 = 0.25 * inv_h2;

  std::vector<std::int64_t> st(d);
  for (int ax = 0; ax < d; ++ax) st[ax] = geo.stride(ax);
  const std::int64_t s_t = st[d - 1];

  RealField out(geo);
  for_interior(geo, [&](std::int64_t i, const std::vector<int>& idx) {
    double acc = 0.0;
    double z2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const std::int64_t sx = st[2 * j], sy = st[2 * j + 1];
      double xj = geo.coord(2 * j, idx[2 * j]);
      double yj = geo.coord(2 * j + 1, idx[2 * j + 1]);
      z2 += xj * xj + yj * yj;
      acc += (u.samples[i + sx] - 2.0 * u.samples[i] + u.samples[i - sx] +
              u.samples[i + sy] - 2.0 * u.samples[i] + u.samples[i - sy]) *
             inv_h2;
      double mix_x = (u.samples[i + sx + s_t] - u.samples[i + sx - s_t] -
                      u.samples[i - sx + s_t] + u.samples[i - sx - s_t]) *
                     inv_4h2;
      double mix_y = (u.samples[i + sy + s_t] - u.samples[i + sy - s_t] -
                      u.samples[i - sy + s_t] + u.samples[i - sy - s_t]) *
                     inv_4h2;
      acc += 4.0 * (yj * mix_x - xj * mix_y);
    }
    acc += 4.0 * z2 *
           (u.samples[i + s_t] - 2.0 * u.samples[i] + u.samples[i - s_t]) *
           inv_h2;
    out.samples[i] = acc;
  });
  return out;
}

RealField apply_L_a(const RealField& u, double a) {
  const GridGeometry& geo = u.geo;
  const int n = full_pairs(geo);
  const double inv_2h = 0.5 / geo.h;
  const std::int64_t sx = geo.stride(2 * n - 2);
  const std::int64_t sy = geo.stride(2 * n - 1);

  RealField out = apply_cr_laplacian(u);
  for_interior(geo, [&](std::int64_t i, const std::vector<int>& idx) {
    double xn = geo.coord(2 * n - 2, idx[2 * n - 2]);
    double yn = geo.coord(2 * n - 1, idx[2 * n - 1]);
    double euler =
        xn * (u.samples[i + sx] - u.samples[i - sx]) * inv_2h +
        yn * (u.samples[i + sy] - u.samples[i - sy]) * inv_2h;
    out.samples[i] = (xn * xn + yn * yn) * out.samples[i] + a * euler;
  });
  return out;
}

double cr_laplacian_at(const Evaluable& f, const Eigen::VectorXd& p,
                       double h) {
  const int d = static_cast<int>(p.size());
  if (d < 3 || d % 2 == 0)
    throw std::domain_error("cr_laplacian_at: needs 2n+1 coordinates");
  const int n = (d - 1) / 2;
  const int ti = d - 1;
  const double inv_h2 = 1.0 / (h * h);
  const double inv_4h2 = 0.25 * inv_h2;

  double center = f(p);
  Eigen::VectorXd q = p;
  auto second = [&](int ax) {
    q[ax] = p[ax] + h;
    double fp = f(q);
    q[ax] = p[ax] - h;
    double fm = f(q);
    q[ax] = p[ax];
    return (fp - 2.0 * center + fm) * inv_h2;
  };
  auto mixed_t = [&](int ax) {
    q[ax] = p[ax] + h;
    q[ti] = p[ti] + h;
    double pp = f(q);
    q[ti] = p[ti] - h;
    double pm = f(q);
    q[ax] = p[ax] - h;
    double mm = f(q);
    q[ti] = p[ti] + h;
    double mp = f(q);
    q[ax] = p[ax];
    q[ti] = p[ti];
    return (pp - pm - mp + mm) * inv_4h2;
  };

  double acc = 0.0;
  double z2 = 0.0;
  for (int j = 0; j < n; ++j) {
    double xj = p[2 * j], yj = p[2 * j + 1];
    z2 += xj * xj + yj * yj;
    acc += second(2 * j) + second(2 * j + 1);
    acc += 4.0 * (yj * mixed_t(2 * j) - xj * mixed_t(2 * j + 1));
  }
  acc += 4.0 * z2 * second(ti);
  return acc;
}

double L_a_at(const Evaluable& f, const Eigen::VectorXd& p, double h,
              double a) {
  const int d = static_cast<int>(p.size());
  if (d < 3 || d % 2 == 0)
    throw std::domain_error("L_a_at: needs 2n+1 coordinates");
  const int n = (d - 1) / 2;
  double xn = p[2 * n - 2], yn = p[2 * n - 1];
  double euler = xn * partial_at(f, p, 2 * n - 2, h) +
                 yn * partial_at(f, p, 2 * n - 1, h);
  return (xn * xn + yn * yn) * cr_laplacian_at(f, p, h) + a * euler;
}

double reduced_rho(const GridGeometry& geo, int index) {
  return (index + 0.5) * geo.h;
}

RealField radial_reduced_apply(const RealField& u, double a) {
  const GridGeometry& geo = u.geo;
  const int d = geo.dim();
  if (d < 4 || d % 2 == 1)
    throw std::domain_error("radial_reduced_apply: needs 2n axes");
  const int n = d / 2;
  const int ri = d - 2;  // rho axis
  const int ti = d - 1;
  const double inv_h2 = 1.0 / (geo.h * geo.h);
  const double inv_2h = 0.5 / geo.h;
  const double inv_4h2 = 0.25 * inv_h2;

  std::vector<std::int64_t> st(d);
  for (int ax = 0; ax < d; ++ax) st[ax] = geo.stride(ax);
  const std::int64_t s_r = st[ri], s_t = st[ti];

  RealField out(geo);
  for_interior(geo, [&](std::int64_t i, const std::vector<int>& idx) {
    // L' part over the boundary pairs (z', t).
    double acc = 0.0;
    double zp2 = 0.0;
    for (int j = 0; j + 1 < n; ++j) {
      const std::int64_t sx = st[2 * j], sy = st[2 * j + 1];
      double xj = geo.coord(2 * j, idx[2 * j]);
      double yj = geo.coord(2 * j + 1, idx[2 * j + 1]);
      zp2 += xj * xj + yj * yj;
      acc += (u.samples[i + sx] - 2.0 * u.samples[i] + u.samples[i - sx] +
              u.samples[i + sy] - 2.0 * u.samples[i] + u.samples[i - sy]) *
             inv_h2;
      double mix_x = (u.samples[i + sx + s_t] - u.samples[i + sx - s_t] -
                      u.samples[i - sx + s_t] + u.samples[i - sx - s_t]) *
                     inv_4h2;
      double mix_y = (u.samples[i + sy + s_t] - u.samples[i + sy - s_t] -
                      u.samples[i - sy + s_t] + u.samples[i - sy - s_t]) *
                     inv_4h2;
      acc += 4.0 * (yj * mix_x - xj * mix_y);
    }
    double dtt =
        (u.samples[i + s_t] - 2.0 * u.samples[i] + u.samples[i - s_t]) *
        inv_h2;
    acc += 4.0 * zp2 * dtt;

    double rho = reduced_rho(geo, idx[ri]);
    double drr =
        (u.samples[i + s_r] - 2.0 * u.samples[i] + u.samples[i - s_r]) *
        inv_h2;
    double dr = (u.samples[i + s_r] - u.samples[i - s_r]) * inv_2h;
    acc += drr + (a + 1.0) / rho * dr + 4.0 * rho * rho * dtt;
    out.samples[i] = rho * rho * acc;
  });
  return out;
}

}  // namespace poisext
