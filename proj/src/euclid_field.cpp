#include "poisext/euclid_field.hpp"

#include <cmath>

namespace poisext {

RealField apply_delta_a(const RealField& u, double a) {
  const GridGeometry& geo = u.geo;
  const int d = geo.dim();
  RealField out(geo);
  const double inv_h2 = 1.0 / (geo.h * geo.h);
  const double inv_2h = 0.5 / geo.h;
  const std::int64_t last_stride = 1;

  std::vector<std::int64_t> strides(d);
  for (int ax = 0; ax < d; ++ax) strides[ax] = geo.stride(ax);

  for (std::int64_t i = 0; i < geo.size(); ++i) {
    std::int64_t rest = i;
    bool interior = true;
    int idx_last = 0;
    for (int ax = d - 1; ax >= 0; --ax) {
      int ia = static_cast<int>(rest % geo.dims[ax]);
      rest /= geo.dims[ax];
      if (ax == d - 1) idx_last = ia;
      if (ia == 0 || ia == geo.dims[ax] - 1) interior = false;
    }
    if (!interior) continue;

    double lap = 0.0;
    for (int ax = 0; ax < d; ++ax)
      lap += u.samples[i + strides[ax]] - 2.0 * u.samples[i] +
             u.samples[i - strides[ax]];
    lap *= inv_h2;
    double dn = (u.samples[i + last_stride] - u.samples[i - last_stride]) *
                inv_2h;
    double xn = geo.coord(d - 1, idx_last);
    out.samples[i] = xn * xn * lap + a * xn * dn;
  }
  return out;
}

double laplacian_at(const Evaluable& f, const Eigen::VectorXd& x, double h) {
  double acc = 0.0;
  double center = f(x);
  Eigen::VectorXd y = x;
  for (int ax = 0; ax < x.size(); ++ax) {
    y[ax] = x[ax] + h;
    double fp = f(y);
    y[ax] = x[ax] - h;
    double fm = f(y);
    y[ax] = x[ax];
    acc += fp - 2.0 * center + fm;
  }
  return acc / (h * h);
}

double partial_at(const Evaluable& f, const Eigen::VectorXd& x, int axis,
                  double h) {
  Eigen::VectorXd y = x;
  y[axis] = x[axis] + h;
  double fp = f(y);
  y[axis] = x[axis] - h;
  double fm = f(y);
  return (fp - fm) / (2.0 * h);
}

double delta_a_at(const Evaluable& f, const Eigen::VectorXd& x, double h,
                  double a) {
  int last = static_cast<int>(x.size()) - 1;
  double xn = x[last];
  return xn * xn * laplacian_at(f, x, h) + a * xn * partial_at(f, x, last, h);
}

RealField trace_restrict(const RealField& u) {
  const GridGeometry& geo = u.geo;
  const int d = geo.dim();
  if (d < 2)
    throw std::domain_error("trace_restrict: need at least two axes");
  std::vector<int> bdims(geo.dims.begin(), geo.dims.end() - 1);
  GridGeometry bgeo(bdims, geo.half_width(0));
  RealField b(bgeo);
  const int center = (geo.dims[d - 1] - 1) / 2;
  for (std::int64_t j = 0; j < bgeo.size(); ++j)
    b.samples[j] = u.samples[j * geo.dims[d - 1] + center];
  return b;
}

Evaluable group_translate(Evaluable f, Eigen::VectorXd v) {
  return [f = std::move(f), v = std::move(v)](const Eigen::VectorXd& x) {
    return f(x - v);
  };
}

Evaluable group_dilate(Evaluable f, double s, double mu_rho) {
  double gain = std::exp(mu_rho * s);
  double scale = std::exp(s);
  return [f = std::move(f), gain, scale](const Eigen::VectorXd& x) {
    return gain * f(scale * x);
  };
}

Evaluable group_invert(Evaluable f, double mu_rho) {
  return [f = std::move(f), mu_rho](const Eigen::VectorXd& x) {
    double r2 = x.squaredNorm();
    return std::pow(r2, -mu_rho) * f(-x / r2);
  };
}

}  // namespace poisext
