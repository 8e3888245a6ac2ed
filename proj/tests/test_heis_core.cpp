#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "poisext/heis_core.hpp"

using namespace poisext;

namespace {

bool is_margin(const GridGeometry& geo, std::int64_t flat) {
  auto idx = geo.unflatten(flat);
  for (int a = 0; a < geo.dim(); ++a)
    if (idx[a] == 0 || idx[a] == geo.dims[a] - 1) return true;
  return false;
}

HeisPoint random_point(std::mt19937& rng, int n, double scale) {
  std::uniform_real_distribution<double> U(-scale, scale);
  Eigen::VectorXd z(2 * n);
  for (int i = 0; i < z.size(); ++i) z[i] = U(rng);
  return HeisPoint{z, U(rng)};
}

// g = exp(-|z|^2 - t^2) on the flat layout; the rotation term of L drops
// because g is radial in every z_j, leaving closed forms for L g and L_a g.
double gauss_flat(const Eigen::VectorXd& v) {
  double z2 = v.head(v.size() - 1).squaredNorm();
  double t = v[v.size() - 1];
  return std::exp(-z2 - t * t);
}

double cr_gauss(const Eigen::VectorXd& v) {
  int m = static_cast<int>(v.size()) - 1;
  double z2 = v.head(m).squaredNorm();
  double t = v[m];
  return (-2.0 * m - 4.0 * z2 + 16.0 * z2 * t * t) * std::exp(-z2 - t * t);
}

double La_gauss(const Eigen::VectorXd& v, double a) {
  int m = static_cast<int>(v.size()) - 1;
  double z2 = v.head(m).squaredNorm();
  double t = v[m];
  double rho2 = v[m - 2] * v[m - 2] + v[m - 1] * v[m - 1];
  return rho2 * (-2.0 * m - 4.0 * z2 + 16.0 * z2 * t * t - 2.0 * a) *
         std::exp(-z2 - t * t);
}

// Same Gaussian seen on the reduced layout (z', rho, t).
double reduced_gauss_image(const Eigen::VectorXd& p, double a) {
  int d = static_cast<int>(p.size());
  double z2 = p.head(d - 1).squaredNorm();
  double t = p[d - 1];
  double rho = p[d - 2];
  return rho * rho * (-2.0 * d - 4.0 * z2 + 16.0 * z2 * t * t - 2.0 * a) *
         std::exp(-z2 - t * t);
}

// Sample on a reduced grid: the rho axis reads at half cells.
template <class F>
RealField sample_reduced(const GridGeometry& geo, F&& f) {
  RealField u(geo);
  int ri = geo.dim() - 2;
  for (std::int64_t i = 0; i < geo.size(); ++i) {
    Eigen::VectorXd p = geo.point(i);
    p[ri] = reduced_rho(geo, geo.unflatten(i)[ri]);
    u.samples[i] = f(p);
  }
  return u;
}

Eigen::VectorXd reduced_point(const GridGeometry& geo, std::int64_t flat) {
  Eigen::VectorXd p = geo.point(flat);
  int ri = geo.dim() - 2;
  p[ri] = reduced_rho(geo, geo.unflatten(flat)[ri]);
  return p;
}

}  // namespace

TEST_CASE("group axioms") {
  std::mt19937 rng(311);
  int n = 2;
  HeisPoint e = heis_identity(n);
  CHECK(e.z.size() == 4);
  CHECK(e.t == 0.0);

  for (int trial = 0; trial < 100; ++trial) {
    HeisPoint p = random_point(rng, n, 2.0);
    HeisPoint pe = heis_mul(p, e);
    CHECK((pe.z - p.z).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(pe.t == p.t);
    HeisPoint c = heis_mul(p, heis_inv(p));
    CHECK(c.z.lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(c.t == 0.0);
  }

  for (int trial = 0; trial < 1000; ++trial) {
    HeisPoint p = random_point(rng, n, 2.0);
    HeisPoint q = random_point(rng, n, 2.0);
    HeisPoint r = random_point(rng, n, 2.0);
    Eigen::VectorXd left = heis_to_flat(heis_mul(heis_mul(p, q), r));
    Eigen::VectorXd right = heis_to_flat(heis_mul(p, heis_mul(q, r)));
    CHECK((left - right).lpNorm<Eigen::Infinity>() < 1e-12);
  }

  HeisPoint p3 = random_point(rng, 3, 1.0);
  CHECK_THROWS_AS(heis_mul(p3, e), std::domain_error);
  CHECK_THROWS_AS(heis_identity(0), std::domain_error);
}

TEST_CASE("koranyi norm and dilations") {
  CHECK(koranyi_norm(heis_identity(2)) == 0.0);

  HeisPoint vertical{Eigen::VectorXd::Zero(4), 2.25};
  CHECK(koranyi_norm(vertical) == doctest::Approx(1.5).epsilon(1e-15));
  vertical.t = -2.25;
  CHECK(koranyi_norm(vertical) == doctest::Approx(1.5).epsilon(1e-15));

  std::mt19937 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    HeisPoint p = random_point(rng, 2, 2.0);
    for (double r : {0.5, 2.0, 3.7}) {
      CHECK(koranyi_norm(heis_dilate(p, r)) ==
            doctest::Approx(r * koranyi_norm(p)).epsilon(1e-14));
    }
    Eigen::VectorXd v = heis_to_flat(p);
    HeisPoint q = heis_from_flat(v);
    CHECK((q.z - p.z).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(q.t == p.t);
  }

  CHECK_THROWS_AS(heis_from_flat(Eigen::VectorXd::Zero(4)), std::domain_error);
  CHECK_THROWS_AS(heis_from_flat(Eigen::VectorXd::Zero(1)), std::domain_error);
}

TEST_CASE("cr laplacian oracles") {
  GridGeometry geo({7, 7, 7, 7, 7}, 1.5);

  RealField ones(geo);
  ones.samples.setOnes();
  CHECK(apply_cr_laplacian(ones).samples.lpNorm<Eigen::Infinity>() == 0.0);

  RealField zn2 = sample_field(
      geo, [](const Eigen::VectorXd& v) { return v[2] * v[2] + v[3] * v[3]; });
  RealField img = apply_cr_laplacian(zn2);
  for (std::int64_t i = 0; i < geo.size(); ++i) {
    if (is_margin(geo, i))
      CHECK(img.samples[i] == 0.0);
    else
      CHECK(img.samples[i] == doctest::Approx(4.0).epsilon(1e-13));
  }

  RealField tf =
      sample_field(geo, [](const Eigen::VectorXd& v) { return v[4]; });
  CHECK(apply_cr_laplacian(tf).samples.lpNorm<Eigen::Infinity>() == 0.0);

  RealField xt = sample_field(
      geo, [](const Eigen::VectorXd& v) { return v[0] * v[4]; });
  RealField xt_img = apply_cr_laplacian(xt);
  for (std::int64_t i = 0; i < geo.size(); ++i) {
    if (is_margin(geo, i)) continue;
    double y1 = geo.point(i)[1];
    CHECK(std::fabs(xt_img.samples[i] - 4.0 * y1) < 1e-12);
  }

  CHECK_THROWS_AS(apply_cr_laplacian(RealField(GridGeometry({7, 7, 7, 7}, 1.0))),
                  std::domain_error);
}

TEST_CASE("weighted operator oracles") {
  GridGeometry geo({7, 7, 7, 7, 7}, 1.5);
  double a = -1.3;

  RealField ones(geo);
  ones.samples.setOnes();
  CHECK(apply_L_a(ones, a).samples.lpNorm<Eigen::Infinity>() == 0.0);

  RealField zn2 = sample_field(
      geo, [](const Eigen::VectorXd& v) { return v[2] * v[2] + v[3] * v[3]; });
  RealField img = apply_L_a(zn2, a);
  for (std::int64_t i = 0; i < geo.size(); ++i) {
    if (is_margin(geo, i)) continue;
    Eigen::VectorXd p = geo.point(i);
    double rho2 = p[2] * p[2] + p[3] * p[3];
    CHECK(std::fabs(img.samples[i] - (4.0 + 2.0 * a) * rho2) < 1e-12);
  }

  // Fields independent of (x_n, y_n) see no Euler term: the output cannot
  // depend on a.
  RealField w = sample_field(geo, [](const Eigen::VectorXd& v) {
    return std::cos(v[0]) * std::exp(v[1]) + v[4] * v[4] * v[1];
  });
  RealField wa = apply_L_a(w, -1.3);
  RealField wb = apply_L_a(w, 0.7);
  CHECK((wa.samples - wb.samples).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("point stencils match the grid operators") {
  GridGeometry geo({7, 7, 7, 7, 7}, 1.5);
  auto g = [](const Eigen::VectorXd& v) {
    return std::exp(-0.5 * v.squaredNorm()) * std::cos(v[0]);
  };
  RealField u = sample_field(geo, g);
  RealField lap = apply_cr_laplacian(u);
  RealField wop = apply_L_a(u, 0.7);

  std::vector<std::vector<int>> nodes = {
      {3, 3, 3, 3, 3}, {2, 3, 4, 1, 3}, {4, 2, 3, 3, 2}, {1, 1, 5, 4, 4}};
  for (const auto& idx : nodes) {
    std::int64_t i = geo.flatten(idx);
    Eigen::VectorXd p = geo.point(i);
    CHECK(std::fabs(lap.samples[i] - cr_laplacian_at(g, p, geo.h)) < 1e-12);
    CHECK(std::fabs(wop.samples[i] - L_a_at(g, p, geo.h, 0.7)) < 1e-12);
  }

  CHECK_THROWS_AS(cr_laplacian_at(g, Eigen::VectorXd::Zero(4), 0.1),
                  std::domain_error);
  CHECK_THROWS_AS(L_a_at(g, Eigen::VectorXd::Zero(6), 0.1, 0.0),
                  std::domain_error);
}

TEST_CASE("second order accuracy against the closed-form image") {
  double a = -1.3;
  // Refining 9 -> 17 keeps the coarse nodes in the fine grid; measuring both
  // errors over the shared nodes makes the ratio track the stencil order.
  auto sup_err = [&](int m, int stride) {
    GridGeometry geo(std::vector<int>(5, m), 1.2);
    RealField u = sample_field(geo, gauss_flat);
    RealField v = apply_L_a(u, a);
    double e = 0.0;
    for (std::int64_t i = 0; i < geo.size(); ++i) {
      if (is_margin(geo, i)) continue;
      auto idx = geo.unflatten(i);
      bool shared = true;
      for (int ax = 0; ax < geo.dim(); ++ax)
        if (idx[ax] % stride != 0) shared = false;
      if (!shared) continue;
      e = std::max(e, std::fabs(v.samples[i] - La_gauss(geo.point(i), a)));
    }
    return e;
  };
  double e1 = sup_err(9, 1);
  double e2 = sup_err(17, 2);
  CHECK(std::log2(e1 / e2) > 1.8);
}

TEST_CASE("radial reduction") {
  double a = -1.3;
  GridGeometry geo({9, 9, 9, 9}, 1.2);

  RealField ones(geo);
  ones.samples.setOnes();
  CHECK(radial_reduced_apply(ones, a).samples.lpNorm<Eigen::Infinity>() ==
        0.0);

  RealField rho2 = sample_reduced(
      geo, [](const Eigen::VectorXd& p) { return p[2] * p[2]; });
  RealField img = radial_reduced_apply(rho2, a);
  for (std::int64_t i = 0; i < geo.size(); ++i) {
    if (is_margin(geo, i)) {
      CHECK(img.samples[i] == 0.0);
    } else {
      double r = reduced_point(geo, i)[2];
      CHECK(img.samples[i] ==
            doctest::Approx((2.0 * a + 4.0) * r * r).epsilon(1e-12));
    }
  }

  auto sup_err = [&](int m) {
    GridGeometry g(std::vector<int>(4, m), 1.2);
    RealField u = sample_reduced(g, gauss_flat);
    RealField v = radial_reduced_apply(u, a);
    double e = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
      if (is_margin(g, i)) continue;
      e = std::max(e,
                   std::fabs(v.samples[i] -
                             reduced_gauss_image(reduced_point(g, i), a)));
    }
    return e;
  };
  double e1 = sup_err(9);
  double e2 = sup_err(17);
  CHECK(std::log2(e1 / e2) > 1.8);

  CHECK_THROWS_AS(
      radial_reduced_apply(RealField(GridGeometry({7, 7, 7, 7, 7}, 1.0)), a),
      std::domain_error);
}

TEST_CASE("radial reduction agrees with the full operator") {
  double a = -0.6;
  auto cross_diff = [&](int m) {
    GridGeometry geo(std::vector<int>(4, m), 1.2);
    RealField u = sample_reduced(geo, gauss_flat);
    RealField v = radial_reduced_apply(u, a);
    double worst = 0.0;
    for (std::int64_t i = 0; i < geo.size(); ++i) {
      if (is_margin(geo, i)) continue;
      Eigen::VectorXd p = reduced_point(geo, i);
      Eigen::VectorXd q(5);
      q << p[0], p[1], p[2], 0.0, p[3];
      worst = std::max(
          worst, std::fabs(v.samples[i] - L_a_at(gauss_flat, q, geo.h, a)));
    }
    return worst;
  };
  double d1 = cross_diff(9);
  double d2 = cross_diff(17);
  CHECK(d1 < 0.5);
  CHECK(d2 < 0.35 * d1);
}

TEST_CASE("left invariance at grid level") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    HeisPoint q0 = random_point(rng, 2, 0.3);
    auto w = [&](const Eigen::VectorXd& v) {
      return gauss_flat(heis_to_flat(heis_mul(q0, heis_from_flat(v))));
    };
    auto sup_err = [&](int m) {
      GridGeometry geo(std::vector<int>(5, m), 1.2);
      RealField u = sample_field(geo, w);
      RealField v = apply_cr_laplacian(u);
      double e = 0.0;
      for (std::int64_t i = 0; i < geo.size(); ++i) {
        if (is_margin(geo, i)) continue;
        Eigen::VectorXd shifted =
            heis_to_flat(heis_mul(q0, heis_from_flat(geo.point(i))));
        e = std::max(e, std::fabs(v.samples[i] - cr_gauss(shifted)));
      }
      return e;
    };
    double e1 = sup_err(9);
    double e2 = sup_err(17);
    CHECK(std::log2(e1 / e2) > 1.7);
  }
}
