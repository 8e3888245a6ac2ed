#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "poisext/euclid_field.hpp"
#include "poisext/grid.hpp"

using namespace poisext;

namespace {

bool is_margin(const GridGeometry& geo, std::int64_t flat) {
  auto idx = geo.unflatten(flat);
  for (int a = 0; a < geo.dim(); ++a)
    if (idx[a] == 0 || idx[a] == geo.dims[a] - 1) return true;
  return false;
}

// Smooth oracle with a closed-form image under x_n^2 Lap + a x_n d_n.
double oracle(const Eigen::VectorXd& x) {
  return std::exp(-x.squaredNorm() / 2) * std::cos(x[0]);
}

double oracle_delta_a(const Eigen::VectorXd& x, double a) {
  int n = static_cast<int>(x.size());
  double g = std::exp(-x.squaredNorm() / 2);
  double lap = g * ((x.squaredNorm() - n - 1) * std::cos(x[0]) +
                    2 * x[0] * std::sin(x[0]));
  double dn = -x[n - 1] * g * std::cos(x[0]);
  double xn = x[n - 1];
  return xn * xn * lap + a * xn * dn;
}

}  // namespace

TEST_CASE("delta_a annihilates constants") {
  GridGeometry geo({9, 9, 9}, 2.0);
  RealField u(geo);
  u.samples.setOnes();
  RealField v = apply_delta_a(u, -0.7);
  CHECK(v.samples.lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("delta_a on x_n gives a x_n exactly") {
  GridGeometry geo({9, 11}, 2.0);
  double a = 1.3;
  RealField u = sample_field(geo, [](const Eigen::VectorXd& x) { return x[1]; });
  RealField v = apply_delta_a(u, a);
  for (std::int64_t i = 0; i < geo.size(); ++i) {
    if (is_margin(geo, i)) {
      CHECK(v.samples[i] == 0.0);
    } else {
      double xn = geo.point(i)[1];
      CHECK(v.samples[i] == doctest::Approx(a * xn).epsilon(1e-13));
    }
  }
}

TEST_CASE("delta_a on |x|^2 gives (2n+2a) x_n^2 exactly") {
  GridGeometry geo({7, 7, 9}, 3.0);
  double a = -0.4;
  int n = 3;
  RealField u = sample_field(
      geo, [](const Eigen::VectorXd& x) { return x.squaredNorm(); });
  RealField v = apply_delta_a(u, a);
  for (std::int64_t i = 0; i < geo.size(); ++i) {
    if (is_margin(geo, i)) continue;
    double xn = geo.point(i)[2];
    double want = (2 * n + 2 * a) * xn * xn;
    CHECK(v.samples[i] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("delta_a converges at second order on a smooth field") {
  // Richardson between h and h/2 against the closed-form image.
  double a = -0.6;
  std::vector<int> sizes = {17, 33};
  std::vector<double> errs;
  for (int nPoints : sizes) {
    GridGeometry geo({nPoints, nPoints}, 4.0);
    RealField u = sample_field(geo, oracle);
    RealField v = apply_delta_a(u, a);
    double err = 0.0;
    for (std::int64_t i = 0; i < geo.size(); ++i) {
      if (is_margin(geo, i)) continue;
      err = std::max(err, std::fabs(v.samples[i] -
                                    oracle_delta_a(geo.point(i), a)));
    }
    errs.push_back(err);
  }
  double order = std::log2(errs[0] / errs[1]);
  CHECK(order >= 1.8);
}

TEST_CASE("point stencils agree with the grid operator") {
  GridGeometry geo({11, 11}, 3.0);
  double a = 0.9;
  RealField u = sample_field(geo, oracle);
  RealField v = apply_delta_a(u, a);
  std::mt19937 rng(404);
  std::uniform_int_distribution<int> pick(1, 9);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<int> idx = {pick(rng), pick(rng)};
    Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
    for (int axisIdx = 0; axisIdx < 2; ++axisIdx)
      x[axisIdx] = geo.coord(axisIdx, idx[axisIdx]);
    double direct = delta_a_at(oracle, x, geo.h, a);
    CHECK(direct == doctest::Approx(v.samples[geo.flatten(idx)])
                        .epsilon(1e-12));
  }
}

TEST_CASE("point stencils have the expected values on monomials") {
  Eigen::VectorXd x(3);
  x << 0.3, -1.1, 0.7;
  Evaluable q = [](const Eigen::VectorXd& p) {
    return p[0] * p[0] + 2.0 * p[1] * p[1] - p[2] * p[2];
  };
  CHECK(laplacian_at(q, x, 0.25) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(partial_at(q, x, 1, 0.25) ==
        doctest::Approx(4.0 * x[1]).epsilon(1e-12));
  CHECK(partial_at(q, x, 2, 0.25) ==
        doctest::Approx(-2.0 * x[2]).epsilon(1e-12));
}

TEST_CASE("trace restriction") {
  GridGeometry geo({9, 9, 11}, 2.0);

  RealField ones(geo);
  ones.samples.setOnes();
  RealField b = trace_restrict(ones);
  REQUIRE(b.geo.dims == std::vector<int>({9, 9}));
  CHECK(b.geo.h == doctest::Approx(geo.h));
  CHECK((b.samples.array() - 1.0).abs().maxCoeff() == 0.0);

  RealField odd = sample_field(geo, [](const Eigen::VectorXd& x) {
    return x[2] * std::exp(-x.squaredNorm());
  });
  CHECK(trace_restrict(odd).samples.lpNorm<Eigen::Infinity>() == 0.0);

  RealField g = sample_field(geo, [](const Eigen::VectorXd& x) {
    return std::exp(-x.squaredNorm());
  });
  RealField gb = trace_restrict(g);
  for (std::int64_t j = 0; j < gb.geo.size(); ++j) {
    Eigen::VectorXd xp = gb.geo.point(j);
    CHECK(gb.samples[j] ==
          doctest::Approx(std::exp(-xp.squaredNorm())).epsilon(1e-14));
  }
}

TEST_CASE("group actions") {
  Evaluable f = [](const Eigen::VectorXd& x) {
    return std::exp(-x.squaredNorm());
  };
  std::mt19937 rng(505);
  std::normal_distribution<double> dist;
  auto rand_point = [&](double floor_norm) {
    Eigen::VectorXd x(3);
    do {
      for (int i = 0; i < 3; ++i) x[i] = dist(rng);
    } while (x.norm() < floor_norm);
    return x;
  };

  Evaluable same = group_translate(f, Eigen::VectorXd::Zero(3));
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXd x = rand_point(0.0);
    CHECK(same(x) == f(x));
  }

  Eigen::VectorXd v(3);
  v << 0.5, -1.0, 2.0;
  Evaluable shifted = group_translate(f, v);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXd x = rand_point(0.0);
    CHECK(shifted(x) == doctest::Approx(f(x - v)).epsilon(1e-15));
  }

  double mu_rho = 0.35;
  double s = 0.8;
  Evaluable dil = group_dilate(f, s, mu_rho);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXd x = rand_point(0.0);
    double want = std::exp(mu_rho * s) * f(std::exp(s) * x);
    CHECK(dil(x) == doctest::Approx(want).epsilon(1e-14));
  }

  Evaluable inv2 = group_invert(group_invert(f, mu_rho), mu_rho);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::VectorXd x = rand_point(0.1);
    CHECK(inv2(x) == doctest::Approx(f(x)).epsilon(1e-12));
  }

  Evaluable inv = group_invert(f, mu_rho);
  Eigen::VectorXd e1(3);
  e1 << 2.0, 0.0, 0.0;
  double want = std::pow(4.0, -mu_rho) * f(-e1 / 4.0);
  CHECK(inv(e1) == doctest::Approx(want).epsilon(1e-14));
}
