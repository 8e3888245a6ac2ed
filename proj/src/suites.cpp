#include "poisext/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "poisext/euclid_field.hpp"
#include "poisext/euclid_poisson.hpp"
#include "poisext/grid.hpp"
#include "poisext/heis_core.hpp"
#include "poisext/heis_poisson.hpp"
#include "poisext/quadrature.hpp"
#include "poisext/specfun.hpp"

namespace poisext {
namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ModelParams real_params(int n, double a) {
  return ModelParams(Field::euclidean, n, a);
}

ModelParams heis_params(int n, double a) {
  return ModelParams(Field::heisenberg, n, a);
}

std::string fmt(const char* pattern, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// Pass criteria.  Relative against the expected value, absolute against
// it, one-sided from above (bounds, residuals) and from below (orders).
CheckRecord rel_check(std::string name, std::string ref, double measured,
                      double expected, double tol, double secs,
                      std::string note) {
  bool pass = std::fabs(measured - expected) <= tol * std::fabs(expected);
  return {std::move(name), std::move(ref), measured, expected, tol,
          pass,            secs,           std::move(note)};
}

CheckRecord abs_check(std::string name, std::string ref, double measured,
                      double expected, double tol, double secs,
                      std::string note) {
  bool pass = std::fabs(measured - expected) <= tol;
  return {std::move(name), std::move(ref), measured, expected, tol,
          pass,            secs,           std::move(note)};
}

CheckRecord upper_check(std::string name, std::string ref, double measured,
                        double expected, double tol, double secs,
                        std::string note) {
  bool pass = measured <= expected + tol;
  return {std::move(name), std::move(ref), measured, expected, tol,
          pass,            secs,           std::move(note)};
}

CheckRecord lower_check(std::string name, std::string ref, double measured,
                        double expected, double tol, double secs,
                        std::string note) {
  bool pass = measured >= expected - tol;
  return {std::move(name), std::move(ref), measured, expected, tol,
          pass,            secs,           std::move(note)};
}

QuadOptions quad_options(const SuiteConfig& cfg, double fallback) {
  QuadOptions opt;
  opt.abs_tol = cfg.tol > 0.0 ? cfg.tol : fallback;
  return opt;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// ---------------------------------------------------------------- constants

std::vector<CheckRecord> suite_constants(const SuiteConfig&) {
  std::vector<CheckRecord> out;
  auto t0 = Clock::now();
  out.push_back(rel_check("constants/c-real(3,0)", "closed-constants",
                          dirichlet_constant_real(3, 0.0),
                          1.0 / (2.0 * kPi), 1e-12, since(t0), ""));
  t0 = Clock::now();
  out.push_back(rel_check("constants/iso-real(0)", "closed-constants",
                          isometry_constant_real(0.0), 2.0, 1e-12,
                          since(t0), ""));
  t0 = Clock::now();
  out.push_back(rel_check("constants/c-heis(2,-2)", "closed-constants",
                          dirichlet_constant_heis(2, -2.0),
                          1.0 / (2.0 * kPi), 1e-12, since(t0), ""));
  t0 = Clock::now();
  out.push_back(rel_check("constants/iso-heis(2,-2)", "closed-constants",
                          isometry_constant_heis(2, -2.0), kPi / 3.0, 1e-12,
                          since(t0), ""));
  return out;
}

// -------------------------------------------------------------- kernel mass

std::vector<CheckRecord> suite_kernel_mass(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  QuadOptions opt = quad_options(cfg, 1e-8);
  auto one = [](const Eigen::VectorXd&) { return 1.0; };

  if (cfg.run_real) {
    int n = cfg.has_n ? cfg.n : 3;
    require(n >= 2, "kernel-mass: real side needs n >= 2");
    std::vector<double> as =
        cfg.has_a ? std::vector<double>{cfg.a}
                  : std::vector<double>{-0.5, 0.0, 0.5};
    for (double a : as) {
      require(a < 1.0, "kernel-mass: real side requires a < 1");
      auto t0 = Clock::now();
      ModelParams mp = real_params(n, a);
      std::mt19937_64 rng(cfg.seed);
      std::uniform_real_distribution<double> B(-1.0, 1.0), H(0.2, 1.2);
      double worst = 0.0;
      for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd x(n);
        for (int i = 0; i + 1 < n; ++i) x[i] = B(rng);
        x[n - 1] = H(rng);
        double v = poisson_transform_real_at(one, x, mp, opt);
        worst = std::max(worst, std::fabs(v - 1.0));
      }
      out.push_back(abs_check("kernel-mass/real " + fmt("a=%g", a),
                              "kernel-mass", worst, 0.0, 1e-6, since(t0),
                              "20 points"));
    }
  }

  if (cfg.run_heis) {
    int n = cfg.has_n ? cfg.n : 2;
    require(n == 2, "kernel-mass: heisenberg quadrature needs n = 2");
    std::vector<double> as =
        cfg.has_a ? std::vector<double>{cfg.a}
                  : std::vector<double>{-3.0, -2.0, -1.0};
    for (double a : as) {
      require(-2.0 * n < a && a < 0.0,
              "kernel-mass: heisenberg side requires -2n < a < 0");
      auto t0 = Clock::now();
      ModelParams mp = heis_params(n, a);
      std::mt19937_64 rng(cfg.seed + 1);
      std::uniform_real_distribution<double> U(-0.9, 0.9), R(0.3, 1.0);
      double worst = 0.0;
      for (int trial = 0; trial < 20; ++trial) {
        HeisPoint p;
        p.z = Eigen::VectorXd(2 * n);
        for (int i = 0; i < 2 * n - 2; ++i) p.z[i] = U(rng);
        double rho = R(rng), phi = kPi * U(rng);
        p.z[2 * n - 2] = rho * std::cos(phi);
        p.z[2 * n - 1] = rho * std::sin(phi);
        p.t = U(rng);
        double v = heis_poisson_transform_at(one, p, mp, opt);
        worst = std::max(worst, std::fabs(v - 1.0));
      }
      out.push_back(abs_check("kernel-mass/heis " + fmt("a=%g", a),
                              "kernel-mass", worst, 0.0, 1e-6, since(t0),
                              "20 points"));
    }
  }
  return out;
}

// -------------------------------------------------------------- closed form

std::vector<CheckRecord> suite_closed_form(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  QuadOptions opt = quad_options(cfg, 1e-8);

  if (cfg.run_real) {
    int n = cfg.has_n ? cfg.n : 3;
    double a = cfg.has_a ? cfg.a : -0.5;
    require(n >= 2 && 2.0 - n <= a && a < 1.0,
            "closed-form: real side requires n >= 2 and 2-n <= a < 1");
    auto t0 = Clock::now();
    ModelParams mp = real_params(n, a);
    auto f = [&](const Eigen::VectorXd& y) { return kinv_boundary_real(y, mp); };
    std::mt19937_64 rng(cfg.seed + 2);
    std::uniform_real_distribution<double> B(-1.5, 1.5), H(0.3, 1.3);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd x(n);
      for (int i = 0; i + 1 < n; ++i) x[i] = B(rng);
      x[n - 1] = H(rng);
      double got = poisson_transform_real_at(f, x, mp, opt);
      double want = kinv_solution_real(x, mp);
      worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
    }
    out.push_back(abs_check("closed-form/real sup rel", "invariant-family",
                            worst, 0.0, 1e-5, since(t0),
                            fmt("20 points, n=%g", n) + fmt(", a=%g", a)));
  }

  if (cfg.run_heis) {
    int n = cfg.has_n ? cfg.n : 2;
    double a = cfg.has_a ? cfg.a : -2.5;
    require(n == 2, "closed-form: heisenberg quadrature needs n = 2");
    require(-2.0 * n < a && a < 0.0,
            "closed-form: heisenberg side requires -2n < a < 0");
    auto t0 = Clock::now();
    ModelParams mp = heis_params(n, a);
    auto f = [&](const Eigen::VectorXd& q) { return kinv_boundary_heis(q, mp); };
    std::mt19937_64 rng(cfg.seed + 3);
    std::uniform_real_distribution<double> U(-0.6, 0.6), R(0.3, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      HeisPoint p;
      p.z = Eigen::VectorXd(2 * n);
      for (int i = 0; i < 2 * n - 2; ++i) p.z[i] = U(rng);
      double rho = R(rng), phi = kPi * U(rng);
      p.z[2 * n - 2] = rho * std::cos(phi);
      p.z[2 * n - 1] = rho * std::sin(phi);
      p.t = U(rng);
      double got = heis_poisson_transform_at(f, p, mp, opt);
      double want = kinv_solution_heis(p, mp);
      worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
    }
    out.push_back(abs_check("closed-form/heis sup rel", "invariant-family",
                            worst, 0.0, 1e-4, since(t0),
                            fmt("10 points, n=2, a=%g", a)));
  }
  return out;
}

// ------------------------------------------------------------ residual order

std::vector<CheckRecord> suite_residual_order(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;

  if (cfg.run_real) {
    int n = cfg.has_n ? cfg.n : 3;
    double a = cfg.has_a ? cfg.a : -0.5;
    require(n >= 2 && 2.0 - n <= a && a < 1.0,
            "residual-order: real side requires n >= 2 and 2-n <= a < 1");
    auto t0 = Clock::now();
    ModelParams mp = real_params(n, a);
    auto u = [&](const Eigen::VectorXd& x) { return kinv_solution_real(x, mp); };
    std::mt19937_64 rng(cfg.seed + 4);
    std::uniform_real_distribution<double> B(-1.0, 1.0), H(0.35, 1.0);
    double r1 = 0.0, r2 = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd x(n);
      for (int i = 0; i + 1 < n; ++i) x[i] = B(rng);
      x[n - 1] = H(rng);
      r1 = std::max(r1, std::fabs(delta_a_at(u, x, 0.02, a)));
      r2 = std::max(r2, std::fabs(delta_a_at(u, x, 0.01, a)));
    }
    double order = std::log2(r1 / r2);
    out.push_back(lower_check("residual-order/real", "residual-order", order,
                              2.0, 0.2, since(t0),
                              "sup residual over 20 points, h 0.02 -> 0.01"));
  }

  if (cfg.run_heis) {
    int n = cfg.has_n ? cfg.n : 2;
    double a = cfg.has_a ? cfg.a : -2.5;
    require(n == 2, "residual-order: heisenberg side needs n = 2");
    require(-2.0 * n < a && a < 0.0,
            "residual-order: heisenberg side requires -2n < a < 0");
    auto t0 = Clock::now();
    ModelParams mp = heis_params(n, a);
    int N = cfg.grid > 0 ? cfg.grid : 25;
    require(N >= 9 && N % 2 == 1, "residual-order: grid must be odd, >= 9");
    double box = cfg.box > 0.0 ? cfg.box : 1.2;
    auto u_eval = [&](const Eigen::VectorXd& red) {
      return kinv_solution_heis(reduced_to_heis(red), mp);
    };
    double sup[2];
    int dims[2] = {N, 2 * N - 1};
    for (int g = 0; g < 2; ++g) {
      GridGeometry geo(std::vector<int>(2 * n, dims[g]), box);
      RealField u = sample_reduced_field(geo, u_eval);
      RealField res = radial_reduced_apply(u, a);
      sup[g] = res.samples.cwiseAbs().maxCoeff();
    }
    double order = std::log2(sup[0] / sup[1]);
    out.push_back(lower_check(
        "residual-order/heis", "residual-order", order, 2.0, 0.2, since(t0),
        fmt("sup reduced residual, %g", N) + fmt(" -> %g points per axis",
                                                 2 * N - 1)));
  }
  return out;
}

// ------------------------------------------------------------- isometry real

std::vector<CheckRecord> suite_isometry_real(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  if (!cfg.run_real) return out;
  const int Nb = cfg.grid > 0 ? cfg.grid : 241;
  require(Nb >= 61 && Nb % 2 == 1, "isometry-real: grid must be odd, >= 61");

  for (int n : {2, 3}) {
    for (double a : {-0.5, 0.0}) {
      auto t0 = Clock::now();
      double cst = isometry_constant_real(a);
      double worst = 0.0;
      for (double sigma : {1.0, 1.25, 1.5, 1.75, 2.0}) {
        double box = cfg.box > 0.0 ? cfg.box * sigma : 4.8 * sigma;
        GridGeometry bgeo(std::vector<int>(n - 1, Nb), box);
        std::vector<int> full(n, Nb);
        GridGeometry geo(full, box);
        RealField f = sample_field(bgeo, [&](const Eigen::VectorXd& y) {
          return std::exp(-0.5 * y.squaredNorm() / (sigma * sigma));
        });
        SpectralField uhat = solution_spectrum_real(f, geo, a);
        double num = sobolev_norm_sq(uhat, 0.5 * (2.0 - a));
        double den = sobolev_norm_sq(f, 0.5 * (1.0 - a));
        worst = std::max(worst, std::fabs(num / den / cst - 1.0));
      }
      out.push_back(abs_check(
          "isometry-real/" + fmt("n=%g", n) + fmt(" a=%g", a), "energy-ratio",
          worst, 0.0, 0.02, since(t0),
          fmt("5 gaussian widths, %g points per axis", Nb)));
    }
  }
  return out;
}

// ---------------------------------------------------------------- lp bounds

std::vector<CheckRecord> suite_lp_bounds(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  const int trials = 50;

  if (cfg.run_real) {
    const int n = 3;
    const double a = 0.9;
    ModelParams mp = real_params(n, a);
    double base = lp_bound_base_real(n, a);
    GridGeometry bgeo({121, 121}, 9.0);
    int Nu = cfg.grid > 0 ? cfg.grid : 49;
    require(Nu >= 25 && Nu % 2 == 1, "lp-bounds: grid must be odd, >= 25");
    GridGeometry ugeo(std::vector<int>(n, Nu), 6.0);
    std::mt19937_64 rng(cfg.seed + 5);
    std::uniform_real_distribution<double> A(0.2, 1.0), L(0.7, 1.6),
        C(-0.8, 0.8);
    double worst[3] = {0.0, 0.0, 0.0};
    auto t0 = Clock::now();
    for (int trial = 0; trial < trials; ++trial) {
      int m = 2 + static_cast<int>(rng() % 2);
      std::vector<double> alpha(m), lam(m);
      std::vector<Eigen::VectorXd> b(m);
      for (int i = 0; i < m; ++i) {
        alpha[i] = A(rng);
        lam[i] = L(rng);
        b[i] = Eigen::VectorXd(n - 1);
        for (int j = 0; j < n - 1; ++j) b[i][j] = C(rng);
      }
      RealField f = sample_field(bgeo, [&](const Eigen::VectorXd& y) {
        double s = 0.0;
        for (int i = 0; i < m; ++i)
          s += alpha[i] * kinv_boundary_real(lam[i] * (y - b[i]), mp);
        return s;
      });
      RealField u = sample_field(ugeo, [&](const Eigen::VectorXd& x) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
          Eigen::VectorXd xs(n);
          xs.head(n - 1) = lam[i] * (x.head(n - 1) - b[i]);
          xs[n - 1] = lam[i] * x[n - 1];
          s += alpha[i] * kinv_solution_real(xs, mp);
        }
        return s;
      });
      const double ps[3] = {2.0, 4.0, kInf};
      for (int ip = 0; ip < 3; ++ip) {
        double p = ps[ip];
        double q = std::isinf(p) ? kInf : n * p / (n - 1.0);
        double bound = std::isinf(q) ? 1.0 : std::pow(base, 1.0 / q);
        double ratio = lp_norm(u, q) / lp_norm(f, p);
        worst[ip] = std::max(worst[ip], ratio / bound);
      }
    }
    double secs = since(t0) / 3.0;
    const char* names[3] = {"lp-bounds/real p=2", "lp-bounds/real p=4",
                            "lp-bounds/real p=inf"};
    for (int ip = 0; ip < 3; ++ip)
      out.push_back(upper_check(names[ip], "lp-contraction", worst[ip], 1.0,
                                0.0, secs,
                                "max ratio / bound over 50 mixtures, n=3, "
                                "a=0.9"));
  }

  if (cfg.run_heis) {
    const int n = 2;
    const double a = -1.0;
    ModelParams mp = heis_params(n, a);
    double base = lp_bound_base_heis(n, a);
    GridGeometry bgeo({41, 41, 41}, 4.0);
    int Nu = cfg.grid > 0 ? cfg.grid : 21;
    require(Nu >= 13 && Nu % 2 == 1, "lp-bounds: grid must be odd, >= 13");
    GridGeometry ugeo(std::vector<int>(2 * n, Nu), 2.4);
    std::mt19937 rng(static_cast<unsigned>(cfg.seed + 6));
    double worst[3] = {0.0, 0.0, 0.0};
    auto t0 = Clock::now();
    for (int trial = 0; trial < trials; ++trial) {
      int m = 2 + static_cast<int>(rng() % 2);
      std::uniform_real_distribution<double> A(0.2, 1.0), R(0.7, 1.6),
          C(-0.8, 0.8);
      std::vector<double> alpha(m), r(m);
      std::vector<HeisPoint> qb(m), qe(m);
      for (int i = 0; i < m; ++i) {
        alpha[i] = A(rng);
        r[i] = R(rng);
        Eigen::VectorXd qf(2 * n - 1);
        for (int j = 0; j < qf.size(); ++j) qf[j] = C(rng);
        qb[i] = heis_from_flat(qf);
        qe[i].z = Eigen::VectorXd::Zero(2 * n);
        qe[i].z.head(2 * n - 2) = qf.head(2 * n - 2);
        qe[i].t = qf[2 * n - 2];
      }
      RealField f = sample_field(bgeo, [&](const Eigen::VectorXd& q) {
        double s = 0.0;
        HeisPoint qp = heis_from_flat(q);
        for (int i = 0; i < m; ++i) {
          HeisPoint rel =
              heis_dilate(heis_mul(heis_inv(qb[i]), qp), 1.0 / r[i]);
          s += alpha[i] * kinv_boundary_heis(heis_to_flat(rel), mp);
        }
        return s;
      });
      RealField u = sample_reduced_field(ugeo, [&](const Eigen::VectorXd& red) {
        HeisPoint p = reduced_to_heis(red);
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
          HeisPoint rel =
              heis_dilate(heis_mul(heis_inv(qe[i]), p), 1.0 / r[i]);
          s += alpha[i] * kinv_solution_heis(rel, mp);
        }
        return s;
      });
      const double ps[3] = {2.0, 4.0, kInf};
      for (int ip = 0; ip < 3; ++ip) {
        double p = ps[ip];
        double q = std::isinf(p) ? kInf : (n + 1.0) * p / n;
        double bound = std::isinf(q) ? 1.0 : std::pow(base, 1.0 / q);
        double ratio = lp_norm_reduced(u, q) / lp_norm(f, p);
        worst[ip] = std::max(worst[ip], ratio / bound);
      }
    }
    double secs = since(t0) / 3.0;
    const char* names[3] = {"lp-bounds/heis p=2", "lp-bounds/heis p=4",
                            "lp-bounds/heis p=inf"};
    for (int ip = 0; ip < 3; ++ip)
      out.push_back(upper_check(names[ip], "lp-contraction", worst[ip], 1.0,
                                0.0, secs,
                                "max ratio / bound over 50 mixtures, n=2, "
                                "a=-1"));
  }
  return out;
}

// ---------------------------------------------------------------- mixed bvp

std::vector<CheckRecord> suite_mixed_bvp(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;

  if (cfg.run_real) {
    // Neumann-type problem j = 1; n = 4 admits it for a in (-2, -1).
    const int n = 4, j = 1;
    const double a = -1.5;
    ModelParams mp = real_params(n, a);
    auto g = [](const Eigen::VectorXd& y) {
      return std::exp(-0.5 * y.squaredNorm());
    };

    {
      auto t0 = Clock::now();
      QuadOptions opt = quad_options(cfg, 1e-9);
      auto uf = [&](const Eigen::VectorXd& p) {
        return higher_poisson_real_at(g, j, p, mp, opt);
      };
      Eigen::VectorXd xi(4);
      xi << 0.3, 0.1, -0.2, 0.6;
      double lam = j * (j + a - 1.0);
      double uval = uf(xi);
      double res = delta_a_at(uf, xi, 0.015, a) - lam * uval;
      out.push_back(abs_check("mixed-bvp/neumann eigen", "neumann-pair",
                              std::fabs(res / (lam * uval)), 0.0, 1e-3,
                              since(t0), "n=4, a=-1.5, stencil h=0.015"));
    }

    {
      // Boundary recovery: central derivative across the slice carries the
      // second branch |x_n|^{1-a-j}, so the h and 4h values extrapolate as
      // 2 D(h) - D(4h).
      auto t0 = Clock::now();
      QuadOptions opt = quad_options(cfg, 1e-7);
      const double h = 0.02;
      std::vector<Eigen::VectorXd> shifts;
      Eigen::VectorXd c0 = Eigen::VectorXd::Zero(3), c1(3), c2(3);
      c1 << 0.3, 0.0, 0.2;
      c2 << -0.2, 0.4, -0.1;
      shifts = {c0, c1, c2};
      double worst = 0.0;
      for (const auto& c : shifts) {
        auto gc = [&](const Eigen::VectorXd& y) {
          return std::exp(-0.5 * (y - c).squaredNorm());
        };
        double dval[2];
        for (int lev = 0; lev < 2; ++lev) {
          double step = lev == 0 ? h : 4.0 * h;
          GridGeometry geo({3, 3, 3, 5}, step);
          RealField u(geo);
          Eigen::VectorXd x(4);
          x << 0.0, 0.0, 0.0, step;
          double up = higher_poisson_real_at(gc, j, x, mp, opt);
          u.at({1, 1, 1, 3}) = up;
          u.at({1, 1, 1, 1}) = -up;
          dval[lev] = boundary_op_real(u, j, a).at({1, 1, 1});
        }
        double extrap = 2.0 * dval[0] - dval[1];
        double want = gc(Eigen::VectorXd::Zero(3));
        worst = std::max(worst, std::fabs(extrap - want) / std::fabs(want));
      }
      out.push_back(abs_check("mixed-bvp/neumann inversion", "neumann-pair",
                              worst, 0.0, 2e-2, since(t0),
                              "3 boundary points, h=0.02"));
    }

    for (double nu : {0.5, 1.0}) {
      auto t0 = Clock::now();
      QuadOptions opt = quad_options(cfg, 1e-10);
      const int nn = 2;
      const double aa = -0.5;
      ModelParams mpc = real_params(nn, aa);
      auto f = [](const Eigen::VectorXd& y) {
        return std::exp(-4.0 * y.squaredNorm());
      };
      auto ur = [&](const Eigen::VectorXd& p) {
        return continuous_family_real_at(f, nu, 0, p, mpc, opt);
      };
      Eigen::VectorXd x(2);
      x << 0.3, 0.7;
      double lam = -(0.25 * (1.0 - aa) * (1.0 - aa) + nu * nu);
      const double hstep = 0.02;
      std::complex<double> lap(0.0, 0.0), dn(0.0, 0.0);
      std::complex<double> center = ur(x);
      for (int axis = 0; axis < nn; ++axis) {
        Eigen::VectorXd xp = x, xq = x;
        xp[axis] += hstep;
        xq[axis] -= hstep;
        auto fp = ur(xp), fq = ur(xq);
        lap += (fp - 2.0 * center + fq) / (hstep * hstep);
        if (axis == nn - 1) dn = (fp - fq) / (2.0 * hstep);
      }
      std::complex<double> res =
          x[1] * x[1] * lap + aa * x[1] * dn - lam * center;
      out.push_back(abs_check("mixed-bvp/family eigen " + fmt("nu=%g", nu),
                              "family-eigen",
                              std::abs(res) / std::abs(lam * center), 0.0,
                              1e-3, since(t0),
                              "n=2, a=-0.5, stencil h=0.02"));
    }
  }

  if (cfg.run_heis) {
    auto t0 = Clock::now();
    const int n = 2, k = 1;
    const double a = -5.0;
    ModelParams mp = heis_params(n, a);
    GridGeometry geo(std::vector<int>(2 * n, 33), 0.6);
    RealField u = sample_reduced_field(geo, [&](const Eigen::VectorXd& red) {
      return higher_kinv_solution_heis(reduced_to_heis(red), k, mp);
    });
    double lam = eigenvalue(Field::heisenberg, k, a);
    RealField res = radial_reduced_apply(u, a);
    for (std::int64_t i = 0; i < geo.size(); ++i) {
      auto idx = geo.unflatten(i);
      bool margin = false;
      for (int ax = 0; ax < geo.dim(); ++ax)
        if (idx[ax] == 0 || idx[ax] == geo.dims[ax] - 1) margin = true;
      res.samples[i] = margin ? 0.0 : res.samples[i] - lam * u.samples[i];
    }
    double ratio = res.samples.cwiseAbs().maxCoeff() /
                   u.samples.cwiseAbs().maxCoeff();
    out.push_back(abs_check("mixed-bvp/heis eigen", "higher-pair", ratio, 0.0,
                            1e-2, since(t0),
                            "k=1, n=2, a=-5, 33 points per axis"));
  }
  return out;
}

// ------------------------------------------------------------------- series

std::vector<CheckRecord> suite_series(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  int nb = cfg.has_n ? cfg.n : 2;
  double ab = cfg.has_a ? cfg.a : -2.0;
  require(nb >= 1 && -2.0 * nb < ab && ab < 0.0,
          "series: requires -2n < a < 0");
  ModelParams base = heis_params(nb, ab);

  // Deterministic 20-point (n, a) sweep with a rotating mode index.
  struct Combo {
    ModelParams mp;
    int k;
  };
  std::vector<Combo> sweep;
  int idx = 0;
  for (int n : {2, 3, 4, 5})
    for (double frac : {0.15, 0.35, 0.55, 0.75, 0.95})
      sweep.push_back({heis_params(n, -2.0 * n * frac), (idx++) % 3});

  {
    auto t0 = Clock::now();
    double worst = recursion_residual(radial_coeffs(0, 200, base));
    for (const auto& c : sweep)
      worst = std::max(worst, recursion_residual(radial_coeffs(c.k, 200, c.mp)));
    out.push_back(abs_check("recursion/sweep", "coeff-recursion", worst, 0.0,
                            1e-12, since(t0),
                            "M=200, 20-point sweep plus base point"));
  }

  for (int k : {0, 1}) {
    auto t0 = Clock::now();
    double got = partial_trace_factor(k, 10000, base);
    double want = (ab - 2.0 * nb - 4.0 * k) / (2.0 * ab);
    out.push_back(rel_check("trace-sum/" + fmt("k=%g", k), "trace-sum", got,
                            want, 1e-10, since(t0),
                            fmt("M=10000, n=%g", nb) + fmt(", a=%g", ab)));
  }
  {
    auto t0 = Clock::now();
    double worst = 0.0;
    for (const auto& c : sweep) {
      double got = partial_trace_factor(c.k, 10000, c.mp);
      double want = (c.mp.a - 2.0 * c.mp.n - 4.0 * c.k) / (2.0 * c.mp.a);
      worst = std::max(worst, std::fabs(got - want));
    }
    out.push_back(abs_check("trace-sum/sweep", "trace-sum", worst, 0.0, 1e-10,
                            since(t0), "M=10000, 20-point sweep"));
  }

  {
    auto t0 = Clock::now();
    std::mt19937_64 rng(cfg.seed + 7);
    std::uniform_real_distribution<double> X(0.05, 3.0), D(0.1, 3.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      double x = X(rng);
      double y = x + 1.0 + D(rng);
      double got = gauss_2f1(1.0, x, y, 1.0);
      double want = (y - 1.0) / (y - x - 1.0);
      worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
    }
    out.push_back(abs_check("gauss-sum/random", "gauss-sum", worst, 0.0,
                            1e-12, since(t0), "100 admissible (x, y)"));
  }

  {
    auto t0 = Clock::now();
    double kdev = 0.0, cdev = 0.0;
    for (const auto& c : sweep) {
      double r0 = isometry_weight_ratio(0, 2000, c.mp);
      for (int k = 1; k <= 20; ++k)
        kdev = std::max(
            kdev, std::fabs(isometry_weight_ratio(k, 2000, c.mp) - r0));
      cdev = std::max(
          cdev, std::fabs(r0 - kPi * c.mp.a / (c.mp.a - 2.0 * c.mp.n)));
    }
    double secs = since(t0) / 2.0;
    out.push_back(abs_check("mode-ratio/k-dev", "mode-ratio", kdev, 0.0,
                            1e-12, secs, "k <= 20, 20-point sweep"));
    out.push_back(abs_check("mode-ratio/closed-form", "mode-ratio", cdev, 0.0,
                            1e-10, secs, "pi a/(a-2n), 20-point sweep"));
  }
  return out;
}

// ---------------------------------------------------------------------- ode

std::vector<CheckRecord> suite_ode(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  const std::vector<double> as =
      cfg.has_a ? std::vector<double>{cfg.a}
                : std::vector<double>{-1.0, -0.5, 0.0, 0.5};
  for (double a : as) require(a < 1.0, "ode: requires a < 1");

  {
    auto t0 = Clock::now();
    std::mt19937_64 rng(cfg.seed + 8);
    std::uniform_real_distribution<double> Z(-6.0, 6.0);
    double worst = 0.0;
    for (double a : as) {
      OdeSolution sol = ode_solution(OdeSolution::Branch::phi1, a);
      for (int trial = 0; trial < 100 / static_cast<int>(as.size()); ++trial)
        worst = std::max(worst, std::fabs(ode_residual(sol, Z(rng))));
    }
    out.push_back(abs_check("ode/phi1 residual", "ode-kernel", worst, 0.0,
                            1e-10, since(t0), "100 points in (-6, 6)"));
  }

  {
    auto t0 = Clock::now();
    QuadOptions opt = quad_options(cfg, 1e-10);
    double worst = 0.0;
    for (double a : as) {
      double got = phi1_integral(a, opt);
      double want = std::sqrt(kPi) * gamma_fn(0.5 * (1.0 - a)) /
                    gamma_fn(0.5 * (2.0 - a));
      worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
    }
    out.push_back(abs_check("ode/phi1 integral", "ode-mass", worst, 0.0, 1e-8,
                            since(t0), "adaptive quadrature vs gamma ratio"));
  }
  return out;
}

// --------------------------------------------------------------- multiplier

std::vector<CheckRecord> suite_multiplier(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  if (!cfg.run_real) return out;
  double a = cfg.has_a ? cfg.a : -0.5;
  require(a < 1.0, "multiplier: requires a < 1");
  auto gaussian = [](const Eigen::VectorXd& y) {
    return std::exp(-y.squaredNorm());
  };

  {
    auto t0 = Clock::now();
    ModelParams mp = real_params(2, a);
    GridGeometry bgeo({1201}, 30.0);
    GridGeometry geo({1201, 41}, 30.0);
    RealField f = sample_field(bgeo, gaussian);
    RealField u = poisson_multiplier_real(f, geo, a);
    QuadOptions opt = quad_options(cfg, 1e-10);
    double worst = 0.0;
    for (auto [i, k] : {std::pair{600, 30}, std::pair{580, 12},
                        std::pair{620, 24}, std::pair{640, 32},
                        std::pair{560, 28}}) {
      Eigen::VectorXd x(2);
      x << bgeo.coord(0, i), geo.coord(1, k);
      double want = poisson_transform_real_at(gaussian, x, mp, opt);
      double got = u.samples[static_cast<std::int64_t>(i) * 41 + k];
      worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
    }
    out.push_back(abs_check("multiplier/n=2", "spectral-oracle", worst, 0.0,
                            1e-4, since(t0),
                            "5 interior nodes, 1201 x 41, half width 30"));
  }

  {
    auto t0 = Clock::now();
    ModelParams mp = real_params(3, a);
    GridGeometry bgeo({161, 161}, 8.0);
    GridGeometry geo({161, 161, 17}, 8.0);
    RealField f = sample_field(bgeo, gaussian);
    RealField u = poisson_multiplier_real(f, geo, a);
    QuadOptions opt = quad_options(cfg, 1e-9);
    double worst = 0.0;
    for (auto [i, j, k] :
         {std::tuple{80, 80, 12}, std::tuple{76, 83, 11}, std::tuple{85, 78, 13},
          std::tuple{82, 81, 14}}) {
      Eigen::VectorXd x(3);
      x << bgeo.coord(0, i), bgeo.coord(1, j), geo.coord(2, k);
      double want = poisson_transform_real_at(gaussian, x, mp, opt);
      double got =
          u.samples[(static_cast<std::int64_t>(i) * 161 + j) * 17 + k];
      worst = std::max(worst, std::fabs(got - want) / std::fabs(want));
    }
    out.push_back(abs_check("multiplier/n=3", "spectral-oracle", worst, 0.0,
                            1e-4, since(t0),
                            "4 interior nodes, 161 x 161 x 17, half width 8"));
  }
  return out;
}

struct SuiteInfo {
  const char* name;
  bool real;
  bool heis;
  ModelParams stamp;
  std::vector<CheckRecord> (*run)(const SuiteConfig&);
};

const SuiteInfo kSuites[] = {
    {"constants", true, true, real_params(3, 0.0), suite_constants},
    {"kernel-mass", true, true, real_params(3, 0.0), suite_kernel_mass},
    {"closed-form", true, true, real_params(3, -0.5), suite_closed_form},
    {"residual-order", true, true, real_params(3, -0.5),
     suite_residual_order},
    {"isometry-real", true, false, real_params(3, 0.0), suite_isometry_real},
    {"lp-bounds", true, true, real_params(3, 0.9), suite_lp_bounds},
    {"mixed-bvp", true, true, real_params(4, -1.5), suite_mixed_bvp},
    {"series", false, true, heis_params(2, -2.0), suite_series},
    {"ode", true, false, real_params(2, -0.5), suite_ode},
    {"multiplier", true, false, real_params(2, -0.5), suite_multiplier},
};

const SuiteInfo& find_suite(const std::string& name) {
  for (const auto& s : kSuites)
    if (name == s.name) return s;
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : kSuites) out.push_back(s.name);
  return out;
}

bool suite_covers(const std::string& name, Field field) {
  const SuiteInfo& s = find_suite(name);
  return field == Field::euclidean ? s.real : s.heis;
}

VerificationReport run_suite(const std::string& name,
                             const SuiteConfig& cfg) {
  const SuiteInfo& s = find_suite(name);
  VerificationReport rep;
  rep.suite = name;
  rep.params = s.stamp;
  if (cfg.has_n) rep.params.n = cfg.n;
  if (cfg.has_a) rep.params.a = cfg.a;
  rep.env.grid = cfg.grid;
  rep.env.box = cfg.box;
  rep.env.quad_tol = cfg.tol > 0.0 ? cfg.tol : 1e-8;
  rep.env.seed = cfg.seed;
  rep.checks = s.run(cfg);
  return rep;
}

}  // namespace poisext
