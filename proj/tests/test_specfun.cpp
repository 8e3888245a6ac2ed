#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <random>
#include <utility>

#include "poisext/model.hpp"
#include "poisext/quadrature.hpp"
#include "poisext/rational.hpp"
#include "poisext/specfun.hpp"

using namespace poisext;

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kEuler = 0.57721566490153286061;
constexpr double kZeta3 = 1.20205690315959428540;

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}
}  // namespace

TEST_CASE("rational arithmetic and normalization") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
  CHECK((Rational(1, 2) - Rational(1, 3)) == Rational(1, 6));
  CHECK((Rational(1, 2) * Rational(2, 3)) == Rational(1, 3));
  CHECK((Rational(1, 2) / Rational(1, 4)) == Rational(2));
  CHECK((-Rational(3, 5)).str() == "-3/5");
  CHECK(Rational(7).str() == "7");
  CHECK(Rational(3, 7).to_double() == doctest::Approx(3.0 / 7).epsilon(1e-15));
  CHECK(Rational(0).is_zero());
  CHECK(Rational(1, 3) != Rational(1, 4));
}

TEST_CASE("rational decimal parsing") {
  CHECK(Rational::from_decimal("2.5") == Rational(5, 2));
  CHECK(Rational::from_decimal("-0.125") == Rational(-1, 8));
  CHECK(Rational::from_decimal("3") == Rational(3));
  CHECK(Rational::from_decimal("+0.04") == Rational(1, 25));
  CHECK_THROWS_AS(Rational::from_decimal("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_decimal(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_decimal("x"), std::invalid_argument);
}

TEST_CASE("rational overflow and division by zero throw") {
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  Rational big(4611686018427387904LL);  // 2^62
  Rational sq = big * big;
  CHECK_THROWS_AS(sq * big, std::overflow_error);
}

TEST_CASE("gamma function values and recurrence") {
  CHECK(rel_err(gamma_fn(1.0), 1.0) < 1e-14);
  CHECK(rel_err(gamma_fn(2.0), 1.0) < 1e-14);
  CHECK(rel_err(gamma_fn(5.0), 24.0) < 1e-13);
  CHECK(rel_err(gamma_fn(0.5), std::sqrt(kPi)) < 1e-13);
  CHECK(rel_err(gamma_fn(-0.5), -2.0 * std::sqrt(kPi)) < 1e-13);
  CHECK(rel_err(gamma_fn(-1.5), 4.0 * std::sqrt(kPi) / 3.0) < 1e-13);
  for (double x : {0.3, 1.7, 5.5, 20.25, 47.5})
    CHECK(rel_err(gamma_fn(x + 1.0), x * gamma_fn(x)) < 1e-12);
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-3.0), std::domain_error);
}

TEST_CASE("gamma reflection identity at random points") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  int tested = 0;
  while (tested < 30) {
    double x = dist(rng);
    if (std::fabs(x - std::round(x)) < 0.05) continue;
    double lhs = gamma_fn(x) * gamma_fn(1.0 - x) * std::sin(kPi * x);
    CHECK(rel_err(lhs, kPi) < 1e-11);
    ++tested;
  }
}

TEST_CASE("log gamma matches gamma on the positive axis") {
  for (double x : {0.5, 3.3, 17.0, 42.5})
    CHECK(rel_err(log_gamma(x), std::log(gamma_fn(x))) < 1e-12);
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
}

TEST_CASE("polygamma values and recurrences") {
  CHECK(rel_err(digamma(1.0), -kEuler) < 1e-12);
  CHECK(rel_err(digamma(0.5), -kEuler - 2.0 * std::log(2.0)) < 1e-12);
  CHECK(rel_err(trigamma(1.0), kPi * kPi / 6.0) < 1e-12);
  CHECK(rel_err(trigamma(0.5), kPi * kPi / 2.0) < 1e-12);
  CHECK(rel_err(tetragamma(1.0), -2.0 * kZeta3) < 1e-12);
  CHECK(rel_err(tetragamma(0.5), -14.0 * kZeta3) < 1e-12);
  for (double x : {0.37, 2.6, 5.2, 9.9}) {
    CHECK(rel_err(digamma(x), digamma(x + 1.0) - 1.0 / x) < 1e-12);
    CHECK(rel_err(trigamma(x), trigamma(x + 1.0) + 1.0 / (x * x)) < 1e-12);
    CHECK(rel_err(tetragamma(x), tetragamma(x + 1.0) - 2.0 / (x * x * x)) <
          1e-12);
  }
}

TEST_CASE("pochhammer products") {
  CHECK(pochhammer(3.7, 0) == 1.0);
  CHECK(rel_err(pochhammer(2.0, 5), 2.0 * 3 * 4 * 5 * 6) < 1e-14);
  CHECK(rel_err(pochhammer(-2.5, 3), -2.5 * -1.5 * -0.5) < 1e-14);
  CHECK(pochhammer(-3.0, 5) == 0.0);
  double direct = 1.0;
  for (int i = 0; i < 100; ++i) direct *= 3.2 + i;
  CHECK(rel_err(pochhammer(3.2, 100), direct) < 1e-11);
}

TEST_CASE("pochhammer ratio series matches closed form") {
  const std::pair<double, double> cases[] = {
      {0.5, 2.5}, {1.25, 3.0}, {2.0, 4.5}, {0.25, 1.6}, {3.5, 6.2}};
  for (auto [x, y] : cases) {
    double closed = (y - 1.0) / (y - x - 1.0);
    for (int terms : {32, 64, 256}) {
      auto rs = pochhammer_ratio_sum(x, y, terms);
      CHECK(rel_err(rs.value, closed) < 1e-12);
      CHECK(std::fabs(rs.value - closed) <=
            rs.tail_error + 1e-13 * std::fabs(closed));
      CHECK(rs.tail > 0.0);
    }
  }
  CHECK_THROWS_AS(pochhammer_ratio_sum(-0.5, 2.0, 64), std::domain_error);
  CHECK_THROWS_AS(pochhammer_ratio_sum(1.0, 1.9, 64), std::domain_error);
}

TEST_CASE("2f1 binomial identity across all evaluation branches") {
  const double alpha = 0.7, beta = 2.3;
  for (double z : {-3.0, -0.93, -0.51, -0.3, 0.2, 0.49, 0.51, 0.75, 0.9,
                   0.97})
    CHECK(rel_err(gauss_2f1(alpha, beta, beta, z), std::pow(1.0 - z, -alpha)) <
          1e-11);
}

TEST_CASE("2f1 logarithm identity inside the series disk") {
  for (double z : {-0.45, -0.2, 0.3, 0.5})
    CHECK(rel_err(gauss_2f1(1.0, 1.0, 2.0, z), -std::log1p(-z) / z) < 1e-12);
}

TEST_CASE("2f1 logarithmic connection near z equal one") {
  // gamma - alpha - beta = 0
  for (double z : {0.6, 0.8, 0.95, 0.99})
    CHECK(rel_err(gauss_2f1(1.0, 1.0, 2.0, z), -std::log1p(-z) / z) < 1e-12);
  for (double z : {0.55, 0.75, 0.9}) {
    double r = std::sqrt(z);
    CHECK(rel_err(gauss_2f1(0.5, 1.0, 1.5, z), std::atanh(r) / r) < 1e-12);
  }
  // gamma - alpha - beta = 1: sum 2 z^m / ((m+1)(m+2))
  for (double z : {0.6, 0.85, 0.97}) {
    double want = 2.0 * ((1.0 - z) * std::log1p(-z) + z) / (z * z);
    CHECK(rel_err(gauss_2f1(1.0, 1.0, 3.0, z), want) < 1e-11);
  }
}

TEST_CASE("2f1 logarithmic connection against the euler integral") {
  // Fractional parameters with gamma - alpha - beta in {1, 2, -1}; the
  // last one routes through the Euler transformation first.
  struct Probe {
    double alpha, beta, gamma;
  };
  for (const auto& pr : {Probe{0.5, 0.5, 2.0}, Probe{0.6, 0.9, 3.5},
                         Probe{1.5, 1.5, 2.0}}) {
    for (double z : {0.62, 0.9}) {
      QuadOptions opt;
      opt.abs_tol = 1e-13;
      opt.rel_tol = 1e-13;
      // t = sin^2(theta) keeps the endpoint factors t^{beta-1} and
      // (1-t)^{gamma-beta-1} smooth for half-integer exponents.
      auto res = integrate_segment(
          [&](double th) {
            double s = std::sin(th), c = std::cos(th);
            return 2.0 * std::pow(s, 2.0 * pr.beta - 1.0) *
                   std::pow(c, 2.0 * (pr.gamma - pr.beta) - 1.0) *
                   std::pow(1.0 - z * s * s, -pr.alpha);
          },
          0.0, 1.5707963267948966, opt);
      double want = gamma_fn(pr.gamma) / (gamma_fn(pr.beta) *
                    gamma_fn(pr.gamma - pr.beta)) * res.value;
      CHECK(rel_err(gauss_2f1(pr.alpha, pr.beta, pr.gamma, z), want) < 1e-11);
    }
  }
  // Euler transformation onto a terminating series.
  for (double z : {0.7, 0.92})
    CHECK(rel_err(gauss_2f1(2.0, 0.7, 0.7, z), std::pow(1.0 - z, -2.0)) <
          1e-12);
}

TEST_CASE("2f1 arctangent identity") {
  for (double z : {0.3, 0.6, 1.0, 2.0, 6.0})
    CHECK(rel_err(gauss_2f1(0.5, 1.0, 1.5, -z * z), std::atan(z) / z) <
          1e-11);
}

TEST_CASE("2f1 arcsine identity up to the connection region") {
  for (double z : {0.3, 0.7, 0.9, 0.995})
    CHECK(rel_err(gauss_2f1(0.5, 0.5, 1.5, z * z), std::asin(z) / z) < 1e-10);
}

TEST_CASE("2f1 terminating series gives chebyshev polynomials") {
  // Terminating sums alternate with terms up to ~1e6, so a few digits are
  // lost to cancellation near z = 1.
  for (int j : {4, 7, 10})
    for (double x : {-0.9, -0.3, 0.2, 0.8}) {
      double got = gauss_2f1(-j, j, 0.5, (1.0 - x) / 2.0);
      CHECK(std::fabs(got - std::cos(j * std::acos(x))) < 1e-8);
    }
}

TEST_CASE("2f1 terminating series survives nonpositive gamma") {
  CHECK(rel_err(gauss_2f1(-1.0, 0.7, -2.0, 0.4), 1.0 + 0.7 * 0.4 / 2.0) <
        1e-14);
  double want = 1.0, term = 1.0;
  for (int m = 0; m < 3; ++m) {
    term *= (-3.0 + m) * (2.0 + m) / ((-5.0 + m) * (m + 1)) * 0.6;
    want += term;
  }
  CHECK(rel_err(gauss_2f1(-3.0, 2.0, -5.0, 0.6), want) < 1e-13);
}

TEST_CASE("2f1 at z equal one agrees with gamma ratios and ratio sums") {
  double want = gamma_fn(2.5) * gamma_fn(1.3) / (gamma_fn(2.0) * gamma_fn(1.8));
  CHECK(rel_err(gauss_2f1(0.5, 0.7, 2.5, 1.0), want) < 1e-12);
  for (auto [x, y] : {std::pair{0.5, 2.5}, {1.25, 3.0}, {2.0, 4.5}}) {
    double closed = (y - 1.0) / (y - x - 1.0);
    CHECK(rel_err(gauss_2f1(1.0, x, y, 1.0), closed) < 1e-12);
    CHECK(rel_err(pochhammer_ratio_sum(x, y, 64).value, closed) < 1e-12);
  }
}

TEST_CASE("2f1 derivative") {
  for (double z : {-0.8, 0.3})
    CHECK(rel_err(gauss_2f1_derivative(0.7, 2.3, 2.3, z),
                  0.7 * std::pow(1.0 - z, -1.7)) < 1e-11);
}

TEST_CASE("2f1 rejects poles and arguments beyond one") {
  CHECK_THROWS_AS(gauss_2f1(0.3, 0.7, -1.0, 0.3), std::domain_error);
  CHECK_THROWS_AS(gauss_2f1(0.3, 0.7, 1.5, 1.2), std::domain_error);
  CHECK_THROWS_AS(gauss_2f1(2.0, 1.5, 2.0, 1.0), std::domain_error);
}

namespace {
using CoeffMap = std::map<std::pair<int, int>, Rational>;

CoeffMap coeff_map(const GegenbauerPolyExact& p, int dx, int dy,
                   const Rational& scale) {
  CoeffMap m;
  for (const auto& t : p.terms) {
    Rational c = t.coeff * scale;
    if (!c.is_zero()) m[{t.xpow + dx, t.ypow + dy}] += c;
  }
  return m;
}
}  // namespace

TEST_CASE("gegenbauer recurrence holds exactly for all coefficients") {
  for (Rational alpha : {Rational(3, 4), Rational(-1, 4), Rational(5, 2)}) {
    for (int j = 2; j <= 20; ++j) {
      auto cj = gegenbauer_two_var_exact(j, alpha);
      auto cj1 = gegenbauer_two_var_exact(j - 1, alpha);
      auto cj2 = gegenbauer_two_var_exact(j - 2, alpha);
      CoeffMap acc = coeff_map(cj, 0, 0, Rational(j));
      Rational m1 = Rational(-2) * (alpha + Rational(j - 1));
      for (auto& [k, v] : coeff_map(cj1, 0, 1, m1)) acc[k] += v;
      Rational m2 = Rational(2) * alpha + Rational(j - 2);
      for (auto& [k, v] : coeff_map(cj2, 1, 0, m2)) acc[k] += v;
      for (auto& [k, v] : acc) {
        CAPTURE(j);
        CHECK(v.is_zero());
      }
    }
  }
}

TEST_CASE("gegenbauer low degrees and homogeneity") {
  auto c0 = gegenbauer_two_var_exact(0, Rational(5, 8));
  REQUIRE(c0.terms.size() == 1);
  CHECK(c0.terms[0].coeff == Rational(1));
  auto c1 = gegenbauer_two_var_exact(1, Rational(5, 8));
  REQUIRE(c1.terms.size() == 1);
  CHECK(c1.terms[0].coeff == Rational(5, 4));
  CHECK(c1.terms[0].ypow == 1);
  for (int j = 0; j <= 20; ++j) {
    auto p = gegenbauer_two_var_exact(j, Rational(3, 4));
    for (const auto& t : p.terms) CHECK(2 * t.xpow + t.ypow == j);
  }
}

TEST_CASE("gegenbauer exact and floating versions agree") {
  for (int j : {5, 12}) {
    auto pe = gegenbauer_two_var_exact(j, Rational(5, 8));
    auto pd = gegenbauer_two_var(j, 0.625);
    REQUIRE(pe.terms.size() == pd.terms.size());
    for (std::size_t i = 0; i < pd.terms.size(); ++i) {
      CHECK(pd.terms[i].xpow == pe.terms[i].xpow);
      CHECK(pd.terms[i].ypow == pe.terms[i].ypow);
      CHECK(rel_err(pd.terms[i].coeff, pe.terms[i].coeff.to_double()) <
            1e-12);
    }
  }
  auto pe = gegenbauer_two_var_exact(5, Rational(5, 8));
  double exact =
      pe.evaluate(Rational(1, 2), Rational(-1, 3)).to_double();
  double approx = pe.to_double().evaluate(0.5, -1.0 / 3.0);
  CHECK(rel_err(approx, exact) < 1e-12);
}

TEST_CASE("normalized gegenbauer degree two reduces to the neumann form") {
  double a = -1.5;
  Rational alpha = Rational::from_decimal("-1.25");
  auto p = gegenbauer_two_var_exact(2, alpha);
  Rational norm =
      Rational(2) / (Rational(4) * alpha * (alpha + Rational(1)));
  CoeffMap m = coeff_map(p, 0, 0, norm);
  CHECK(m[{0, 2}] == Rational(1));
  CHECK(m[{1, 0}] == Rational(-1) / (Rational(2) * (alpha + Rational(1))));
  CHECK(m[{1, 0}].to_double() == doctest::Approx(-1.0 / (a + 1.0)));
}

TEST_CASE("closed form constants match hand-checked values") {
  CHECK(rel_err(dirichlet_constant_real(3, 0.0), 1.0 / (2.0 * kPi)) < 1e-13);
  CHECK(rel_err(dirichlet_constant_real(2, 0.0), 1.0 / kPi) < 1e-13);
  CHECK(rel_err(isometry_constant_real(0.0), 2.0) < 1e-13);
  CHECK(rel_err(dirichlet_constant_heis(2, -2.0), 1.0 / (2.0 * kPi)) < 1e-13);
  CHECK(rel_err(isometry_constant_heis(2, -2.0), kPi / 3.0) < 1e-13);
  CHECK(rel_err(lp_bound_base_real(3, 0.0), std::sqrt(2.0 / kPi)) < 1e-13);
  CHECK(rel_err(lp_bound_base_heis(2, -2.0), kPi / std::sqrt(2.0 * kPi)) <
        1e-13);
}

TEST_CASE("closed form constants mark inadmissible parameters") {
  auto pc = closed_form_constants(3, 1.5);
  CHECK(std::isnan(pc.c_real));
  CHECK(std::isnan(pc.iso_real));
  CHECK(std::isnan(pc.c_heis));
  CHECK(std::isfinite(pc.iso_heis));
  CHECK_THROWS_AS(dirichlet_constant_real(3, 1.5), std::domain_error);
  CHECK_THROWS_AS(dirichlet_constant_heis(2, 0.0), std::domain_error);
  auto ok = closed_form_constants(2, -2.0);
  CHECK(std::isfinite(ok.c_real));
  CHECK(std::isfinite(ok.c_heis));
  CHECK(std::isfinite(ok.iso_real));
  CHECK(std::isfinite(ok.iso_heis));
  CHECK(std::isfinite(ok.lp_real));
  CHECK(std::isfinite(ok.lp_heis));
}

TEST_CASE("boundary problem eigenvalues") {
  CHECK(eigenvalue(Field::euclidean, 1, -2.0) == doctest::Approx(-2.0));
  CHECK(eigenvalue(Field::euclidean, 0, 0.5) == doctest::Approx(0.0));
  CHECK(eigenvalue(Field::heisenberg, 1, -6.0) == doctest::Approx(-8.0));
  CHECK(eigenvalue(Field::heisenberg, 2, -9.5) == doctest::Approx(-22.0));
  CHECK_THROWS_AS(eigenvalue(Field::euclidean, 1, 0.0), std::domain_error);
  CHECK_THROWS_AS(eigenvalue(Field::heisenberg, 1, -3.0), std::domain_error);
  CHECK_THROWS_AS(eigenvalue(Field::euclidean, -1, 0.0), std::domain_error);
}

TEST_CASE("casimir constant reproduces the mode eigenvalues") {
  for (Field f : {Field::euclidean, Field::heisenberg})
    for (int n : {2, 3, 4})
      for (double a : {-4.7, -2.0, -0.5, 0.3}) {
        ModelParams mp(f, n, a);
        for (int k = 0; k <= 5; ++k) {
          double nu = mp.mode_nu(k);
          double got = nu * nu - mp.rho_prime() * mp.rho_prime() -
                       mp.casimir_const();
          double want = f == Field::euclidean ? k * (k + a - 1.0)
                                              : 2.0 * k * (2.0 * k + a);
          CHECK(std::fabs(got - want) < 1e-10);
        }
      }
}

TEST_CASE("model parameter bookkeeping") {
  ModelParams e(Field::euclidean, 3, 0.0);
  CHECK(e.ambient_dim() == 3);
  CHECK(e.boundary_dim() == 2);
  CHECK(e.homogeneous_dim() == 3);
  CHECK(e.nu0() == doctest::Approx(-0.5));
  CHECK(e.d() == 1);
  ModelParams h(Field::heisenberg, 2, -2.0);
  CHECK(h.ambient_dim() == 5);
  CHECK(h.boundary_dim() == 3);
  CHECK(h.homogeneous_dim() == 6);
  CHECK(h.nu0() == doctest::Approx(-1.0));
  CHECK(h.d() == 2);
  CHECK(ModelParams(Field::euclidean, 3, 0.0).dirichlet_range());
  CHECK_FALSE(ModelParams(Field::euclidean, 3, -1.2).dirichlet_range());
  CHECK(ModelParams(Field::heisenberg, 2, -2.0).dirichlet_range());
  CHECK_FALSE(ModelParams(Field::heisenberg, 2, 0.1).dirichlet_range());
  CHECK(ModelParams(Field::euclidean, 3, 2.0).selfadjoint_range());
  CHECK_FALSE(ModelParams(Field::euclidean, 3, 2.1).selfadjoint_range());
  CHECK_THROWS_AS(ModelParams(Field::euclidean, 0, 0.0), std::domain_error);
}
