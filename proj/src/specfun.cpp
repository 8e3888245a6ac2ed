#include "poisext/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "poisext/quadrature.hpp"

namespace poisext {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kSqrtTwoPi = 2.506628274631000502415765284811;

bool is_nonpositive_integer(double v, double tol = 1e-12) {
  return v <= tol && std::fabs(v - std::round(v)) < tol;
}

bool is_integer(double v, double tol = 1e-8) {
  return std::fabs(v - std::round(v)) < tol;
}

// sin(pi x) with argument reduction done on x itself.
double sinpi(double x) {
  double r = x - std::floor(x);
  int flip = static_cast<long long>(std::floor(x)) & 1;
  double s;
  if (r <= 0.25)
    s = std::sin(kPi * r);
  else if (r <= 0.75)
    s = std::cos(kPi * (r - 0.5));
  else
    s = -std::sin(kPi * (r - 1.0));
  return flip ? -s : s;
}

// Lanczos approximation, g = 7, 9 coefficients.
const double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

double gamma_positive(double x) {
  double y = x - 1.0;
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (y + i);
  double t = y + 7.5;
  return kSqrtTwoPi * std::pow(t, y + 0.5) * std::exp(-t) * acc;
}

}  // namespace

double gamma_fn(double x) {
  if (!std::isfinite(x)) throw std::domain_error("gamma_fn: nonfinite input");
  if (is_nonpositive_integer(x))
    throw std::domain_error("gamma_fn: pole at nonpositive integer");
  if (x >= 0.5) return gamma_positive(x);
  return kPi / (sinpi(x) * gamma_positive(1.0 - x));
}

double log_gamma(double x) {
  if (x <= 0.0) throw std::domain_error("log_gamma: requires x > 0");
  return std::lgamma(x);
}

double digamma(double x) {
  if (x <= 0.0) throw std::domain_error("digamma: requires x > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  double inv = 1.0 / x, inv2 = inv * inv;
  double series = std::log(x) - 0.5 * inv -
                  inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 -
                          inv2 * (1.0 / 240 - inv2 * (1.0 / 132)))));
  return acc + series;
}

double trigamma(double x) {
  if (x <= 0.0) throw std::domain_error("trigamma: requires x > 0");
  double acc = 0.0;
  while (x < 14.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  double inv = 1.0 / x, inv2 = inv * inv;
  double bracket = 1.0 / 6 - inv2 * (1.0 / 30 - inv2 * (1.0 / 42 -
                   inv2 * (1.0 / 30 - inv2 * (5.0 / 66))));
  return acc + inv + 0.5 * inv2 + inv * inv2 * bracket;
}

double tetragamma(double x) {
  if (x <= 0.0) throw std::domain_error("tetragamma: requires x > 0");
  double acc = 0.0;
  while (x < 12.0) {
    acc -= 2.0 / (x * x * x);
    x += 1.0;
  }
  double inv = 1.0 / x, inv2 = inv * inv;
  double inv4 = inv2 * inv2;
  double series = -inv2 * (1.0 + inv + 0.5 * inv2 -
                           inv4 * (1.0 / 6 - inv2 * (1.0 / 6 -
                                   inv2 * (3.0 / 10))));
  return acc + series;
}

double pochhammer(double x, int m) {
  if (m < 0) throw std::domain_error("pochhammer: m must be >= 0");
  if (m == 0) return 1.0;
  if (m <= 64 || x <= 0.0) {
    double p = 1.0;
    for (int i = 0; i < m; ++i) p *= x + i;
    return p;
  }
  return std::exp(std::lgamma(x + m) - std::lgamma(x));
}

RatioSum pochhammer_ratio_sum(double x, double y, int terms) {
  if (x <= 0.0)
    throw std::domain_error("pochhammer_ratio_sum: requires x > 0");
  if (y - x <= 1.0 + 1e-12)
    throw std::domain_error("pochhammer_ratio_sum: requires y > x + 1");
  int M = std::max(terms, 32);
  // The correction is applied at M' >= 128 so that the fifth-derivative
  // remainder of the Euler-Maclaurin formula is far below double precision;
  // terms between M and M' count toward the reported tail.
  int Mp = std::max(M, 128);

  double sum = 0.0, comp = 0.0;  // Kahan
  double ext = 0.0;
  double t = 1.0;
  for (int m = 0; m < Mp; ++m) {
    if (m < M) {
      double yk = t - comp;
      double tmp = sum + yk;
      comp = (tmp - sum) - yk;
      sum = tmp;
    } else {
      ext += t;
    }
    t *= (x + m) / (y + m);
  }

  // Euler-Maclaurin tail from the gamma-ratio form of the terms:
  //   g(t) = Gamma(x+t) Gamma(y) / (Gamma(y+t) Gamma(x)),
  //   sum_{m >= M} g(m) = int_M^inf g + g(M)/2 - g'(M)/12 + g'''(M)/720 + ...
  // The direct lgamma difference carries |lgamma|*eps absolute noise in the
  // exponent, so beyond moderate arguments it switches to a Stirling form
  // of the difference, which subtracts analytically.
  const double c0 = std::lgamma(y) - std::lgamma(x);
  const double delta = y - x;
  auto g = [&](double u) {
    double A = x + u;
    if (A < 300.0)
      return std::exp(std::lgamma(A) - std::lgamma(y + u) + c0);
    double B = y + u;
    double l1p = std::log1p(delta / A);
    double diff = -delta * std::log(A) - (B - 0.5) * l1p + delta +
                  (1.0 / A - 1.0 / B) / 12.0 -
                  (1.0 / (A * A * A) - 1.0 / (B * B * B)) / 360.0;
    return std::exp(diff + c0);
  };
  QuadOptions qo;
  qo.abs_tol = 0.0;
  qo.rel_tol = 1e-14;
  qo.max_level = 12;
  auto integral = integrate_half_line(g, static_cast<double>(Mp), qo);

  double gM = g(static_cast<double>(Mp));
  double d0 = digamma(x + Mp) - digamma(y + Mp);
  double d1 = trigamma(x + Mp) - trigamma(y + Mp);
  double d2 = tetragamma(x + Mp) - tetragamma(y + Mp);
  double g1 = gM * d0;
  double g3 = gM * (d0 * d0 * d0 + 3.0 * d0 * d1 + d2);

  RatioSum out;
  out.tail = ext + integral.value + 0.5 * gM - g1 / 12.0 + g3 / 720.0;
  double trunc5 = gM * std::pow(std::fabs(d0) + 1.0 / Mp, 5) / 30240.0;
  out.value = sum + out.tail;
  out.tail_error = 2.0 * integral.error_bound() + trunc5 +
                   1e-15 * std::fabs(out.value);
  return out;
}

namespace {

// Direct series around z = 0; also handles the terminating case.
double hyp_series(double alpha, double beta, double gamma, double z) {
  double term = 1.0, sum = 1.0, comp = 0.0;
  for (int m = 0; m < 40000; ++m) {
    if (is_nonpositive_integer(gamma + m) &&
        !(is_nonpositive_integer(alpha + m) ||
          is_nonpositive_integer(beta + m)))
      throw std::domain_error("gauss_2f1: gamma hits a nonpositive integer");
    term *= (alpha + m) * (beta + m) / ((gamma + m) * (m + 1)) * z;
    if (term == 0.0) break;
    double yk = term - comp;
    double tmp = sum + yk;
    comp = (tmp - sum) - yk;
    sum = tmp;
    if (std::fabs(term) < 1e-17 * (std::fabs(sum) + 1e-300) && m > 4) break;
  }
  return sum;
}

// 1/Gamma(x); zero at the poles of Gamma.
double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / gamma_fn(x);
}

double hyp_gauss_point(double alpha, double beta, double gamma) {
  double s = gamma - alpha - beta;
  if (s <= 0.0)
    throw std::domain_error("gauss_2f1: divergent at z = 1");
  return gamma_fn(gamma) * gamma_fn(s) * rgamma(gamma - alpha) *
         rgamma(gamma - beta);
}

// Digamma extended to negative non-integer arguments by reflection.
double digamma_any(double x) {
  if (x >= 0.5) return digamma(x);
  return digamma(1.0 - x) - kPi / std::tan(kPi * x);
}

// 2F1(alpha, beta; alpha+beta+m; 1-w) for integer m >= 0 and 0 < w < 1,
// where the connection formula degenerates: a finite sum of order m plus
// a series carrying log(w) and digamma weights.  Neither alpha nor beta
// is a nonpositive integer here (those terminate earlier).
double hyp_log_case(double alpha, double beta, int m, double w) {
  double gamma = alpha + beta + m;
  double logw = std::log(w);
  double front = 0.0;
  if (m > 0) {
    double c = gamma_fn(m) * gamma_fn(gamma) * rgamma(alpha + m) *
               rgamma(beta + m);
    double term = 1.0, sum = 1.0;
    for (int s = 1; s < m; ++s) {
      term *= (alpha + s - 1.0) * (beta + s - 1.0) / (s * (s - m)) * w;
      sum += term;
    }
    front = c * sum;
  }
  double sgn = (m % 2 == 0) ? 1.0 : -1.0;
  double pref = -sgn * gamma_fn(gamma) * rgamma(alpha) * rgamma(beta) *
                std::pow(w, m);
  double term = rgamma(m + 1.0);
  double psi1 = digamma(1.0);
  double psim = digamma(m + 1.0);
  double psia = digamma_any(alpha + m);
  double psib = digamma_any(beta + m);
  double sum = 0.0;
  for (int s = 0; s < 40000; ++s) {
    if (s > 0) {
      term *= (alpha + m + s - 1.0) * (beta + m + s - 1.0) /
              (static_cast<double>(s) * (s + m)) * w;
      psi1 += 1.0 / s;
      psim += 1.0 / (s + m);
      psia += 1.0 / (alpha + m + s - 1.0);
      psib += 1.0 / (beta + m + s - 1.0);
    }
    double inc = term * (logw - psi1 - psim + psia + psib);
    sum += inc;
    if (std::fabs(inc) < 1e-17 * (std::fabs(sum) + 1e-300) && s > 4) break;
  }
  return front + pref * sum;
}

double hyp_dispatch(double alpha, double beta, double gamma, double z);

// Connection formula in 1-z for 1/2 < z < 1.
double hyp_connection(double alpha, double beta, double gamma, double z) {
  double s = gamma - alpha - beta;
  double w = 1.0 - z;
  if (is_integer(s)) {
    int m = static_cast<int>(std::lround(s));
    if (m >= 0) return hyp_log_case(alpha, beta, m, w);
    double ap = gamma - alpha, bp = gamma - beta;
    // Euler transformation lands on the nonnegative-integer case (or on a
    // terminating series when a transformed parameter is a nonpositive
    // integer).
    if (is_nonpositive_integer(ap) || is_nonpositive_integer(bp))
      return std::pow(w, s) * hyp_series(ap, bp, gamma, z);
    return std::pow(w, s) * hyp_log_case(ap, bp, -m, w);
  }
  double c1 = gamma_fn(gamma) * gamma_fn(s) * rgamma(gamma - alpha) *
              rgamma(gamma - beta);
  double t1 = c1 == 0.0 ? 0.0 : c1 * hyp_series(alpha, beta, 1.0 - s, w);
  double c2 = gamma_fn(gamma) * gamma_fn(-s) * rgamma(alpha) * rgamma(beta);
  double t2 = c2 == 0.0 ? 0.0
                        : c2 * std::pow(w, s) *
                              hyp_series(gamma - alpha, gamma - beta, 1.0 + s,
                                         w);
  return t1 + t2;
}

double hyp_dispatch(double alpha, double beta, double gamma, double z) {
  if (is_nonpositive_integer(alpha) || is_nonpositive_integer(beta))
    return hyp_series(alpha, beta, gamma, z);  // terminating polynomial
  if (z == 1.0) return hyp_gauss_point(alpha, beta, gamma);
  if (std::fabs(z) <= 0.5) return hyp_series(alpha, beta, gamma, z);
  if (z < -0.5) {
    // Pfaff transformation; pick the variant with the tamer parameters.
    double w = z / (z - 1.0);
    double pa = std::fabs(alpha) + std::fabs(gamma - beta);
    double pb = std::fabs(beta) + std::fabs(gamma - alpha);
    if (pa <= pb)
      return std::pow(1.0 - z, -alpha) *
             hyp_dispatch(alpha, gamma - beta, gamma, w);
    return std::pow(1.0 - z, -beta) *
           hyp_dispatch(beta, gamma - alpha, gamma, w);
  }
  if (z < 1.0) return hyp_connection(alpha, beta, gamma, z);
  throw std::domain_error("gauss_2f1: requires z <= 1");
}

}  // namespace

double gauss_2f1(double alpha, double beta, double gamma, double z) {
  if (!std::isfinite(z)) throw std::domain_error("gauss_2f1: nonfinite z");
  if (is_nonpositive_integer(gamma) &&
      !((is_nonpositive_integer(alpha) && alpha > gamma + 0.5) ||
        (is_nonpositive_integer(beta) && beta > gamma + 0.5)))
    throw std::domain_error("gauss_2f1: pole at nonpositive integer gamma");
  return hyp_dispatch(alpha, beta, gamma, z);
}

double gauss_2f1_derivative(double alpha, double beta, double gamma,
                            double z) {
  return alpha * beta / gamma * gauss_2f1(alpha + 1, beta + 1, gamma + 1, z);
}

double GegenbauerPoly::evaluate(double x, double y) const {
  double acc = 0.0;
  for (const auto& t : terms)
    acc += t.coeff * std::pow(x, t.xpow) * std::pow(y, t.ypow);
  return acc;
}

Rational GegenbauerPolyExact::evaluate(const Rational& x,
                                       const Rational& y) const {
  auto ipow = [](const Rational& b, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  Rational acc(0);
  for (const auto& t : terms) acc += t.coeff * ipow(x, t.xpow) * ipow(y, t.ypow);
  return acc;
}

GegenbauerPoly GegenbauerPolyExact::to_double() const {
  GegenbauerPoly p;
  p.degree = degree;
  p.alpha = alpha.to_double();
  for (const auto& t : terms)
    p.terms.push_back({t.xpow, t.ypow, t.coeff.to_double()});
  return p;
}

GegenbauerPolyExact gegenbauer_two_var_exact(int j, const Rational& alpha) {
  if (j < 0) throw std::domain_error("gegenbauer: degree must be >= 0");
  GegenbauerPolyExact p;
  p.degree = j;
  p.alpha = alpha;
  for (int k = 0; 2 * k <= j; ++k) {
    Rational poch(1);
    for (int i = 0; i < j - k; ++i) poch *= alpha + Rational(i);
    Rational c = poch;
    for (int i = 0; i < j - 2 * k; ++i) c *= Rational(2);
    Rational fact(1);
    for (int i = 2; i <= k; ++i) fact *= Rational(i);
    for (int i = 2; i <= j - 2 * k; ++i) fact *= Rational(i);
    c /= fact;
    if (k % 2 == 1) c = -c;
    p.terms.push_back({k, j - 2 * k, c});
  }
  return p;
}

GegenbauerPoly gegenbauer_two_var(int j, double alpha) {
  if (j < 0) throw std::domain_error("gegenbauer: degree must be >= 0");
  GegenbauerPoly p;
  p.degree = j;
  p.alpha = alpha;
  for (int k = 0; 2 * k <= j; ++k) {
    double c = pochhammer(alpha, j - k) * std::pow(2.0, j - 2 * k);
    c /= std::tgamma(k + 1.0) * std::tgamma(j - 2 * k + 1.0);
    if (k % 2 == 1) c = -c;
    p.terms.push_back({k, j - 2 * k, c});
  }
  return p;
}

double dirichlet_constant_real(int n, double a) {
  if (n < 2) throw std::domain_error("dirichlet_constant_real: n >= 2");
  if (a >= 1.0)
    throw std::domain_error("dirichlet_constant_real: requires a < 1");
  return gamma_fn((n - a) / 2.0) /
         (std::pow(kPi, (n - 1) / 2.0) * gamma_fn((1.0 - a) / 2.0));
}

double dirichlet_constant_heis(int n, double a) {
  if (n < 2) throw std::domain_error("dirichlet_constant_heis: n >= 2");
  if (a >= 0.0)
    throw std::domain_error("dirichlet_constant_heis: requires a < 0");
  double g = gamma_fn((2.0 * n - a) / 4.0);
  return std::pow(2.0, (2.0 * n - a - 4.0) / 2.0) * g * g /
         (std::pow(kPi, n) * gamma_fn(-a / 2.0));
}

double isometry_constant_real(double a) {
  if (a >= 1.0)
    throw std::domain_error("isometry_constant_real: requires a < 1");
  return std::pow(2.0, a) * kPi * gamma_fn(2.0 - a) /
         (gamma_fn((1.0 - a) / 2.0) * gamma_fn((3.0 - a) / 2.0));
}

double isometry_constant_heis(int n, double a) {
  if (a == 2.0 * n)
    throw std::domain_error("isometry_constant_heis: pole at a = 2n");
  return kPi * a / (a - 2.0 * n);
}

double lp_bound_base_real(int n, double a) {
  return 2.0 * std::pow(dirichlet_constant_real(n, a), 1.0 / (n - 1));
}

double lp_bound_base_heis(int n, double a) {
  return kPi * std::pow(dirichlet_constant_heis(n, a), 1.0 / n);
}

ClosedFormConstants closed_form_constants(int n, double a) {
  ClosedFormConstants pc;
  pc.n = n;
  pc.a = a;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto guarded = [&](auto&& fn) {
    try {
      return fn();
    } catch (const std::domain_error&) {
      return nan;
    }
  };
  pc.c_real = guarded([&] { return dirichlet_constant_real(n, a); });
  pc.c_heis = guarded([&] { return dirichlet_constant_heis(n, a); });
  pc.iso_real = guarded([&] { return isometry_constant_real(a); });
  pc.iso_heis = guarded([&] { return isometry_constant_heis(n, a); });
  pc.lp_real = guarded([&] { return lp_bound_base_real(n, a); });
  pc.lp_heis = guarded([&] { return lp_bound_base_heis(n, a); });
  return pc;
}

double eigenvalue(Field field, int k, double a) {
  if (k < 0) throw std::domain_error("eigenvalue: k must be >= 0");
  if (field == Field::euclidean) {
    if (!(k < (1.0 - a) / 2.0))
      throw std::domain_error("eigenvalue: requires k < (1-a)/2");
    return k * (k + a - 1.0);
  }
  if (!(2.0 * k < -a / 2.0))
    throw std::domain_error("eigenvalue: requires 2k < -a/2");
  return 2.0 * k * (2.0 * k + a);
}

}  // namespace poisext
