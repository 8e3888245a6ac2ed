#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace poisext {

// Double-exponential (tanh-sinh family) quadrature.  All rules share one
// driver: trapezoid sums in the transformed variable t with level doubling,
// dynamic truncation once weighted terms die out, and an error estimate
// from the last level difference.

struct QuadOptions {
  double abs_tol = 1e-8;
  double rel_tol = 0.0;   // optional relative target on top of abs_tol
  int max_level = 11;
  int min_level = 3;
};

template <class T>
struct QuadResult {
  T value{};
  double err = std::numeric_limits<double>::infinity();
  int levels = 0;
  std::int64_t evals = 0;
  bool converged = false;
  bool saw_nonfinite = false;

  double error_bound() const { return err; }
};

namespace detail {

inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}
inline double absval(double v) { return std::fabs(v); }
inline double absval(const std::complex<double>& v) { return std::abs(v); }

// Node of a DE rule: abscissa and weight (dx/dt included).
struct DENode {
  double x;
  double w;
};

constexpr double kPiHalf = 1.5707963267948966;
// Cap on the inner exponent so cosh/exp stay finite.
constexpr double kExpCap = 690.0;

inline double tcap_for_exponent() { return std::asinh(kExpCap / kPiHalf); }

// x = sinh(c sinh t) maps R -> R.
inline DENode node_sinh_sinh(double t) {
  double u = kPiHalf * std::sinh(t);
  return {std::sinh(u), kPiHalf * std::cosh(t) * std::cosh(u)};
}

// x = a + exp(c sinh t) maps R -> (a, inf).
inline DENode node_exp_sinh(double t, double a) {
  double u = kPiHalf * std::sinh(t);
  double e = std::exp(u);
  return {a + e, kPiHalf * std::cosh(t) * e};
}

// x = m + r tanh(c sinh t) maps R -> (a, b).  The abscissa is formed from
// the distance to the nearer endpoint so that endpoint singularities keep
// resolvable abscissas down to the underflow threshold.
inline DENode node_tanh_sinh(double t, double m, double r) {
  double u = kPiHalf * std::sinh(t);
  double e = std::exp(-2.0 * std::fabs(u));
  double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
  double dist = r * 2.0 * e / (1.0 + e);
  double x = u >= 0.0 ? (m + r) - dist : (m - r) + dist;
  return {x, r * kPiHalf * std::cosh(t) * sech2};
}

template <class F, class NodeFn,
          class T = decltype(std::declval<F&>()(0.0))>
QuadResult<T> de_driver(F&& f, NodeFn&& node, const QuadOptions& opt) {
  QuadResult<T> res;
  const double tcap = tcap_for_exponent();
  const double trunc_eps = 1e-18;

  auto eval = [&](double t) -> T {
    DENode nd = node(t);
    T v = f(nd.x);
    ++res.evals;
    if (!finite(v)) {
      res.saw_nonfinite = true;
      return T{};
    }
    return v * nd.w;
  };

  // Extent of the region where the integrand has shown mass; truncation is
  // only allowed beyond it, so sign changes and narrow features seen at
  // earlier levels keep later levels honest.
  double t_extent = 2.2;
  double scale = 0.0;

  auto sweep = [&](double h, bool odd_only) -> T {
    T acc = odd_only ? T{} : eval(0.0);
    scale = std::max(scale, absval(acc) + 1e-300);
    for (int dir = -1; dir <= 1; dir += 2) {
      int zero_run = 0;
      int k = 1;
      int step = odd_only ? 2 : 1;
      for (;; k += step) {
        double t = dir * k * h;
        if (std::fabs(t) > tcap) break;
        T term = eval(t);
        acc += term;
        double mag = absval(term);
        scale = std::max(scale, mag);
        if (mag < trunc_eps * scale) {
          ++zero_run;
          if (zero_run >= 4 && std::fabs(t) >= t_extent) break;
        } else {
          zero_run = 0;
          t_extent = std::max(t_extent, std::fabs(t) + 0.5);
        }
      }
    }
    return acc;
  };

  double h = 0.5;
  T total = sweep(h, false) * h;
  T prev = total;
  for (int level = 1; level <= opt.max_level; ++level) {
    h *= 0.5;
    T add = sweep(h, true);
    total = prev * 0.5 + add * h;
    double diff = absval(total - prev);
    res.levels = level;
    res.err = diff;
    prev = total;
    if (level >= opt.min_level) {
      double goal = opt.abs_tol + opt.rel_tol * absval(total);
      if (diff <= goal) {
        res.converged = true;
        break;
      }
    }
  }
  res.value = total;
  return res;
}

}  // namespace detail

// Integral over the whole real line.
template <class F>
auto integrate_real_line(F&& f, const QuadOptions& opt = {}) {
  return detail::de_driver(std::forward<F>(f),
                           [](double t) { return detail::node_sinh_sinh(t); },
                           opt);
}

// Integral over (a, inf).
template <class F>
auto integrate_half_line(F&& f, double a, const QuadOptions& opt = {}) {
  return detail::de_driver(
      std::forward<F>(f),
      [a](double t) { return detail::node_exp_sinh(t, a); }, opt);
}

// Integral over the finite segment (a, b).
template <class F>
auto integrate_segment(F&& f, double a, double b,
                       const QuadOptions& opt = {}) {
  double m = 0.5 * (a + b), r = 0.5 * (b - a);
  return detail::de_driver(
      std::forward<F>(f),
      [m, r](double t) { return detail::node_tanh_sinh(t, m, r); }, opt);
}

// Trapezoid rule with doubling for smooth 2*pi-periodic integrands.
template <class F, class T = decltype(std::declval<F&>()(0.0))>
QuadResult<T> integrate_periodic(F&& f, const QuadOptions& opt = {}) {
  QuadResult<T> res;
  const double two_pi = 6.283185307179586;
  int n = 8;
  T prev{};
  bool have_prev = false;
  for (int level = 0; level <= opt.max_level; ++level, n *= 2) {
    T sum{};
    double h = two_pi / n;
    for (int k = 0; k < n; ++k) {
      T v = f(k * h);
      ++res.evals;
      if (!detail::finite(v)) {
        res.saw_nonfinite = true;
        continue;
      }
      sum += v;
    }
    sum = sum * h;
    res.levels = level;
    if (have_prev) {
      double diff = detail::absval(sum - prev);
      res.err = diff;
      if (diff <= opt.abs_tol + opt.rel_tol * detail::absval(sum)) {
        res.converged = true;
        res.value = sum;
        return res;
      }
    }
    prev = sum;
    have_prev = true;
  }
  res.value = prev;
  return res;
}

// Precomputed node tables for fixed (non-adaptive) tensor rules.
inline std::vector<detail::DENode> sinh_sinh_nodes(double h, double tmax) {
  std::vector<detail::DENode> nodes;
  double tcap = std::min(tmax, detail::tcap_for_exponent());
  for (double t = -std::floor(tcap / h) * h; t <= tcap + 1e-12; t += h) {
    auto nd = detail::node_sinh_sinh(t);
    nd.w *= h;
    nodes.push_back(nd);
  }
  return nodes;
}

inline std::vector<detail::DENode> exp_sinh_nodes(double h, double a,
                                                  double tmax) {
  std::vector<detail::DENode> nodes;
  double tcap = std::min(tmax, detail::tcap_for_exponent());
  for (double t = -std::floor(tcap / h) * h; t <= tcap + 1e-12; t += h) {
    auto nd = detail::node_exp_sinh(t, a);
    nd.w *= h;
    nodes.push_back(nd);
  }
  return nodes;
}

}  // namespace poisext
