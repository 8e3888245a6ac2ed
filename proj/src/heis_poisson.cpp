#include "poisext/heis_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "poisext/specfun.hpp"

namespace poisext {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

void require_heis(const ModelParams& mp, const char* who) {
  if (mp.field != Field::heisenberg)
    throw std::domain_error(std::string(who) + ": heisenberg params required");
}

void require_ambient(const HeisPoint& p, const ModelParams& mp,
                     const char* who) {
  if (p.z.size() != 2 * mp.n)
    throw std::domain_error(std::string(who) + ": ambient dimension mismatch");
}

void require_boundary(const Eigen::VectorXd& q, const ModelParams& mp,
                      const char* who) {
  if (q.size() != 2 * mp.n - 1)
    throw std::domain_error(std::string(who) +
                            ": boundary dimension mismatch");
}

// p = q0 (0, z_n, 0) with q0 = (z', 0, t) in the boundary group and
// rho = |z_n|; the two factors commute with zero twist, so the split is
// exact.
struct AmbientSplit {
  HeisPoint q0;
  double rho = 0.0;
};

AmbientSplit split_ambient(const HeisPoint& p) {
  const int n = p.pairs();
  AmbientSplit out;
  out.q0.z = p.z.head(2 * (n - 1));
  out.q0.t = p.t;
  out.rho = std::hypot(p.z[2 * n - 2], p.z[2 * n - 1]);
  return out;
}

// int f(q0 delta_rho(v, sigma)) ((1+|v|^2)^2+sigma^2)^{(aeff-2n)/4} over
// the boundary coordinates (v, sigma), phase-free in z_n.  Tensor rule:
// half-line in |v|, line in sigma, trapezoid in the angle.
double reduced_heis_integral(const Evaluable& f, const HeisPoint& p,
                             double aeff, const ModelParams& mp,
                             const QuadOptions& opt, const char* who) {
  const int n = mp.n;
  if (n != 2)
    throw std::domain_error(std::string(who) +
                            ": generic quadrature implemented for n = 2");
  AmbientSplit sp = split_ambient(p);
  const double expo = (aeff - 2.0 * n) / 4.0;

  QuadOptions outer = opt;
  outer.abs_tol = 0.5 * opt.abs_tol;
  outer.rel_tol = 0.5 * opt.rel_tol;
  QuadOptions mid = opt;
  mid.abs_tol = 0.02 * opt.abs_tol;
  mid.rel_tol = 0.0;
  QuadOptions inner = opt;
  inner.abs_tol = 0.01 * opt.abs_tol;
  inner.rel_tol = 0.0;

  double inner_err = 0.0;
  auto res = integrate_half_line(
      [&](double r) -> double {
        auto over_sigma = integrate_real_line(
            [&](double sigma) -> double {
              double base = (1.0 + r * r) * (1.0 + r * r) + sigma * sigma;
              auto ring = integrate_periodic(
                  [&](double phi) -> double {
                    HeisPoint w;
                    w.z = Eigen::Vector2d(sp.rho * r * std::cos(phi),
                                          sp.rho * r * std::sin(phi));
                    w.t = sp.rho * sp.rho * sigma;
                    return f(heis_to_flat(heis_mul(sp.q0, w)));
                  },
                  inner);
              inner_err = std::max(inner_err, ring.err);
              return std::pow(base, expo) * ring.value;
            },
            mid);
        inner_err = std::max(inner_err, over_sigma.err);
        return r * over_sigma.value;
      },
      0.0, outer);

  double achieved = res.err + 10.0 * inner_err;
  double goal = opt.abs_tol + opt.rel_tol * std::fabs(res.value);
  if (!(achieved <= goal) || res.saw_nonfinite)
    throw ToleranceError(std::string(who) + ": quadrature bound " +
                             std::to_string(achieved) + " exceeds tolerance",
                         achieved);
  return res.value;
}

void require_higher_range(int k, const ModelParams& mp, const char* who) {
  if (k < 0) throw std::domain_error(std::string(who) + ": requires k >= 0");
  if (!(-2.0 * mp.n - 4.0 * k < mp.a && mp.a < -4.0 * k))
    throw std::domain_error(std::string(who) +
                            ": requires -2n-4k < a < -4k");
}

}  // namespace

double heis_poisson_kernel(const HeisPoint& p, const Eigen::VectorXd& q,
                           const ModelParams& mp) {
  require_heis(mp, "heis_poisson_kernel");
  require_ambient(p, mp, "heis_poisson_kernel");
  require_boundary(q, mp, "heis_poisson_kernel");
  const int n = mp.n;
  HeisPoint qt;
  qt.z = Eigen::VectorXd::Zero(2 * n);
  qt.z.head(2 * (n - 1)) = q.head(2 * (n - 1));
  qt.t = q[2 * n - 2];
  double rho = std::hypot(p.z[2 * n - 2], p.z[2 * n - 1]);
  double dist = koranyi_norm(heis_mul(heis_inv(p), qt));
  return dirichlet_constant_heis(n, mp.a) * std::pow(rho, -mp.a) *
         std::pow(dist, mp.a - 2.0 * n);
}

double heis_poisson_transform_at(const Evaluable& f, const HeisPoint& p,
                                 const ModelParams& mp,
                                 const QuadOptions& opt) {
  require_heis(mp, "heis_poisson_transform");
  require_ambient(p, mp, "heis_poisson_transform");
  if (!mp.dirichlet_range())
    throw std::domain_error("heis_poisson_transform: requires -2n < a < 0");
  return dirichlet_constant_heis(mp.n, mp.a) *
         reduced_heis_integral(f, p, mp.a, mp, opt, "heis_poisson_transform");
}

std::vector<double> heis_poisson_transform(
    const Evaluable& f, const std::vector<HeisPoint>& points,
    const ModelParams& mp, const QuadOptions& opt) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points)
    out.push_back(heis_poisson_transform_at(f, p, mp, opt));
  return out;
}

double kinv_boundary_heis(const Eigen::VectorXd& q, const ModelParams& mp) {
  require_heis(mp, "kinv_boundary_heis");
  require_boundary(q, mp, "kinv_boundary_heis");
  if (!mp.dirichlet_range())
    throw std::domain_error("kinv_boundary_heis: requires -2n < a < 0");
  const int n = mp.n;
  double z2 = q.head(2 * (n - 1)).squaredNorm();
  double t = q[2 * n - 2];
  return std::pow((1.0 + z2) * (1.0 + z2) + t * t, -(mp.a + 2.0 * n) / 4.0);
}

double kinv_solution_heis(const HeisPoint& p, const ModelParams& mp) {
  require_heis(mp, "kinv_solution_heis");
  require_ambient(p, mp, "kinv_solution_heis");
  if (!mp.dirichlet_range())
    throw std::domain_error("kinv_solution_heis: requires -2n < a < 0");
  const int n = mp.n;
  const double alpha = (mp.a + 2.0 * n) / 4.0;
  double z2 = p.z.squaredNorm();
  double rho2 = p.z[2 * n - 2] * p.z[2 * n - 2] +
                p.z[2 * n - 1] * p.z[2 * n - 1];
  double D = (1.0 + z2) * (1.0 + z2) + p.t * p.t;
  double w = 1.0 - 4.0 * rho2 / D;
  w = std::min(1.0, std::max(0.0, w));
  double pf = std::pow(2.0, 2.0 * alpha) * std::pow(kPi, n - 0.5) *
              gamma_fn(n - 0.5) / gamma_fn(2.0 * n - 1.0) *
              dirichlet_constant_heis(n, mp.a);
  return pf * gauss_2f1(alpha, alpha, n, w) * std::pow(D, -alpha);
}

double higher_poisson_heis_at(const Evaluable& f, int k, const HeisPoint& p,
                              const ModelParams& mp, const QuadOptions& opt) {
  require_heis(mp, "higher_poisson_heis");
  require_ambient(p, mp, "higher_poisson_heis");
  require_higher_range(k, mp, "higher_poisson_heis");
  AmbientSplit sp = split_ambient(p);
  return std::pow(sp.rho, 2.0 * k) *
         reduced_heis_integral(f, p, mp.a + 4.0 * k, mp, opt,
                               "higher_poisson_heis");
}

std::vector<double> higher_poisson_heis(const Evaluable& f, int k,
                                        const std::vector<HeisPoint>& points,
                                        const ModelParams& mp,
                                        const QuadOptions& opt) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points)
    out.push_back(higher_poisson_heis_at(f, k, p, mp, opt));
  return out;
}

double higher_kinv_boundary_heis(const Eigen::VectorXd& q, int k,
                                 const ModelParams& mp) {
  require_higher_range(k, mp, "higher_kinv_boundary_heis");
  ModelParams shifted(Field::heisenberg, mp.n, mp.a + 4.0 * k);
  return kinv_boundary_heis(q, shifted);
}

double higher_kinv_solution_heis(const HeisPoint& p, int k,
                                 const ModelParams& mp) {
  require_heis(mp, "higher_kinv_solution_heis");
  require_ambient(p, mp, "higher_kinv_solution_heis");
  require_higher_range(k, mp, "higher_kinv_solution_heis");
  ModelParams shifted(Field::heisenberg, mp.n, mp.a + 4.0 * k);
  AmbientSplit sp = split_ambient(p);
  return std::pow(sp.rho, 2.0 * k) * kinv_solution_heis(p, shifted) /
         dirichlet_constant_heis(mp.n, shifted.a);
}

namespace {

using Word = std::vector<JuhlGen>;

struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using TermMap = std::map<Word, Rational, WordLess>;

void add_term(TermMap& m, const Word& w, const Rational& c) {
  if (c.is_zero()) return;
  auto it = m.find(w);
  if (it == m.end()) {
    m.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) m.erase(it);
}

TermMap left_mul(JuhlGen g, const TermMap& m) {
  TermMap out;
  for (const auto& [w, c] : m) {
    Word nw;
    nw.reserve(w.size() + 1);
    nw.push_back(g);
    nw.insert(nw.end(), w.begin(), w.end());
    out.emplace(std::move(nw), c);
  }
  return out;
}

void accumulate(TermMap& into, const TermMap& from, const Rational& scale) {
  for (const auto& [w, c] : from) add_term(into, w, c * scale);
}

void check_nonzero(const Rational& v, const char* what) {
  if (v.is_zero())
    throw std::domain_error(std::string("juhl_build: degenerate parameter, ") +
                            what + " vanishes");
}

TermMap build_tree(const Rational& s, int k, int n) {
  if (k == 0) {
    TermMap m;
    m.emplace(Word{}, Rational(1));
    return m;
  }
  const Rational twos_n = Rational(2) * s + Rational(n);
  check_nonzero(s, "s");
  check_nonzero(twos_n, "2s+n");
  if (k == 1) {
    Rational den = Rational(16) * s * s * twos_n;
    TermMap m;
    add_term(m, Word{JuhlGen::L}, (twos_n - Rational(1)) / den);
    add_term(m, Word{JuhlGen::Lp}, -twos_n / den);
    return m;
  }
  const int km = k - 1;
  TermMap dk = build_tree(s, km, n);
  TermMap dm = build_tree(s - Rational(1), km - 1, n);
  check_nonzero(s - Rational(km), "s-k");
  check_nonzero(twos_n - Rational(1), "2s+n-1");
  const Rational c_l = twos_n - Rational(2 * km + 1);
  const Rational cross = Rational(km * km) * c_l /
                         (Rational(16) * s * s * (twos_n - Rational(1)) *
                          twos_n);
  TermMap acc;
  accumulate(acc, left_mul(JuhlGen::L, dk), c_l);
  accumulate(acc, left_mul(JuhlGen::Lp, dk), -twos_n);
  accumulate(acc, left_mul(JuhlGen::L, left_mul(JuhlGen::L, dm)), -cross);
  accumulate(acc, left_mul(JuhlGen::T, dm),
             -cross * Rational(16) * twos_n * twos_n);
  const Rational pref =
      Rational(1) /
      (Rational(16) * (s - Rational(km)) * (s - Rational(km)) * twos_n);
  TermMap out;
  accumulate(out, acc, pref);
  return out;
}

// Continued-fraction convergent; exact for small-denominator rationals
// (all dyadic parameters of interest), within 1e-15 relative otherwise.
Rational rational_approx(double x) {
  if (!std::isfinite(x) || std::fabs(x) > 1e12)
    throw std::domain_error("juhl_build: s out of range");
  long long p0 = 1, q0 = 0;
  long long p1 = static_cast<long long>(std::floor(x)), q1 = 1;
  double frac = x - std::floor(x);
  for (int i = 0; i < 40 && frac > 1e-15; ++i) {
    double inv = 1.0 / frac;
    long long ai = static_cast<long long>(std::floor(inv));
    frac = inv - std::floor(inv);
    long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > (1LL << 26)) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double back = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::fabs(x - back) <= 1e-15 * std::max(1.0, std::fabs(x))) break;
  }
  return Rational(p1, q1);
}

const char* gen_name(JuhlGen g) {
  switch (g) {
    case JuhlGen::L:
      return "L";
    case JuhlGen::Lp:
      return "Lp";
    default:
      return "T";
  }
}

}  // namespace

JuhlOperator juhl_build(const Rational& s, int k, int n) {
  if (k < 0 || n < 2)
    throw std::domain_error("juhl_build: requires k >= 0, n >= 2");
  JuhlOperator op;
  op.s = s;
  op.k = k;
  op.n = n;
  for (auto& [w, c] : build_tree(s, k, n)) op.terms.push_back({c, w});
  return op;
}

JuhlOperator juhl_build(double s, int k, int n) {
  return juhl_build(rational_approx(s), k, n);
}

std::string juhl_sexpr(const JuhlOperator& op) {
  std::string out = "(juhl :s " + op.s.str() + " :k " + std::to_string(op.k) +
                    " :n " + std::to_string(op.n);
  for (const auto& t : op.terms) {
    out += " (term " + t.coeff.str();
    for (auto g : t.word) {
      out += " ";
      out += gen_name(g);
    }
    out += ")";
  }
  out += ")";
  return out;
}

namespace {

// One generator on the reduced grid.  Output nodes whose stencil would
// leave the grid are zero; the rho bottom face reflects evenly and stays
// valid.
RealField gen_apply(JuhlGen g, const RealField& u) {
  const GridGeometry& geo = u.geo;
  const int d = geo.dim();
  if (d < 4 || d % 2 != 0)
    throw std::domain_error("juhl_apply: reduced grid needs 2n axes, n >= 2");
  const int rho_ax = d - 2, t_ax = d - 1;
  const double inv_h2 = 1.0 / (geo.h * geo.h);
  const double inv_4h2 = 0.25 * inv_h2;
  const std::int64_t st = geo.stride(t_ax), sr = geo.stride(rho_ax);

  RealField out(geo);
  std::vector<int> idx(d, 0);
  for (std::int64_t flat = 0; flat < geo.size(); ++flat) {
    const double* v = u.samples.data() + flat;
    bool t_in = idx[t_ax] > 0 && idx[t_ax] < geo.dims[t_ax] - 1;

    if (g == JuhlGen::T) {
      if (t_in) out.samples[flat] = (v[st] - 2.0 * v[0] + v[-st]) * inv_h2;
    } else {
      bool ok = t_in;
      for (int ax = 0; ok && ax < d - 2; ++ax)
        ok = idx[ax] > 0 && idx[ax] < geo.dims[ax] - 1;
      if (g == JuhlGen::L && idx[rho_ax] >= geo.dims[rho_ax] - 1) ok = false;
      if (ok) {
        double acc = 0.0;
        double zp2 = 0.0;
        double dtt = (v[st] - 2.0 * v[0] + v[-st]) * inv_h2;
        for (int ax = 0; ax + 1 < d - 2; ax += 2) {
          const std::int64_t sx = geo.stride(ax), sy = geo.stride(ax + 1);
          double x = geo.coord(ax, idx[ax]);
          double y = geo.coord(ax + 1, idx[ax + 1]);
          zp2 += x * x + y * y;
          acc += (v[sx] - 2.0 * v[0] + v[-sx]) * inv_h2;
          acc += (v[sy] - 2.0 * v[0] + v[-sy]) * inv_h2;
          double mix_x = (v[sx + st] - v[sx - st] - v[-sx + st] +
                          v[-sx - st]) * inv_4h2;
          double mix_y = (v[sy + st] - v[sy - st] - v[-sy + st] +
                          v[-sy - st]) * inv_4h2;
          acc += 4.0 * (y * mix_x - x * mix_y);
        }
        acc += 4.0 * zp2 * dtt;
        if (g == JuhlGen::L) {
          double rho = reduced_rho(geo, idx[rho_ax]);
          double up = v[sr];
          double dn = idx[rho_ax] > 0 ? v[-sr] : v[0];
          acc += (up - 2.0 * v[0] + dn) * inv_h2;
          acc += (up - dn) / (2.0 * geo.h * rho);
          acc += 4.0 * rho * rho * dtt;
        }
        out.samples[flat] = acc;
      }
    }

    for (int ax = d - 1; ax >= 0; --ax) {
      if (++idx[ax] < geo.dims[ax]) break;
      idx[ax] = 0;
    }
  }
  return out;
}

}  // namespace

RealField juhl_apply(const JuhlOperator& op, const RealField& u) {
  if (u.geo.dim() != 2 * op.n)
    throw std::domain_error("juhl_apply: grid dimension mismatch");
  RealField acc(u.geo);
  for (const auto& term : op.terms) {
    RealField v = u;
    for (auto it = term.word.rbegin(); it != term.word.rend(); ++it)
      v = gen_apply(*it, v);
    acc.samples += term.coeff.to_double() * v.samples;
  }
  return acc;
}

RealField restrict_D_ak(const RealField& u, int k, const ModelParams& mp) {
  require_heis(mp, "restrict_D_ak");
  const GridGeometry& geo = u.geo;
  if (geo.dim() != 2 * mp.n)
    throw std::domain_error("restrict_D_ak: grid dimension mismatch");
  const int rho_ax = geo.dim() - 2;
  if (geo.dims[rho_ax] < 2)
    throw std::domain_error("restrict_D_ak: rho axis too short");

  Rational a_rat = rational_approx(mp.a);
  Rational s = -(a_rat + Rational(2 * mp.n)) / Rational(4);
  RealField v = juhl_apply(juhl_build(s, k, mp.n), u);

  GridGeometry bgeo;
  bgeo.dims = geo.dims;
  bgeo.dims.erase(bgeo.dims.begin() + rho_ax);
  bgeo.h = geo.h;

  RealField out(bgeo);
  const int bd = bgeo.dim();
  std::vector<int> bidx(bd, 0), idx(geo.dim(), 0);
  for (std::int64_t bflat = 0; bflat < bgeo.size(); ++bflat) {
    bool margin = false;
    for (int ax = 0; ax < bd; ++ax)
      if (bidx[ax] < k || bidx[ax] > bgeo.dims[ax] - 1 - k) margin = true;
    if (!margin) {
      for (int ax = 0; ax < rho_ax; ++ax) idx[ax] = bidx[ax];
      idx[geo.dim() - 1] = bidx[bd - 1];
      idx[rho_ax] = 0;
      double v0 = v.samples[geo.flatten(idx)];
      idx[rho_ax] = 1;
      double v1 = v.samples[geo.flatten(idx)];
      out.samples[bflat] = (9.0 * v0 - v1) / 8.0;
    }
    for (int ax = bd - 1; ax >= 0; --ax) {
      if (++bidx[ax] < bgeo.dims[ax]) break;
      bidx[ax] = 0;
    }
  }
  return out;
}

Eigen::VectorXd reduced_point(const GridGeometry& geo, std::int64_t flat) {
  Eigen::VectorXd p = geo.point(flat);
  const int rho_ax = geo.dim() - 2;
  std::vector<int> idx = geo.unflatten(flat);
  p[rho_ax] = reduced_rho(geo, idx[rho_ax]);
  return p;
}

RealField sample_reduced_field(const GridGeometry& geo, const Evaluable& f) {
  RealField u(geo);
  for (std::int64_t i = 0; i < geo.size(); ++i)
    u.samples[i] = f(reduced_point(geo, i));
  return u;
}

HeisPoint reduced_to_heis(const Eigen::VectorXd& red) {
  const int d = static_cast<int>(red.size());
  if (d < 4 || d % 2 != 0)
    throw std::domain_error("reduced_to_heis: needs 2n components, n >= 2");
  HeisPoint p;
  p.z = Eigen::VectorXd::Zero(d);
  p.z.head(d - 2) = red.head(d - 2);
  p.z[d - 2] = red[d - 2];
  p.t = red[d - 1];
  return p;
}

double lp_norm_reduced(const RealField& u, double p) {
  const int d = static_cast<int>(u.geo.dims.size());
  if (d < 4 || d % 2 != 0)
    throw std::domain_error("lp_norm_reduced: needs a reduced grid, 2n axes");
  if (!(p >= 1.0)) throw std::domain_error("lp_norm_reduced: requires p >= 1");
  if (std::isinf(p)) return u.samples.cwiseAbs().maxCoeff();
  const int rho_axis = d - 2;
  const Eigen::Index total = u.samples.size();
  double cell = 1.0;
  for (int ax = 0; ax < d; ++ax) cell *= u.geo.h;
  const std::int64_t rs = u.geo.stride(rho_axis);
  const int rn = u.geo.dims[rho_axis];
  double sum = 0.0;
  for (Eigen::Index flat = 0; flat < total; ++flat) {
    const int ir = static_cast<int>((flat / rs) % rn);
    const double rho = reduced_rho(u.geo, ir);
    sum += std::pow(std::abs(u.samples[flat]), p) * 2.0 * kPi * rho * cell;
  }
  return std::pow(sum, 1.0 / p);
}

HigherConstant higher_poisson_constant(int k, const ModelParams& mp) {
  require_heis(mp, "higher_poisson_constant");
  require_higher_range(k, mp, "higher_poisson_constant");
  const int n = mp.n;
  GridGeometry geo(std::vector<int>(2 * n, 25), 1.2);
  RealField u = sample_reduced_field(geo, [&](const Eigen::VectorXd& red) {
    return higher_kinv_solution_heis(reduced_to_heis(red), k, mp);
  });
  RealField v = restrict_D_ak(u, k, mp);

  const int bd = v.geo.dim();
  std::vector<int> centre(bd);
  for (int ax = 0; ax < bd; ++ax) centre[ax] = (v.geo.dims[ax] - 1) / 2;
  std::vector<std::vector<int>> probes{centre};
  for (int off : {-2, 2}) {
    auto idx = centre;
    idx[0] += off;
    probes.push_back(idx);
    idx = centre;
    idx[bd - 1] += off;
    probes.push_back(idx);
  }

  double lo = 0.0, hi = 0.0, sum = 0.0;
  bool first = true;
  for (const auto& idx : probes) {
    Eigen::VectorXd q(2 * n - 1);
    for (int ax = 0; ax < bd; ++ax) q[ax] = v.geo.coord(ax, idx[ax]);
    double c = higher_kinv_boundary_heis(q, k, mp) / v.at(idx);
    sum += c;
    lo = first ? c : std::min(lo, c);
    hi = first ? c : std::max(hi, c);
    first = false;
  }
  HigherConstant out;
  out.value = sum / static_cast<double>(probes.size());
  out.spread = (hi - lo) / std::fabs(out.value);
  return out;
}

RadialCoeffSeq radial_coeffs(int k, int M, const ModelParams& mp) {
  require_heis(mp, "radial_coeffs");
  if (k < 0 || M < 1)
    throw std::domain_error("radial_coeffs: requires k >= 0, M >= 1");
  if (!mp.dirichlet_range())
    throw std::domain_error("radial_coeffs: requires -2n < a < 0");
  RadialCoeffSeq seq;
  seq.k = k;
  seq.n = mp.n;
  seq.a = mp.a;
  seq.values.resize(M + 1);
  const double x = k + mp.n / 2.0 + mp.a / 4.0;
  const double y = k + mp.n / 2.0 - mp.a / 4.0 + 1.0;
  double t = 1.0;
  for (int l = 0; l <= M; ++l) {
    seq.values[l] = t;
    t *= (x + l) / (y + l);
  }
  return seq;
}

double recursion_residual(const RadialCoeffSeq& seq) {
  const int M = static_cast<int>(seq.values.size()) - 1;
  const double a = seq.a;
  double big = 0.0;
  for (double v : seq.values) big = std::max(big, std::fabs(v));
  double worst = 0.0;
  for (int l = 0; l < M; ++l) {
    double base = 2.0 * seq.k + 2.0 * l + seq.n;
    double prev = l > 0 ? seq.values[l - 1] : 0.0;
    double r = (l + 1.0) * (2.0 * (base + 2.0) - a) * seq.values[l + 1] -
               (2.0 * (2.0 * l + 1.0) * base + a) * seq.values[l] +
               l * (2.0 * (base - 2.0) + a) * prev;
    worst = std::max(worst, std::fabs(r));
  }
  return worst / big;
}

double partial_trace_factor(int k, int M, const ModelParams& mp) {
  RadialCoeffSeq seq = radial_coeffs(k, M, mp);
  double sum = 0.0, comp = 0.0;
  for (int l = 0; l < M; ++l) {
    double yk = seq.values[l] - comp;
    double tmp = sum + yk;
    comp = (tmp - sum) - yk;
    sum = tmp;
  }
  const double x = k + mp.n / 2.0 + mp.a / 4.0;
  const double y = k + mp.n / 2.0 - mp.a / 4.0 + 1.0;
  return sum + seq.values[M] * (y + M - 1.0) / (y - x - 1.0);
}

double isometry_weight_ratio(int k, int M, const ModelParams& mp) {
  double S = partial_trace_factor(k, M, mp);
  double num = 2.0 * kPi * mp.a * mp.a *
               pochhammer(1.0 + mp.n / 2.0 - mp.a / 4.0, k) * S;
  double den = (4.0 * k + 2.0 * mp.n - mp.a) *
               (4.0 * k + 2.0 * mp.n - mp.a) *
               pochhammer(mp.n / 2.0 - mp.a / 4.0, k);
  return num / den;
}

}  // namespace poisext
