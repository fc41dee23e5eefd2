#include "dnkg/potential.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <unsupported/Eigen/Polynomials>

#include "dnkg/error.hpp"

namespace dnkg {

double ExtendedReal::as_double() const {
  switch (kind) {
    case Kind::Finite: return value;
    case Kind::PlusInfinity: return std::numeric_limits<double>::infinity();
    case Kind::MinusInfinity: return -std::numeric_limits<double>::infinity();
    case Kind::NotApplicable: return std::numeric_limits<double>::quiet_NaN();
  }
  return value;
}

std::string ExtendedReal::to_string() const {
  switch (kind) {
    case Kind::PlusInfinity: return "+inf";
    case Kind::MinusInfinity: return "-inf";
    case Kind::NotApplicable: return "n/a";
    case Kind::Finite: break;
  }
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

ExtendedReal tau_from_k(const ExtendedReal& k) {
  switch (k.kind) {
    case ExtendedReal::Kind::NotApplicable: return ExtendedReal::not_applicable();
    case ExtendedReal::Kind::PlusInfinity: return ExtendedReal::plus_infinity();
    case ExtendedReal::Kind::MinusInfinity: return ExtendedReal::finite(0.0);
    case ExtendedReal::Kind::Finite: break;
  }
  if (k.value < 0) return ExtendedReal::finite(std::sqrt(-1.0 / k.value));
  return ExtendedReal::plus_infinity();
}

namespace {

double horner(const std::vector<double>& c, double x) {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> differentiate(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(double(i) * c[i]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

std::vector<double> trimmed(std::vector<double> c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  return c;
}

}  // namespace

std::vector<double> real_roots(const std::vector<double>& coeffs_in, double lo, double hi) {
  const std::vector<double> c = trimmed(coeffs_in);
  std::vector<double> candidates;
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg < 1) return {};
  if (deg == 1) {
    candidates.push_back(-c[0] / c[1]);
  } else {
    Eigen::VectorXd poly(deg + 1);
    for (int i = 0; i <= deg; ++i) poly[i] = c[std::size_t(i)];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(poly);
    for (Eigen::Index i = 0; i < solver.roots().size(); ++i) {
      const auto z = solver.roots()[i];
      // Loose filter: near-double roots come back with small imaginary parts.
      if (std::abs(z.imag()) <= 1e-6 * (1.0 + std::abs(z))) candidates.push_back(z.real());
    }
  }
  const std::vector<double> d = differentiate(c);
  std::vector<double> out;
  for (double x : candidates) {
    for (int it = 0; it < 8; ++it) {
      const double fp = horner(d, x);
      if (fp == 0.0) break;
      const double dx = horner(c, x) / fp;
      if (!std::isfinite(dx)) break;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    // Reject spurious complex pairs that Newton cannot bring to a sign change.
    const double scale = std::max(1.0, std::abs(x));
    double mag = 0;
    for (std::size_t i = 0; i < c.size(); ++i) mag += std::abs(c[i]) * std::pow(scale, double(i));
    if (std::abs(horner(c, x)) > 1e-9 * mag) continue;
    if (x < lo || x > hi) continue;
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  std::vector<double> uniq;
  for (double x : out)
    if (uniq.empty() || std::abs(x - uniq.back()) > 1e-12 * (1.0 + std::abs(x))) uniq.push_back(x);
  return uniq;
}

std::vector<double> potential_poly(const PolynomialPotential& W) {
  std::vector<double> c(W.coeffs.size() + 1, 0.0);
  for (std::size_t q = 0; q < W.coeffs.size(); ++q) c[q + 1] = W.coeffs[q];
  return c;
}

std::vector<double> derivative_poly(const PolynomialPotential& W) {
  return differentiate(potential_poly(W));
}

std::vector<double> second_derivative_poly(const PolynomialPotential& W) {
  return differentiate(derivative_poly(W));
}

ExtendedReal potential_infimum(const PolynomialPotential& W) {
  const auto c = trimmed(potential_poly(W));
  if (c.size() > 1 && c.back() < 0) return ExtendedReal::minus_infinity();
  double best = 0.0;  // W(0)
  for (double x : real_roots(derivative_poly(W), 0.0)) best = std::min(best, potential_eval(W, x));
  return ExtendedReal::finite(best);
}

ExtendedReal secant_slope_infimum(const PolynomialPotential& W) {
  const auto g = trimmed(W.coeffs);
  if (g.size() > 1 && g.back() < 0) return ExtendedReal::minus_infinity();
  double best = g[0];
  for (double x : real_roots(differentiate(g), 0.0))
    if (x > 0) best = std::min(best, horner(g, x));
  return ExtendedReal::finite(best);
}

bool RealInterval::contains(double x) const {
  const double a = lo.as_double(), b = hi.as_double();
  const bool above = lo_closed ? x >= a : x > a;
  const bool below = hi_closed ? x <= b : x < b;
  return above && below;
}

RealInterval derivative_range(const PolynomialPotential& W) {
  const auto d = trimmed(derivative_poly(W));
  RealInterval r;
  if (d.size() == 1) {
    r.lo = r.hi = ExtendedReal::finite(d[0]);
    r.lo_closed = r.hi_closed = true;
    return r;
  }
  // Limits: lambda -> 0+ gives d[0] (not attained), lambda -> inf gives +-inf.
  double lo = d[0], hi = d[0];
  bool lo_closed = false, hi_closed = false;
  for (double x : real_roots(differentiate(d), 0.0)) {
    if (x <= 0) continue;
    const double v = horner(d, x);
    if (v < lo || (v == lo && !lo_closed)) { lo = v; lo_closed = true; }
    if (v > hi || (v == hi && !hi_closed)) { hi = v; hi_closed = true; }
  }
  if (d.back() > 0) {
    r.lo = ExtendedReal::finite(lo);
    r.lo_closed = lo_closed;
    r.hi = ExtendedReal::plus_infinity();
  } else {
    r.lo = ExtendedReal::minus_infinity();
    r.hi = ExtendedReal::finite(hi);
    r.hi_closed = hi_closed;
  }
  return r;
}

double default_search_bound(const PolynomialPotential& W) {
  double s = 0;
  for (int q = 0; q < W.p(); ++q) s += std::abs(W.coeffs[std::size_t(q)]);
  return 2.0 * (1.0 + s / std::abs(W.leading()));
}

namespace {

double k_plus(const PolynomialPotential& W, double l, double m) {
  return divided_difference(W, l, m) + 2 * divided_difference_dlambda(W, l, m) * (l + std::sqrt(l * m));
}
double k_minus(const PolynomialPotential& W, double l, double m) {
  return divided_difference(W, l, m) + 2 * divided_difference_dlambda(W, l, m) * (l - std::sqrt(l * m));
}

// One Newton step on a 2-D function from finite differences; returns the improved value.
template <typename F>
double refine_once(F&& f, double x, double y, double h, double bound) {
  const double f0 = f(x, y);
  if (x < h || y < h || x + h > bound || y + h > bound) return f0;
  const double fxp = f(x + h, y), fxm = f(x - h, y), fyp = f(x, y + h), fym = f(x, y - h);
  const double fpp = f(x + h, y + h), fpm = f(x + h, y - h), fmp = f(x - h, y + h), fmm = f(x - h, y - h);
  const double gx = (fxp - fxm) / (2 * h), gy = (fyp - fym) / (2 * h);
  const double hxx = (fxp - 2 * f0 + fxm) / (h * h), hyy = (fyp - 2 * f0 + fym) / (h * h);
  const double hxy = (fpp - fpm - fmp + fmm) / (4 * h * h);
  const double det = hxx * hyy - hxy * hxy;
  if (!(det > 0) || !(hxx > 0)) return f0;
  const double dx = -(hyy * gx - hxy * gy) / det, dy = -(hxx * gy - hxy * gx) / det;
  const double nx = x + dx, ny = y + dy;
  if (nx < 0 || ny < 0 || nx > bound || ny > bound) return f0;
  return std::min(f0, f(nx, ny));
}

}  // namespace

TauThresholds tau_thresholds(const PolynomialPotential& W, double search_bound, int grid_points) {
  if (!W.is_confining())
    fail(ErrorCode::NonConfining, "leading coefficient must be positive with p >= 1");
  if (!(search_bound > 0)) fail(ErrorCode::Config, "search_bound must be positive");
  if (grid_points < 3) fail(ErrorCode::Config, "grid_points must be >= 3");

  TauThresholds th;
  th.search_bound = search_bound;
  th.grid_points = grid_points;

  double k1 = W.coeffs[0];
  for (double x : real_roots(second_derivative_poly(W), 0.0)) k1 = std::min(k1, potential_deriv(W, x));
  th.k1 = ExtendedReal::finite(k1);

  // Quadratic grading puts more nodes near the origin, where the infimum usually sits.
  const int G = grid_points;
  std::vector<double> nodes(static_cast<std::size_t>(G));
  for (int i = 0; i < G; ++i) {
    const double u = double(i) / (G - 1);
    nodes[std::size_t(i)] = search_bound * u * u;
  }
  double k2 = k1;  // K^-(lam, lam) = W'(lam), so k2 <= k1 exactly.
  for (int sign = 0; sign < 2; ++sign) {
    auto f = [&](double l, double m) { return sign == 0 ? k_minus(W, l, m) : k_plus(W, l, m); };
    Eigen::MatrixXd vals(G, G);
    for (int i = 0; i < G; ++i)
      for (int j = 0; j < G; ++j) vals(i, j) = f(nodes[std::size_t(i)], nodes[std::size_t(j)]);
    k2 = std::min(k2, vals.minCoeff());
    for (int i = 1; i + 1 < G; ++i)
      for (int j = 1; j + 1 < G; ++j) {
        const double v = vals(i, j);
        bool local_min = true;
        for (int di = -1; di <= 1 && local_min; ++di)
          for (int dj = -1; dj <= 1; ++dj)
            if ((di || dj) && vals(i + di, j + dj) < v) { local_min = false; break; }
        if (!local_min) continue;
        const double h = 0.25 * (nodes[std::size_t(i + 1)] - nodes[std::size_t(i)]);
        k2 = std::min(k2, refine_once(f, nodes[std::size_t(i)], nodes[std::size_t(j)], h, search_bound));
      }
  }
  th.k2 = ExtendedReal::finite(k2);
  th.k2_estimate = true;

  bool k3_ok = W.p() <= 4;
  for (int q = 1; q <= std::min(W.p(), 4) && k3_ok; ++q)
    if (W.coeffs[std::size_t(q)] < 0) k3_ok = false;
  th.k3 = k3_ok ? ExtendedReal::finite(W.coeffs[0]) : ExtendedReal::not_applicable();

  th.tau1 = tau_from_k(th.k1);
  th.tau2 = tau_from_k(th.k2);
  th.tau3 = tau_from_k(th.k3);
  return th;
}

TauThresholds tau_thresholds(const PolynomialPotential& W) {
  if (!W.is_confining())
    fail(ErrorCode::NonConfining, "leading coefficient must be positive with p >= 1");
  return tau_thresholds(W, default_search_bound(W), 201);
}

}  // namespace dnkg
