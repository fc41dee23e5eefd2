#include "dnkg/stepper.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dnkg/error.hpp"

namespace dnkg {

ModelKind parse_model(std::string_view s) {
  if (s == "oscillator" || s == "OscillatorAtOrigin") return ModelKind::OscillatorAtOrigin;
  if (s == "onsite" || s == "UniformOnSite") return ModelKind::UniformOnSite;
  fail(ErrorCode::Config, "unknown model '" + std::string(s) + "'");
}

const char* to_string(ModelKind m) {
  return m == ModelKind::OscillatorAtOrigin ? "oscillator" : "onsite";
}

PolynomialPotential onsite_potential(ModelKind model, const GridParams& grid,
                                     const PolynomialPotential& W, bool at_origin) {
  const double half_m2 = 0.5 * grid.m * grid.m;
  if (model == ModelKind::OscillatorAtOrigin && !at_origin) return PolynomialPotential({half_m2});
  const double w = model == ModelKind::OscillatorAtOrigin ? 0.5 : 1.0;
  std::vector<double> c(W.coeffs.size());
  for (std::size_t q = 0; q < c.size(); ++q) c[q] = w * W.coeffs[q];
  c[0] += half_m2;
  return PolynomialPotential(std::move(c));
}

Complex xi_value(const FieldState& state, Index i, const GridParams& grid) {
  const BoxDomain& box = state.box;
  if (i < 0 || i >= box.size()) fail(ErrorCode::OutOfBox, "site index out of range");
  if (box.on_boundary(i)) fail(ErrorCode::OutOfBox, "site has a neighbour outside the box");
  const Field& u = state.curr;
  Complex lap = -2.0 * double(box.dim()) * u[i];
  for (int a = 0; a < box.dim(); ++a) lap += u[i + box.stride(a)] + u[i - box.stride(a)];
  return grid.courant_sq() * lap + 2.0 * u[i];
}

namespace {

struct OnsiteEq {
  Complex xi, p;
  const PolynomialPotential& V;
  double tau2;
  double p2;

  double lam(double s) const { return std::norm(s * xi - p); }
  double f(double s) const { return (1.0 + tau2 * divided_difference(V, lam(s), p2)) * s; }
  double df(double s) const {
    const double l = lam(s);
    const double dl = 2.0 * std::norm(xi) * s - 2.0 * (std::conj(p) * xi).real();
    return 1.0 + tau2 * divided_difference(V, l, p2) + tau2 * divided_difference_dlambda(V, l, p2) * dl * s;
  }
};

}  // namespace

OnsiteSolution solve_onsite(Complex xi, Complex psi_prev, const PolynomialPotential& V, double tau,
                            const OnsiteOptions& opts) {
  OnsiteSolution out;
  if (xi == Complex(0.0, 0.0)) {
    out.value = -psi_prev;
    return out;
  }
  const double tau2 = tau * tau;
  if (V.is_linear()) {
    const double denom = 1.0 + tau2 * V.coeffs[0];
    if (!(denom > 0)) fail(ErrorCode::NoBracket, "linear on-site factor is not positive");
    out.scale = 1.0 / denom;
    out.value = out.scale * xi - psi_prev;
    out.report.iterations = 0;
    return out;
  }

  const OnsiteEq eq{xi, psi_prev, V, tau2, std::norm(psi_prev)};
  double lo = 0.0, hi = 1.0;
  double f_hi = eq.f(hi);
  int expansions = 0;
  while (!(f_hi > 1.0)) {
    if (++expansions > 200 || !std::isfinite(f_hi))
      fail(ErrorCode::NoBracket, "f(s) never exceeds 1; tau may be above tau1");
    lo = hi;
    hi *= 2.0;
    f_hi = eq.f(hi);
  }

  if (opts.scan_for_multiple_roots) {
    // Restart from zero so that the smallest root is selected.
    constexpr int kScan = 64;
    int changes = 0;
    double first_lo = 0.0, first_hi = hi;
    double prev_s = 0.0, prev_r = -1.0;
    for (int k = 1; k <= kScan; ++k) {
      const double s = hi * double(k) / kScan;
      const double r = eq.f(s) - 1.0;
      if ((prev_r < 0) != (r < 0)) {
        if (changes == 0) { first_lo = prev_s; first_hi = s; }
        ++changes;
      }
      prev_s = s;
      prev_r = r;
    }
    if (changes > 1) out.report.multi_root_warning = true;
    lo = first_lo;
    hi = first_hi;
  }

  double s_lin = 1.0 / (1.0 + tau2 * std::max(V.coeffs[0], 0.0));
  double s = 1.0 / (1.0 + tau2 * divided_difference(V, eq.lam(s_lin), eq.p2));
  if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);

  double best_s = s, best_r = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const double r = eq.f(s) - 1.0;
    if (std::abs(r) < best_r) { best_r = std::abs(r); best_s = s; }
    out.report.iterations = it;
    if (std::abs(r) <= opts.tolerance) break;
    if (r < 0) lo = s; else hi = s;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    const double d = eq.df(s);
    double next = s - r / d;
    if (!(d > 0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    s = next;
    if (it == opts.max_iterations) fail(ErrorCode::Divergence, "on-site solve exceeded iteration cap");
  }
  out.scale = best_s;
  out.report.residual = best_r;
  out.value = best_s * xi - psi_prev;
  return out;
}

Stepper::Stepper(const GridParams& grid, const PolynomialPotential& W, ModelKind model,
                 const BoxDomain& box)
    : grid_(grid), W_(W), model_(model), box_(box) {
  grid_.validate();
  V_bulk_ = onsite_potential(model, grid, W, false);
  V_origin_ = onsite_potential(model, grid, W, true);
  bulk_linear_ = V_bulk_.is_linear();
  bulk_scale_ = 1.0 / (1.0 + grid.tau * grid.tau * V_bulk_.coeffs[0]);
  const PolynomialPotential& Vn = model == ModelKind::OscillatorAtOrigin ? V_origin_ : V_bulk_;
  if (!Vn.is_linear()) {
    if (Vn.is_confining()) {
      thresholds_ = tau_thresholds(Vn);
      const auto& t2 = thresholds_->tau2;
      scan_ = t2.is_finite() && grid.tau >= t2.value;
    } else {
      scan_ = true;
    }
  }
  boundary_.resize(std::size_t(box.size()));
  for (Index i = 0; i < box.size(); ++i) boundary_[std::size_t(i)] = box.on_boundary(i) ? 1 : 0;
  scratch_.resize(box.size());
}

StepStats Stepper::advance(FieldState& state) {
  if (!(state.box == box_)) fail(ErrorCode::DimensionError, "state box does not match stepper box");
  StepStats stats;
  const Index N = box_.size();
  const int n = box_.dim();
  const double r2 = grid_.courant_sq();
  const Field& u = state.curr;
  const Field& v = state.prev;
  const Index origin = box_.origin();
  OnsiteOptions opts;
  opts.scan_for_multiple_roots = scan_;
  for (Index i = 0; i < N; ++i) {
    if (boundary_[std::size_t(i)]) {
      scratch_[i] = 0.0;
      continue;
    }
    Complex lap = -2.0 * double(n) * u[i];
    for (int a = 0; a < n; ++a) {
      const Index s = box_.stride(a);
      lap += u[i + s] + u[i - s];
    }
    const Complex xi = r2 * lap + 2.0 * u[i];
    const bool at_origin = i == origin;
    if (bulk_linear_ && !at_origin) {
      scratch_[i] = bulk_scale_ * xi - v[i];
      continue;
    }
    const PolynomialPotential& V =
        (model_ == ModelKind::OscillatorAtOrigin && at_origin) ? V_origin_ : V_bulk_;
    try {
      const OnsiteSolution sol = solve_onsite(xi, v[i], V, grid_.tau, opts);
      scratch_[i] = sol.value;
      stats.max_iterations = std::max(stats.max_iterations, sol.report.iterations);
      if (sol.report.multi_root_warning) ++stats.multi_root_warnings;
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " at site index " + std::to_string(i) +
                                ", t=" + std::to_string(state.t + 1));
    }
  }
  state.prev.swap(state.curr);
  state.curr.swap(scratch_);
  ++state.t;
  return stats;
}

FieldState step(const FieldState& state, const GridParams& grid, const PolynomialPotential& W,
                ModelKind model) {
  state.validate();
  Stepper stepper(grid, W, model, state.box);
  FieldState next = state;
  stepper.advance(next);
  return next;
}

}  // namespace dnkg
