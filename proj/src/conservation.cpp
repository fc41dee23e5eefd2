#include "dnkg/conservation.hpp"

#include <cmath>
#include <vector>

#include "dnkg/error.hpp"

namespace dnkg {

namespace {

// Box coordinates in row-major order without a division per site.
struct Odometer {
  std::vector<int> c;
  int R;
  Odometer(int n, int radius) : c(std::size_t(n), -radius), R(radius) {}
  void next() {
    for (std::size_t ax = c.size(); ax-- > 0;) {
      if (++c[ax] <= R) return;
      c[ax] = -R;
    }
  }
};

}  // namespace

EnergyTerms energy_terms(const FieldState& state, const GridParams& grid, const PolynomialPotential& W,
                         ModelKind model) {
  state.validate();
  const BoxDomain& box = state.box;
  const int n = box.dim();
  const double vol = grid.cell_volume();
  const double diff_coef = 1.0 / (grid.tau * grid.tau) - double(n) / (grid.eps * grid.eps);
  const double grad_coef = 1.0 / (4.0 * grid.eps * grid.eps);
  const double half_m2 = 0.5 * grid.m * grid.m;
  const double w_coef = model == ModelKind::OscillatorAtOrigin ? 0.5 : 1.0;
  const Field& a = state.curr;
  const Field& b = state.prev;
  const Index origin = box.origin();

  long double diff = 0, grad = 0, mass = 0, nonlin = 0;
  const int R = box.radius();
  Odometer x(n, R);
  for (Index i = 0; i < box.size(); ++i, x.next()) {
    diff += std::norm(a[i] - b[i]);
    for (int ax = 0; ax < n; ++ax) {
      const Index s = box.stride(ax);
      const int c = x.c[std::size_t(ax)];
      const Complex up = c < R ? b[i + s] : Complex(0.0);
      const Complex dn = c > -R ? b[i - s] : Complex(0.0);
      grad += std::norm(a[i] - up) + std::norm(a[i] - dn);
      // Out-of-box neighbours of ring sites contribute |psi^t_Y|^2.
      if (c == R || c == -R) grad += std::norm(b[i]);
    }
    const double la = std::norm(a[i]), lb = std::norm(b[i]);
    mass += half_m2 * (la + lb);
    if (model == ModelKind::UniformOnSite || i == origin)
      nonlin += w_coef * (potential_eval(W, la) + potential_eval(W, lb));
  }

  EnergyTerms e;
  e.difference = double(vol * diff_coef * diff / 2);
  e.gradient = double(vol * grad_coef * grad);
  e.mass = double(vol * mass / 2);
  e.nonlinear = double(vol * nonlin / 2);
  return e;
}

double energy(const FieldState& state, const GridParams& grid, const PolynomialPotential& W,
              ModelKind model) {
  return energy_terms(state, grid, W, model).total();
}

double charge(const FieldState& state, const GridParams& grid) {
  if (!grid.ratio_exact()) fail(ErrorCode::RatioMismatch, "charge requires tau/eps = 1/sqrt(n)");
  state.validate();
  const BoxDomain& box = state.box;
  const Field& a = state.curr;
  const Field& b = state.prev;
  // sum conj(psi^t_{X+-e}) psi^{t+1}_X - c.c. is 2i Im(.); Q = (i/4tau) eps^n * that.
  long double im = 0;
  const int R = box.radius();
  Odometer x(box.dim(), R);
  for (Index i = 0; i < box.size(); ++i, x.next())
    for (int ax = 0; ax < box.dim(); ++ax) {
      const Index s = box.stride(ax);
      const int c = x.c[std::size_t(ax)];
      // Im(conj(u) v) spelled out; the complex product goes through a slow NaN-checking helper.
      if (c < R) im += b[i + s].real() * a[i].imag() - b[i + s].imag() * a[i].real();
      if (c > -R) im += b[i - s].real() * a[i].imag() - b[i - s].imag() * a[i].real();
    }
  return double(-2.0L * im * grid.cell_volume() / (4.0L * grid.tau));
}

double l2_norm_sq(const Field& u, const GridParams& grid) {
  return grid.cell_volume() * u.squaredNorm();
}

std::optional<double> apriori_rhs(double E0, const GridParams& grid, const PolynomialPotential& W,
                                  ModelKind model) {
  const double m2 = grid.m * grid.m;
  if (model == ModelKind::OscillatorAtOrigin) {
    const ExtendedReal inf_w = potential_infimum(W);
    if (!inf_w.is_finite()) return std::nullopt;
    return 4.0 / m2 * (E0 - grid.cell_volume() * inf_w.value);
  }
  // W(lam) >= kappa lam with kappa = min(0, inf W(lam)/lam) folds into the mass term.
  const ExtendedReal kappa = secant_slope_infimum(W);
  if (!kappa.is_finite()) return std::nullopt;
  const double denom = m2 + 2.0 * std::min(0.0, kappa.value);
  if (!(denom > 0)) return std::nullopt;
  return 4.0 * E0 / denom;
}

bool apriori_check(const Diagnostics& diag) {
  if (!diag.apriori_rhs) return true;
  const double rhs = *diag.apriori_rhs;
  return diag.l2_sq <= rhs * (1.0 + 1e-9) + 1e-300;
}

Diagnostics diagnostics(const FieldState& state, const GridParams& grid, const PolynomialPotential& W,
                        ModelKind model, double E0) {
  Diagnostics d;
  d.t = state.t;
  d.energy = energy(state, grid, W, model);
  if (grid.ratio_exact()) d.charge = charge(state, grid);
  d.l2_sq = l2_norm_sq(state.prev, grid);
  d.apriori_rhs = apriori_rhs(E0, grid, W, model);
  return d;
}

double weighted_norm(const FieldState& state, double s) {
  if (!(s > 0)) fail(ErrorCode::DomainError, "weight exponent must be positive");
  const BoxDomain& box = state.box;
  double np = 0, nc = 0;
  for (Index i = 0; i < box.size(); ++i) {
    const double w = std::pow(1.0 + box.norm_sq(i), -s);
    np += w * std::norm(state.prev[i]);
    nc += w * std::norm(state.curr[i]);
  }
  return std::sqrt(std::sqrt(np) + std::sqrt(nc));
}

}  // namespace dnkg
