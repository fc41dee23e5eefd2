#include "dnkg/solitary.hpp"

#include <algorithm>
#include <cmath>

#include "dnkg/error.hpp"
#include "dnkg/spectral.hpp"

namespace dnkg {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Complex phase_factor(double omega, std::int64_t t) {
  const long double a = static_cast<long double>(omega) * static_cast<long double>(t);
  return std::polar(1.0, -static_cast<double>(std::remainder(a, static_cast<long double>(kTwoPi))));
}

void check_setup(const BoxDomain& box, const GridParams& grid) {
  grid.validate();
  if (box.dim() != grid.n) fail(ErrorCode::DimensionError, "box dimension differs from grid");
  if (!grid.ratio_exact())
    fail(ErrorCode::RatioMismatch, "solitary waves are built at tau/eps = 1/sqrt(n)");
}

// G_0(w) cos w from the quadrature; positive on the gap around 0.
double g0cos(double omega, const GridParams& grid) {
  return greens(Site::Zero(grid.n), omega, grid).value.real() * std::cos(omega);
}

double amplitude_target(double g0, double omega, double tau) {
  return -1.0 / (tau * tau * g0 * std::cos(omega));
}

}  // namespace

const char* to_string(SolitaryKind k) {
  switch (k) {
    case SolitaryKind::One: return "one";
    case SolitaryKind::Two: return "two";
    case SolitaryKind::Four: return "four";
  }
  return "?";
}

Field SolitaryWave::evaluate(std::int64_t t) const {
  Field out = Field::Zero(box.size());
  switch (kind) {
    case SolitaryKind::One:
      out = profiles[0] * phase_factor(frequencies[0], t);
      break;
    case SolitaryKind::Two: {
      const Complex e = phase_factor(frequencies[0], t);
      const int tp = int(((t % 2) + 2) % 2);
      for (Index i = 0; i < box.size(); ++i) {
        const int odd = (tp + box.parity(i)) % 2;
        const double f = 1.0 + (odd ? -sigma : sigma);
        if (f != 0.0) out[i] = f * profiles[0][i] * e;
      }
      break;
    }
    case SolitaryKind::Four: {
      const Complex e1 = phase_factor(frequencies[0], t), e2 = phase_factor(frequencies[1], t);
      const int tp = int(((t % 2) + 2) % 2);
      for (Index i = 0; i < box.size(); ++i)
        out[i] = (tp + box.parity(i)) % 2 ? 2.0 * profiles[1][i] * e2 : 2.0 * profiles[0][i] * e1;
      break;
    }
  }
  return out;
}

FieldState SolitaryWave::initial_state(std::int64_t t0) const {
  FieldState s;
  s.box = box;
  s.prev = evaluate(t0);
  s.curr = evaluate(t0 + 1);
  s.t = t0;
  return s;
}

std::vector<std::pair<double, Field>> SolitaryWave::spectral_components() const {
  auto alternating = [&](const Field& f, double sign) {
    Field g(f.size());
    for (Index i = 0; i < box.size(); ++i) g[i] = (box.parity(i) ? -sign : sign) * f[i];
    return g;
  };
  switch (kind) {
    case SolitaryKind::One:
      return {{frequencies[0], profiles[0]}};
    case SolitaryKind::Two:
      return {{frequencies[0], profiles[0]},
              {frequencies[0] + M_PI, alternating(profiles[0], double(sigma))}};
    case SolitaryKind::Four:
      return {{frequencies[0], profiles[0]},
              {frequencies[0] + M_PI, alternating(profiles[0], 1.0)},
              {frequencies[1], profiles[1]},
              {frequencies[1] + M_PI, alternating(profiles[1], -1.0)}};
  }
  return {};
}

bool one_freq_criterion(double omega, const GridParams& grid, const PolynomialPotential& W) {
  grid.validate();
  const double v = 1.0 / g0cos(omega, grid);  // throws OnSpectrum off the gaps
  const double target = -v / (grid.tau * grid.tau);
  if (W.is_linear()) return std::abs(W.coeffs[0] - target) <= 1e-10 * std::abs(target);
  return derivative_range(W).contains(target);
}

RealInterval one_freq_range_1d(const GridParams& grid) {
  grid.validate();
  if (grid.n != 1) fail(ErrorCode::DimensionError, "closed-form frequency range needs n = 1");
  const double A = grid.mass_factor();
  RealInterval r;
  r.lo = ExtendedReal::finite(0.0);
  r.hi = ExtendedReal::finite(2.0 * std::sqrt(A * A - 1.0));
  r.lo_closed = false;
  r.hi_closed = true;
  return r;
}

SolitaryWave construct_one_freq(double omega, const BoxDomain& box, const GridParams& grid,
                                const PolynomialPotential& W, RootSelect select, Complex phase) {
  check_setup(box, grid);
  const GreensTable tab = greens_table(box, omega, grid);
  const double G0 = tab.origin().real();
  const double target = amplitude_target(G0, omega, grid.tau);
  if (W.is_linear()) {
    if (std::abs(W.coeffs[0] - target) <= 1e-10 * std::abs(target))
      fail(ErrorCode::DegenerateLinear, "linear W: every amplitude solves the amplitude equation");
    fail(ErrorCode::NoRoot, "linear W: the amplitude equation has no solution");
  }
  std::vector<double> poly = derivative_poly(W);
  poly[0] -= target;
  std::vector<double> roots;
  for (double x : real_roots(poly, 0.0))
    if (x > 0) roots.push_back(x);
  if (roots.empty()) fail(ErrorCode::NoRoot, "no lambda > 0 with -tau^2 W'(lambda) = 1/(G_0 cos w)");
  std::size_t k = 0;
  switch (select.mode) {
    case RootSelect::Mode::Smallest: k = 0; break;
    case RootSelect::Mode::Largest: k = roots.size() - 1; break;
    case RootSelect::Mode::Index:
      if (select.index < 0 || std::size_t(select.index) >= roots.size())
        fail(ErrorCode::NoRoot, "root index out of range");
      k = std::size_t(select.index);
      break;
  }
  const double a = std::sqrt(roots[k]);
  const double mod = std::abs(phase);
  const Complex C = (mod > 0 ? phase / mod : Complex(1.0)) * (a / std::abs(G0));

  SolitaryWave w;
  w.kind = SolitaryKind::One;
  w.frequencies = {omega};
  w.profiles = {C * tab.values};
  w.amplitudes = {C};
  w.box = box;
  w.lambda_roots = roots;
  w.condition_residual =
      std::abs(1.0 + grid.tau * grid.tau * potential_deriv(W, std::norm(C * G0)) * G0 * std::cos(omega));
  return w;
}

namespace {

// Frequency in [0, w_m) with G_0(w) cos w = target. Bracketed with the
// quadrature, then refined on a fixed-period table so the profile that is
// actually used satisfies the amplitude equation to round-off.
std::pair<double, GreensTable> solve_gap_frequency(double target, const BoxDomain& box,
                                                   const GridParams& grid) {
  const double wm = grid.omega_m();
  double lo = 0.0, hi = 0.0;
  if (g0cos(0.0, grid) > target) fail(ErrorCode::NoSolution, "target below G_0(0): no gap frequency");
  for (int k = 1;; ++k) {
    if (k > 40) fail(ErrorCode::NoSolution, "target beyond the resolvable part of the gap");
    hi = wm * (1.0 - std::ldexp(1.0, -k));
    double v;
    try {
      v = g0cos(hi, grid);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoConvergence)
        fail(ErrorCode::NoSolution, "target beyond the resolvable part of the gap");
      throw;
    }
    if (v >= target) break;
    lo = hi;
  }
  for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g0cos(mid, grid) < target ? lo : hi) = mid;
  }
  double w = 0.5 * (lo + hi);
  const int N = greens_table(box, w, grid).points_per_dim;
  auto f = [&](double x) {
    return periodic_greens_table(box, x, grid, N).origin().real() * std::cos(x) - target;
  };
  double w0 = w, f0 = f(w0);
  double w1 = w0 == 0.0 ? 1e-9 * wm : w0 * (1.0 + 1e-7), f1 = f(w1);
  for (int it = 0; it < 30 && f1 != 0.0 && f1 != f0; ++it) {
    const double w2 = w1 - f1 * (w1 - w0) / (f1 - f0);
    w0 = w1;
    f0 = f1;
    w1 = std::clamp(w2, 0.0, std::nextafter(wm, 0.0));
    f1 = f(w1);
    if (std::abs(f1) <= 1e-16 * target) break;
  }
  w = std::abs(f1) <= std::abs(f0) ? w1 : w0;
  return {w, periodic_greens_table(box, w, grid, N)};
}

}  // namespace

SolitaryWave construct_two_freq(double omega, int sigma, const BoxDomain& box, const GridParams& grid,
                                const PolynomialPotential& W, Complex amplitude, TwoFreqMode mode) {
  check_setup(box, grid);
  if (sigma != 1 && sigma != -1) fail(ErrorCode::Config, "sigma must be +1 or -1");
  const double tau2 = grid.tau * grid.tau;
  const double Wp = potential_deriv(W, 4.0 * std::norm(amplitude));
  GreensTable tab;
  if (mode == TwoFreqMode::Solve) {
    if (Wp >= 0) fail(ErrorCode::NoSolution, "W'(4|phi_0|^2) >= 0: no gap frequency solves the equation");
    auto [w, t] = solve_gap_frequency(-1.0 / (tau2 * Wp), box, grid);
    omega = omega < 0 ? -w : w;
    tab = std::move(t);
  } else {
    if (!SpectralParams::from(grid).in_gap0(omega))
      fail(ErrorCode::OnSpectrum, "two-frequency waves need omega in the gap around 0");
    tab = greens_table(box, omega, grid);
  }
  const double G0 = tab.origin().real();
  const double defect = std::abs(1.0 + tau2 * Wp * G0 * std::cos(omega));
  if (mode == TwoFreqMode::Verify && defect > 1e-10)
    fail(ErrorCode::NoSolution, "amplitude equation violated by " + std::to_string(defect));

  SolitaryWave w;
  w.kind = SolitaryKind::Two;
  w.frequencies = {omega};
  const Complex C = amplitude / G0;
  w.profiles = {C * tab.values};
  w.amplitudes = {C};
  w.sigma = sigma;
  w.box = box;
  w.condition_residual = defect;
  return w;
}

FourFreqResult construct_four_freq(double omega1, double omega2, Complex p0, Complex r0,
                                   const BoxDomain& box, const GridParams& grid) {
  check_setup(box, grid);
  const auto sp = SpectralParams::from(grid);
  if (!sp.in_gap0(omega1) || !sp.in_gap0(omega2))
    fail(ErrorCode::OnSpectrum, "four-frequency waves need both frequencies in the gap around 0");
  if (circle_distance(omega1, omega2) < 1e-12 || circle_distance(omega1, omega2 + M_PI) < 1e-12)
    fail(ErrorCode::DegenerateFrequencies, "omega1 and omega2 coincide modulo pi");
  if (p0 == 0.0 && r0 == 0.0) fail(ErrorCode::PotentialDesignFailure, "p0 and r0 both vanish");

  const double tau2 = grid.tau * grid.tau;
  const GreensTable t1 = greens_table(box, omega1, grid), t2 = greens_table(box, omega2, grid);
  const double G1 = t1.origin().real(), G2 = t2.origin().real();
  const double T1 = amplitude_target(G1, omega1, grid.tau), T2 = amplitude_target(G2, omega2, grid.tau);

  FourFreqResult out;
  FourFreqParams& P = out.params;
  P.p0 = p0;
  P.r0 = r0;
  P.alpha = 2.0 * (std::norm(p0) + std::norm(r0));
  P.beta = 2.0 * (std::norm(p0) - std::norm(r0));
  P.M = 0.5 * (T1 + T2);
  P.N = 0.5 * (T1 - T2);

  // W'(alpha + beta) = T1 pairs with omega1, W'(alpha - beta) = T2 with omega2.
  const double x1 = P.alpha + P.beta, x2 = P.alpha - P.beta;
  if (r0 == 0.0) {
    out.W = PolynomialPotential({T1});
  } else if (p0 == 0.0) {
    out.W = PolynomialPotential({T2});
  } else if (std::abs(x1 - x2) <= 1e-14 * P.alpha) {
    if (std::abs(T1 - T2) > 1e-12 * std::max(std::abs(T1), std::abs(T2)))
      fail(ErrorCode::PotentialDesignFailure,
           "|p0| = |r0| forces W'(alpha) to take two values: M+N = " + std::to_string(T1) +
               ", M-N = " + std::to_string(T2));
    out.W = PolynomialPotential({P.M});
  } else {
    // W' = C0 + 2 C1 lambda through (x1, T1), (x2, T2); unique at this degree.
    const double C1 = (T1 - T2) / (2.0 * (x1 - x2));
    const double C0 = T1 - 2.0 * C1 * x1;
    out.W = C1 == 0.0 ? PolynomialPotential({C0}) : PolynomialPotential({C0, C1});
  }

  SolitaryWave& w = out.wave;
  w.kind = SolitaryKind::Four;
  w.frequencies = {omega1, omega2};
  const Complex C1 = p0 / G1, C2 = r0 / G2;
  w.profiles = {C1 * t1.values, C2 * t2.values};
  w.amplitudes = {C1, C2};
  w.box = box;
  double defect = 0;
  if (p0 != 0.0)
    defect = std::abs(1.0 + tau2 * potential_deriv(out.W, x1) * G1 * std::cos(omega1));
  if (r0 != 0.0)
    defect = std::max(defect, std::abs(1.0 + tau2 * potential_deriv(out.W, x2) * G2 * std::cos(omega2)));
  w.condition_residual = defect;
  return out;
}

double residual(const SolitaryWave& wave, std::int64_t steps, const GridParams& grid,
                const PolynomialPotential& W, ModelKind model) {
  const BoxDomain& box = wave.box;
  const PolynomialPotential Vb = onsite_potential(model, grid, W, false);
  const PolynomialPotential Vo = onsite_potential(model, grid, W, true);
  const double tau2 = grid.tau * grid.tau, r2 = grid.courant_sq();
  Field um = wave.evaluate(0), u = wave.evaluate(1);
  double worst = 0;
  for (std::int64_t t = 1; t <= steps; ++t) {
    Field up = wave.evaluate(t + 1);
    for (Index i = 0; i < box.size(); ++i) {
      if (box.on_boundary(i)) continue;
      const PolynomialPotential& V = i == box.origin() ? Vo : Vb;
      Complex lap = -2.0 * double(box.dim()) * u[i];
      for (int a = 0; a < box.dim(); ++a) lap += u[i + box.stride(a)] + u[i - box.stride(a)];
      const Complex xi = r2 * lap + 2.0 * u[i];
      const Complex lhs = (up[i] + um[i]) * (1.0 + tau2 * divided_difference(V, std::norm(up[i]), std::norm(um[i])));
      worst = std::max(worst, std::abs(lhs - xi));
    }
    um = std::move(u);
    u = std::move(up);
  }
  return worst;
}

}  // namespace dnkg
