#include "dnkg/fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dnkg/conservation.hpp"
#include "dnkg/error.hpp"
#include "dnkg/spectral.hpp"
#include "dnkg/spectrum.hpp"

namespace dnkg {

const char* to_string(FitKind k) {
  switch (k) {
    case FitKind::Auto: return "auto";
    case FitKind::One: return "one";
    case FitKind::Two: return "two";
  }
  return "?";
}

namespace {

// Least-squares objective for tones at w (and w + pi) over a window, with time
// measured from the window centre so that derivatives stay well scaled.
struct ToneWindow {
  const Complex* x;
  int L;
  bool start_even;  // parity of the global time of x[0]
  double centre;    // (L - 1) / 2

  struct Sums {
    Complex se, so, dse, dso;  // even/odd partial sums and their w-derivatives
  };
  Sums sums(double w) const {
    Sums s;
    for (int k = 0; k < L; ++k) {
      const double kc = k - centre;
      const Complex v = x[k] * std::polar(1.0, w * kc);
      const bool even = (k % 2 == 0) == start_even;
      (even ? s.se : s.so) += v;
      (even ? s.dse : s.dso) += Complex(0, kc) * v;
    }
    return s;
  }
  int n_even() const { return start_even ? (L + 1) / 2 : L / 2; }
  int n_odd() const { return L - n_even(); }

  // Explained energy and its derivative; the residual is |x|^2 minus this.
  std::pair<double, double> q(double w, bool two) const {
    const Sums s = sums(w);
    if (!two) {
      const Complex S = s.se + s.so, dS = s.dse + s.dso;
      return {std::norm(S) / L, 2.0 * std::real(std::conj(S) * dS) / L};
    }
    const double ne = n_even(), no = n_odd();
    return {std::norm(s.se) / ne + std::norm(s.so) / no,
            2.0 * std::real(std::conj(s.se) * s.dse) / ne + 2.0 * std::real(std::conj(s.so) * s.dso) / no};
  }
};

// Local maximiser of q near w0: sign change of q' on a fine grid, then bisection.
double refine(const ToneWindow& tw, double w0, bool two) {
  const double bin = 2.0 * M_PI / tw.L;
  constexpr int kGrid = 16;
  std::vector<double> ws(kGrid + 1), d(kGrid + 1);
  for (int j = 0; j <= kGrid; ++j) {
    ws[std::size_t(j)] = w0 - bin + 2.0 * bin * j / kGrid;
    d[std::size_t(j)] = tw.q(ws[std::size_t(j)], two).second;
  }
  int best = -1;
  for (int j = 0; j < kGrid; ++j) {
    if (d[std::size_t(j)] > 0 && d[std::size_t(j + 1)] <= 0) {
      if (best < 0 || std::abs(ws[std::size_t(j)] - w0) < std::abs(ws[std::size_t(best)] - w0)) best = j;
    }
  }
  if (best < 0) return w0;
  double lo = ws[std::size_t(best)], hi = ws[std::size_t(best + 1)];
  for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (tw.q(mid, two).second > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct Candidate {
  bool valid = false;
  FitResult r;
};

FieldState difference(const FieldState& a, const FieldState& b) {
  FieldState d = a;
  d.prev -= b.prev;
  d.curr -= b.curr;
  return d;
}

}  // namespace

FitResult fit_solitary(const FieldState& state, const std::vector<Complex>& series, std::int64_t series_t0,
                       const GridParams& grid, const FitOptions& opts) {
  grid.validate();
  if (!grid.ratio_exact()) fail(ErrorCode::RatioMismatch, "fit_solitary needs tau/eps = 1/sqrt(n)");
  if (state.box.dim() != grid.n) fail(ErrorCode::DimensionError, "state and grid dimensions differ");
  const int L = opts.window;
  if (L < kMinWindow) fail(ErrorCode::WindowTooShort, "fit window " + std::to_string(L) + " < 256");
  const std::int64_t t_last = state.t + 1;
  const std::int64_t begin = t_last - L + 1 - series_t0;
  if (begin < 0 || t_last - series_t0 >= std::int64_t(series.size()))
    fail(ErrorCode::DomainError, "fit window not covered by the series");
  const Complex* x = series.data() + begin;
  const std::int64_t t_start = t_last - L + 1;

  FitResult zero;
  zero.zero = true;
  zero.distance = weighted_norm(state, opts.s);
  double energy = 0;
  for (int k = 0; k < L; ++k) energy += std::norm(x[k]);
  if (energy == 0.0) return zero;

  const SpectralParams sp = SpectralParams::from(grid);
  const SpectrumReport spec = windowed_spectrum(series, begin, L, sp);
  double pmax = 0, pmean = 0;
  for (double p : spec.power) {
    pmax = std::max(pmax, p);
    pmean += p / L;
  }
  if (spec.peaks.empty() || pmax <= 30.0 * pmean) fail(ErrorCode::NoPeak, "window spectrum has no dominant peak");
  const double peak = spec.peaks.front().omega;

  const ToneWindow tw{x, L, ((t_start % 2) + 2) % 2 == 0, 0.5 * (L - 1)};
  const double t_ref = double(t_start) + tw.centre;

  auto finish = [&](FitResult r, double explained) {
    r.fit_error = std::sqrt(std::max(0.0, energy - explained) / energy);
    return r;
  };

  auto one = [&]() {
    Candidate c;
    const double w = refine(tw, peak, false);
    const auto s = tw.sums(w);
    FitResult r;
    r.kind = FitKind::One;
    r.omega = w;
    r.a = std::polar(1.0, w * t_ref) * (s.se + s.so) / double(L);
    r = finish(r, tw.q(w, false).first);
    if (!sp.in_gap(w)) {
      c.r = r;
      return c;
    }
    const GreensTable G = greens_table(state.box, w, grid);
    const double g0 = G.origin().real();
    r.wave.kind = SolitaryKind::One;
    r.wave.box = state.box;
    r.wave.frequencies = {w};
    r.wave.amplitudes = {r.a / g0};
    r.wave.profiles = {G.values * (r.a / g0)};
    if (opts.W) {
      r.condition_defect =
          std::abs(1.0 + grid.tau * grid.tau * potential_deriv(*opts.W, std::norm(r.a)) * g0 * std::cos(w));
    }
    r.distance = weighted_norm(difference(state, r.wave.initial_state(state.t)), opts.s);
    c.valid = true;
    c.r = r;
    return c;
  };

  auto two = [&]() {
    Candidate c;
    double w = refine(tw, peak, true);
    const auto s = tw.sums(w);
    // e^{-iwt}(a + b(-1)^t): a + b on even t, a - b on odd t.
    const Complex rot = std::polar(1.0, w * t_ref);
    const Complex ev = rot * s.se / double(tw.n_even()), od = rot * s.so / double(tw.n_odd());
    Complex a = 0.5 * (ev + od), b = 0.5 * (ev - od);
    const double explained = tw.q(w, true).first;
    if (std::cos(w) < 0) {  // same pair, listed from the other gap
      w = w > 0 ? w - M_PI : w + M_PI;
      std::swap(a, b);
    }
    FitResult r;
    r.kind = FitKind::Two;
    r.omega = w;
    r.a = a;
    r.b = b;
    r = finish(r, explained);
    if (!sp.in_gap0(w)) {
      c.r = r;
      return c;
    }
    const GreensTable G = greens_table(state.box, w, grid);
    const double g0 = G.origin().real();
    const int sigma = std::real(b * std::conj(a)) >= 0 ? 1 : -1;
    const Complex phi0 = 0.5 * (a + double(sigma) * b);
    r.wave.kind = SolitaryKind::Two;
    r.wave.box = state.box;
    r.wave.sigma = sigma;
    r.wave.frequencies = {w};
    r.wave.amplitudes = {phi0 / g0};
    r.wave.profiles = {G.values * (phi0 / g0)};
    if (opts.W) {
      r.condition_defect = std::abs(
          1.0 + grid.tau * grid.tau * potential_deriv(*opts.W, 4.0 * std::norm(phi0)) * g0 * std::cos(w));
    }
    r.distance = weighted_norm(difference(state, r.wave.initial_state(state.t)), opts.s);
    c.valid = true;
    c.r = r;
    return c;
  };

  std::vector<Candidate> cands;
  if (opts.kind != FitKind::Two) cands.push_back(one());
  if (opts.kind != FitKind::One) cands.push_back(two());

  const Candidate* best = nullptr;
  for (const auto& c : cands)
    if (c.valid && (!best || c.r.distance < best->r.distance)) best = &c;
  if (best && best->r.distance <= zero.distance) return best->r;
  // Nearest point of the manifold is zero; keep the fit numbers for reporting.
  FitResult r = cands.front().r;
  if (best) r = best->r;
  r.zero = true;
  r.wave = SolitaryWave{};
  r.distance = zero.distance;
  return r;
}

}  // namespace dnkg
