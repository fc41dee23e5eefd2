#include "dnkg/experiment.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "dnkg/error.hpp"
#include "dnkg/io.hpp"
#include "dnkg/spectrum.hpp"

namespace dnkg {

FieldState initial_data(const ExperimentConfig& config) {
  const BoxDomain box(config.grid.n, config.effective_radius());
  FieldState s = FieldState::zeros(box);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * M_PI);
  std::normal_distribution<double> gauss;
  const Complex phase = std::polar(config.data.amplitude, uni(rng));
  const Complex turn = std::polar(1.0, -config.data.omega0);
  const int support = config.data.support();
  const double w2 = config.data.width * config.data.width;
  for (Index i = 0; i < box.size(); ++i) {
    if (box.linf(i) > support) continue;
    const double g = std::exp(-box.norm_sq(i) / (2.0 * w2));
    Complex a = 1.0, b = 1.0;
    if (config.data.noise > 0) {
      a += config.data.noise * Complex(gauss(rng), gauss(rng));
      b += config.data.noise * Complex(gauss(rng), gauss(rng));
    }
    s.prev[i] = phase * g * a;
    s.curr[i] = turn * phase * g * b;
  }
  return s;
}

ExperimentResult attractor_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.config = config;
  res.thresholds = tau_thresholds(config.potential);
  const ExtendedReal& tau2 = res.thresholds.tau2;
  if (tau2.kind == ExtendedReal::Kind::Finite && !(config.grid.tau < tau2.value))
    fail(ErrorCode::Config, "tau = " + fmt(config.grid.tau) + " is not below tau2 = " + tau2.to_string());
  if (tau2.kind == ExtendedReal::Kind::NotApplicable)
    fail(ErrorCode::Config, "tau2 is not defined for this potential");
  res.omega_m = config.grid.omega_m();
  res.omega_m_limit = M_PI / (4.0 * (config.potential.p() + 1));
  res.omega_m_ok = res.omega_m < res.omega_m_limit;

  const GridParams& grid = config.grid;
  const PolynomialPotential& W = config.potential;
  FieldState state = initial_data(config);
  const Index origin = state.box.origin();
  Stepper stepper(grid, W, config.model, state.box);
  const SpectralParams sp = SpectralParams::from(grid);
  FitOptions fo;
  fo.window = config.window;
  fo.s = config.weight_s;
  fo.W = W;

  res.initial_energy = energy(state, grid, W, config.model);
  res.records.reserve(std::size_t(config.steps + 1));
  res.origin_series.reserve(std::size_t(config.steps + 2));
  res.origin_series.push_back(state.prev[origin]);
  res.origin_series.push_back(state.curr[origin]);

  const auto starts = window_starts(0, config.steps + 2, config.window, config.hop);
  std::size_t next_window = 0;
  auto record = [&]() {
    StepRecord r;
    r.diag = diagnostics(state, grid, W, config.model, res.initial_energy);
    r.apriori_ok = apriori_check(r.diag);
    res.records.push_back(r);
    if (config.snapshot_every > 0 && state.t % config.snapshot_every == 0) res.snapshots.push_back(state);
    while (next_window < starts.size() && starts[next_window] + config.window - 1 == state.t + 1) {
      WindowReport w;
      w.t0 = starts[next_window];
      w.t_last = w.t0 + config.window - 1;
      const SpectrumReport spec = windowed_spectrum(res.origin_series, w.t0, config.window, sp);
      w.gap_mass_fraction = spec.gap_mass_fraction;
      if (!spec.peaks.empty()) {
        w.peak_omega = spec.peaks.front().omega;
        w.peak_amplitude = spec.peaks.front().amplitude;
      }
      try {
        w.fit = fit_solitary(state, res.origin_series, 0, grid, fo);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoPeak && e.code() != ErrorCode::OnSpectrum) throw;
        w.fit_status = to_string(e.code());
      }
      res.windows.push_back(std::move(w));
      ++next_window;
    }
  };

  record();
  for (std::int64_t k = 0; k < config.steps; ++k) {
    try {
      res.multi_root_warnings += stepper.advance(state).multi_root_warnings;
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (step " + std::to_string(k + 1) + ")");
    }
    res.origin_series.push_back(state.curr[origin]);
    record();
  }
  res.final_state = std::move(state);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

TrendSummary summarize(const ExperimentResult& result) {
  TrendSummary s;
  if (result.windows.empty()) return s;
  s.first_fraction = result.windows.front().gap_mass_fraction;
  s.final_fraction = result.windows.back().gap_mass_fraction;
  const double T = double(result.config.steps);
  for (const auto& w : result.windows) {
    if (w.fit_status != "ok") continue;
    if (double(w.t_last) <= T / 4) {
      s.first_quarter_distance += w.fit.distance;
      ++s.first_quarter_windows;
    } else if (double(w.t_last) > 3 * T / 4) {
      s.last_quarter_distance += w.fit.distance;
      ++s.last_quarter_windows;
    }
  }
  if (s.first_quarter_windows) s.first_quarter_distance /= s.first_quarter_windows;
  if (s.last_quarter_windows) s.last_quarter_distance /= s.last_quarter_windows;
  return s;
}

std::string windows_csv(const std::vector<WindowReport>& windows) {
  std::string s =
      "t0,t_last,gap_mass_fraction,peak_omega,peak_amplitude,fit_status,fit_kind,zero,omega,a_re,a_im,b_re,b_im,"
      "fit_error,distance,condition_defect\n";
  for (const auto& w : windows) {
    const FitResult& f = w.fit;
    s += std::to_string(w.t0) + "," + std::to_string(w.t_last) + "," + fmt(w.gap_mass_fraction) + "," +
         fmt(w.peak_omega) + "," + fmt(w.peak_amplitude) + "," + w.fit_status + "," + to_string(f.kind) + "," +
         (f.zero ? "1" : "0") + "," + fmt(f.omega) + "," + fmt(f.a.real()) + "," + fmt(f.a.imag()) + "," +
         fmt(f.b.real()) + "," + fmt(f.b.imag()) + "," + fmt(f.fit_error) + "," + fmt(f.distance) + "," +
         (f.condition_defect ? fmt(*f.condition_defect) : "") + "\n";
  }
  return s;
}

nlohmann::json report_json(const ExperimentResult& r) {
  const TrendSummary s = summarize(r);
  const double e_end = r.records.empty() ? r.initial_energy : r.records.back().diag.energy;
  bool apriori = true;
  for (const auto& rec : r.records) apriori = apriori && rec.apriori_ok;
  return {{"config", r.config.to_json()},
          {"config_hash", r.config.hash()},
          {"tau2", r.thresholds.tau2.to_string()},
          {"tau_below_tau2", true},
          {"omega_m", r.omega_m},
          {"omega_m_limit", r.omega_m_limit},
          {"omega_m_condition", r.omega_m_ok},
          {"initial_energy", r.initial_energy},
          {"energy_drift", r.initial_energy != 0 ? (e_end - r.initial_energy) / std::abs(r.initial_energy) : 0.0},
          {"apriori_every_step", apriori},
          {"windows", r.windows.size()},
          {"first_fraction", s.first_fraction},
          {"final_fraction", s.final_fraction},
          {"first_quarter_distance", s.first_quarter_distance},
          {"last_quarter_distance", s.last_quarter_distance},
          {"multi_root_warnings", r.multi_root_warnings}};
}

void write_outputs(const ExperimentResult& r, const std::string& dir) {
  write_text(dir + "/diagnostics.csv", diagnostics_csv(r.records));
  write_text(dir + "/series.csv", series_csv(r.origin_series, 0));
  write_text(dir + "/windows.csv", windows_csv(r.windows));
  write_json(dir + "/report.json", report_json(r));
  for (const auto& s : r.snapshots)
    write_snapshot(dir + "/snapshots/t" + std::to_string(s.t) + ".bin", s, r.config.grid);
}

ConeGuardReport compare_results(const ExperimentResult& a, const ExperimentResult& b) {
  ConeGuardReport rep;
  auto see = [&](const char* name, double x, double y) {
    const double d = std::abs(x - y) / std::max(1.0, std::abs(x));
    if (!(d <= rep.max_change)) {  // NaN counts as a change
      rep.max_change = std::isnan(d) ? INFINITY : d;
      rep.worst = name;
    }
  };
  if (a.records.size() != b.records.size() || a.windows.size() != b.windows.size() ||
      a.origin_series.size() != b.origin_series.size()) {
    rep.max_change = INFINITY;
    rep.worst = "lengths";
    return rep;
  }
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    see("energy", a.records[k].diag.energy, b.records[k].diag.energy);
    see("l2_sq", a.records[k].diag.l2_sq, b.records[k].diag.l2_sq);
    if (a.records[k].diag.charge && b.records[k].diag.charge)
      see("charge", *a.records[k].diag.charge, *b.records[k].diag.charge);
  }
  for (std::size_t k = 0; k < a.origin_series.size(); ++k) {
    see("psi0.re", a.origin_series[k].real(), b.origin_series[k].real());
    see("psi0.im", a.origin_series[k].imag(), b.origin_series[k].imag());
  }
  for (std::size_t k = 0; k < a.windows.size(); ++k) {
    const auto &x = a.windows[k], &y = b.windows[k];
    see("gap_mass_fraction", x.gap_mass_fraction, y.gap_mass_fraction);
    see("fit.omega", x.fit.omega, y.fit.omega);
    see("fit.error", x.fit.fit_error, y.fit.fit_error);
    see("fit.distance", x.fit.distance, y.fit.distance);
  }
  rep.ok = rep.max_change <= 1e-12;
  return rep;
}

ConeGuardReport cone_guard(const ExperimentConfig& config, int extra) {
  ExperimentConfig bigger = config;
  bigger.radius = config.effective_radius() + extra;
  return compare_results(attractor_experiment(config), attractor_experiment(bigger));
}

}  // namespace dnkg
