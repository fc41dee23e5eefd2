#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dnkg/config.hpp"
#include "dnkg/fit.hpp"
#include "dnkg/potential.hpp"
#include "dnkg/trajectory.hpp"

namespace dnkg {

struct WindowReport {
  std::int64_t t0 = 0;      // first time in the window
  std::int64_t t_last = 0;  // last time; the fitted state is (psi^{t_last-1}, psi^{t_last})
  double gap_mass_fraction = 1.0;
  double peak_omega = 0.0, peak_amplitude = 0.0;
  std::string fit_status = "ok";  // or the error code name
  FitResult fit;
};

struct ExperimentResult {
  ExperimentConfig config;
  TauThresholds thresholds;
  double omega_m = 0.0;
  double omega_m_limit = 0.0;  // pi / (4 (p + 1))
  bool omega_m_ok = false;
  double initial_energy = 0.0;
  std::vector<StepRecord> records;
  std::vector<Complex> origin_series;  // psi_0^t, t = 0 .. T + 1
  std::vector<WindowReport> windows;
  std::vector<FieldState> snapshots;
  FieldState final_state;
  long multi_root_warnings = 0;
  double seconds = 0.0;
};

struct TrendSummary {
  double first_fraction = 0.0, final_fraction = 0.0;
  // Mean fitted distance over windows ending in the first and in the last quarter of the run.
  double first_quarter_distance = 0.0, last_quarter_distance = 0.0;
  int first_quarter_windows = 0, last_quarter_windows = 0;
  double distance_ratio() const { return first_quarter_distance / last_quarter_distance; }
};

FieldState initial_data(const ExperimentConfig& config);

// Config errors for a broken invariant or tau >= tau2; the omega_m condition is only reported.
ExperimentResult attractor_experiment(const ExperimentConfig& config);
TrendSummary summarize(const ExperimentResult& result);

// diagnostics.csv, series.csv, windows.csv, report.json and snapshots/ under dir.
void write_outputs(const ExperimentResult& result, const std::string& dir);
std::string windows_csv(const std::vector<WindowReport>& windows);
nlohmann::json report_json(const ExperimentResult& result);

// Reruns with the radius grown by `extra` and compares every reported quantity.
struct ConeGuardReport {
  double max_change = 0.0;  // relative to max(1, |value|)
  std::string worst;        // name of the quantity that moved most
  bool ok = false;          // max_change <= 1e-12
};
ConeGuardReport cone_guard(const ExperimentConfig& config, int extra = 8);
ConeGuardReport compare_results(const ExperimentResult& a, const ExperimentResult& b);

}  // namespace dnkg
