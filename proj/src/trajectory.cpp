#include "dnkg/trajectory.hpp"

#include <string>

#include "dnkg/error.hpp"

namespace dnkg {

Trajectory run(const FieldState& initial, std::int64_t steps, const GridParams& grid,
               const PolynomialPotential& W, ModelKind model, std::int64_t snapshot_every) {
  if (steps < 1) fail(ErrorCode::Config, "steps must be >= 1");
  initial.validate();
  Stepper stepper(grid, W, model, initial.box);
  Trajectory tr;
  FieldState state = initial;
  const Index origin = state.box.origin();
  tr.initial_energy = energy(state, grid, W, model);

  auto record = [&]() {
    StepRecord r;
    r.diag = diagnostics(state, grid, W, model, tr.initial_energy);
    r.apriori_ok = apriori_check(r.diag);
    tr.records.push_back(r);
    if (snapshot_every > 0 && (state.t - initial.t) % snapshot_every == 0) tr.snapshots.push_back(state);
  };

  tr.records.reserve(std::size_t(steps + 1));
  tr.origin_series.reserve(std::size_t(steps + 2));
  tr.origin_series.push_back(state.prev[origin]);
  record();
  for (std::int64_t k = 0; k < steps; ++k) {
    tr.origin_series.push_back(state.curr[origin]);
    try {
      tr.multi_root_warnings += stepper.advance(state).multi_root_warnings;
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (step " + std::to_string(k + 1) + ")");
    }
    record();
  }
  tr.origin_series.push_back(state.curr[origin]);
  tr.final_state = std::move(state);
  return tr;
}

}  // namespace dnkg
