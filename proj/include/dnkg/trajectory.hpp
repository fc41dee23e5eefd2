#pragma once

#include <cstdint>
#include <vector>

#include "dnkg/conservation.hpp"
#include "dnkg/stepper.hpp"

namespace dnkg {

struct StepRecord {
  Diagnostics diag;
  bool apriori_ok = true;
};

struct Trajectory {
  std::vector<FieldState> snapshots;   // every snapshot_every steps, including the start
  std::vector<StepRecord> records;     // one per level pair, t = t0 .. t0+steps
  std::vector<Complex> origin_series;  // psi_0^t for t = t0 .. t0+steps+1
  FieldState final_state;
  double initial_energy = 0.0;
  long multi_root_warnings = 0;
};

// snapshot_every = 0 disables snapshots.
Trajectory run(const FieldState& initial, std::int64_t steps, const GridParams& grid,
               const PolynomialPotential& W, ModelKind model, std::int64_t snapshot_every = 0);

}  // namespace dnkg
