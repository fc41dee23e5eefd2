#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "dnkg/lattice.hpp"
#include "dnkg/potential.hpp"

namespace dnkg {

enum class ModelKind { OscillatorAtOrigin, UniformOnSite };

ModelKind parse_model(std::string_view s);  // "oscillator" | "onsite"
const char* to_string(ModelKind m);

struct SolveReport {
  int iterations = 0;
  double residual = 0.0;
  bool multi_root_warning = false;
};

struct OnsiteSolution {
  Complex value;
  double scale = 0.0;  // the s in s*xi - psi_prev
  SolveReport report;
};

struct OnsiteOptions {
  bool scan_for_multiple_roots = false;
  double tolerance = 1e-14;
  int max_iterations = 200;
};

// Per-site potential V with (psi^{t+1}+psi^{t-1})(1 + tau^2 B_V) = xi.
// Oscillator model: V = (m^2/2) lam away from the origin, (m^2/2) lam + W/2 at it.
// On-site model: V = (m^2/2) lam + W everywhere.
PolynomialPotential onsite_potential(ModelKind model, const GridParams& grid,
                                     const PolynomialPotential& W, bool at_origin);

Complex xi_value(const FieldState& state, Index site, const GridParams& grid);

OnsiteSolution solve_onsite(Complex xi, Complex psi_prev, const PolynomialPotential& V, double tau,
                            const OnsiteOptions& opts = {});

struct StepStats {
  int max_iterations = 0;
  long multi_root_warnings = 0;
};

// Reusable stepping engine; holds a scratch level, so one instance per trajectory.
class Stepper {
 public:
  Stepper(const GridParams& grid, const PolynomialPotential& W, ModelKind model, const BoxDomain& box);

  StepStats advance(FieldState& state);

  const GridParams& grid() const { return grid_; }
  const PolynomialPotential& potential() const { return W_; }
  ModelKind model() const { return model_; }
  // Uniqueness threshold of the nonlinear on-site potential; nullopt if linear.
  const std::optional<TauThresholds>& thresholds() const { return thresholds_; }
  bool above_uniqueness_threshold() const { return scan_; }

 private:
  GridParams grid_;
  PolynomialPotential W_;
  ModelKind model_;
  BoxDomain box_;
  PolynomialPotential V_bulk_, V_origin_;
  bool bulk_linear_ = true;
  double bulk_scale_ = 1.0;
  std::optional<TauThresholds> thresholds_;
  bool scan_ = false;
  std::vector<unsigned char> boundary_;
  Field scratch_;
};

FieldState step(const FieldState& state, const GridParams& grid, const PolynomialPotential& W,
                ModelKind model);

}  // namespace dnkg
