#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnkg/lattice.hpp"
#include "dnkg/potential.hpp"
#include "dnkg/stepper.hpp"

namespace dnkg {

// Complex Gaussian bump A e^{i theta} exp(-|X|^2 / (2 w^2)) on |X|_inf <= radius,
// rotated by e^{-i omega0} between the two levels. theta and the optional
// per-site complex noise come from the seed.
struct DataParams {
  double amplitude = 1.0;
  double width = 3.0;
  int radius = 0;  // 0: ceil(4 width)
  double omega0 = 0.0;
  double noise = 0.0;

  int support() const;
};

struct ExperimentConfig {
  GridParams grid = GridParams::exact_ratio(1, 0.5, 1.0);
  PolynomialPotential potential{{-1.0, 1.0}};
  ModelKind model = ModelKind::OscillatorAtOrigin;
  int radius = 0;  // 0: smallest radius for which the ring stays outside the cone
  std::int64_t steps = 1000;
  std::int64_t snapshot_every = 0;
  int window = 1024;
  int hop = 512;
  double weight_s = 2.0;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  DataParams data;

  int effective_radius() const;
  // Throws Config on a broken invariant (including R too small for the cone).
  void validate() const;

  nlohmann::json to_json() const;
  // Keys missing from j keep their defaults; unknown keys are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
  // crc32 of the compact JSON form, as 8 hex digits.
  std::string hash() const;
};

// dotted.key=value; the value is parsed as JSON when it parses, else taken as a string.
void apply_override(nlohmann::json& j, const std::string& assignment);

// Defaults, then the file (if path is non-empty), then the overrides in order.
ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

}  // namespace dnkg
