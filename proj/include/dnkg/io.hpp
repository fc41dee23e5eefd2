#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dnkg/lattice.hpp"
#include "dnkg/spectral.hpp"
#include "dnkg/spectrum.hpp"
#include "dnkg/trajectory.hpp"

namespace dnkg {

std::string crc32_hex(const void* data, std::size_t size);
std::string crc32_hex(const std::string& s);

// Creates parent directories; throws Io on failure.
void write_text(const std::string& path, const std::string& content);
void write_json(const std::string& path, const nlohmann::json& j);

// t, energy, charge, l2_sq, apriori_rhs, apriori_ok (charge / rhs empty when undefined).
std::string diagnostics_csv(const std::vector<StepRecord>& records);
// X_1..X_n, re, im, est_error.
std::string green_csv(const GreensTable& table);
// omega, power, in_gap.
std::string spectrum_csv(const SpectrumReport& report, const SpectralParams& spectral);
// t, re, im for psi_0^t.
std::string series_csv(const std::vector<Complex>& series, std::int64_t t0);

// Header "DNKGSNAP" u32 version, i32 n, i32 R, i64 t, f64 eps, tau, m, u32 levels (= 2),
// then psi^t and psi^{t+1} as interleaved (re, im) f64 in row-major site order,
// little-endian. A JSON sidecar at path + ".json" repeats the header with crc32s.
void write_snapshot(const std::string& path, const FieldState& state, const GridParams& grid);
struct Snapshot {
  FieldState state;
  GridParams grid;
};
// Verifies the sidecar checksum when the sidecar exists; throws Io on mismatch.
Snapshot read_snapshot(const std::string& path);

// Minimal CSV formatting: 17 significant digits, fixed "C" locale.
std::string fmt(double v);

}  // namespace dnkg
