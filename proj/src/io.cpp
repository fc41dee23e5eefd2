#include "dnkg/io.hpp"

#include <zlib.h>

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dnkg/error.hpp"

namespace dnkg {

static_assert(std::endian::native == std::endian::little, "snapshot format assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'D', 'N', 'K', 'G', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t kVersion = 1;

#pragma pack(push, 1)
struct Header {
  char magic[8];
  std::uint32_t version;
  std::int32_t n, R;
  std::int64_t t;
  double eps, tau, m;
  std::uint32_t levels;
};
#pragma pack(pop)

void ensure_parent(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(parent, ec);
  if (ec) fail(ErrorCode::Io, "cannot create directory '" + parent.string() + "': " + ec.message());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string crc32_hex(const void* data, std::size_t size) {
  uLong crc = crc32(0L, Z_NULL, 0);
  const auto* p = static_cast<const Bytef*>(data);
  while (size > 0) {  // zlib takes uInt lengths
    const uInt chunk = uInt(std::min<std::size_t>(size, 1u << 30));
    crc = crc32(crc, p, chunk);
    p += chunk;
    size -= chunk;
  }
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

std::string crc32_hex(const std::string& s) { return crc32_hex(s.data(), s.size()); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write '" + path + "'");
  out << content;
  if (!out) fail(ErrorCode::Io, "write failed for '" + path + "'");
}

void write_json(const std::string& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

std::string diagnostics_csv(const std::vector<StepRecord>& records) {
  std::string s = "t,energy,charge,l2_sq,apriori_rhs,apriori_ok\n";
  for (const auto& r : records) {
    const Diagnostics& d = r.diag;
    s += std::to_string(d.t) + "," + fmt(d.energy) + "," + (d.charge ? fmt(*d.charge) : "") + "," + fmt(d.l2_sq) +
         "," + (d.apriori_rhs ? fmt(*d.apriori_rhs) : "") + "," + (r.apriori_ok ? "1" : "0") + "\n";
  }
  return s;
}

std::string green_csv(const GreensTable& table) {
  std::string s;
  for (int a = 0; a < table.box.dim(); ++a) s += "X" + std::to_string(a + 1) + ",";
  s += "re,im,est_error\n";
  for (Index i = 0; i < table.box.size(); ++i) {
    for (int a = 0; a < table.box.dim(); ++a) s += std::to_string(table.box.coord(i, a)) + ",";
    s += fmt(table.values[i].real()) + "," + fmt(table.values[i].imag()) + "," + fmt(table.est_error) + "\n";
  }
  return s;
}

std::string spectrum_csv(const SpectrumReport& report, const SpectralParams& spectral) {
  const double half = spectral.omega_m + 2.0 * M_PI / report.L;
  std::string s = "omega,power,in_gap\n";
  for (std::size_t j = 0; j < report.freqs.size(); ++j) {
    const double w = report.freqs[j];
    const bool gap = circle_distance(w, 0.0) < half || circle_distance(w, M_PI) < half;
    s += fmt(w) + "," + fmt(report.power[j]) + "," + (gap ? "1" : "0") + "\n";
  }
  return s;
}

std::string series_csv(const std::vector<Complex>& series, std::int64_t t0) {
  std::string s = "t,re,im\n";
  for (std::size_t k = 0; k < series.size(); ++k)
    s += std::to_string(t0 + std::int64_t(k)) + "," + fmt(series[k].real()) + "," + fmt(series[k].imag()) + "\n";
  return s;
}

void write_snapshot(const std::string& path, const FieldState& state, const GridParams& grid) {
  state.validate();
  Header h{};
  std::memcpy(h.magic, kMagic, sizeof kMagic);
  h.version = kVersion;
  h.n = state.box.dim();
  h.R = state.box.radius();
  h.t = state.t;
  h.eps = grid.eps;
  h.tau = grid.tau;
  h.m = grid.m;
  h.levels = 2;
  const std::size_t payload_bytes = std::size_t(state.box.size()) * sizeof(Complex);
  std::string buf(sizeof h + 2 * payload_bytes, '\0');
  std::memcpy(buf.data(), &h, sizeof h);
  std::memcpy(buf.data() + sizeof h, state.prev.data(), payload_bytes);
  std::memcpy(buf.data() + sizeof h + payload_bytes, state.curr.data(), payload_bytes);
  write_text(path, buf);
  nlohmann::json side = {{"format", "dnkg-snapshot"},
                         {"version", kVersion},
                         {"n", h.n},
                         {"R", h.R},
                         {"t", h.t},
                         {"eps", h.eps},
                         {"tau", h.tau},
                         {"m", h.m},
                         {"levels", h.levels},
                         {"sites", state.box.size()},
                         {"crc32_file", crc32_hex(buf)},
                         {"crc32_payload", crc32_hex(buf.data() + sizeof h, 2 * payload_bytes)}};
  write_json(path + ".json", side);
}

Snapshot read_snapshot(const std::string& path) {
  const std::string buf = read_file(path);
  Header h{};
  if (buf.size() < sizeof h) fail(ErrorCode::Io, "snapshot '" + path + "' is truncated");
  std::memcpy(&h, buf.data(), sizeof h);
  if (std::memcmp(h.magic, kMagic, sizeof kMagic) != 0 || h.version != kVersion || h.levels != 2)
    fail(ErrorCode::Io, "'" + path + "' is not a snapshot of this format");
  if (std::filesystem::exists(path + ".json")) {
    const auto side = nlohmann::json::parse(read_file(path + ".json"), nullptr, false);
    if (side.is_discarded() || !side.contains("crc32_file")) fail(ErrorCode::Io, "bad sidecar for '" + path + "'");
    if (side["crc32_file"].get<std::string>() != crc32_hex(buf))
      fail(ErrorCode::Io, "checksum mismatch for '" + path + "'");
  }
  Snapshot s;
  try {
    s.grid = GridParams::make(h.n, h.eps, h.tau, h.m);
    s.state.box = BoxDomain(h.n, h.R);
  } catch (const Error& e) {
    fail(ErrorCode::Io, std::string("snapshot header: ") + e.what());
  }
  const std::size_t payload_bytes = std::size_t(s.state.box.size()) * sizeof(Complex);
  if (buf.size() != sizeof h + 2 * payload_bytes) fail(ErrorCode::Io, "snapshot '" + path + "' has the wrong size");
  s.state.prev.resize(s.state.box.size());
  s.state.curr.resize(s.state.box.size());
  std::memcpy(s.state.prev.data(), buf.data() + sizeof h, payload_bytes);
  std::memcpy(s.state.curr.data(), buf.data() + sizeof h + payload_bytes, payload_bytes);
  s.state.t = h.t;
  return s;
}

}  // namespace dnkg
