#include "dnkg/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <future>
#include <sstream>
#include <thread>

#include "dnkg/io.hpp"

namespace dnkg {

namespace {

struct Outcome {
  SweepRun run;
  std::string windows;  // CSV body without header
};

std::string run_name(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "run_%03d", i);
  return buf;
}

Outcome execute(int index, const ExperimentConfig& config, const std::string& root) {
  Outcome out;
  out.run.index = index;
  const auto start = std::chrono::steady_clock::now();
  try {
    out.run.hash = config.hash();
    const ExperimentResult r = attractor_experiment(config);
    out.run.summary = summarize(r);
    if (!root.empty()) {
      out.run.dir = root + "/" + run_name(index);
      write_outputs(r, out.run.dir);
    }
    const std::string csv = windows_csv(r.windows);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) out.windows += std::to_string(index) + "," + line + "\n";
    out.run.ok = true;
  } catch (const Error& e) {
    out.run.code = e.code();
    out.run.error = e.what();
  } catch (const std::exception& e) {
    out.run.error = e.what();
  }
  out.run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

std::vector<SweepRun> sweep(const std::vector<ExperimentConfig>& configs, const SweepOptions& opts) {
  int width = opts.max_parallel > 0 ? opts.max_parallel : int(std::thread::hardware_concurrency());
  width = std::max(1, width);
  std::vector<Outcome> outcomes(configs.size());
  for (std::size_t begin = 0; begin < configs.size(); begin += std::size_t(width)) {
    const std::size_t end = std::min(configs.size(), begin + std::size_t(width));
    std::vector<std::future<Outcome>> batch;
    for (std::size_t i = begin; i < end; ++i)
      batch.push_back(std::async(std::launch::async, execute, int(i), std::cref(configs[i]), opts.output_dir));
    for (std::size_t i = begin; i < end; ++i) outcomes[i] = batch[i - begin].get();
  }

  std::vector<SweepRun> runs;
  for (auto& o : outcomes) runs.push_back(o.run);
  if (opts.output_dir.empty()) return runs;

  std::string windows = "run,";
  {
    const std::string header = windows_csv({});
    windows += header;
  }
  std::string summary =
      "run,hash,ok,error_code,first_fraction,final_fraction,first_quarter_distance,last_quarter_distance\n";
  nlohmann::json manifest = nlohmann::json::array();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SweepRun& r = outcomes[i].run;
    windows += outcomes[i].windows;
    summary += std::to_string(r.index) + "," + r.hash + "," + (r.ok ? "1" : "0") + "," +
               (r.code ? to_string(*r.code) : "") + "," + fmt(r.summary.first_fraction) + "," +
               fmt(r.summary.final_fraction) + "," + fmt(r.summary.first_quarter_distance) + "," +
               fmt(r.summary.last_quarter_distance) + "\n";
    manifest.push_back({{"run", r.index},
                        {"dir", r.dir},
                        {"config_hash", r.hash},
                        {"config", configs[i].to_json()},
                        {"ok", r.ok},
                        {"error_code", r.code ? to_string(*r.code) : ""},
                        {"error", r.error},
                        {"seconds", r.seconds}});
  }
  write_text(opts.output_dir + "/windows.csv", windows);
  write_text(opts.output_dir + "/summary.csv", summary);
  write_json(opts.output_dir + "/manifest.json", {{"runs", manifest}});
  return runs;
}

}  // namespace dnkg
