// Command-line front end. Exit codes: 0 ok, 2 config/usage error, 3 numerical failure.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dnkg/config.hpp"
#include "dnkg/error.hpp"
#include "dnkg/experiment.hpp"
#include "dnkg/io.hpp"
#include "dnkg/potential.hpp"
#include "dnkg/solitary.hpp"
#include "dnkg/spectral.hpp"
#include "dnkg/spectrum.hpp"
#include "dnkg/sweep.hpp"
#include "dnkg/titchmarsh.hpp"

using namespace dnkg;
using nlohmann::json;

namespace {

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size() && item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      fail(ErrorCode::Config, std::string("bad number '") + item + "' in " + what);
    }
  }
  if (out.empty()) fail(ErrorCode::Config, std::string(what) + " is empty");
  return out;
}

Complex parse_complex(const std::string& s, const char* what) {
  const auto v = parse_list(s, what);
  if (v.size() > 2) fail(ErrorCode::Config, std::string(what) + " takes re or re,im");
  return {v[0], v.size() > 1 ? v[1] : 0.0};
}

GridParams grid_from(int n, double tau, double m, const std::string& eps) {
  if (eps == "exact") return GridParams::exact_ratio(n, tau, m);
  return GridParams::make(n, parse_list(eps, "--eps").at(0), tau, m);
}

// "num/den:re[,im]" for (num/den) pi, or "x:re[,im]" for x radians; atoms separated by ';'.
CircleMeasure parse_measure(const std::string& s) {
  std::vector<Atom> atoms;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    const std::string a = item.substr(0, colon);
    const Complex w = colon == std::string::npos ? Complex(1.0) : parse_complex(item.substr(colon + 1), "weight");
    const auto slash = a.find('/');
    CircleAngle angle;
    try {
      if (slash != std::string::npos)
        angle = CircleAngle::pi_fraction(std::stoll(a.substr(0, slash)), std::stoll(a.substr(slash + 1)));
      else
        angle = CircleAngle::radians(std::stod(a));
    } catch (const std::logic_error&) {
      fail(ErrorCode::Config, "bad angle '" + a + "'");
    }
    atoms.push_back({angle, w});
  }
  return CircleMeasure(atoms);
}

json arc_json(const ArcInterval& I) {
  if (I.empty) return nullptr;
  return {{"lo", I.lo}, {"hi", I.hi}, {"length", I.length()}};
}

json ext_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete nonlinear Klein-Gordon lattice toolkit"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run an attractor experiment from seeded Gaussian data");
  std::string sim_config, sim_out;
  std::vector<std::string> sim_set;
  bool sim_guard = false;
  sim->add_option("-c,--config", sim_config, "JSON config file");
  sim->add_option("-s,--set", sim_set, "Override, dotted.key=value (repeatable)");
  sim->add_option("-o,--out", sim_out, "Output directory (default: output.dir)");
  sim->add_flag("--cone-guard", sim_guard, "Rerun with R+8 and compare every reported quantity");

  // soliton
  auto* sol = app.add_subcommand("soliton", "Construct a solitary wave and check it against the scheme");
  std::string sol_kind = "one", sol_pot = "-5,1", sol_amp = "0.3", sol_p0 = "0.2", sol_r0 = "0.1", sol_eps = "exact",
              sol_out;
  int sol_n = 1, sol_R = 40, sol_sigma = 1, sol_root = 0;
  double sol_tau = 0.5, sol_m = 1.0, sol_w = 0.0, sol_w2 = 0.1;
  std::int64_t sol_steps = 64;
  bool sol_solve = false;
  sol->add_option("--kind", sol_kind, "one | two | four")->check(CLI::IsMember({"one", "two", "four"}));
  sol->add_option("--n", sol_n, "Dimension");
  sol->add_option("--tau", sol_tau, "Time step");
  sol->add_option("--m", sol_m, "Mass");
  sol->add_option("--eps", sol_eps, "Lattice step or 'exact'");
  sol->add_option("--radius", sol_R, "Box radius");
  sol->add_option("--omega", sol_w, "Frequency (omega1 for four)");
  sol->add_option("--omega2", sol_w2, "Second frequency (four)");
  sol->add_option("--potential", sol_pot, "Coefficients C_0,C_1,... (one, two)");
  sol->add_option("--root", sol_root, "Amplitude root index (one)");
  sol->add_option("--amplitude", sol_amp, "phi_0 as re[,im] (two)");
  sol->add_option("--sigma", sol_sigma, "Parity sign (two)");
  sol->add_flag("--solve", sol_solve, "Solve for the frequency (two)");
  sol->add_option("--p0", sol_p0, "re[,im] (four)");
  sol->add_option("--r0", sol_r0, "re[,im] (four)");
  sol->add_option("--steps", sol_steps, "Steps for the residual check");
  sol->add_option("-o,--out", sol_out, "Write the profile(s) as CSV here");

  // green
  auto* grn = app.add_subcommand("green", "Lattice Green's function on a box");
  int g_n = 1, g_R = 10;
  double g_tau = 1.0, g_m = 1.0, g_w = 0.0;
  std::string g_eps = "exact", g_out;
  grn->add_option("--n", g_n);
  grn->add_option("--tau", g_tau);
  grn->add_option("--m", g_m);
  grn->add_option("--eps", g_eps, "Lattice step or 'exact'");
  grn->add_option("--omega", g_w, "Gap frequency");
  grn->add_option("--radius", g_R);
  grn->add_option("-o,--out", g_out, "CSV path (X..., re, im, est_error)");

  // spectrum
  auto* spc = app.add_subcommand("spectrum", "Windowed spectrum of a psi_0 series CSV (t,re,im)");
  std::string sp_series, sp_eps = "exact", sp_out;
  int sp_n = 1, sp_L = 1024;
  std::int64_t sp_t0 = 0;
  double sp_tau = 1.0, sp_m = 1.0;
  spc->add_option("series", sp_series, "CSV with columns t,re,im")->required();
  spc->add_option("--t0", sp_t0, "First row of the window");
  spc->add_option("--L", sp_L, "Window length");
  spc->add_option("--n", sp_n);
  spc->add_option("--tau", sp_tau);
  spc->add_option("--m", sp_m);
  spc->add_option("--eps", sp_eps);
  spc->add_option("-o,--out", sp_out, "Spectrum CSV path");

  // titchmarsh-check
  auto* tit = app.add_subcommand("titchmarsh-check", "Check the circle Titchmarsh statements on point measures");
  std::string t_f, t_g;
  int t_p = 0;
  tit->add_option("--f", t_f, "Measure: 'num/den:re[,im];...' (angles in pi) or radians")->required();
  tit->add_option("--g", t_g, "Second measure for the two-interval check");
  tit->add_option("--p", t_p, "Power for the powers check");

  // sweep
  auto* swp = app.add_subcommand("sweep", "Run several experiment configs in parallel");
  std::vector<std::string> sw_configs, sw_set, sw_vary;
  std::string sw_out = "sweep";
  int sw_jobs = 0;
  swp->add_option("-c,--config", sw_configs, "Config files (one run each)");
  swp->add_option("-s,--set", sw_set, "Override applied to every run");
  swp->add_option("--vary", sw_vary, "dotted.key=v1,v2,...; runs take the cartesian product");
  swp->add_option("-o,--out", sw_out, "Output directory");
  swp->add_option("-j,--jobs", sw_jobs, "Parallel runs (0: hardware)");

  // thresholds
  auto* thr = app.add_subcommand("thresholds", "k1, k2, k3 and the tau thresholds of a potential");
  std::string th_pot;
  thr->add_option("--potential", th_pot, "Coefficients C_0,C_1,...")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sim) {
      ExperimentConfig c = load_config(sim_config, sim_set);
      if (!sim_out.empty()) c.output_dir = sim_out;
      const auto r = attractor_experiment(c);
      write_outputs(r, c.output_dir);
      json rep = report_json(r);
      if (sim_guard) {
        const auto g = cone_guard(c);
        rep["cone_guard"] = {{"ok", g.ok}, {"max_change", g.max_change}, {"worst", g.worst}};
      }
      rep["output_dir"] = c.output_dir;
      emit(rep);
    } else if (*sol) {
      const GridParams grid = grid_from(sol_n, sol_tau, sol_m, sol_eps);
      const BoxDomain box(sol_n, sol_R);
      SolitaryWave wave;
      PolynomialPotential W(parse_list(sol_pot, "--potential"));
      json extra;
      if (sol_kind == "one") {
        wave = construct_one_freq(sol_w, box, grid, W, RootSelect::at(sol_root));
        extra["lambda_roots"] = wave.lambda_roots;
      } else if (sol_kind == "two") {
        wave = construct_two_freq(sol_w, sol_sigma, box, grid, W, parse_complex(sol_amp, "--amplitude"),
                                  sol_solve ? TwoFreqMode::Solve : TwoFreqMode::Verify);
      } else {
        auto f = construct_four_freq(sol_w, sol_w2, parse_complex(sol_p0, "--p0"), parse_complex(sol_r0, "--r0"),
                                     box, grid);
        wave = f.wave;
        W = f.W;
        extra = {{"M", f.params.M}, {"N", f.params.N}, {"alpha", f.params.alpha}, {"beta", f.params.beta}};
      }
      json amps = json::array();
      for (const auto& a : wave.amplitudes) amps.push_back({a.real(), a.imag()});
      extra["kind"] = to_string(wave.kind);
      extra["frequencies"] = wave.frequencies;
      extra["amplitudes"] = amps;
      extra["sigma"] = wave.sigma;
      extra["potential"] = W.coeffs;
      extra["condition_residual"] = wave.condition_residual;
      extra["scheme_residual"] = residual(wave, sol_steps, grid, W, ModelKind::OscillatorAtOrigin);
      extra["residual_steps"] = sol_steps;
      if (!sol_out.empty()) {
        std::string csv;
        for (int a = 0; a < box.dim(); ++a) csv += "X" + std::to_string(a + 1) + ",";
        for (std::size_t k = 0; k < wave.profiles.size(); ++k)
          csv += "re" + std::to_string(k) + ",im" + std::to_string(k) + (k + 1 < wave.profiles.size() ? "," : "\n");
        for (Index i = 0; i < box.size(); ++i) {
          for (int a = 0; a < box.dim(); ++a) csv += std::to_string(box.coord(i, a)) + ",";
          for (std::size_t k = 0; k < wave.profiles.size(); ++k)
            csv += fmt(wave.profiles[k][i].real()) + "," + fmt(wave.profiles[k][i].imag()) +
                   (k + 1 < wave.profiles.size() ? "," : "\n");
        }
        write_text(sol_out, csv);
      }
      emit(extra);
    } else if (*grn) {
      const GridParams grid = grid_from(g_n, g_tau, g_m, g_eps);
      const auto table = greens_table(BoxDomain(g_n, g_R), g_w, grid);
      if (!g_out.empty()) write_text(g_out, green_csv(table));
      json j = {{"omega", g_w}, {"G0", table.origin().real()}, {"points_per_dim", table.points_per_dim},
                {"est_error", table.est_error}, {"omega_m", grid.omega_m()}};
      if (g_n == 1) j["G0_closed_form"] = greens_closed_form_1d(0, g_w, grid);
      emit(j);
    } else if (*spc) {
      std::ifstream in(sp_series);
      if (!in) fail(ErrorCode::Io, "cannot open '" + sp_series + "'");
      std::vector<Complex> series;
      std::string line;
      std::getline(in, line);  // header
      while (std::getline(in, line)) {
        const auto v = parse_list(line, "series row");
        if (v.size() < 3) fail(ErrorCode::Config, "series rows need t,re,im");
        series.emplace_back(v[1], v[2]);
      }
      const GridParams grid = grid_from(sp_n, sp_tau, sp_m, sp_eps);
      const auto sp = SpectralParams::from(grid);
      const auto r = windowed_spectrum(series, sp_t0, sp_L, sp);
      if (!sp_out.empty()) write_text(sp_out, spectrum_csv(r, sp));
      json peaks = json::array();
      for (const auto& p : r.peaks) peaks.push_back({{"omega", p.omega}, {"amplitude", p.amplitude}});
      emit({{"t0", r.t0}, {"L", r.L}, {"gap_mass_fraction", r.gap_mass_fraction}, {"peaks", peaks}});
    } else if (*tit) {
      const CircleMeasure f = parse_measure(t_f);
      json j;
      const auto hull = supp_mod_pi_hull(f);
      j["hull"] = hull.empty ? json(nullptr) : json{{"lo", hull.lo}, {"hi", hull.hi}};
      if (!t_g.empty()) {
        const auto r = check_two_interval_theorem(f, parse_measure(t_g));
        j["two_interval"] = {{"I", arc_json(r.I)},
                             {"J", arc_json(r.J)},
                             {"K", arc_json(r.K)},
                             {"lambda", ext_json(r.lambda)},
                             {"rho", ext_json(r.rho)},
                             {"lambda_positive", r.lambda_positive},
                             {"rho_positive", r.rho_positive},
                             {"left_symmetry", r.left_symmetry ? json(*r.left_symmetry) : json(nullptr)},
                             {"right_symmetry", r.right_symmetry ? json(*r.right_symmetry) : json(nullptr)},
                             {"consistent", r.consistent}};
      }
      if (t_p > 0) {
        const auto r = check_powers_theorem(f, t_p);
        j["powers"] = {{"p", r.p},           {"I", arc_json(r.I)},           {"K", arc_json(r.K)},
                       {"lo_error", r.lo_error}, {"hi_error", r.hi_error}, {"equal", r.equal}};
      }
      try {
        const auto r = classify_point_support(f);
        j["classification"] = {{"sigma", r.sigma},
                               {"support_ok", r.support_ok},
                               {"mu_atoms", r.mu.size()},
                               {"nu_atoms", r.nu.size()},
                               {"reconstruction_error", r.reconstruction_error}};
      } catch (const Error& e) {
        j["classification"] = {{"error", e.what()}};
      }
      emit(j);
    } else if (*swp) {
      std::vector<json> bases;
      if (sw_configs.empty()) bases.push_back(json::object());
      for (const auto& path : sw_configs) {
        std::ifstream in(path);
        if (!in) fail(ErrorCode::Config, "cannot open config file '" + path + "'");
        const json j = json::parse(in, nullptr, false, true);
        if (j.is_discarded()) fail(ErrorCode::Config, "config file '" + path + "' is not valid JSON");
        bases.push_back(j);
      }
      for (auto& b : bases)
        for (const auto& s : sw_set) apply_override(b, s);
      std::vector<json> all = bases;
      for (const auto& v : sw_vary) {
        const auto eq = v.find('=');
        if (eq == std::string::npos) fail(ErrorCode::Config, "--vary needs key=v1,v2,...");
        std::vector<json> next;
        std::stringstream ss(v.substr(eq + 1));
        std::string val;
        std::vector<std::string> vals;
        while (std::getline(ss, val, ',')) vals.push_back(val);
        for (const auto& b : all)
          for (const auto& x : vals) {
            json c = b;
            apply_override(c, v.substr(0, eq) + "=" + x);
            next.push_back(c);
          }
        all = next;
      }
      // Malformed configs stop the sweep up front; invariant violations fail only their run.
      std::vector<ExperimentConfig> configs;
      for (const auto& j : all) configs.push_back(ExperimentConfig::from_json(j));
      const auto runs = sweep(configs, {sw_out, sw_jobs});
      json out = json::array();
      int failed = 0;
      for (const auto& r : runs) {
        failed += !r.ok;
        out.push_back({{"run", r.index}, {"hash", r.hash}, {"ok", r.ok}, {"error", r.error},
                       {"final_fraction", r.summary.final_fraction}});
      }
      emit({{"output_dir", sw_out}, {"runs", out}, {"failed", failed}});
    } else if (*thr) {
      const PolynomialPotential W(parse_list(th_pot, "--potential"));
      const auto t = tau_thresholds(W);
      emit({{"k1", t.k1.to_string()},
            {"k2", t.k2.to_string()},
            {"k3", t.k3.to_string()},
            {"tau1", t.tau1.to_string()},
            {"tau2", t.tau2.to_string()},
            {"tau3", t.tau3.to_string()},
            {"k2_estimate", t.k2_estimate}});
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_numerical() ? 3 : 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
