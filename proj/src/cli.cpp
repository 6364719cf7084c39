// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/cli.hpp"

#include <fftw3.h>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rlab/chaos_field.hpp"
#include "rlab/cross_integral.hpp"
#include "rlab/daubechies.hpp"
#include "rlab/decomposition.hpp"
#include "rlab/hurst.hpp"
#include "rlab/kernel_oracle.hpp"
#include "rlab/leaders.hpp"
#include "rlab/numerics.hpp"
#include "rlab/parallel.hpp"
#include "rlab/regularity.hpp"
#include "rlab/rng.hpp"
#include "rlab/sieve.hpp"
#include "rlab/tails.hpp"
#include "rlab/variance.hpp"
#include "rlab/wavelet_sim.hpp"

namespace rlab {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

const char* const kCommandNames[] = {"simulate", "oracle", "leaders", "classify",
                                     "sieve",    "tails",  "decompose", "validate"};
const char* const kFormatNames[] = {"csv", "json", "binary"};

}  // namespace

const char* command_name(Command c) { return kCommandNames[static_cast<int>(c)]; }

Command parse_command(const std::string& name) {
  for (int i = 0; i < 8; ++i) {
    if (name == kCommandNames[i]) return static_cast<Command>(i);
  }
  fail(ErrorKind::ConfigInvalid, "unknown command '" + name + "'");
}

const char* format_name(OutputFormat f) { return kFormatNames[static_cast<int>(f)]; }

OutputFormat parse_format(const std::string& name) {
  for (int i = 0; i < 3; ++i) {
    if (name == kFormatNames[i]) return static_cast<OutputFormat>(i);
  }
  fail(ErrorKind::ConfigInvalid, "unknown format '" + name + "' (csv, json or binary)");
}

void RunConfig::validate() const {
  HurstPair(h1, h2);
  truncation.validate();
  auto need = [](bool ok, const char* what) {
    if (!ok) fail(ErrorKind::ConfigInvalid, what);
  };
  need(grid_level >= 4 && grid_level <= 20, "grid_level must lie in [4,20]");
  need(paths >= 1 && paths <= 1000000, "paths must lie in [1,1e6]");
  need(wavelet_order >= 2 && wavelet_order <= 10, "wavelet_order must lie in [2,10]");
  need(t_points >= 1, "t_points must be positive");
  need(sieve_m > 0.0, "sieve_m must be positive");
  need(sieve_depth >= 0 && sieve_depth <= 24, "sieve_depth must lie in [0,24]");
  need(tail_source == "chaos" || tail_source == "gaussian", "tail_source must be chaos or gaussian");
  need(!y_grid.empty(), "y_grid must not be empty");
  need(!decomp_ms.empty(), "decomp_ms must not be empty");
  for (int m : decomp_ms) need(m >= 2, "every M must be at least 2");
  need(decomp_j >= 0 && decomp_j <= 20, "decomp_j must lie in [0,20]");
  need(decomp_step_log2 >= 1 && decomp_step_log2 <= 8, "decomp_step_log2 must lie in [1,8]");
  const bool path_like = command == Command::Simulate || command == Command::Oracle;
  need(format != OutputFormat::Binary || path_like, "binary output is only available for path commands");
}

json config_to_json(const RunConfig& c) {
  return json{{"command", command_name(c.command)},
              {"h1", c.h1},
              {"h2", c.h2},
              {"seed", c.seed},
              {"grid_level", c.grid_level},
              {"j_min", c.truncation.j_min},
              {"j_max", c.truncation.j_max},
              {"k_band", c.truncation.k_band},
              {"oracle_left_cut", c.truncation.oracle_left_cut},
              {"oracle_step", c.truncation.oracle_step},
              {"output_path", c.output_path},
              {"format", format_name(c.format)},
              {"paths", c.paths},
              {"wavelet_order", c.wavelet_order},
              {"t_points", c.t_points},
              {"sieve_mu", c.sieve_mu},
              {"sieve_m", c.sieve_m},
              {"sieve_depth", c.sieve_depth},
              {"tail_samples", c.tail_samples},
              {"tail_source", c.tail_source},
              {"y_grid", c.y_grid},
              {"decomp_j", c.decomp_j},
              {"decomp_k", c.decomp_k},
              {"decomp_ms", c.decomp_ms},
              {"decomp_step_log2", c.decomp_step_log2}};
}

RunConfig config_from_json(const json& j, RunConfig base) {
  if (!j.is_object()) fail(ErrorKind::ConfigInvalid, "config must be a JSON object");
  if (j.contains("config") && j.contains("versions")) return config_from_json(j.at("config"), base);
  RunConfig& c = base;
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "command") c.command = parse_command(v.get<std::string>());
      else if (key == "h1") c.h1 = v.get<double>();
      else if (key == "h2") c.h2 = v.get<double>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "grid_level") c.grid_level = v.get<int>();
      else if (key == "j_min") c.truncation.j_min = v.get<int>();
      else if (key == "j_max") c.truncation.j_max = v.get<int>();
      else if (key == "k_band") c.truncation.k_band = v.get<int>();
      else if (key == "oracle_left_cut") c.truncation.oracle_left_cut = v.get<double>();
      else if (key == "oracle_step") c.truncation.oracle_step = v.get<double>();
      else if (key == "output_path") c.output_path = v.get<std::string>();
      else if (key == "format") c.format = parse_format(v.get<std::string>());
      else if (key == "paths") c.paths = v.get<int>();
      else if (key == "wavelet_order") c.wavelet_order = v.get<int>();
      else if (key == "t_points") c.t_points = v.get<int>();
      else if (key == "sieve_mu") c.sieve_mu = v.get<double>();
      else if (key == "sieve_m") c.sieve_m = v.get<double>();
      else if (key == "sieve_depth") c.sieve_depth = v.get<int>();
      else if (key == "tail_samples") c.tail_samples = v.get<std::uint64_t>();
      else if (key == "tail_source") c.tail_source = v.get<std::string>();
      else if (key == "y_grid") c.y_grid = v.get<std::vector<double>>();
      else if (key == "decomp_j") c.decomp_j = v.get<int>();
      else if (key == "decomp_k") c.decomp_k = v.get<std::int64_t>();
      else if (key == "decomp_ms") c.decomp_ms = v.get<std::vector<int>>();
      else if (key == "decomp_step_log2") c.decomp_step_log2 = v.get<int>();
      else fail(ErrorKind::ConfigInvalid, "unknown config key '" + key + "'");
    } catch (const json::exception& e) {
      fail(ErrorKind::ConfigInvalid, "config key '" + key + "': " + e.what());
    }
  }
  c.validate();
  return c;
}

std::string resolved_output_path(const RunConfig& c) {
  std::string name = c.output_path;
  if (name.empty()) {
    const char* ext = c.format == OutputFormat::Csv ? "csv" : c.format == OutputFormat::Json ? "json" : "bin";
    name = std::string("rlab-") + command_name(c.command) + "." + ext;
  }
  std::filesystem::path p(name);
  const char* dir = std::getenv("RLAB_OUTPUT_DIR");
  if (p.is_relative() && dir != nullptr && *dir != '\0') p = std::filesystem::path(dir) / p;
  return p.string();
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigInvalid:
    case ErrorKind::UnsupportedOrder:
    case ErrorKind::OutOfRange:
    case ErrorKind::ResolutionMismatch:
      return 2;
    case ErrorKind::IoFailure:
      return 4;
    default:
      return 3;
  }
}

namespace {

struct Artifact {
  std::string body;
  json diagnostics = json::object();
};

void emit_paths(const std::vector<PathGrid>& paths, OutputFormat fmt, std::ostream& os) {
  if (fmt == OutputFormat::Binary) {
    for (const auto& p : paths) write_path_binary(p, os);
  } else if (fmt == OutputFormat::Json) {
    json j;
    j["t"] = paths.front().times;
    json vals = json::array();
    for (const auto& p : paths) vals.push_back(p.values);
    j["paths"] = vals;
    os << j.dump() << '\n';
  } else if (paths.size() == 1) {
    write_path_csv(paths.front(), os);
  } else {
    os << "path,t,value\n";
    for (std::size_t i = 0; i < paths.size(); ++i) {
      for (std::size_t m = 0; m < paths[i].size(); ++m) {
        os << i << ',' << format_double(paths[i].times[m]) << ',' << format_double(paths[i].values[m]) << '\n';
      }
    }
  }
}

std::vector<std::uint64_t> path_seeds(const RunConfig& c) {
  if (c.paths == 1) return {c.seed};
  std::vector<std::uint64_t> s(static_cast<std::size_t>(c.paths));
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = replica_seed(c.seed, i);
  return s;
}

json tail_json(const TailReport& r) {
  return json{{"y_grid", r.y_grid},
              {"survival", r.survival},
              {"hits", r.hits},
              {"l2_norm", r.l2_norm},
              {"samples", r.samples},
              {"fitted_slope_linear", r.fitted_slope_linear},
              {"r2_linear", r.r2_linear},
              {"fitted_slope_quadratic", r.fitted_slope_quadratic},
              {"r2_quadratic", r.r2_quadratic},
              {"rate_min", r.rate_min},
              {"rate_max", r.rate_max}};
}

Artifact run_simulate(const RunConfig& c, unsigned workers) {
  const HurstPair h(c.h1, c.h2);
  const WaveletSimulator sim(h, c.grid_level, c.truncation);
  std::ostringstream os;
  emit_paths(sim.simulate_many(path_seeds(c), workers), c.format, os);
  Artifact a{os.str()};
  a.diagnostics = {{"atom_count", sim.atom_count()},
                   {"fine_level", sim.fine_level()},
                   {"tail_rate", sim.tail_rate()},
                   {"truncation_tail_bound_3sigma", sim.truncation_tail_bound(3.0)},
                   {"variance_at_1", rosenblatt_variance(h, 1.0)}};
  return a;
}

Artifact run_oracle(const RunConfig& c, unsigned workers) {
  const HurstPair h(c.h1, c.h2);
  const KernelOracle sim(h, c.grid_level, c.truncation);
  std::ostringstream os;
  emit_paths(sim.simulate_many(path_seeds(c), workers), c.format, os);
  Artifact a{os.str()};
  a.diagnostics = {{"cell_count", sim.cell_count()},
                   {"far_extent", sim.far_extent()},
                   {"tail_rate", sim.tail_rate()},
                   {"deficit_fraction", sim.deficit_fraction()},
                   {"variance_at_1", rosenblatt_variance(h, 1.0)}};
  return a;
}

std::vector<double> classify_times(int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = (i + 0.5) / n;
  return t;
}

Artifact run_leaders(const RunConfig& c, unsigned workers) {
  (void)workers;
  const HurstPair h(c.h1, c.h2);
  const auto wl = daubechies_cached(c.wavelet_order);
  const PathGrid path = simulate_wavelet(h, c.grid_level, c.truncation, c.seed);
  const LeaderPyramid pyr = wavelet_coeffs(path, *wl, std::max(0, c.grid_level - wl->depth), default_leader_depth(c.grid_level));
  std::ostringstream os;
  const auto t = classify_times(c.t_points);
  if (c.format == OutputFormat::Json) {
    json rows = json::array();
    for (int j = pyr.j_lo(); j <= pyr.j_hi(); ++j) {
      std::vector<double> d;
      for (double x : t) d.push_back(pyr.leader(x, j));
      rows.push_back({{"j", j}, {"leaders", d}});
    }
    os << json{{"t", t}, {"scales", rows}}.dump() << '\n';
  } else {
    pyr.write_leaders_csv(os, t);
  }
  Artifact a{os.str()};
  a.diagnostics = {{"j_lo", pyr.j_lo()}, {"j_hi", pyr.j_hi()}, {"halfwidth", pyr.halfwidth()}};
  return a;
}

Artifact run_classify(const RunConfig& c, unsigned workers) {
  const HurstPair h(c.h1, c.h2);
  const auto wl = daubechies_cached(c.wavelet_order);
  const WaveletSimulator sim(h, c.grid_level, c.truncation);
  const auto seeds = path_seeds(c);
  const auto t = classify_times(c.t_points);
  std::vector<RegularityReport> parts(seeds.size());
  parallel_for(seeds.size(), workers, [&](std::size_t i) {
    const PathGrid p = sim.simulate(seeds[i]);
    const LeaderPyramid pyr = wavelet_coeffs(p, *wl, std::max(0, c.grid_level - wl->depth), default_leader_depth(c.grid_level));
    parts[i] = classify_grid(pyr, t, h, c.grid_level);
  });
  const RegularityReport rep = merge_reports(parts);
  std::ostringstream os;
  if (c.format == OutputFormat::Json) rep.write_json(os);
  else rep.write_points_csv(os);
  Artifact a{os.str()};
  a.diagnostics = {{"median_alpha", rep.median_alpha},
                   {"alpha", h.alpha()},
                   {"fraction_slow", rep.fraction_slow},
                   {"fraction_ordinary", rep.fraction_ordinary},
                   {"fraction_rapid", rep.fraction_rapid},
                   {"fraction_indeterminate", rep.fraction_indeterminate},
                   {"rapid_slope", rep.rapid_slope}};
  return a;
}

Artifact run_sieve(const RunConfig& c, unsigned workers) {
  (void)workers;
  check_sieve_slope(HurstPair(c.h1, c.h2), c.sieve_m);
  const double mu = c.sieve_mu >= 0.0 ? c.sieve_mu : calibrate_mu(c.sieve_m);
  const SieveResult r = slow_sieve(ChaosField(c.seed, "sieve"), mu, c.sieve_m, c.sieve_depth);
  std::ostringstream os;
  if (c.format == OutputFormat::Json) {
    os << json{{"mu", mu}, {"depth", r.depth}, {"trajectory", r.trajectory}, {"survivors", r.survivors}}.dump()
       << '\n';
  } else {
    os << "j,survivors\n";
    for (std::size_t j = 0; j < r.trajectory.size(); ++j) os << j << ',' << r.trajectory[j] << '\n';
  }
  Artifact a{os.str()};
  a.diagnostics = {{"mu", mu},
                   {"loss_bound", sieve_loss_bound(mu, c.sieve_m)},
                   {"final_survivors", r.survivors.size()}};
  return a;
}

Artifact run_tails(const RunConfig& c, unsigned workers) {
  const ChaosField field(c.seed, "tails");
  const bool chaos = c.tail_source == "chaos";
  const TailReport r = tail_estimate(
      [&](std::uint64_t i) {
        const auto k = static_cast<std::int32_t>(i);
        return chaos ? field.epsilon(0, 0, k, k) : field.gaussian_at(0, k);
      },
      c.y_grid, c.tail_samples, workers);
  std::ostringstream os;
  if (c.format == OutputFormat::Json) {
    os << tail_json(r).dump() << '\n';
  } else {
    os << "y,survival,hits\n";
    for (std::size_t i = 0; i < r.y_grid.size(); ++i) {
      os << format_double(r.y_grid[i]) << ',' << format_double(r.survival[i]) << ',' << r.hits[i] << '\n';
    }
  }
  Artifact a{os.str()};
  a.diagnostics = {{"r2_linear", r.r2_linear},
                   {"r2_quadratic", r.r2_quadratic},
                   {"fitted_slope_linear", r.fitted_slope_linear}};
  return a;
}

Artifact run_decompose(const RunConfig& c, unsigned workers) {
  const HurstPair h(c.h1, c.h2);
  DecompositionOptions opt;
  opt.wavelet_order = c.wavelet_order;
  opt.step_log2 = c.decomp_step_log2;
  const CoefficientSampler sampler(h, c.decomp_j, c.decomp_k, c.decomp_ms, opt);
  const auto seeds = path_seeds(c);
  std::vector<CoefficientSampler::Draw> draws(seeds.size());
  parallel_for(seeds.size(), workers, [&](std::size_t i) { draws[i] = sampler.sample(seeds[i]); });
  const auto& ms = sampler.ms();
  std::vector<DecompositionReport> rows;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    for (std::size_t q = 0; q < ms.size(); ++q) {
      DecompositionReport r;
      r.j = c.decomp_j;
      r.k = c.decomp_k;
      r.m = ms[q];
      r.seed = seeds[i];
      r.c_near = draws[i].near[q];
      r.c_far = draws[i].far[q];
      r.c_direct = draws[i].direct;
      r.norm_near_est = sampler.norm_near(q);
      r.norm_far_est = sampler.norm_far(q);
      rows.push_back(r);
    }
  }
  // Norm summaries in units of 2^{-j alpha}.
  const double s = sampler.scale();
  std::vector<double> log_m, log_far, near_n, far_n, near_mc, far_mc;
  for (std::size_t q = 0; q < ms.size(); ++q) {
    near_n.push_back(sampler.norm_near(q) / s);
    far_n.push_back(sampler.norm_far(q) / s);
    log_m.push_back(std::log(ms[q]));
    log_far.push_back(std::log(sampler.norm_far(q)));
    KahanSum sn, sf;
    for (const auto& d : draws) {
      sn.add(d.near[q] * d.near[q]);
      sf.add(d.far[q] * d.far[q]);
    }
    near_mc.push_back(std::sqrt(sn.value() / static_cast<double>(draws.size())) / s);
    far_mc.push_back(std::sqrt(sf.value() / static_cast<double>(draws.size())) / s);
  }
  json summary = {{"M", ms},
                  {"norm_near", near_n},
                  {"norm_far", far_n},
                  {"mc_norm_near", near_mc},
                  {"mc_norm_far", far_mc},
                  {"deficit_fraction", sampler.deficit_fraction()},
                  {"far_slope", ms.size() >= 2 ? linear_fit(log_m, log_far).slope : 0.0},
                  {"expected_far_slope", h.max_h() - 1.0}};
  std::ostringstream os;
  if (c.format == OutputFormat::Json) {
    json r = json::array();
    for (const auto& row : rows) {
      r.push_back({{"j", row.j}, {"k", row.k}, {"M", row.m}, {"c_near", row.c_near}, {"c_far", row.c_far}});
    }
    os << json{{"summary", summary}, {"rows", r}}.dump() << '\n';
  } else {
    write_decomposition_csv(os, rows);
  }
  Artifact a{os.str()};
  a.diagnostics = summary;
  return a;
}

// Fast self-checks of the main invariants; one row per check.
Artifact run_validate(const RunConfig& c, unsigned workers) {
  json rows = json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool pass, const std::string& detail) {
    rows.push_back({{"check", name}, {"pass", pass}, {"detail", detail}});
    all = all && pass;
  };
  auto guarded = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    try {
      auto [pass, detail] = fn();
      record(name, pass, detail);
    } catch (const std::exception& e) {
      record(name, false, e.what());
    }
  };
  const HurstPair h(c.h1, c.h2);
  guarded("hurst pair constraint", [] {
    bool rejected = false;
    try {
      HurstPair(0.6, 0.7);
    } catch (const LabError& e) {
      rejected = e.kind() == ErrorKind::ConfigInvalid;
    }
    return std::pair{rejected, std::string("(0.6, 0.7) rejected")};
  });
  guarded("cross integral band gap", [&] {
    const double v = cross_integral_fourier(c.h1, c.h2, 0, 2, 0, 1);
    return std::pair{v == 0.0, format_double(v)};
  });
  guarded("cross integral routes agree", [&] {
    const double f = cross_integral_fourier(c.h1, c.h2, 0, 1, 0, 1);
    const double t = time_integral(c.h1, c.h2, 0, 0, 1, 1, -60.0, 60.0);
    return std::pair{std::abs(f - t) < 1e-5, format_double(f) + " vs " + format_double(t)};
  });
  guarded("expansion determinism", [&] {
    const WaveletSimulator sim(h, 8, c.truncation);
    const bool same = sim.simulate(c.seed).values == sim.simulate(c.seed).values;
    return std::pair{same, std::string("two runs of one seed")};
  });
  guarded("expansion variance at t=1", [&] {
    const WaveletSimulator sim(h, 8, c.truncation);
    std::vector<std::uint64_t> seeds(1000);
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = replica_seed(c.seed, i);
    std::vector<double> end;
    for (const auto& p : sim.simulate_many(seeds, workers)) end.push_back(p.values.back());
    KahanSum s2;
    for (double x : end) s2.add(x * x);
    const double ratio = s2.value() / static_cast<double>(end.size()) / rosenblatt_variance(h, 1.0);
    return std::pair{std::abs(ratio - 1.0) < 0.25, "ratio " + format_double(ratio)};
  });
  guarded("leader oscillation bound", [&] {
    const auto wl = daubechies_cached(2);
    const PathGrid p = simulate_wavelet(h, 10, c.truncation, c.seed);
    const LeaderPyramid pyr = wavelet_coeffs(p, *wl, 0, default_leader_depth(10));
    bool ok = true;
    for (int j = 0; j <= pyr.j_hi(); ++j) {
      for (double t : classify_times(16)) ok = ok && pyr.leader(t, j) <= leader_oscillation_bound(p, *wl, t, j);
    }
    return std::pair{ok, std::string("16 points, all scales")};
  });
  guarded("sieve monotonicity", [&] {
    const SieveResult r = slow_sieve(ChaosField(c.seed, "sieve"), calibrate_mu(2.0), 2.0, 10);
    bool ok = true;
    for (std::size_t j = 1; j < r.trajectory.size(); ++j) ok = ok && r.trajectory[j] <= 2 * r.trajectory[j - 1];
    return std::pair{ok, "final survivors " + std::to_string(r.survivors.size())};
  });
  guarded("decomposition additivity", [&] {
    const CoefficientSampler s(HurstPair(0.8, 0.8), 0, 1, {2, 8});
    double gap = 0.0;
    for (std::uint64_t i = 0; i < 8; ++i) {
      const auto d = s.sample(replica_seed(c.seed, i));
      for (std::size_t q = 0; q < 2; ++q) gap = std::max(gap, std::abs(d.near[q] + d.far[q] - d.direct));
    }
    return std::pair{gap <= 1e-12, "max gap " + format_double(gap)};
  });
  guarded("box disjointness", [] {
    const int n = daubechies_cached(2)->support_halfwidth;
    const int m = 4;
    const bool apart = cm_condition({coefficient_box(3, 0, m, n), coefficient_box(3, n * (m + 1) + 1, m, n)});
    const bool same = cm_condition({coefficient_box(3, 0, m, n), coefficient_box(3, 0, m, n)});
    return std::pair{apart && !same, std::string("separated and identical boxes")};
  });
  std::ostringstream table;
  for (const auto& r : rows) {
    table << (r["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << r["check"].get<std::string>() << "  ("
          << r["detail"].get<std::string>() << ")\n";
  }
  std::cout << table.str();
  Artifact a;
  if (c.format == OutputFormat::Json) {
    a.body = json{{"all_pass", all}, {"checks", rows}}.dump() + "\n";
  } else {
    std::ostringstream os;
    os << "check,pass\n";
    for (const auto& r : rows) os << r["check"].get<std::string>() << ',' << (r["pass"].get<bool>() ? 1 : 0) << '\n';
    a.body = os.str();
  }
  a.diagnostics = {{"all_pass", all}};
  if (!all) a.diagnostics["failed"] = true;
  return a;
}

json versions() {
  std::ostringstream eigen;
  eigen << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION;
  return json{{"rlab", kVersion},
              {"fftw", std::string(fftw_version)},
              {"eigen", eigen.str()},
              {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
              {"compiler", __VERSION__}};
}

void write_file(const std::string& path, const std::string& body) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorKind::IoFailure, "cannot open '" + path + "' for writing");
  f << body;
  f.close();
  if (!f) fail(ErrorKind::IoFailure, "failed writing '" + path + "'");
}

}  // namespace

json run(const RunConfig& config, unsigned workers) {
  config.validate();
  if (workers == 0) workers = 1;
  const auto start = std::chrono::steady_clock::now();
  Artifact art;
  switch (config.command) {
    case Command::Simulate: art = run_simulate(config, workers); break;
    case Command::Oracle: art = run_oracle(config, workers); break;
    case Command::Leaders: art = run_leaders(config, workers); break;
    case Command::Classify: art = run_classify(config, workers); break;
    case Command::Sieve: art = run_sieve(config, workers); break;
    case Command::Tails: art = run_tails(config, workers); break;
    case Command::Decompose: art = run_decompose(config, workers); break;
    case Command::Validate: art = run_validate(config, workers); break;
  }
  const std::string out = resolved_output_path(config);
  write_file(out, art.body);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest = {{"config", config_to_json(config)},
                   {"versions", versions()},
                   {"artifact", out},
                   {"elapsed_seconds", elapsed},
                   {"diagnostics", art.diagnostics}};
  write_file(out + ".manifest.json", manifest.dump(2) + "\n");
  if (config.command == Command::Validate && art.diagnostics.contains("failed")) {
    fail(ErrorKind::NumericalFailure, "validation checks failed");
  }
  return manifest;
}

namespace {

void print_error(ErrorKind kind, const std::string& message) {
  const json rec = {{"error", {{"kind", error_kind_name(kind)}, {"message", message}, {"exit_code", exit_code_for(kind)}}}};
  std::cerr << rec.dump() << '\n';
}

constexpr const char* kFooter = R"(Outputs (numbers in shortest round-trip decimal):
  simulate, oracle  csv: t,value (one path) or path,t,value; json: {t, paths}; binary: concatenated path records
  leaders           csv: j,t,d with t = (i + 1/2)/t_points
  classify          csv: t,alpha_hat,class pooled over paths; json: fractions, median_alpha, rapid_slope, points
  sieve             csv: j,survivors; json: mu, trajectory, survivors
  tails             csv: y,survival,hits; json: survival and log-survival fits
  decompose         csv: j,k,M,c_near,c_far per draw and M; json: rows plus norm summary
  validate          csv: check,pass; the table is also printed
Every run also writes <output>.manifest.json; pass it to --config to rerun.
RLAB_OUTPUT_DIR prefixes relative output paths.)";

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Simulation and regularity laboratory for generalized Rosenblatt processes", "rlab"};
  app.footer(kFooter);
  app.require_subcommand(1);

  RunConfig flags;
  std::string format = "csv";
  std::string config_file;
  unsigned workers = 1;

  app.add_option("--h1", flags.h1, "Hurst index of the first factor");
  app.add_option("--h2", flags.h2, "Hurst index of the second factor");
  app.add_option("--seed", flags.seed, "Master seed");
  app.add_option("--grid-level", flags.grid_level, "Output grid has 2^level + 1 points on [0,1]");
  app.add_option("--j-min", flags.truncation.j_min, "Coarsest expansion scale");
  app.add_option("--j-max", flags.truncation.j_max, "Finest expansion scale");
  app.add_option("--k-band", flags.truncation.k_band, "Translation margin beyond [0,1] in units of the scale");
  app.add_option("--oracle-left-cut", flags.truncation.oracle_left_cut, "Uniform oracle cells start at -cut");
  app.add_option("--oracle-step", flags.truncation.oracle_step, "Oracle cell width (power of two)");
  app.add_option("--output,-o", flags.output_path, "Artifact path");
  auto* fmt_opt = app.add_option("--format", format, "csv, json or binary");
  app.add_option("--paths", flags.paths, "Number of paths or draws");
  app.add_option("--wavelet-order", flags.wavelet_order, "Daubechies vanishing moments");
  app.add_option("--t-points", flags.t_points, "Classification grid size");
  app.add_option("--sieve-mu", flags.sieve_mu, "Sieve threshold; negative selects the calibrated value");
  app.add_option("--sieve-m", flags.sieve_m, "Sieve neighbourhood slope m");
  app.add_option("--sieve-depth", flags.sieve_depth, "Sieve depth J");
  app.add_option("--tail-samples", flags.tail_samples, "Draws for tails");
  app.add_option("--tail-source", flags.tail_source, "chaos or gaussian");
  app.add_option("--y-grid", flags.y_grid, "Tail thresholds in units of the L2 norm")->delimiter(',');
  app.add_option("--decomp-j", flags.decomp_j, "Coefficient scale j");
  app.add_option("--decomp-k", flags.decomp_k, "Coefficient position k");
  app.add_option("--m-list", flags.decomp_ms, "Box enlargements M")->delimiter(',');
  app.add_option("--decomp-step", flags.decomp_step_log2, "Cells per unit of the coefficient scale, log2");
  app.add_option("--config", config_file, "JSON config or manifest; flags override it");
  app.add_option("--workers", workers, "Worker threads; outputs do not depend on it")->check(CLI::Range(1u, 1024u));

  std::string command;
  for (const char* name : kCommandNames) {
    app.add_subcommand(name, std::string("Run the ") + name + " pipeline")->fallthrough()->callback([&command, name] {
      command = name;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error(ErrorKind::ConfigInvalid, e.what());
    return 2;
  }

  try {
    json merged = json::object();
    if (!config_file.empty()) {
      std::ifstream f(config_file);
      if (!f) fail(ErrorKind::IoFailure, "cannot read config '" + config_file + "'");
      json j;
      try {
        f >> j;
      } catch (const json::exception& e) {
        fail(ErrorKind::ConfigInvalid, std::string("config is not valid JSON: ") + e.what());
      }
      if (!j.is_object()) fail(ErrorKind::ConfigInvalid, "config must be a JSON object");
      merged = j.contains("config") && j.contains("versions") ? j.at("config") : j;
    }
    // Explicit flags win over the file.
    json overrides = json::object();
    const json flag_json = config_to_json(flags);
    static const std::pair<const char*, const char*> kFlagKeys[] = {
        {"--h1", "h1"},           {"--h2", "h2"},
        {"--seed", "seed"},       {"--grid-level", "grid_level"},
        {"--j-min", "j_min"},     {"--j-max", "j_max"},
        {"--k-band", "k_band"},   {"--oracle-left-cut", "oracle_left_cut"},
        {"--oracle-step", "oracle_step"}, {"--output", "output_path"},
        {"--paths", "paths"},     {"--wavelet-order", "wavelet_order"},
        {"--t-points", "t_points"}, {"--sieve-mu", "sieve_mu"},
        {"--sieve-m", "sieve_m"}, {"--sieve-depth", "sieve_depth"},
        {"--tail-samples", "tail_samples"}, {"--tail-source", "tail_source"},
        {"--y-grid", "y_grid"},   {"--decomp-j", "decomp_j"},
        {"--decomp-k", "decomp_k"}, {"--m-list", "decomp_ms"},
        {"--decomp-step", "decomp_step_log2"}};
    for (const auto& [flag, key] : kFlagKeys) {
      if (app.count(flag) > 0) overrides[key] = flag_json.at(key);
    }
    if (fmt_opt->count() > 0) overrides["format"] = format;
    overrides["command"] = command;
    merged.update(overrides);
    const json manifest = run(config_from_json(merged), workers);
    std::cout << manifest.at("artifact").get<std::string>() << '\n';
    return 0;
  } catch (const LabError& e) {
    print_error(e.kind(), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    print_error(ErrorKind::NumericalFailure, e.what());
    return 3;
  }
}

}  // namespace rlab
