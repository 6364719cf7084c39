// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rlab/errors.hpp"
#include "rlab/path.hpp"

namespace rlab {

enum class Command { Simulate, Oracle, Leaders, Classify, Sieve, Tails, Decompose, Validate };
enum class OutputFormat { Csv, Json, Binary };

const char* command_name(Command c);
Command parse_command(const std::string& name);
const char* format_name(OutputFormat f);
OutputFormat parse_format(const std::string& name);

// Everything that determines the artifacts of a run. The worker count is
// deliberately absent: it must not change any output.
struct RunConfig {
  Command command = Command::Simulate;
  double h1 = 0.8;
  double h2 = 0.8;
  std::uint64_t seed = 1;
  int grid_level = 10;
  TruncationSpec truncation;
  std::string output_path;  // empty: rlab-<command>.<ext>
  OutputFormat format = OutputFormat::Csv;

  int paths = 1;             // simulate, oracle, classify, decompose
  int wavelet_order = 2;     // leaders, classify, decompose
  int t_points = 64;         // classify: t = (i + 1/2) / t_points
  double sieve_mu = -1.0;    // negative: calibrated
  double sieve_m = 2.0;
  int sieve_depth = 12;
  std::uint64_t tail_samples = 1000000;
  std::string tail_source = "chaos";  // chaos | gaussian
  std::vector<double> y_grid = {2, 3, 4, 5, 6, 7, 8};
  int decomp_j = 0;
  std::int64_t decomp_k = 1;
  std::vector<int> decomp_ms = {2, 4, 8, 16};
  int decomp_step_log2 = 4;

  // Throws ConfigInvalid (including the Hurst constraints).
  void validate() const;
};

nlohmann::json config_to_json(const RunConfig& c);
// Applies the keys present in `j` on top of `base`; unknown keys, wrong types
// and invalid values raise ConfigInvalid. A manifest (object with "config")
// is accepted as well. The result is validated.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

// Output path after applying RLAB_OUTPUT_DIR to relative or empty paths.
std::string resolved_output_path(const RunConfig& c);

// Runs the pipeline, writing the artifact and <artifact>.manifest.json.
// Returns the manifest. Throws LabError.
nlohmann::json run(const RunConfig& config, unsigned workers = 1);

// Process exit code for an error kind: 2 configuration, 4 I/O, 3 otherwise.
int exit_code_for(ErrorKind kind);

// Full command-line entry point; never throws.
int cli_main(int argc, char** argv);

}  // namespace rlab
