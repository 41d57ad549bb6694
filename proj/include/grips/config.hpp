#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace grips {

/**
 * Pipeline run configuration, read from a "key = value" file with the same
 * lexical rules as model files.  Defaults are chosen so a minimal config
 * (model, radius, n, output) runs the core stages exhaustively.
 */
struct RunConfig {
  std::string origin;      // config file path, for diagnostics
  std::string model_path;  // resolved relative to the config file
  std::vector<std::string> extra_peripherals;  // appended to the model

  int radius = 0;
  int n = 0;      // Rips distance threshold
  int d_max = 2;  // clique complex dimension cap
  std::size_t complex_cap = 2'000'000;

  int epsilon = 1;
  bool estimate_R = true;  // "R = estimate" (default) vs pinned value
  int R = 1;
  bool estimate_D = true;
  int D = 0;
  int K = 1;

  bool has_seed = false;
  std::uint64_t seed = 0;
  long long samples = 0;  // 0 = exhaustive everywhere
  long long budget = 1'000'000;

  int max_subgroup_order = 6;
  int fineness_L = 6;
  int hull_r = 2;     // hull parameter for the hulls stage
  int hull_core = 3;  // max S-length of sampled hull anchors

  std::set<std::string> stages;  // validated subset of known stage names
  std::string output_dir;
};

// Known stage names, in execution order.
const std::vector<std::string>& pipeline_stage_names();

RunConfig parse_config_text(const std::string& text, const std::string& origin);
// Loads and resolves model/output paths relative to the config directory.
RunConfig load_config_file(const std::string& path);

// Throws input_error on any violated invariant (missing keys, non-positive
// sizes, sampling without a seed, unknown stage names).
void validate(const RunConfig& c);

}  // namespace grips
