#include "grips/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "grips/errors.hpp"

namespace grips {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& msg) {
  throw input_error(origin + ":" + std::to_string(line) + ": " + msg);
}

long long to_int(const std::string& origin, int line, const std::string& key,
                 const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "'" + key + "' must be an integer, got '" + s + "'");
  }
}

}  // namespace

const std::vector<std::string>& pipeline_stage_names() {
  static const std::vector<std::string> names{
      "graph",     "complex", "estimate", "dismantle",
      "fixed",     "fineness", "hulls",   "delta"};
  return names;
}

RunConfig parse_config_text(const std::string& text,
                            const std::string& origin) {
  RunConfig c;
  c.origin = origin;
  std::set<std::string> seen;

  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(origin, number, "expected 'key = value', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, number, "empty key");
    if (value.empty()) fail(origin, number, "empty value for '" + key + "'");

    if (key != "peripheral" && !seen.insert(key).second)
      fail(origin, number, "duplicate key '" + key + "'");

    if (key == "model") {
      c.model_path = value;
    } else if (key == "output") {
      c.output_dir = value;
    } else if (key == "peripheral") {
      c.extra_peripherals.push_back(value);
    } else if (key == "radius") {
      c.radius = static_cast<int>(to_int(origin, number, key, value));
    } else if (key == "n") {
      c.n = static_cast<int>(to_int(origin, number, key, value));
    } else if (key == "d_max") {
      c.d_max = static_cast<int>(to_int(origin, number, key, value));
    } else if (key == "complex_cap") {
      long long v = to_int(origin, number, key, value);
      if (v < 1) fail(origin, number, "'complex_cap' must be positive");
      c.complex_cap = static_cast<std::size_t>(v);
    } else if (key == "epsilon") {
      c.epsilon = static_cast<int>(to_int(origin, number, key, value));
    } else if (key == "R") {
      if (value == "estimate") {
        c.estimate_R = true;
      } else {
        c.estimate_R = false;
        c.R = static_cast<int>(to_int(origin, number, key, value));
      }
    } else if (key == "D") {
      if (value == "estimate") {
        c.estimate_D = true;
      } else {
        c.estimate_D = false;
        c.D = static_cast<int>(to_int(origin, number, key, value));
      }
    } else if (key == "K") {
      c.K = static_cast<int>(to_int(origin, number, key, value));
    } else if (key == "seed") {
      c.has_seed = true;
      c.seed = static_cast<std::uint64_t>(to_int(origin, number, key, value));
    } else if (key == "samples") {
      c.samples = to_int(origin, number, key, value);
    } else if (key == "budget") {
      c.budget = to_int(origin, number, key, value);
    } else if (key == "max_subgroup_order") {
      c.max_subgroup_order =
          static_cast<int>(to_int(origin, number, key, value));
    } else if (key == "fineness_L") {
      c.fineness_L = static_cast<int>(to_int(origin, number, key, value));
    } else if (key == "hull_r") {
      c.hull_r = static_cast<int>(to_int(origin, number, key, value));
    } else if (key == "hull_core") {
      c.hull_core = static_cast<int>(to_int(origin, number, key, value));
    } else if (key == "stages") {
      std::istringstream list(value);
      std::string stage;
      while (std::getline(list, stage, ',')) {
        stage = trim(stage);
        if (!stage.empty()) c.stages.insert(stage);
      }
      if (c.stages.empty()) fail(origin, number, "empty stage list");
    } else {
      fail(origin, number, "unknown key '" + key + "'");
    }
  }

  if (c.stages.empty())
    c.stages = {"graph", "complex", "estimate", "dismantle", "fixed"};
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig c = parse_config_text(buf.str(), path);
  std::filesystem::path dir = std::filesystem::path(path).parent_path();
  if (!c.model_path.empty() &&
      std::filesystem::path(c.model_path).is_relative())
    c.model_path = (dir / c.model_path).lexically_normal().string();
  if (!c.output_dir.empty() &&
      std::filesystem::path(c.output_dir).is_relative())
    c.output_dir = (dir / c.output_dir).lexically_normal().string();
  return c;
}

void validate(const RunConfig& c) {
  const std::string at = c.origin.empty() ? "config" : c.origin;
  auto bad = [&at](const std::string& msg) {
    throw input_error(at + ": " + msg);
  };

  if (c.model_path.empty()) bad("missing 'model'");
  if (c.output_dir.empty()) bad("missing 'output'");
  if (c.radius < 1) bad("'radius' must be at least 1");
  if (c.n < 1) bad("'n' must be at least 1");
  if (c.d_max < 0) bad("'d_max' must be nonnegative");
  if (c.epsilon < 1) bad("'epsilon' must be at least 1");
  if (!c.estimate_R && c.R < 1) bad("pinned 'R' must be at least 1");
  if (!c.estimate_D && c.D < 0) bad("pinned 'D' must be nonnegative");
  if (c.K < 1) bad("'K' must be at least 1");
  if (c.samples < 0) bad("'samples' must be nonnegative");
  if (c.budget < 1) bad("'budget' must be positive");
  if (c.max_subgroup_order < 0) bad("'max_subgroup_order' must be nonnegative");
  if (c.fineness_L < 0) bad("'fineness_L' must be nonnegative");
  if (c.hull_r < 0) bad("'hull_r' must be nonnegative");
  if (c.hull_core < 0) bad("'hull_core' must be nonnegative");

  const auto& known = pipeline_stage_names();
  for (const std::string& s : c.stages)
    if (std::find(known.begin(), known.end(), s) == known.end())
      bad("unknown stage '" + s + "'");

  if (c.samples > 0 && !c.has_seed)
    bad("'seed' is required when 'samples' enables sampled modes");
}

}  // namespace grips
