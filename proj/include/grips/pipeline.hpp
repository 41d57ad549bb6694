#pragma once

#include <map>
#include <string>
#include <vector>

#include "grips/config.hpp"

namespace grips {

/**
 * Batch pipeline: build the universe, then run the enabled stages in a
 * fixed order, writing one line-oriented report file per stage plus a
 * manifest and a summary.  Identical config and seed produce byte-identical
 * bundles.  Report lines whose value rests on an uncertified distance end
 * with the marker " [truncated]".
 *
 * Summary keys are namespaced: "stable." entries are expected to agree
 * between runs of the same model at different truncation radii and are what
 * diff_reports compares; "scale." entries grow with the ball and are
 * informational.
 */
struct PipelineResult {
  std::string dir;
  std::vector<std::string> files;              // relative names, write order
  std::map<std::string, std::string> summary;  // contents of summary.txt
  // 0 = all stages clean, 2 = a stage hit a resource cap, 3 = a stage was
  // blocked by truncation.  Stage errors are recorded, not thrown, so a
  // partial bundle is always preserved.
  int exit_code = 0;
};

PipelineResult run_pipeline(const RunConfig& config);

struct DiffEntry {
  std::string key;
  std::string a;
  std::string b;
};

struct ReportDiff {
  std::vector<DiffEntry> changed;   // stable keys present in both, differing
  std::vector<std::string> only_a;  // stable keys missing from bundle b
  std::vector<std::string> only_b;  // stable keys missing from bundle a

  bool identical() const {
    return changed.empty() && only_a.empty() && only_b.empty();
  }
  // True when no changed entry's key starts with the prefix.
  bool stable_under(const std::string& prefix) const;
};

// Compares the stable.* rows of two bundle summaries.  The bundles must
// come from the same model and n (input_error otherwise).
ReportDiff diff_reports(const std::string& dir_a, const std::string& dir_b);

}  // namespace grips
