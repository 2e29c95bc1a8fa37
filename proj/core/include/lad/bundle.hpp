#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lad/cascade.hpp"
#include "lad/decision_tree.hpp"

namespace lad {

// A model bundle is <prefix>.tree (decision-tree text) next to <prefix>.json
// (year, fallback policy, provenance). Trained models also get <prefix>.log.

struct BundlePaths {
  std::filesystem::path tree;
  std::filesystem::path sidecar;
  std::filesystem::path log;

  static BundlePaths from_prefix(const std::filesystem::path& prefix);
};

/// JSON sidecar text: year, scale, fallback, provenance.
std::string format_provenance(const CascadeModel& model);
/// Human-readable training log: per-stage counts, relaxations, uncovered
/// positives, cut-points.
std::string format_training_log(const CascadeModel& model);

/// Writes the tree and sidecar (and the log when the model has one).
/// Returns the files written. Throws Error on I/O failure.
std::vector<std::filesystem::path> write_model_bundle(const CascadeModel& model,
                                                      const std::filesystem::path& prefix);

/// Accepts either the prefix or the .tree path. The sidecar is optional;
/// without it the year is 0 and the default scale is used.
CascadeModel read_model_bundle(const std::filesystem::path& path);

}  // namespace lad
