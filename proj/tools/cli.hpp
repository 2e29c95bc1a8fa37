#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lad/binarizer.hpp"
#include "lad/decision_tree.hpp"
#include "lad/pattern.hpp"
#include "lad/rating_scale.hpp"

namespace lad::cli {

enum class Command { Train, Classify, Suggest, Evaluate, ImportTree, ExportTree, ReportKeyvars };

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParseError = 2,
  kContradiction = 3,
  kCoverageFailure = 4,
  kIoError = 5,
  kDataError = 6,
};

/// Everything one invocation needs. Defaults are the published parameters.
struct RunConfig {
  Command command = Command::Train;
  std::filesystem::path data;
  std::filesystem::path model;
  std::filesystem::path file;
  std::filesystem::path out;
  std::filesystem::path cutpoints;
  std::string country_values;
  int year = 0;
  MiningConfig mining;
  CoverStrategy strategy = CoverStrategy::Automatic;
  std::size_t exact_cell_limit = 2000;
  std::optional<double> train_fraction;
  std::uint64_t seed = 1;
  FallbackPolicy fallback = FallbackPolicy::FallbackToLast;
  ImportMode import_mode = ImportMode::Lenient;
  bool require_full_coverage = false;
  bool json = false;
  char delimiter = ',';
  std::optional<double> min_population;
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses arguments (argv[0] excluded) and runs. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lad::cli
