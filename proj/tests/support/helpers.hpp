#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "lad/cascade.hpp"
#include "lad/dataset.hpp"

namespace lad::testing {

std::filesystem::path data_file(const std::string& name);
std::string read_file(const std::filesystem::path& path);

/// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Random records whose values sit on, just above or just below the model's
/// thresholds, with some missing cells.
std::vector<CountryRecord> probe_records(const CascadeModel& model, std::size_t count, std::uint64_t seed);

/// Builds a record from "CODE=value" pairs.
CountryRecord make_record(std::string country, std::initializer_list<std::pair<const char*, double>> values,
                          std::optional<std::string> rating = std::nullopt, int year = 2012);

/// Throws std::runtime_error naming the first pattern that covers a negative
/// training record of its stage.
void assert_homogeneous(const CascadeModel& model, const Dataset& dataset);

}  // namespace lad::testing
