#include "helpers.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lad/decision_tree.hpp"

#ifndef LADRATING_TEST_DATA_DIR
#error "LADRATING_TEST_DATA_DIR must be defined"
#endif

namespace lad::testing {

namespace fs = std::filesystem;

fs::path data_file(const std::string& name) { return fs::path(LADRATING_TEST_DATA_DIR) / name; }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("ladrating-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ignored;
  fs::remove_all(path_, ignored);
}

std::vector<CountryRecord> probe_records(const CascadeModel& model, std::size_t count, std::uint64_t seed) {
  std::map<std::string, std::vector<double>> thresholds;
  auto collect = [&](const ClassDnf& dnf) {
    for (const auto& p : dnf.patterns) {
      for (const auto& l : p.literals) thresholds[l.indicator].push_back(l.threshold);
    }
  };
  for (const auto& stage : model.stages) collect(stage);
  if (model.residual) collect(*model.residual);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<CountryRecord> out;
  for (std::size_t i = 0; i < count; ++i) {
    CountryRecord r;
    r.country = "Probe" + std::to_string(i);
    r.year = model.year;
    for (const auto& [code, values] : thresholds) {
      const double roll = unit(rng);
      if (roll < 0.05) continue;
      std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
      const double t = values[pick(rng)];
      const double offset = (std::abs(t) + 1.0) * 0.05 * unit(rng);
      r.values[code] = roll < 0.15 ? t : (roll < 0.575 ? t + offset : t - offset);
    }
    out.push_back(std::move(r));
  }
  return out;
}

CountryRecord make_record(std::string country, std::initializer_list<std::pair<const char*, double>> values,
                          std::optional<std::string> rating, int year) {
  CountryRecord r;
  r.country = std::move(country);
  r.year = year;
  r.rating = std::move(rating);
  for (const auto& [code, value] : values) r.values[code] = value;
  return r;
}

void assert_homogeneous(const CascadeModel& model, const Dataset& dataset) {
  for (const auto& stage : model.stages) {
    for (auto i : dataset.training()) {
      const auto& record = dataset[i];
      if (*model.scale.rank(*record.rating) <= stage.rank) continue;
      for (std::size_t p = 0; p < stage.patterns.size(); ++p) {
        if (stage.patterns[p].matches(record)) {
          throw std::runtime_error("stage " + model.scale.label(stage.rank) + " pattern " + std::to_string(p + 1) +
                                   " covers negative " + record.key());
        }
      }
    }
  }
}

}  // namespace lad::testing
