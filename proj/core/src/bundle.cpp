#include "lad/bundle.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lad/errors.hpp"
#include "text.hpp"

namespace lad {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

BundlePaths BundlePaths::from_prefix(const fs::path& prefix) {
  auto with = [&](const char* ext) {
    fs::path p = prefix;
    p += ext;
    return p;
  };
  return {with(".tree"), with(".json"), with(".log")};
}

namespace {

ordered_json config_to_json(const MiningConfig& c) {
  ordered_json j;
  j["max_degree"] = c.max_degree;
  j["min_prevalence"] = c.min_prevalence;
  j["min_homogeneity"] = c.min_homogeneity;
  j["dnf_coverage_target"] = c.dnf_coverage_target;
  j["relaxation_schedule"] = c.relaxation_schedule;
  j["prevalence_mode"] = std::string(to_string(c.prevalence_mode));
  j["prime_only"] = c.prime_only;
  return j;
}

MiningConfig config_from_json(const ordered_json& j) {
  MiningConfig c;
  c.max_degree = j.value("max_degree", c.max_degree);
  c.min_prevalence = j.value("min_prevalence", c.min_prevalence);
  c.min_homogeneity = j.value("min_homogeneity", c.min_homogeneity);
  c.dnf_coverage_target = j.value("dnf_coverage_target", c.dnf_coverage_target);
  c.relaxation_schedule = j.value("relaxation_schedule", c.relaxation_schedule);
  c.prevalence_mode = j.value("prevalence_mode", std::string("per-pattern")) == "per-dnf"
                          ? PrevalenceMode::PerDnf
                          : PrevalenceMode::PerPattern;
  c.prime_only = j.value("prime_only", c.prime_only);
  return c;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string format_provenance(const CascadeModel& model) {
  ordered_json j;
  j["format"] = "ladrating-model";
  j["year"] = model.year;
  j["scale"] = std::vector<std::string>(model.scale.labels().begin(), model.scale.labels().end());
  j["fallback"] = std::string(to_string(model.scale.fallback_policy()));
  j["origin"] = model.provenance.origin;
  j["config"] = config_to_json(model.provenance.config);
  j["dataset_fingerprint"] = model.provenance.dataset_fingerprint;
  j["tool_version"] = model.provenance.tool_version;
  j["fully_covered"] = model.fully_covered();
  return j.dump(2) + "\n";
}

std::string format_training_log(const CascadeModel& model) {
  std::ostringstream out;
  out << "training log, year " << model.year << '\n';
  for (const auto& stage : model.log) {
    out << model.scale.label(stage.rank) << ": positives=" << stage.positives
        << " negatives=" << stage.negatives << " candidates=" << stage.candidate_cutpoints
        << " cutpoints=" << stage.cutpoints.size();
    if (stage.rank <= static_cast<int>(model.stages.size())) {
      out << " patterns=" << model.stage(stage.rank).patterns.size();
    }
    out << '\n';
    for (const auto& note : stage.notes) out << "  note: " << note << '\n';
    for (const auto& key : stage.uncovered) out << "  uncovered: " << key << '\n';
    for (const auto& cut : stage.cutpoints) {
      out << "  cut: " << cut.indicator << ',' << text::format_number(cut.threshold) << '\n';
    }
  }
  return out.str();
}

std::vector<fs::path> write_model_bundle(const CascadeModel& model, const fs::path& prefix) {
  const auto paths = BundlePaths::from_prefix(prefix);
  std::vector<fs::path> written;
  write_file(paths.tree, export_decision_tree(model));
  written.push_back(paths.tree);
  write_file(paths.sidecar, format_provenance(model));
  written.push_back(paths.sidecar);
  if (!model.log.empty()) {
    write_file(paths.log, format_training_log(model));
    written.push_back(paths.log);
  }
  return written;
}

CascadeModel read_model_bundle(const fs::path& path) {
  fs::path prefix = path;
  if (path.extension() == ".tree" || path.extension() == ".json") prefix.replace_extension();
  const auto paths = BundlePaths::from_prefix(prefix);
  if (!fs::exists(paths.tree)) throw IoError("model tree " + paths.tree.string() + " not found");

  RatingScale scale = RatingScale::fitch();
  int year = 0;
  std::optional<ordered_json> sidecar;
  if (fs::exists(paths.sidecar)) {
    try {
      sidecar = ordered_json::parse(read_file(paths.sidecar));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(paths.sidecar.string(), 0, 0, e.what());
    }
    year = sidecar->value("year", 0);
    auto policy = parse_fallback_policy(sidecar->value("fallback", std::string("fallback-to-last")));
    if (!policy) throw ParseError(paths.sidecar.string(), 0, 0, "unknown fallback policy");
    if (sidecar->contains("scale")) {
      scale = RatingScale((*sidecar)["scale"].get<std::vector<std::string>>(), *policy);
    } else {
      scale = scale.with_fallback(*policy);
    }
  }

  auto imported = import_decision_tree(read_file(paths.tree), scale, year, ImportMode::Strict,
                                       IndicatorRegistry::builtin(), paths.tree.string());
  CascadeModel model = std::move(imported.model);
  if (sidecar) {
    model.provenance.origin = sidecar->value("origin", model.provenance.origin);
    if (sidecar->contains("config")) model.provenance.config = config_from_json((*sidecar)["config"]);
    model.provenance.dataset_fingerprint = sidecar->value("dataset_fingerprint", std::string());
    model.provenance.tool_version = sidecar->value("tool_version", model.provenance.tool_version);
  }
  return model;
}

}  // namespace lad
