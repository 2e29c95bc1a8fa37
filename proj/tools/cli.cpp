#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "lad/bundle.hpp"
#include "lad/cascade.hpp"
#include "lad/dataset.hpp"
#include "lad/errors.hpp"
#include "lad/evaluation.hpp"

namespace lad::cli {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
}

Dataset load(const RunConfig& config, std::ostream& err) {
  std::ifstream in(config.data, std::ios::binary);
  if (!in) throw IoError("cannot open " + config.data.string());
  LoadOptions options;
  options.delimiter = config.delimiter;
  options.min_population = config.min_population;
  options.source_name = config.data.string();
  auto result = load_dataset(in, RatingScale::fitch(config.fallback), options);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  if (config.train_fraction) return split_dataset(result.dataset, *config.train_fraction, config.seed);
  return std::move(result.dataset);
}

CountryRecord parse_country_values(const RunConfig& config) {
  CountryRecord record;
  record.country = "<command-line>";
  record.year = config.year;
  std::stringstream stream(config.country_values);
  std::string item;
  std::size_t column = 1;
  while (std::getline(stream, item, ',')) {
    const auto eq = item.find('=');
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (eq == std::string::npos) {
      throw ParseError("--country-values", 1, column, "expected CODE=value, got '" + item + "'");
    }
    const std::string code = trim(item.substr(0, eq));
    if (!IndicatorRegistry::builtin().contains(code)) {
      throw ParseError("--country-values", 1, column, "unknown indicator code '" + code + "'");
    }
    const std::string number = trim(item.substr(eq + 1));
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(number, &used);
      if (used != number.size()) throw std::invalid_argument(number);
    } catch (const std::exception&) {
      throw ParseError("--country-values", 1, column + eq + 1, "invalid number '" + number + "'");
    }
    record.values[code] = value;
    column += item.size() + 1;
  }
  return record;
}

CascadeModel load_model(const RunConfig& config) {
  auto model = read_model_bundle(config.model);
  model.scale = model.scale.with_fallback(config.fallback);
  return model;
}

int train(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Dataset dataset = load(config, err);
  TrainOptions options;
  options.mining = config.mining;
  options.minimize = {config.strategy, config.exact_cell_limit};
  if (!config.cutpoints.empty()) {
    std::ifstream in(config.cutpoints);
    if (!in) throw IoError("cannot open " + config.cutpoints.string());
    options.fixed_cutpoints = parse_cutpoints(in, IndicatorRegistry::builtin(), config.cutpoints.string());
  }
  int year = config.year;
  if (year == 0 && !dataset.empty()) {
    year = dataset[0].year;
    for (const auto& r : dataset.records()) {
      if (r.year != year) {
        year = 0;
        break;
      }
    }
  }

  const CascadeModel model = train_cascade(dataset, options, year);
  const fs::path prefix = config.out.empty() ? fs::path("model") : config.out;
  auto written = write_model_bundle(model, prefix);
  if (dataset.has_split()) {
    fs::path split_path = prefix;
    split_path += ".split.csv";
    std::ostringstream canonical;
    write_dataset(canonical, dataset);
    write_text(split_path, canonical.str());
    written.push_back(split_path);
  }

  std::size_t patterns = 0;
  for (const auto& stage : model.stages) patterns += stage.patterns.size();
  out << "trained " << model.stages.size() << " stages, " << patterns << " patterns on "
      << dataset.training().size() << " records\n";
  for (const auto& path : written) out << "wrote " << path.string() << '\n';

  if (!model.fully_covered()) {
    for (const auto& stage : model.log) {
      if (!stage.complete()) {
        err << (config.require_full_coverage ? "error: " : "warning: ") << model.scale.label(stage.rank)
            << " stage leaves " << stage.uncovered.size() << " positive record(s) uncovered\n";
      }
    }
    if (config.require_full_coverage) return kCoverageFailure;
  }
  return kOk;
}

void print_verdict_row(std::ostream& out, const CountryRecord& record, const Verdict& verdict,
                       const RatingScale& scale, bool suggestion) {
  out << record.country << ',' << record.year << ',';
  if (!suggestion) out << record.rating.value_or("") << ',';
  out << verdict.label(scale) << ',' << verdict.stage << ','
      << (verdict.pattern ? std::to_string(*verdict.pattern + 1) : "") << ','
      << (verdict.fallback ? "yes" : "no") << '\n';
}

int classify_or_suggest(const RunConfig& config, std::ostream& out, std::ostream& err, bool suggest) {
  if (config.country_values.empty() && config.data.empty()) {
    throw std::invalid_argument("either --data or --country-values is required");
  }
  const CascadeModel model = load_model(config);
  std::ostringstream buffer;
  if (!config.country_values.empty()) {
    const auto record = parse_country_values(config);
    const auto verdict = suggest ? suggest_rating(model, record) : classify(model, record);
    buffer << verdict.label(model.scale);
    if (verdict.stage > 0) {
      buffer << "\tstage=" << model.scale.label(verdict.stage) << " pattern=" << (*verdict.pattern + 1);
    } else if (verdict.fallback) {
      buffer << "\tfallback";
    }
    if (suggest) buffer << "\t(suggested)";
    buffer << '\n';
  } else if (!config.data.empty()) {
    const Dataset dataset = load(config, err);
    buffer << (suggest ? "country,year,suggested,stage,pattern,fallback\n"
                       : "country,year,observed,predicted,stage,pattern,fallback\n");
    for (const auto& record : dataset.records()) {
      if (suggest && record.is_rated()) continue;
      const auto verdict = suggest ? suggest_rating(model, record) : classify(model, record);
      print_verdict_row(buffer, record, verdict, model.scale, suggest);
    }
  }
  if (config.out.empty()) {
    out << buffer.str();
  } else {
    write_text(config.out, buffer.str());
    out << "wrote " << config.out.string() << '\n';
  }
  return kOk;
}

int evaluate_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const CascadeModel model = load_model(config);
  const Dataset dataset = load(config, err);
  const auto report = evaluate(model, dataset);
  const std::string text = format_report_text(report);
  const std::string json = format_report_json(report);
  if (config.out.empty()) {
    out << (config.json ? json : text);
  } else {
    fs::path text_path = config.out;
    text_path += ".txt";
    fs::path json_path = config.out;
    json_path += ".json";
    write_text(text_path, text);
    write_text(json_path, json);
    out << "wrote " << text_path.string() << "\nwrote " << json_path.string() << '\n';
  }
  return kOk;
}

int import_tree(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto source = read_text(config.file);
  auto imported = import_decision_tree(source, RatingScale::fitch(config.fallback), config.year,
                                       config.import_mode, IndicatorRegistry::builtin(), config.file.string());
  for (const auto& note : imported.notes) {
    err << config.file.string() << ':' << note.line << ':' << note.column << ": " << to_string(note.kind)
        << ": " << note.message << '\n';
  }
  const fs::path prefix = config.out.empty() ? fs::path("model") : config.out;
  for (const auto& path : write_model_bundle(imported.model, prefix)) out << "wrote " << path.string() << '\n';
  return kOk;
}

int export_tree(const RunConfig& config, std::ostream& out) {
  const auto text = export_decision_tree(load_model(config));
  if (config.out.empty()) {
    out << text;
  } else {
    write_text(config.out, text);
    out << "wrote " << config.out.string() << '\n';
  }
  return kOk;
}

int report_keyvars(const RunConfig& config, std::ostream& out) {
  const auto text = format_key_variables(key_variables(load_model(config)));
  if (config.out.empty()) {
    out << text;
  } else {
    write_text(config.out, text);
    out << "wrote " << config.out.string() << '\n';
  }
  return kOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.mining.check();
    switch (config.command) {
      case Command::Train: return train(config, out, err);
      case Command::Classify: return classify_or_suggest(config, out, err, false);
      case Command::Suggest: return classify_or_suggest(config, out, err, true);
      case Command::Evaluate: return evaluate_command(config, out, err);
      case Command::ImportTree: return import_tree(config, out, err);
      case Command::ExportTree: return export_tree(config, out);
      case Command::ReportKeyvars: return report_keyvars(config, out);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const ContradictionError& e) {
    err << "error: " << e.what() << '\n';
    return kContradiction;
  } catch (const CoverageError& e) {
    err << "error: " << e.what() << '\n';
    return kCoverageFailure;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Logical Analysis of Data for ordinal sovereign rating models", "ladrating"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI/TOML file with option defaults")->envname("LADRATING_CONFIG");

  const std::map<std::string, FallbackPolicy> fallbacks{{"fallback-to-last", FallbackPolicy::FallbackToLast},
                                                        {"unclassified", FallbackPolicy::Unclassified}};
  const std::map<std::string, CoverStrategy> strategies{{"auto", CoverStrategy::Automatic},
                                                        {"exact", CoverStrategy::Exact},
                                                        {"greedy", CoverStrategy::Greedy}};
  const std::map<std::string, PrevalenceMode> modes{{"per-pattern", PrevalenceMode::PerPattern},
                                                    {"per-dnf", PrevalenceMode::PerDnf}};
  std::string fallback_name = "fallback-to-last";
  std::string strategy_name = "auto";
  std::string mode_name = "per-pattern";
  std::string delimiter = ",";
  double train_fraction = 0.0;
  double min_population = 0.0;
  bool strict = false;
  bool all_patterns = false;
  bool no_relax = false;

  auto add_fallback = [&](CLI::App* sub) {
    sub->add_option("--fallback", fallback_name, "Records no stage accepts: fallback-to-last or unclassified")
        ->check(CLI::IsMember({"fallback-to-last", "unclassified"}))
        ->capture_default_str();
  };
  auto add_data = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--data", config.data, "Delimited data file with a header row");
    if (required) opt->required();
    sub->add_option("--delimiter", delimiter, "Field delimiter")->capture_default_str();
    sub->add_option("--min-population", min_population, "Drop rows whose population column is below this");
    sub->add_option("--train-fraction", train_fraction, "Stratified train share in (0,1); no split when omitted");
    sub->add_option("--seed", config.seed, "Split seed")->capture_default_str();
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", config.model, "Model bundle prefix or .tree file")->required();
  };

  auto* train_cmd = app.add_subcommand("train", "Train a cascade and write a model bundle");
  add_data(train_cmd, true);
  train_cmd->add_option("--year", config.year, "Year recorded in the model (0: infer from data)")
      ->capture_default_str();
  train_cmd->add_option("--degree", config.mining.max_degree, "Highest pattern degree")->capture_default_str();
  train_cmd->add_option("--prevalence", config.mining.min_prevalence, "Minimum prevalence")->capture_default_str();
  train_cmd->add_option("--homogeneity", config.mining.min_homogeneity, "Minimum homogeneity")
      ->capture_default_str();
  train_cmd->add_option("--coverage", config.mining.dnf_coverage_target, "Share of positives each DNF must cover")
      ->capture_default_str();
  train_cmd->add_option("--relax", config.mining.relaxation_schedule,
                        "Prevalence floors tried when coverage falls short (0: one record)")
      ->delimiter(',')
      ->capture_default_str();
  train_cmd->add_option("--prevalence-mode", mode_name, "per-pattern or per-dnf")
      ->check(CLI::IsMember({"per-pattern", "per-dnf"}))
      ->capture_default_str();
  train_cmd->add_flag("--no-relax", no_relax, "Never lower the prevalence floor");
  train_cmd->add_flag("--all-patterns", all_patterns, "Keep non-prime patterns during enumeration");
  train_cmd->add_option("--strategy", strategy_name, "Cut-point minimization: auto, exact or greedy")
      ->check(CLI::IsMember({"auto", "exact", "greedy"}))
      ->capture_default_str();
  train_cmd->add_option("--exact-limit", config.exact_cell_limit, "Largest incidence matrix solved exactly")
      ->capture_default_str();
  train_cmd->add_option("--cutpoints", config.cutpoints, "Use these cut-points verbatim (indicator,threshold)");
  train_cmd->add_flag("--require-full-coverage", config.require_full_coverage,
                      "Exit with a coverage failure when a stage leaves positives uncovered");
  train_cmd->add_option("--out", config.out, "Bundle prefix")->capture_default_str();
  add_fallback(train_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "Rate records with a model");
  auto* suggest_cmd = app.add_subcommand("suggest", "Suggest ratings for unrated records");
  for (auto* sub : {classify_cmd, suggest_cmd}) {
    add_model(sub);
    add_data(sub, false);
    sub->add_option("--country-values", config.country_values, "One record as CODE=value pairs, e.g. \"U=80,G=60000\"");
    sub->add_option("--year", config.year, "Year of the --country-values record")->capture_default_str();
    sub->add_option("--out", config.out, "Output file (stdout when omitted)");
    add_fallback(sub);
  }

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a model against labeled data");
  add_model(evaluate_cmd);
  add_data(evaluate_cmd, true);
  evaluate_cmd->add_option("--out", config.out, "Write <out>.txt and <out>.json");
  evaluate_cmd->add_flag("--json", config.json, "Print the structured report instead of the table");
  add_fallback(evaluate_cmd);

  auto* import_cmd = app.add_subcommand("import-tree", "Read a published decision tree into a model bundle");
  import_cmd->add_option("--file", config.file, "Decision-tree text")->required();
  import_cmd->add_option("--year", config.year, "Year of the tree")->capture_default_str();
  import_cmd->add_flag("--strict", strict, "Reject damaged numbers, codes and parentheses instead of repairing");
  import_cmd->add_option("--out", config.out, "Bundle prefix")->capture_default_str();
  add_fallback(import_cmd);

  auto* export_cmd = app.add_subcommand("export-tree", "Print a model as decision-tree text");
  add_model(export_cmd);
  export_cmd->add_option("--out", config.out, "Output file (stdout when omitted)");

  auto* keyvars_cmd = app.add_subcommand("report-keyvars", "Indicator frequency per stage and class group");
  add_model(keyvars_cmd);
  keyvars_cmd->add_option("--out", config.out, "Output file (stdout when omitted)");

  std::vector<std::string> argv_storage{"ladrating"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (delimiter.size() != 1) {
    err << "error: --delimiter must be a single character\n";
    return kUsage;
  }
  config.delimiter = delimiter.front();
  config.fallback = fallbacks.at(fallback_name);
  config.strategy = strategies.at(strategy_name);
  config.mining.prevalence_mode = modes.at(mode_name);
  config.mining.prime_only = !all_patterns;
  if (no_relax) config.mining.relaxation_schedule.clear();
  config.import_mode = strict ? ImportMode::Strict : ImportMode::Lenient;
  if (train_fraction != 0.0) config.train_fraction = train_fraction;
  if (min_population != 0.0) config.min_population = min_population;

  if (train_cmd->parsed()) config.command = Command::Train;
  else if (classify_cmd->parsed()) config.command = Command::Classify;
  else if (suggest_cmd->parsed()) config.command = Command::Suggest;
  else if (evaluate_cmd->parsed()) config.command = Command::Evaluate;
  else if (import_cmd->parsed()) config.command = Command::ImportTree;
  else if (export_cmd->parsed()) config.command = Command::ExportTree;
  else config.command = Command::ReportKeyvars;
  (void)keyvars_cmd;

  return run(config, out, err);
}

}  // namespace lad::cli
