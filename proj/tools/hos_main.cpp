// hos — command-line front end for the hours-of-service analysis pipeline.
//
// Subcommands:
//   generate     synthesize a compliant activity log corpus (+ ground truth)
//   label        annotate an activity CSV with regulatory contexts
//   infractions  evaluate constraint tests and relaxation findings
//   clusterize   embed labelled days and cluster them
//   sweep        score method x k combinations over the embedded days
//   profile      fit driver profiles over day-category frequencies
//
// Exit codes: 0 success, 1 internal error, 2 input validation failure.
// Diagnostics go to stderr as JSON lines.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hos/activity_log.hpp"
#include "hos/clustering.hpp"
#include "hos/day_encoder.hpp"
#include "hos/embedding.hpp"
#include "hos/generator.hpp"
#include "hos/infractions.hpp"
#include "hos/labeller.hpp"
#include "hos/mixture.hpp"
#include "hos/profiler.hpp"
#include "hos/regulation.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kInternalError = 1;
constexpr int kInputError = 2;

void diagnostic(const std::string& level, const std::string& message,
                const json& extra = json::object()) {
  json line = extra;
  line["level"] = level;
  line["message"] = message;
  std::cerr << line.dump() << "\n";
}

[[noreturn]] void fail_input(const std::string& message, const json& extra = json::object()) {
  diagnostic("error", message, extra);
  std::exit(kInputError);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_input("cannot open file", {{"path", path}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_input("cannot open file for writing", {{"path", path}});
  out << content;
  if (!out) fail_input("write failed", {{"path", path}});
}

// Shared configuration file. Every key is optional; flags override it.
struct PipelineConfig {
  hos::RegulationParameters regulation;
  std::vector<hos::ConstraintTest> tests = hos::builtin_tests();
  std::vector<int> epsilons = {1, 2, 5, 10};
  hos::EmbeddingHyperparams embedding;
  hos::ClusterMethod method = hos::ClusterMethod::DensityHier;
  hos::ClusterParams cluster_params;
  std::vector<int> k_range = {1, 2, 3, 4, 5, 6};
  std::map<int, std::string> interpretations;  // profile id -> text
  std::map<int, std::string> descriptions;     // cluster id -> text
  std::optional<std::uint64_t> seed;
};

std::map<int, std::string> parse_id_text_map(const json& node, const std::string& key) {
  std::map<int, std::string> out;
  if (!node.is_object())
    throw hos::ConfigError(key + " must be an object mapping ids to strings");
  for (const auto& [id_text, value] : node.items()) {
    std::size_t used = 0;
    int id = 0;
    try {
      id = std::stoi(id_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != id_text.size())
      throw hos::ConfigError(key + " key is not an integer: " + id_text);
    if (!value.is_string()) throw hos::ConfigError(key + "[" + id_text + "] must be a string");
    out[id] = value.get<std::string>();
  }
  return out;
}

PipelineConfig load_config(const std::string& path) {
  PipelineConfig config;
  if (path.empty()) return config;
  json root;
  try {
    root = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw hos::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw hos::ConfigError("config root must be a JSON object");
  for (const auto& [key, value] : root.items()) {
    if (key == "regulation") {
      config.regulation = hos::parameters_from_json_text(value.dump());
    } else if (key == "tests") {
      config.tests = hos::tests_from_json_text(json{{"tests", value}}.dump());
    } else if (key == "epsilons") {
      if (!value.is_array()) throw hos::ConfigError("epsilons must be an array of integers");
      config.epsilons.clear();
      for (const auto& e : value) {
        if (!e.is_number_integer()) throw hos::ConfigError("epsilons must be integers");
        config.epsilons.push_back(e.get<int>());
      }
    } else if (key == "embedding") {
      if (!value.is_object()) throw hos::ConfigError("embedding must be an object");
      for (const auto& [hp, v] : value.items()) {
        if (hp == "dims")
          config.embedding.dims = v.get<std::size_t>();
        else if (hp == "epochs")
          config.embedding.epochs = v.get<int>();
        else if (hp == "negatives")
          config.embedding.negatives = v.get<int>();
        else if (hp == "learning_rate")
          config.embedding.learning_rate = v.get<double>();
        else if (hp == "infer_epochs")
          config.embedding.infer_epochs = v.get<int>();
        else
          throw hos::ConfigError("unknown embedding key: " + hp);
      }
    } else if (key == "clustering") {
      if (!value.is_object()) throw hos::ConfigError("clustering must be an object");
      for (const auto& [ck, v] : value.items()) {
        if (ck == "method")
          config.method = hos::cluster_method_from_string(v.get<std::string>());
        else if (ck == "k")
          config.cluster_params.k = v.get<int>();
        else if (ck == "min_cluster_size")
          config.cluster_params.min_cluster_size = v.get<int>();
        else if (ck == "min_samples")
          config.cluster_params.min_samples = v.get<int>();
        else
          throw hos::ConfigError("unknown clustering key: " + ck);
      }
    } else if (key == "k_range") {
      if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
          !value[1].is_number_integer())
        throw hos::ConfigError("k_range must be [low, high]");
      config.k_range.clear();
      for (int k = value[0].get<int>(); k <= value[1].get<int>(); ++k)
        config.k_range.push_back(k);
    } else if (key == "interpretations") {
      config.interpretations = parse_id_text_map(value, "interpretations");
    } else if (key == "descriptions") {
      config.descriptions = parse_id_text_map(value, "descriptions");
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !value.is_number_integer())
        throw hos::ConfigError("seed must be an integer");
      config.seed = value.get<std::uint64_t>();
    } else {
      throw hos::ConfigError("unknown config key: " + key);
    }
  }
  return config;
}

// Stochastic stages demand an explicit seed so reruns are reproducible.
std::uint64_t resolve_seed(const PipelineConfig& config, const std::optional<std::uint64_t>& flag,
                           bool nondeterministic) {
  if (flag) return *flag;
  if (config.seed) return *config.seed;
  if (nondeterministic) {
    std::random_device rd;
    std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    diagnostic("warning", "running nondeterministically", {{"seed", seed}});
    return seed;
  }
  fail_input("this stage is randomized: pass --seed or opt out with --nondeterministic");
}

std::vector<hos::DriverLog> parse_log_checked(const std::string& path, bool fill_gaps) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_input("cannot open file", {{"path", path}});
  hos::ParseOptions options;
  options.fill_gaps = fill_gaps;
  try {
    return hos::parse_log(in, options);
  } catch (const hos::InputError& e) {
    fail_input(e.what(), {{"path", path}, {"row", e.row()}, {"driver", e.driver()}});
  }
}

std::vector<hos::LabeledActivity> read_labelled_checked(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_input("cannot open file", {{"path", path}});
  try {
    return hos::read_labelled_csv(in);
  } catch (const hos::InputError& e) {
    fail_input(e.what(), {{"path", path}, {"row", e.row()}, {"driver", e.driver()}});
  }
}

// Splits flat labelled rows back into per-driver runs (labels are stored
// grouped by driver; order inside a driver is the log order).
std::map<std::string, std::vector<hos::LabeledActivity>> split_by_driver(
    const std::vector<hos::LabeledActivity>& labels) {
  std::map<std::string, std::vector<hos::LabeledActivity>> out;
  for (const auto& row : labels) out[row.record.driver_id].push_back(row);
  return out;
}

hos::DriverLog log_from_labels(const std::string& driver,
                               const std::vector<hos::LabeledActivity>& labels) {
  hos::DriverLog log;
  log.driver_id = driver;
  for (const auto& row : labels) log.records.push_back(row.record);
  return log;
}

// ---------------------------------------------------------------- generate

int cmd_generate(const std::string& config_path, int drivers, int weeks,
                 const std::string& mix_text, std::optional<std::uint64_t> seed_flag,
                 bool nondeterministic, const std::string& out_path,
                 const std::string& truth_path, const std::vector<std::string>& inject_specs) {
  PipelineConfig config = load_config(config_path);
  std::uint64_t seed = resolve_seed(config, seed_flag, nondeterministic);

  std::vector<double> mix(hos::kTemplateCount, 1.0);
  if (!mix_text.empty()) {
    mix.clear();
    std::istringstream in(mix_text);
    std::string part;
    while (std::getline(in, part, ',')) {
      try {
        mix.push_back(std::stod(part));
      } catch (const std::exception&) {
        fail_input("--mix expects comma-separated numbers", {{"value", mix_text}});
      }
    }
  }

  hos::GeneratedCorpus corpus;
  try {
    corpus = hos::generate_corpus(drivers, weeks, mix, seed);
  } catch (const std::invalid_argument& e) {
    fail_input(e.what());
  }

  // --inject kind:driver:week:day:magnitude, applied in order.
  json injected = json::array();
  for (const std::string& text : inject_specs) {
    std::vector<std::string> parts;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() != 5)
      fail_input("--inject expects kind:driver:week:day:magnitude", {{"value", text}});
    hos::InjectionSpec spec;
    try {
      spec.kind = hos::injection_kind_from_string(parts[0]);
      spec.driver = parts[1];
      spec.week = std::stoi(parts[2]);
      spec.day = std::stoi(parts[3]);
      spec.magnitude = std::stoi(parts[4]);
    } catch (const std::exception& e) {
      fail_input(std::string("bad --inject value: ") + e.what(), {{"value", text}});
    }
    try {
      hos::ExpectedFinding finding = hos::inject(corpus, spec);
      injected.push_back({{"kind", hos::to_string(spec.kind)},
                          {"driver", finding.driver},
                          {"infraction_type", finding.infraction_type},
                          {"first_start", hos::format_timestamp(finding.first_start)},
                          {"last_end", hos::format_timestamp(finding.last_end)},
                          {"epsilon", finding.epsilon}});
    } catch (const std::invalid_argument& e) {
      fail_input(e.what(), {{"value", text}});
    }
  }

  std::ostringstream csv;
  hos::serialize(corpus.logs, csv);
  write_file(out_path, csv.str());
  if (!truth_path.empty()) {
    json truth = json::parse(hos::truth_to_json(corpus));
    if (!injected.empty()) truth["injections"] = injected;
    write_file(truth_path, truth.dump(2) + "\n");
  }
  diagnostic("info", "corpus written",
             {{"drivers", drivers}, {"weeks", weeks}, {"path", out_path}, {"seed", seed}});
  return kOk;
}

// ------------------------------------------------------------------- label

int cmd_label(const std::string& config_path, const std::string& in_path,
              const std::string& out_path, bool fill_gaps, bool no_merge) {
  PipelineConfig config = load_config(config_path);
  std::vector<hos::DriverLog> logs = parse_log_checked(in_path, fill_gaps);

  std::vector<hos::LabeledActivity> all;
  for (const hos::DriverLog& raw : logs) {
    hos::DriverLog log = no_merge ? raw : hos::merge_contiguous(raw);
    std::vector<hos::LabeledActivity> labels = hos::label_log(log, config.regulation);
    all.insert(all.end(), labels.begin(), labels.end());
  }
  std::ostringstream out;
  hos::write_labelled_csv(all, out);
  write_file(out_path, out.str());
  diagnostic("info", "labelled log written", {{"drivers", logs.size()}, {"path", out_path}});
  return kOk;
}

// ------------------------------------------------------------- infractions

int cmd_infractions(const std::string& config_path, const std::string& in_path,
                    const std::string& report_path, const std::string& annotated_path,
                    const std::vector<int>& epsilon_flags) {
  PipelineConfig config = load_config(config_path);
  if (!epsilon_flags.empty()) config.epsilons = epsilon_flags;

  std::vector<hos::LabeledActivity> labels = read_labelled_checked(in_path);
  auto per_driver = split_by_driver(labels);

  std::vector<hos::DriverReportInput> inputs;
  std::vector<std::vector<hos::LabeledActivity>> storage;
  storage.reserve(per_driver.size());
  for (auto& [driver, rows] : per_driver) {
    storage.push_back(std::move(rows));
    std::vector<hos::LabeledActivity>& mine = storage.back();
    hos::DriverReportInput input;
    input.driver = driver;
    input.infractions = hos::evaluate_tests(mine, config.tests, config.regulation);
    if (!config.epsilons.empty()) {
      hos::DriverLog log = log_from_labels(driver, mine);
      input.findings = hos::epsilon_sweep(log, config.regulation, config.epsilons);
    }
    inputs.push_back(std::move(input));
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) inputs[i].labels = &storage[i];

  write_file(report_path, hos::render_report_json(inputs));
  if (!annotated_path.empty()) {
    std::vector<hos::LabeledActivity> all;
    for (const auto& rows : storage) all.insert(all.end(), rows.begin(), rows.end());
    std::ostringstream out;
    hos::write_labelled_csv(all, out, /*include_infraction_column=*/true);
    write_file(annotated_path, out.str());
  }
  std::size_t total = 0;
  for (const auto& input : inputs) total += input.infractions.size();
  diagnostic("info", "infraction report written",
             {{"drivers", inputs.size()}, {"infractions", total}, {"path", report_path}});
  return kOk;
}

// ----------------------------------------------------- shared embedding step

struct EmbeddedCorpus {
  std::vector<hos::DayDocument> docs;
  std::vector<std::vector<double>> vectors;
  hos::InfractionCodebook codebook;
  hos::EmbeddingModel model;
};

EmbeddedCorpus embed_labelled(const std::string& in_path, const PipelineConfig& config,
                              std::uint64_t seed, bool joint, bool include_infractions) {
  std::vector<hos::LabeledActivity> labels = read_labelled_checked(in_path);
  hos::EncodedCorpora corpora = hos::encode_corpus(labels);

  EmbeddedCorpus out;
  out.codebook = corpora.codebook;
  if (include_infractions || joint) {
    // Joint space: legal and illegal days trained together.
    out.docs = corpora.legal;
    out.docs.insert(out.docs.end(), corpora.illegal.begin(), corpora.illegal.end());
  } else {
    out.docs = corpora.legal;
  }
  if (out.docs.size() < 2) fail_input("need >= 2 documents", {{"documents", out.docs.size()}});

  try {
    out.model = hos::train_embedding(out.docs, seed, config.embedding);
  } catch (const std::invalid_argument& e) {
    fail_input(e.what());
  }
  out.vectors = out.model.doc_vectors;
  return out;
}

// -------------------------------------------------------------- clusterize

int cmd_clusterize(const std::string& config_path, const std::string& in_path,
                   const std::string& out_path, const std::string& model_path,
                   const std::string& method_flag, int k_flag,
                   std::optional<std::uint64_t> seed_flag, bool nondeterministic, bool joint,
                   bool include_infractions) {
  PipelineConfig config = load_config(config_path);
  std::uint64_t seed = resolve_seed(config, seed_flag, nondeterministic);
  if (!method_flag.empty()) config.method = hos::cluster_method_from_string(method_flag);
  if (k_flag > 0) config.cluster_params.k = k_flag;

  EmbeddedCorpus embedded = embed_labelled(in_path, config, seed, joint, include_infractions);

  hos::ClusterAssignment assignment;
  try {
    assignment = hos::cluster(embedded.vectors, config.method, config.cluster_params, seed);
  } catch (const std::invalid_argument& e) {
    fail_input(e.what());
  }

  json scores_node;
  try {
    hos::PartitionScores scores = hos::score(embedded.vectors, assignment);
    scores_node = {{"silhouette", scores.silhouette},
                   {"calinski_harabasz", scores.calinski_harabasz},
                   {"davies_bouldin", scores.davies_bouldin}};
  } catch (const std::invalid_argument& e) {
    diagnostic("warning", std::string("partition not scorable: ") + e.what());
    scores_node = nullptr;
  }

  std::vector<hos::ClusterReportEntry> report = hos::decode_centroids(
      assignment, embedded.vectors, embedded.docs, config.descriptions, &embedded.codebook);

  json root;
  root["method"] = assignment.method;
  root["k"] = assignment.k;
  root["params"] = assignment.params;
  root["scores"] = scores_node;
  root["clusters"] = json::array();
  for (const auto& entry : report) {
    json words = json::array();
    for (const auto& word : entry.medoid_decoded) {
      json w = {{"activity", hos::to_string(word.kind)},
                {"day_type", hos::to_string(word.day_type)},
                {"break_type", hos::to_string(word.break_type)},
                {"token", hos::to_string(word.token)}};
      if (!word.infraction.empty()) w["infraction"] = word.infraction;
      words.push_back(w);
    }
    root["clusters"].push_back({{"cluster", entry.cluster},
                                {"size", entry.size},
                                {"medoid", entry.medoid},
                                {"medoid_words", words},
                                {"description", entry.description}});
  }
  root["assignments"] = json::array();
  for (std::size_t i = 0; i < embedded.docs.size(); ++i) {
    const hos::DayDocument& doc = embedded.docs[i];
    root["assignments"].push_back({{"driver", doc.driver},
                                   {"week", doc.week},
                                   {"day", doc.day},
                                   {"legal", doc.legal},
                                   {"cluster", assignment.labels[i]}});
  }
  write_file(out_path, root.dump(2) + "\n");

  if (!model_path.empty()) {
    std::ostringstream dump;
    hos::write_model(embedded.model, dump);
    write_file(model_path, dump.str());
  }
  diagnostic("info", "clusters written",
             {{"documents", embedded.docs.size()},
              {"clusters", assignment.k},
              {"method", assignment.method},
              {"path", out_path}});
  return kOk;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const std::string& config_path, const std::string& in_path,
              const std::string& out_path, const std::string& methods_flag, int k_min, int k_max,
              std::optional<std::uint64_t> seed_flag, bool nondeterministic, bool joint,
              bool include_infractions) {
  PipelineConfig config = load_config(config_path);
  std::uint64_t seed = resolve_seed(config, seed_flag, nondeterministic);

  std::vector<hos::ClusterMethod> methods;
  if (methods_flag.empty()) {
    methods = {hos::ClusterMethod::DensityHier,   hos::ClusterMethod::GaussianMixture,
               hos::ClusterMethod::AggloAverage,  hos::ClusterMethod::AggloComplete,
               hos::ClusterMethod::AggloWard,     hos::ClusterMethod::KmeansCosine};
  } else {
    std::istringstream in(methods_flag);
    std::string part;
    while (std::getline(in, part, ',')) {
      try {
        methods.push_back(hos::cluster_method_from_string(part));
      } catch (const std::invalid_argument& e) {
        fail_input(e.what(), {{"value", methods_flag}});
      }
    }
  }
  std::vector<int> ks;
  for (int k = k_min; k <= k_max; ++k) ks.push_back(k);

  EmbeddedCorpus embedded = embed_labelled(in_path, config, seed, joint, include_infractions);
  std::vector<hos::SweepRow> rows = hos::sweep(embedded.vectors, methods, ks, seed);
  write_file(out_path, hos::sweep_to_csv(rows));
  diagnostic("info", "sweep written", {{"rows", rows.size()}, {"path", out_path}});
  return kOk;
}

// ----------------------------------------------------------------- profile

int cmd_profile(const std::string& config_path, const std::string& in_path,
                const std::string& out_path, const std::string& table_path,
                const std::string& selection_path, int profiles_flag,
                std::optional<std::uint64_t> seed_flag, bool nondeterministic,
                bool include_infractions) {
  PipelineConfig config = load_config(config_path);
  std::uint64_t seed = resolve_seed(config, seed_flag, nondeterministic);

  json root;
  try {
    root = json::parse(read_file(in_path));
  } catch (const json::exception& e) {
    fail_input(std::string("input is not valid JSON: ") + e.what(), {{"path", in_path}});
  }
  if (!root.is_object() || !root.contains("assignments") || !root["assignments"].is_array())
    fail_input("expected a clusters file with an \"assignments\" array", {{"path", in_path}});

  std::vector<hos::DayAssignment> days;
  for (const json& node : root["assignments"]) {
    hos::DayAssignment day;
    try {
      day.driver = node.at("driver").get<std::string>();
      day.week = node.at("week").get<int>();
      day.day = node.at("day").get<int>();
      day.cluster = node.at("cluster").get<int>();
      day.legal = node.value("legal", true);
    } catch (const json::exception& e) {
      fail_input(std::string("bad assignment entry: ") + e.what(), {{"path", in_path}});
    }
    days.push_back(std::move(day));
  }

  hos::FrequencyTable table;
  try {
    table = hos::build_frequency_table(days, /*drop_illegal_days=*/!include_infractions);
  } catch (const std::invalid_argument& e) {
    fail_input(e.what());
  }
  for (const std::string& warning : table.warnings) diagnostic("warning", warning);
  if (!table_path.empty()) write_file(table_path, hos::frequency_table_to_csv(table));

  int components = profiles_flag;
  if (table.drivers.size() == 1 && components != 1) {
    diagnostic("warning", "single driver: forcing one profile", {{"requested", components}});
    components = 1;
  }
  hos::KSelection selection;
  bool selected = false;
  if (components <= 0) {
    std::vector<int> range;
    for (int k : config.k_range)
      if (k >= 1 && k <= static_cast<int>(table.drivers.size())) range.push_back(k);
    if (range.empty()) range.push_back(1);
    selection = hos::select_k(table, range, seed);
    selected = true;
    components = selection.recommended;
    diagnostic("info", "profile count selected by information criterion", {{"k", components}});
  }
  if (!selection_path.empty()) {
    if (!selected) {
      std::vector<int> range;
      for (int k : config.k_range)
        if (k >= 1 && k <= static_cast<int>(table.drivers.size())) range.push_back(k);
      if (range.empty()) range.push_back(1);
      selection = hos::select_k(table, range, seed);
    }
    write_file(selection_path, hos::k_selection_to_csv(selection));
  }

  try {
    hos::MixtureModel model = hos::fit_profile_mixture(table, components, seed);
    hos::ProfileSummary summary = hos::assign_profiles(model, table, config.interpretations);
    write_file(out_path, hos::profile_report_json(summary));
  } catch (const std::invalid_argument& e) {
    fail_input(e.what());
  }
  diagnostic("info", "profiles written",
             {{"drivers", table.drivers.size()}, {"profiles", components}, {"path", out_path}});
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hours-of-service log analysis pipeline"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed/--config may follow the subcommand name

  std::string config_path;
  app.add_option("--config", config_path, "pipeline configuration JSON")->expected(1);

  std::optional<std::uint64_t> seed;
  bool nondeterministic = false;
  app.add_option("--seed", seed, "seed for all stochastic stages");
  app.add_flag("--nondeterministic", nondeterministic,
               "allow randomized stages to self-seed (logged to stderr)");

  // generate
  auto* gen = app.add_subcommand("generate", "synthesize a compliant corpus");
  int gen_drivers = 10;
  int gen_weeks = 2;
  std::string gen_mix;
  std::string gen_out = "corpus.csv";
  std::string gen_truth;
  std::vector<std::string> gen_inject;
  gen->add_option("--drivers", gen_drivers, "number of drivers")->check(CLI::PositiveNumber);
  gen->add_option("--weeks", gen_weeks, "weeks per driver")->check(CLI::PositiveNumber);
  gen->add_option("--mix", gen_mix, "comma-separated day-template weights");
  gen->add_option("-o,--output", gen_out, "corpus CSV path");
  gen->add_option("--truth", gen_truth, "ground-truth JSON path");
  gen->add_option("--inject", gen_inject,
                  "infraction to inject, kind:driver:week:day:magnitude (repeatable)");

  // label
  auto* label = app.add_subcommand("label", "annotate an activity CSV");
  std::string label_in;
  std::string label_out = "labelled.csv";
  bool fill_gaps = false;
  bool no_merge = false;
  label->add_option("-i,--input", label_in, "activity CSV")->required();
  label->add_option("-o,--output", label_out, "labelled CSV path");
  label->add_flag("--fill-gaps", fill_gaps, "bridge timeline gaps with synthetic idle records");
  label->add_flag("--no-merge", no_merge, "keep consecutive same-kind records separate");

  // infractions
  auto* infr = app.add_subcommand("infractions", "evaluate constraint tests");
  std::string infr_in;
  std::string infr_report = "report.json";
  std::string infr_annotated;
  std::vector<int> infr_epsilons;
  infr->add_option("-i,--input", infr_in, "labelled CSV")->required();
  infr->add_option("-o,--output", infr_report, "report JSON path");
  infr->add_option("--annotated", infr_annotated, "annotated CSV path (adds Infraction column)");
  infr->add_option("--epsilon", infr_epsilons,
                   "relaxation minutes to sweep (repeatable; overrides config)");

  // clusterize
  auto* clus = app.add_subcommand("clusterize", "embed and cluster labelled days");
  std::string clus_in;
  std::string clus_out = "clusters.json";
  std::string clus_model;
  std::string clus_method;
  int clus_k = 0;
  bool joint = false;
  bool include_infractions = false;
  clus->add_option("-i,--input", clus_in, "labelled CSV")->required();
  clus->add_option("-o,--output", clus_out, "clusters JSON path");
  clus->add_option("--model", clus_model, "embedding model dump path");
  clus->add_option("--method", clus_method,
                   "density_hier | gaussian_mixture | agglo_average | agglo_complete | "
                   "agglo_ward | kmeans_cosine");
  clus->add_option("--clusters", clus_k, "cluster count for k-accepting methods");
  clus->add_flag("--joint", joint, "embed legal and illegal days in one space");
  clus->add_flag("--include-infractions", include_infractions,
                 "cluster illegal days too (implies a joint embedding)");

  // sweep
  auto* swp = app.add_subcommand("sweep", "score method x k combinations");
  std::string swp_in;
  std::string swp_out = "sweep.csv";
  std::string swp_methods;
  int swp_kmin = 2;
  int swp_kmax = 12;
  bool swp_joint = false;
  bool swp_include = false;
  swp->add_option("-i,--input", swp_in, "labelled CSV")->required();
  swp->add_option("-o,--output", swp_out, "sweep CSV path");
  swp->add_option("--methods", swp_methods, "comma-separated method names (default: all)");
  swp->add_option("--k-min", swp_kmin, "smallest k");
  swp->add_option("--k-max", swp_kmax, "largest k");
  swp->add_flag("--joint", swp_joint, "embed legal and illegal days in one space");
  swp->add_flag("--include-infractions", swp_include, "sweep over illegal days too");

  // profile
  auto* prof = app.add_subcommand("profile", "fit driver profiles from clustered days");
  std::string prof_in;
  std::string prof_out = "profiles.json";
  std::string prof_table;
  std::string prof_selection;
  int prof_k = 0;
  bool prof_include = false;
  prof->add_option("-i,--input", prof_in, "clusters JSON (from clusterize)")->required();
  prof->add_option("-o,--output", prof_out, "profile report JSON path");
  prof->add_option("--table", prof_table, "frequency table CSV path");
  prof->add_option("--selection", prof_selection, "profile-count diagnostics CSV path");
  prof->add_option("--profiles", prof_k, "profile count (0 = select by information criterion)");
  prof->add_flag("--include-infractions", prof_include, "count illegal days in the table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(config_path, gen_drivers, gen_weeks, gen_mix, seed, nondeterministic,
                          gen_out, gen_truth, gen_inject);
    if (label->parsed()) return cmd_label(config_path, label_in, label_out, fill_gaps, no_merge);
    if (infr->parsed())
      return cmd_infractions(config_path, infr_in, infr_report, infr_annotated, infr_epsilons);
    if (clus->parsed())
      return cmd_clusterize(config_path, clus_in, clus_out, clus_model, clus_method, clus_k, seed,
                            nondeterministic, joint, include_infractions);
    if (swp->parsed())
      return cmd_sweep(config_path, swp_in, swp_out, swp_methods, swp_kmin, swp_kmax, seed,
                       nondeterministic, swp_joint, swp_include);
    if (prof->parsed())
      return cmd_profile(config_path, prof_in, prof_out, prof_table, prof_selection, prof_k, seed,
                         nondeterministic, prof_include);
  } catch (const hos::ConfigError& e) {
    diagnostic("error", e.what());
    return kInputError;
  } catch (const hos::InputError& e) {
    diagnostic("error", e.what(), {{"row", e.row()}, {"driver", e.driver()}});
    return kInputError;
  } catch (const std::exception& e) {
    diagnostic("error", std::string("internal error: ") + e.what());
    return kInternalError;
  }
  return kOk;
}
