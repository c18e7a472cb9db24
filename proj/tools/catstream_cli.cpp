// Command line front end. Everything algorithmic goes through the C API in
// catstream.h; this file only handles flags, files and JSON plumbing.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catstream.h"

using nlohmann::json;

namespace {

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { cs_string_free(ptr); }
  explicit operator bool() const { return ptr != nullptr; }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "catstream: " << msg << '\n';
  std::exit(1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) die("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) die("cannot write " + path);
  out << content;
  if (!out) die("failed writing " + path);
}

struct CommonIo {
  std::string input = "-";
  std::string schema_path;
  std::string labels_col;
  std::string missing_token = "?";
  std::string out_assignments;
  std::string out_summary;
  std::string out_model;
};

void add_io_flags(CLI::App* cmd, CommonIo& io) {
  cmd->add_option("--input,-i", io.input, "input CSV path, - for stdin");
  cmd->add_option("--schema", io.schema_path, "schema JSON file");
  cmd->add_option("--labels-col", io.labels_col,
                  "label column (excluded from clustering)");
  cmd->add_option("--missing-token", io.missing_token,
                  "token marking a missing cell");
  cmd->add_option("--out-assignments", io.out_assignments,
                  "assignments CSV output path");
  cmd->add_option("--out-summary", io.out_summary, "summary JSON output path");
  cmd->add_option("--out-model", io.out_model, "model dump JSON output path");
}

std::string reader_schema_json(const CommonIo& io) {
  if (io.schema_path.empty() && io.labels_col.empty() &&
      io.missing_token == "?")
    return "";
  json j;
  if (!io.schema_path.empty()) j = json::parse(read_file(io.schema_path));
  if (!io.labels_col.empty()) j["label_column"] = io.labels_col;
  if (j.contains("names")) {
    if (!j.contains("missing_token")) j["missing_token"] = io.missing_token;
    return j.dump();
  }
  // Only overrides given: the header must be inferred first, so the reader is
  // opened twice (schema probe, then the real pass). stdin cannot be re-read.
  return j.dump();
}

// Runs one streaming (or buffered) clustering pass over the input, writing
// the requested outputs. Shared by cluster / squeezer / kmodes.
int run_clustering(const CommonIo& io, json config) {
  std::string schema_spec = reader_schema_json(io);
  if (!schema_spec.empty() && !json::parse(schema_spec).contains("names")) {
    if (io.input == "-")
      die("--labels-col/--missing-token with stdin input requires a --schema file");
    cs_reader* probe = cs_reader_new(io.input.c_str(), nullptr);
    if (!probe) die(cs_last_error());
    OwnedString inferred{cs_reader_schema_json(probe)};
    cs_reader_free(probe);
    json merged = json::parse(inferred.str());
    json overrides = json::parse(schema_spec);
    for (auto& [key, value] : overrides.items()) merged[key] = value;
    schema_spec = merged.dump();
  }

  cs_reader* reader = cs_reader_new(
      io.input.c_str(), schema_spec.empty() ? nullptr : schema_spec.c_str());
  if (!reader) die(cs_last_error());

  OwnedString schema_json{cs_reader_schema_json(reader)};
  const json schema = json::parse(schema_json.str());
  const size_t arity = cs_reader_arity(reader);

  config["missing_token"] = schema.value("missing_token", io.missing_token);
  if (!config.contains("schema")) {
    json kinds = json::array();
    const json& all = schema.at("kinds");
    const json& names = schema.at("names");
    for (size_t i = 0; i < all.size(); ++i) {
      if (schema.contains("label_column") &&
          names[i] == schema["label_column"])
        continue;
      kinds.push_back(all[i]);
    }
    config["schema"] = std::move(kinds);
  }

  cs_clusterer* clusterer = cs_clusterer_new(config.dump().c_str());
  if (!clusterer) {
    cs_reader_free(reader);
    die(cs_last_error());
  }

  std::ofstream assignments_out;
  const bool write_assignments = !io.out_assignments.empty();
  if (write_assignments) {
    assignments_out.open(io.out_assignments);
    if (!assignments_out) die("cannot write " + io.out_assignments);
    assignments_out << "record_index,cluster_index,created_new,best_similarity\n";
  }

  std::vector<std::string> labels;
  std::vector<int64_t> assignments;
  const bool batch = config.value("algorithm", "streamclucd") == "kmodes";
  int64_t record_index = 0;
  int bad_rows = 0;
  for (;;) {
    const char* const* cells = nullptr;
    size_t n = 0;
    const char* label = nullptr;
    const int rc = cs_reader_next(reader, &cells, &n, &label);
    if (rc == 0) break;
    if (rc == CS_ERR_ROW) {
      std::cerr << "catstream: skipping malformed row: " << cs_last_error()
                << '\n';
      ++bad_rows;
      continue;
    }
    if (rc < 0) die(cs_last_error());

    int64_t cluster = -1;
    int created = 0;
    double sim = 0.0;
    const int prc = cs_clusterer_push(clusterer, cells, n, &cluster, &created, &sim);
    if (prc == CS_ERR_ROW) {
      std::cerr << "catstream: record " << record_index
                << " rejected: " << cs_last_error() << '\n';
      ++bad_rows;
      ++record_index;
      continue;
    }
    if (prc != CS_OK) die(cs_last_error());
    if (label) labels.emplace_back(label);
    if (!batch) {
      assignments.push_back(cluster);
      if (write_assignments)
        assignments_out << record_index << ',' << cluster << ','
                        << (created ? "true" : "false") << ','
                        << std::setprecision(15) << sim << '\n';
    }
    ++record_index;
  }

  if (cs_clusterer_finish(clusterer) != CS_OK) die(cs_last_error());
  if (batch) {
    const int64_t count = cs_clusterer_record_count(clusterer);
    for (int64_t i = 0; i < count; ++i) {
      int64_t cluster = -1;
      int created = 0;
      double sim = 0.0;
      cs_clusterer_assignment(clusterer, i, &cluster, &created, &sim);
      assignments.push_back(cluster);
      if (write_assignments)
        assignments_out << i << ',' << cluster << ','
                        << (created ? "true" : "false") << ','
                        << std::setprecision(15) << sim << '\n';
    }
  }

  OwnedString summary{cs_clusterer_summary_json(clusterer)};
  json summary_j = json::parse(summary.str());
  summary_j["malformed_rows"] = bad_rows;
  if (!labels.empty() && labels.size() == assignments.size()) {
    std::vector<const char*> label_ptrs;
    label_ptrs.reserve(labels.size());
    for (const auto& l : labels) label_ptrs.push_back(l.c_str());
    OwnedString acc{cs_accuracy_json(assignments.data(), label_ptrs.data(),
                                     labels.size())};
    if (acc) {
      const json a = json::parse(acc.str());
      summary_j["r"] = a["r"];
      summary_j["e"] = a["e"];
      summary_j["ace"] = a["ace"];
    }
  }
  const std::string summary_text = summary_j.dump(2);
  if (!io.out_summary.empty())
    write_file(io.out_summary, summary_text + "\n");
  else
    std::cout << summary_text << '\n';

  if (!io.out_model.empty()) {
    OwnedString model{cs_clusterer_model_json(clusterer)};
    if (!model) die(cs_last_error());
    write_file(io.out_model, model.str() + "\n");
  }

  cs_clusterer_free(clusterer);
  cs_reader_free(reader);
  (void)arity;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memory-bounded one-pass clustering for categorical streams"};
  app.require_subcommand(1);

  // cluster
  CommonIo cluster_io;
  double epsilon = 0.001, support = 0.0, sim_threshold = -1.0;
  double bin_width = 0.0, balance_beta = 0.0;
  std::int64_t max_clusters = 0;
  std::string missing_policy = "ignore";
  auto* cluster_cmd =
      app.add_subcommand("cluster", "one-pass lossy-histogram clustering");
  add_io_flags(cluster_cmd, cluster_io);
  cluster_cmd->add_option("--epsilon", epsilon, "lossy counting error bound");
  cluster_cmd->add_option("--support", support, "qualification support s");
  cluster_cmd->add_option("--sim-threshold", sim_threshold,
                          "similarity threshold st (default m/2)");
  cluster_cmd->add_option("--max-clusters", max_clusters,
                          "largest allowed cluster count (mc)");
  cluster_cmd->add_option("--bin-width", bin_width,
                          "equal-width bin size for numeric attributes");
  cluster_cmd
      ->add_option("--missing-policy", missing_policy,
                   "missing cells: ignore | value")
      ->check(CLI::IsMember({"ignore", "value"}));
  cluster_cmd->add_option("--balance-beta", balance_beta,
                          "balance constraint weight (0 = off)");

  // squeezer
  CommonIo squeezer_io;
  double squeezer_st = -1.0;
  auto* squeezer_cmd =
      app.add_subcommand("squeezer", "exact-histogram one-pass baseline");
  add_io_flags(squeezer_cmd, squeezer_io);
  squeezer_cmd->add_option("--sim-threshold", squeezer_st,
                           "similarity threshold st (default m/2)");

  // kmodes
  CommonIo kmodes_io;
  int k = 0, chunk_size = 0, max_iter = 100;
  auto* kmodes_cmd =
      app.add_subcommand("kmodes", "k-modes baseline (optionally chunked)");
  add_io_flags(kmodes_cmd, kmodes_io);
  kmodes_cmd->add_option("--k", k, "number of clusters")->required();
  kmodes_cmd->add_option("--chunk-size", chunk_size,
                         "records per chunk (0 = single batch)");
  kmodes_cmd->add_option("--max-iter", max_iter, "iteration cap");

  // gen
  std::int64_t rows = 0;
  int attrs = 0, classes = 0, domain_size = 0;
  double purity = 0.9;
  std::uint64_t seed = 0;
  std::string gen_out, gen_meta_out;
  auto* gen_cmd = app.add_subcommand("gen", "synthetic labeled stream");
  gen_cmd->add_option("--rows", rows, "number of records")->required();
  gen_cmd->add_option("--attrs", attrs, "number of attributes")->required();
  gen_cmd->add_option("--classes", classes, "number of classes")->required();
  gen_cmd->add_option("--domain-size", domain_size,
                      "values per attribute (default 2x classes)");
  gen_cmd->add_option("--purity", purity, "dominant-value probability");
  gen_cmd->add_option("--seed", seed, "generator seed");
  gen_cmd->add_option("--out,-o", gen_out, "output CSV path (default stdout)");
  gen_cmd->add_option("--out-meta", gen_meta_out, "metadata JSON path");

  // eval
  std::string eval_assignments, eval_out;
  CommonIo eval_io;
  auto* eval_cmd =
      app.add_subcommand("eval", "clustering accuracy of saved assignments");
  eval_cmd->add_option("--assignments", eval_assignments, "assignments CSV")
      ->required();
  eval_cmd->add_option("--input,-i", eval_io.input, "labeled input CSV");
  eval_cmd->add_option("--labels-col", eval_io.labels_col, "label column")
      ->required();
  eval_cmd->add_option("--schema", eval_io.schema_path, "schema JSON file");
  eval_cmd->add_option("--out,-o", eval_out, "report path (default stdout)");

  // sweep
  std::string grid_path, sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter grid evaluation");
  sweep_cmd->add_option("--grid", grid_path, "sweep spec JSON file")
      ->required();
  sweep_cmd->add_option("--out,-o", sweep_out, "table path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (cluster_cmd->parsed()) {
    json cfg;
    cfg["algorithm"] = "streamclucd";
    cfg["epsilon"] = epsilon;
    cfg["support"] = support;
    if (sim_threshold >= 0) cfg["sim_threshold"] = sim_threshold;
    if (max_clusters > 0) cfg["max_clusters"] = max_clusters;
    if (bin_width > 0) cfg["bin_width"] = bin_width;
    cfg["missing_policy"] = missing_policy;
    cfg["balance_beta"] = balance_beta;
    if (!cluster_io.schema_path.empty()) {
      const json s = json::parse(read_file(cluster_io.schema_path));
      if (s.contains("kinds")) {
        json kinds = json::array();
        const json names = s.value("names", json::array());
        for (size_t i = 0; i < s["kinds"].size(); ++i) {
          if (!cluster_io.labels_col.empty() && i < names.size() &&
              names[i] == cluster_io.labels_col)
            continue;
          kinds.push_back(s["kinds"][i]);
        }
        cfg["schema"] = kinds;
      }
    }
    return run_clustering(cluster_io, std::move(cfg));
  }
  if (squeezer_cmd->parsed()) {
    json cfg;
    cfg["algorithm"] = "squeezer";
    if (squeezer_st >= 0) cfg["sim_threshold"] = squeezer_st;
    return run_clustering(squeezer_io, std::move(cfg));
  }
  if (kmodes_cmd->parsed()) {
    json cfg;
    cfg["algorithm"] = "kmodes";
    cfg["k"] = k;
    cfg["chunk_size"] = chunk_size;
    cfg["max_iter"] = max_iter;
    return run_clustering(kmodes_io, std::move(cfg));
  }
  if (gen_cmd->parsed()) {
    json spec;
    spec["rows"] = rows;
    spec["attrs"] = attrs;
    spec["classes"] = classes;
    spec["domain_size"] = domain_size;
    spec["purity"] = purity;
    spec["seed"] = seed;
    char* meta = nullptr;
    OwnedString csv{cs_generate_csv(spec.dump().c_str(), &meta)};
    OwnedString meta_owned{meta};
    if (!csv) die(cs_last_error());
    if (gen_out.empty())
      std::cout << csv.str();
    else
      write_file(gen_out, csv.str());
    if (!gen_meta_out.empty()) write_file(gen_meta_out, meta_owned.str() + "\n");
    return 0;
  }
  if (eval_cmd->parsed()) {
    // Assignments CSV: pull the cluster_index column.
    std::ifstream in(eval_assignments);
    if (!in) die("cannot open " + eval_assignments);
    std::string line;
    if (!std::getline(in, line)) die("empty assignments file");
    std::vector<int64_t> assignments;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto first = line.find(',');
      const auto second = line.find(',', first + 1);
      if (first == std::string::npos || second == std::string::npos)
        die("malformed assignments line: " + line);
      assignments.push_back(std::stoll(line.substr(first + 1, second - first - 1)));
    }

    std::string schema_spec;
    {
      json j;
      if (!eval_io.schema_path.empty())
        j = json::parse(read_file(eval_io.schema_path));
      else {
        cs_reader* probe = cs_reader_new(eval_io.input.c_str(), nullptr);
        if (!probe) die(cs_last_error());
        OwnedString inferred{cs_reader_schema_json(probe)};
        cs_reader_free(probe);
        j = json::parse(inferred.str());
      }
      j["label_column"] = eval_io.labels_col;
      schema_spec = j.dump();
    }
    cs_reader* reader = cs_reader_new(eval_io.input.c_str(), schema_spec.c_str());
    if (!reader) die(cs_last_error());
    std::vector<std::string> labels;
    for (;;) {
      const char* const* cells = nullptr;
      size_t n = 0;
      const char* label = nullptr;
      const int rc = cs_reader_next(reader, &cells, &n, &label);
      if (rc == 0) break;
      if (rc < 0) die(cs_last_error());
      labels.emplace_back(label ? label : "");
    }
    cs_reader_free(reader);
    if (labels.size() != assignments.size())
      die("assignments (" + std::to_string(assignments.size()) +
          ") and labels (" + std::to_string(labels.size()) +
          ") disagree in length");
    std::vector<const char*> label_ptrs;
    for (const auto& l : labels) label_ptrs.push_back(l.c_str());
    OwnedString report{cs_accuracy_json(assignments.data(), label_ptrs.data(),
                                        labels.size())};
    if (!report) die(cs_last_error());
    if (eval_out.empty())
      std::cout << report.str() << '\n';
    else
      write_file(eval_out, report.str() + "\n");
    return 0;
  }
  if (sweep_cmd->parsed()) {
    OwnedString table{cs_sweep_json(read_file(grid_path).c_str())};
    if (!table) die(cs_last_error());
    if (sweep_out.empty())
      std::cout << table.str() << '\n';
    else
      write_file(sweep_out, table.str() + "\n");
    return 0;
  }
  return 0;
}
