#include "catstream.h"

#include <charconv>
#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "catstream/baselines.hpp"
#include "catstream/clusterer.hpp"
#include "catstream/csv.hpp"
#include "catstream/datagen.hpp"
#include "catstream/evaluation.hpp"
#include "catstream/json_io.hpp"

using nlohmann::json;
namespace cats = catstream;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cats::StreamSchema schema_from_json(const json& j) {
  cats::StreamSchema schema;
  for (const json& n : j.at("names")) schema.names.push_back(n.get<std::string>());
  if (j.contains("kinds")) {
    for (const json& k : j.at("kinds"))
      schema.kinds.push_back(k.get<std::string>() == "numeric"
                                 ? cats::AttrKind::Numeric
                                 : cats::AttrKind::Categorical);
  } else {
    schema.kinds.assign(schema.names.size(), cats::AttrKind::Categorical);
  }
  if (j.contains("missing_token"))
    schema.missing_token = j.at("missing_token").get<std::string>();
  if (j.contains("label_column") && !j.at("label_column").is_null())
    schema.label_column = j.at("label_column").get<std::string>();
  schema.validate();
  return schema;
}

json schema_to_json(const cats::StreamSchema& schema) {
  json j;
  j["names"] = schema.names;
  json kinds = json::array();
  for (cats::AttrKind k : schema.kinds)
    kinds.push_back(k == cats::AttrKind::Numeric ? "numeric" : "categorical");
  j["kinds"] = std::move(kinds);
  j["missing_token"] = schema.missing_token;
  if (schema.label_column) j["label_column"] = *schema.label_column;
  return j;
}

using Clock = std::chrono::steady_clock;

}  // namespace

struct cs_clusterer {
  std::string algorithm;
  std::string missing_token = "?";
  std::vector<cats::AttrKind> kinds;

  std::optional<cats::StreamClusterer> stream;
  std::optional<cats::SqueezerClusterer> squeezer;

  // kmodes
  int k = 0;
  int chunk_size = 0;
  int max_iter = 100;
  std::vector<cats::Record> buffer;
  std::optional<cats::KModesResult> kmodes_result;

  std::vector<cats::AssignmentOutcome> outcomes;
  double elapsed_ms = 0.0;
  bool finished = false;

  cats::Record to_record(const char* const* cells, size_t n) const {
    cats::Record r;
    r.reserve(n);
    for (size_t j = 0; j < n; ++j) {
      if (cells[j] == nullptr || missing_token == cells[j]) {
        r.push_back(cats::Cell::missing());
        continue;
      }
      const std::string field = cells[j];
      if (j < kinds.size() && kinds[j] == cats::AttrKind::Numeric) {
        double v = 0.0;
        auto [ptr, ec] =
            std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || ptr != field.data() + field.size())
          throw std::invalid_argument("invalid numeric value '" + field + "'");
        r.push_back(cats::Cell::num(v));
      } else {
        r.push_back(cats::Cell::tok(field));
      }
    }
    return r;
  }
};

struct cs_reader {
  std::ifstream file;
  std::unique_ptr<cats::CsvReader> reader;
  std::vector<std::string> row_storage;
  std::vector<const char*> row_ptrs;
  std::string label_storage;
};

extern "C" {

const char* cs_version(void) { return "0.1.0"; }

const char* cs_last_error(void) { return g_last_error.c_str(); }

void cs_string_free(char* s) { std::free(s); }

cs_clusterer* cs_clusterer_new(const char* config_json) {
  try {
    if (!config_json) throw std::invalid_argument("null config");
    const json j = json::parse(config_json);
    auto h = std::make_unique<cs_clusterer>();
    h->algorithm = j.value("algorithm", std::string("streamclucd"));
    h->missing_token = j.value("missing_token", std::string("?"));

    if (j.contains("schema")) {
      for (const json& k : j.at("schema"))
        h->kinds.push_back(k.get<std::string>() == "numeric"
                               ? cats::AttrKind::Numeric
                               : cats::AttrKind::Categorical);
    } else if (j.contains("attrs")) {
      h->kinds.assign(j.at("attrs").get<std::size_t>(),
                      cats::AttrKind::Categorical);
    } else {
      throw std::invalid_argument("config needs \"schema\" or \"attrs\"");
    }
    const double st =
        j.value("sim_threshold", static_cast<double>(h->kinds.size()) / 2.0);

    if (h->algorithm == "streamclucd") {
      cats::ClustererConfig cfg;
      cfg.schema = h->kinds;
      cfg.epsilon = j.value("epsilon", 0.001);
      cfg.support = j.value("support", 0.0);
      cfg.sim_threshold = st;
      if (j.contains("max_clusters") && !j.at("max_clusters").is_null())
        cfg.max_clusters = j.at("max_clusters").get<std::int64_t>();
      if (j.contains("bin_width") && !j.at("bin_width").is_null())
        cfg.bin_width = j.at("bin_width").get<double>();
      cfg.missing_policy = j.value("missing_policy", std::string("ignore")) ==
                                   std::string("value")
                               ? cats::MissingPolicy::AsValue
                               : cats::MissingPolicy::Ignore;
      cfg.balance_beta = j.value("balance_beta", 0.0);
      h->stream.emplace(cfg);
    } else if (h->algorithm == "squeezer") {
      h->squeezer.emplace(h->kinds.size(), st);
    } else if (h->algorithm == "kmodes") {
      h->k = j.at("k").get<int>();
      h->chunk_size = j.value("chunk_size", 0);
      h->max_iter = j.value("max_iter", 100);
      if (h->k < 1) throw std::invalid_argument("k must be positive");
    } else {
      throw std::invalid_argument("unknown algorithm: " + h->algorithm);
    }
    return h.release();
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

void cs_clusterer_free(cs_clusterer* h) { delete h; }

int cs_clusterer_push(cs_clusterer* h, const char* const* cells, size_t n,
                      int64_t* cluster_index, int* created_new,
                      double* best_similarity) {
  if (!h || !cells) {
    set_error("null argument");
    return CS_ERR_INVALID_ARGUMENT;
  }
  if (h->finished) {
    set_error("push after finish");
    return CS_ERR_STATE;
  }
  try {
    cats::Record record = h->to_record(cells, n);
    cats::AssignmentOutcome o;
    o.record_index = static_cast<std::int64_t>(h->outcomes.size());
    if (h->algorithm == "kmodes") {
      for (cats::Cell& c : record)
        if (c.is_missing()) c = cats::Cell::tok(cats::kMissingToken);
      h->buffer.push_back(std::move(record));
      o.cluster_index = -1;  // resolved at finish
    } else {
      const auto start = Clock::now();
      o = h->stream ? h->stream->process(record) : h->squeezer->process(record);
      h->elapsed_ms +=
          std::chrono::duration<double, std::milli>(Clock::now() - start)
              .count();
      o.record_index = static_cast<std::int64_t>(h->outcomes.size());
      if (o.rejected) {
        // Not recorded: record_count counts accepted records only.
        set_error(o.error);
        return CS_ERR_ROW;
      }
    }
    if (cluster_index) *cluster_index = o.cluster_index;
    if (created_new) *created_new = o.created_new ? 1 : 0;
    if (best_similarity) *best_similarity = o.best_similarity;
    h->outcomes.push_back(std::move(o));
    return CS_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return CS_ERR_INVALID_ARGUMENT;
  }
}

int cs_clusterer_finish(cs_clusterer* h) {
  if (!h) {
    set_error("null handle");
    return CS_ERR_INVALID_ARGUMENT;
  }
  if (h->finished) return CS_OK;
  h->finished = true;
  if (h->algorithm != "kmodes") return CS_OK;
  try {
    const auto start = Clock::now();
    cats::KModesResult res =
        h->chunk_size > 0
            ? cats::chunked_kmodes_stream(h->buffer, h->k, h->chunk_size,
                                          h->max_iter)
            : cats::kmodes_fit(h->buffer, h->k, h->max_iter);
    h->elapsed_ms +=
        std::chrono::duration<double, std::milli>(Clock::now() - start)
            .count();
    for (std::size_t i = 0; i < res.assignments.size(); ++i)
      h->outcomes[i].cluster_index = res.assignments[i];
    h->kmodes_result = std::move(res);
    return CS_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return CS_ERR_INVALID_ARGUMENT;
  }
}

int64_t cs_clusterer_record_count(const cs_clusterer* h) {
  return h ? static_cast<int64_t>(h->outcomes.size()) : 0;
}

int64_t cs_clusterer_cluster_count(const cs_clusterer* h) {
  if (!h) return 0;
  if (h->stream) return static_cast<int64_t>(h->stream->model().cluster_count());
  if (h->squeezer)
    return static_cast<int64_t>(h->squeezer->model().clusters.size());
  return h->kmodes_result
             ? static_cast<int64_t>(h->kmodes_result->modes.size())
             : 0;
}

int64_t cs_clusterer_entry_count(const cs_clusterer* h) {
  if (!h) return 0;
  if (h->stream) return h->stream->model().entry_count();
  if (h->squeezer) return h->squeezer->model().entry_count();
  return 0;
}

int cs_clusterer_assignment(const cs_clusterer* h, int64_t record_index,
                            int64_t* cluster_index, int* created_new,
                            double* best_similarity) {
  if (!h || record_index < 0 ||
      record_index >= static_cast<int64_t>(h->outcomes.size())) {
    set_error("record index out of range");
    return CS_ERR_INVALID_ARGUMENT;
  }
  const auto& o = h->outcomes[static_cast<std::size_t>(record_index)];
  if (cluster_index) *cluster_index = o.cluster_index;
  if (created_new) *created_new = o.created_new ? 1 : 0;
  if (best_similarity) *best_similarity = o.best_similarity;
  return CS_OK;
}

char* cs_clusterer_summary_json(const cs_clusterer* h) {
  if (!h) {
    set_error("null handle");
    return nullptr;
  }
  try {
    json j;
    if (h->stream) {
      j = json::parse(cats::summary_json(h->stream->model(), nullptr));
    } else if (h->squeezer) {
      const auto& model = h->squeezer->model();
      j["k"] = model.clusters.size();
      j["N"] = model.total_seen;
      j["total_entries"] = model.entry_count();
      j["prunings"] = 0;
    } else {
      j["k"] = h->kmodes_result ? h->kmodes_result->modes.size() : 0;
      j["N"] = h->buffer.size();
      j["iterations"] = h->kmodes_result ? h->kmodes_result->iterations : 0;
    }
    j["algorithm"] = h->algorithm;
    j["elapsed_ms"] = h->elapsed_ms;
    return dup_string(j.dump(2));
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

char* cs_clusterer_model_json(const cs_clusterer* h) {
  if (!h) {
    set_error("null handle");
    return nullptr;
  }
  try {
    if (h->stream) return dup_string(cats::model_json(h->stream->model()));
    json j;
    if (h->squeezer) {
      const auto& model = h->squeezer->model();
      j["N"] = model.total_seen;
      j["m"] = model.arity;
      json clusters = json::array();
      for (const auto& cluster : model.clusters) {
        json c;
        c["size"] = cluster.size;
        json attrs = json::array();
        for (const auto& h_j : cluster.attrs) {
          json entries = json::array();
          for (const auto& [value, f] : h_j)
            entries.push_back({value, f, 0});
          attrs.push_back(std::move(entries));
        }
        c["attributes"] = std::move(attrs);
        clusters.push_back(std::move(c));
      }
      j["clusters"] = std::move(clusters);
    } else {
      json modes = json::array();
      if (h->kmodes_result)
        for (const auto& mode : h->kmodes_result->modes)
          modes.push_back({{"values", mode.values}, {"weight", mode.weight}});
      j["modes"] = std::move(modes);
    }
    return dup_string(j.dump(2));
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

cs_reader* cs_reader_new(const char* path, const char* schema_json) {
  try {
    if (!path) throw std::invalid_argument("null path");
    std::optional<cats::StreamSchema> schema;
    if (schema_json && *schema_json)
      schema = schema_from_json(json::parse(schema_json));
    auto h = std::make_unique<cs_reader>();
    if (std::string(path) == "-") {
      h->reader = std::make_unique<cats::CsvReader>(std::cin, schema);
    } else {
      h->file.open(path);
      if (!h->file) throw std::runtime_error(std::string("cannot open ") + path);
      h->reader = std::make_unique<cats::CsvReader>(h->file, schema);
    }
    return h.release();
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

void cs_reader_free(cs_reader* h) { delete h; }

size_t cs_reader_arity(const cs_reader* h) {
  return h && h->reader ? h->reader->schema().arity() : 0;
}

char* cs_reader_schema_json(const cs_reader* h) {
  if (!h || !h->reader) {
    set_error("null handle");
    return nullptr;
  }
  return dup_string(schema_to_json(h->reader->schema()).dump(2));
}

int cs_reader_next(cs_reader* h, const char* const** cells, size_t* n,
                   const char** label) {
  if (!h || !h->reader || !cells || !n) {
    set_error("null argument");
    return CS_ERR_INVALID_ARGUMENT;
  }
  try {
    auto row = h->reader->next();
    if (!row) return 0;
    if (row->error) {
      set_error(*row->error);
      return CS_ERR_ROW;
    }
    h->row_storage = std::move(row->raw);
    h->row_ptrs.clear();
    for (const std::string& s : h->row_storage) h->row_ptrs.push_back(s.c_str());
    *cells = h->row_ptrs.data();
    *n = h->row_ptrs.size();
    if (label) {
      if (row->label) {
        h->label_storage = *row->label;
        *label = h->label_storage.c_str();
      } else {
        *label = nullptr;
      }
    }
    return 1;
  } catch (const std::exception& e) {
    set_error(e.what());
    return CS_ERR_IO;
  }
}

char* cs_generate_csv(const char* spec_json, char** metadata_json_out) {
  try {
    if (!spec_json) throw std::invalid_argument("null spec");
    const json j = json::parse(spec_json);
    cats::GenSpec spec;
    spec.rows = j.at("rows").get<std::int64_t>();
    spec.attrs = j.at("attrs").get<int>();
    spec.classes = j.at("classes").get<int>();
    spec.domain_size = j.value("domain_size", 0);
    spec.purity = j.value("purity", 0.9);
    spec.seed = j.value("seed", static_cast<std::uint64_t>(0));
    const cats::GeneratedData data = cats::generate(spec);
    std::ostringstream csv;
    cats::write_generated_csv(csv, data);
    if (metadata_json_out)
      *metadata_json_out = dup_string(cats::gen_metadata_json(spec, data));
    return dup_string(csv.str());
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

char* cs_accuracy_json(const int64_t* assignments, const char* const* labels,
                       size_t n) {
  try {
    if (!assignments || !labels) throw std::invalid_argument("null argument");
    std::vector<std::int64_t> a(assignments, assignments + n);
    std::vector<std::string> l;
    l.reserve(n);
    for (size_t i = 0; i < n; ++i) l.emplace_back(labels[i]);
    return dup_string(cats::eval_report_json(cats::accuracy(a, l)));
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

char* cs_sweep_json(const char* spec_json) {
  try {
    if (!spec_json) throw std::invalid_argument("null spec");
    const json j = json::parse(spec_json);
    const std::string input = j.at("input").get<std::string>();
    std::optional<cats::StreamSchema> schema;
    if (j.contains("schema") && !j.at("schema").is_null())
      schema = schema_from_json(j.at("schema"));
    if (j.contains("label_column")) {
      if (!schema) {
        // Infer the header, then re-open with the label column set.
        std::ifstream probe(input);
        if (!probe) throw std::runtime_error("cannot open " + input);
        cats::CsvReader header_only(probe, std::nullopt);
        schema = header_only.schema();
      }
      schema->label_column = j.at("label_column").get<std::string>();
    }
    if (!schema || !schema->label_column)
      throw std::invalid_argument("sweep needs a label column");

    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open " + input);
    cats::CsvReader reader(in, schema);
    std::vector<cats::Record> records;
    std::vector<std::string> labels;
    while (auto row = reader.next()) {
      if (row->error) throw std::runtime_error(*row->error);
      records.push_back(std::move(row->record));
      labels.push_back(row->label.value_or(""));
    }

    cats::ClustererConfig base;
    base.schema = reader.schema().attribute_kinds();
    if (j.contains("base")) {
      const json& b = j.at("base");
      base.epsilon = b.value("epsilon", base.epsilon);
      base.support = b.value("support", base.support);
      if (b.contains("bin_width")) base.bin_width = b.at("bin_width").get<double>();
      if (b.contains("max_clusters"))
        base.max_clusters = b.at("max_clusters").get<std::int64_t>();
      if (b.value("missing_policy", std::string("ignore")) == "value")
        base.missing_policy = cats::MissingPolicy::AsValue;
      base.balance_beta = b.value("balance_beta", 0.0);
    }

    std::vector<cats::SweepRun> grid;
    for (const json& r : j.at("runs")) {
      cats::SweepRun run;
      run.algorithm = r.at("algorithm").get<std::string>();
      run.epsilon = r.value("epsilon", base.epsilon);
      run.support = r.value("support", base.support);
      run.sim_threshold = r.value(
          "sim_threshold", static_cast<double>(base.schema.size()) / 2.0);
      run.chunk_size = r.value("chunk_size", 0);
      run.max_iter = r.value("max_iter", 100);
      grid.push_back(std::move(run));
    }
    return dup_string(
        cats::sweep_rows_json(cats::sweep(grid, records, labels, base)));
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

}  // extern "C"
