#include "catstream/json_io.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace catstream {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

json config_json(const ClustererConfig& cfg) {
  json j;
  j["epsilon"] = cfg.epsilon;
  j["support"] = cfg.support;
  j["sim_threshold"] = cfg.sim_threshold;
  if (cfg.max_clusters) j["max_clusters"] = *cfg.max_clusters;
  if (cfg.bin_width) j["bin_width"] = *cfg.bin_width;
  j["missing_policy"] =
      cfg.missing_policy == MissingPolicy::Ignore ? "ignore" : "value";
  j["balance_beta"] = cfg.balance_beta;
  json kinds = json::array();
  for (AttrKind k : cfg.schema)
    kinds.push_back(k == AttrKind::Categorical ? "categorical" : "numeric");
  j["schema"] = std::move(kinds);
  return j;
}

json report_json(const EvalReport& r) {
  json j;
  j["r"] = r.accuracy;
  j["e"] = r.error;
  j["ace"] = r.absolute_error;
  j["n"] = r.n;
  j["k"] = r.k;
  j["total_entries"] = r.total_entries;
  j["prunings"] = r.prunings;
  j["elapsed_ms"] = r.elapsed_ms;
  json per = json::array();
  for (const auto& d : r.per_cluster)
    per.push_back({{"cluster", d.cluster},
                   {"dominant_label", d.label},
                   {"count", d.count}});
  j["per_cluster_dominant"] = std::move(per);
  return j;
}

}  // namespace

void write_assignments_csv(std::ostream& out,
                           const std::vector<AssignmentOutcome>& outcomes) {
  out << "record_index,cluster_index,created_new,best_similarity\n";
  for (const auto& o : outcomes) {
    out << o.record_index << ',' << o.cluster_index << ','
        << (o.created_new ? "true" : "false") << ','
        << format_double(o.best_similarity) << '\n';
  }
}

std::string summary_json(const ClusterModel& model, const EvalReport* report) {
  json j;
  j["config"] = config_json(model.config);
  j["k"] = model.cluster_count();
  j["N"] = model.total_seen;
  j["total_entries"] = model.entry_count();
  j["prunings"] = model.prune_count();
  if (report) {
    j["r"] = report->accuracy;
    j["e"] = report->error;
    j["ace"] = report->absolute_error;
    j["elapsed_ms"] = report->elapsed_ms;
  }
  return j.dump(2);
}

std::string model_json(const ClusterModel& model) {
  json j;
  j["N"] = model.total_seen;
  j["epsilon"] = model.params.epsilon;
  j["support"] = model.params.support;
  j["bucket_width"] = model.params.bucket_width;
  j["m"] = model.config.arity();
  json clusters = json::array();
  for (const auto& cluster : model.clusters) {
    json c;
    c["size"] = cluster.size();
    c["prune_count"] = cluster.prune_count();
    json attrs = json::array();
    for (std::size_t a = 0; a < cluster.num_attributes(); ++a) {
      json entries = json::array();
      for (const auto& [value, entry] : cluster.attribute(a).entries())
        entries.push_back({value, entry.f, entry.delta});
      attrs.push_back(std::move(entries));
    }
    c["attributes"] = std::move(attrs);
    clusters.push_back(std::move(c));
  }
  j["clusters"] = std::move(clusters);
  return j.dump(2);
}

ClusterModel model_from_json(const std::string& text) {
  const json j = json::parse(text);
  ClusterModel model;
  model.total_seen = j.at("N").get<std::int64_t>();
  model.params = LossyParams::make(j.at("epsilon").get<double>(),
                                   j.at("support").get<double>());
  const auto m = j.at("m").get<std::size_t>();
  model.config = ClustererConfig::categorical(
      m, model.params.epsilon, model.params.support, 0.0);
  model.bin_origins.assign(m, std::nullopt);
  for (const json& c : j.at("clusters")) {
    ClusterHistogram hist(m);
    const auto size = c.at("size").get<std::int64_t>();
    for (std::int64_t i = 0; i < size; ++i) hist.begin_record();
    const json& attrs = c.at("attributes");
    for (std::size_t a = 0; a < attrs.size(); ++a) {
      for (const json& e : attrs[a]) {
        hist.attribute(a).restore(e.at(0).get<std::string>(),
                                  e.at(1).get<std::int64_t>(),
                                  e.at(2).get<std::int64_t>());
      }
    }
    model.clusters.push_back(std::move(hist));
  }
  return model;
}

std::string eval_report_json(const EvalReport& report) {
  return report_json(report).dump(2);
}

std::string sweep_rows_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const SweepRow& row : rows) {
    json j;
    j["algorithm"] = row.run.algorithm;
    j["epsilon"] = row.run.epsilon;
    j["support"] = row.run.support;
    j["sim_threshold"] = row.run.sim_threshold;
    if (row.run.algorithm == "kmodes") {
      j["k_used"] = row.k_used;
      if (row.run.chunk_size > 0) j["chunk_size"] = row.run.chunk_size;
    }
    if (row.failed) {
      j["failed"] = true;
      j["error"] = row.error;
    } else {
      j["report"] = report_json(row.report);
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

void write_generated_csv(std::ostream& out, const GeneratedData& data) {
  if (data.records.empty()) return;
  const std::size_t m = data.records.front().size();
  for (std::size_t j = 0; j < m; ++j) out << 'a' << j << ',';
  out << "class\n";
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    for (const Cell& c : data.records[i]) out << csv_escape(c.token) << ',';
    out << class_token(data.labels[i]) << '\n';
  }
}

std::string gen_metadata_json(const GenSpec& spec, const GeneratedData& data) {
  json j;
  j["rows"] = spec.rows;
  j["attrs"] = spec.attrs;
  j["classes"] = spec.classes;
  j["domain_size"] = spec.effective_domain();
  j["purity"] = spec.purity;
  j["seed"] = spec.seed;
  j["rng"] = data.rng_id;
  return j.dump(2);
}

}  // namespace catstream
