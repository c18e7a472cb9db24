#include "catstream/clusterer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "catstream/similarity.hpp"

namespace catstream {

void ClustererConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must be in (0,1)");
  if (!(support >= 0.0 && support < 1.0))
    throw std::invalid_argument("support must be in [0,1)");
  if (support > 0.0 && epsilon > support)
    throw std::invalid_argument("epsilon must not exceed a nonzero support");
  if (sim_threshold < 0.0)
    throw std::invalid_argument("sim_threshold must be >= 0");
  if (sim_threshold > static_cast<double>(schema.size()))
    throw std::invalid_argument("sim_threshold must not exceed the arity m");
  if (balance_beta < 0.0)
    throw std::invalid_argument("balance_beta must be >= 0");
  if (max_clusters && *max_clusters < 1)
    throw std::invalid_argument("max_clusters must be positive");
  if (schema.empty()) throw std::invalid_argument("schema must be non-empty");
  const bool any_numeric =
      std::any_of(schema.begin(), schema.end(),
                  [](AttrKind k) { return k == AttrKind::Numeric; });
  if (any_numeric && (!bin_width || *bin_width <= 0.0))
    throw std::invalid_argument(
        "a positive bin_width is required for numeric attributes");
}

ClustererConfig ClustererConfig::categorical(std::size_t m, double epsilon,
                                             double support,
                                             double sim_threshold) {
  ClustererConfig c;
  c.epsilon = epsilon;
  c.support = support;
  c.sim_threshold = sim_threshold;
  c.schema.assign(m, AttrKind::Categorical);
  c.validate();
  return c;
}

std::int64_t ClusterModel::entry_count() const {
  std::int64_t total = 0;
  for (const auto& c : clusters) total += c.entry_count();
  return total;
}

std::int64_t ClusterModel::prune_count() const {
  std::int64_t total = 0;
  for (const auto& c : clusters) total += c.prune_count();
  return total;
}

double selection_score(double sim, std::int64_t cluster_size,
                       std::int64_t total_seen, std::size_t cluster_count,
                       double beta) {
  if (beta == 0.0) return sim;
  const double weight = static_cast<double>(total_seen) /
                        (static_cast<double>(cluster_count) *
                         static_cast<double>(cluster_size));
  return sim * std::pow(weight, beta);
}

StreamClusterer::StreamClusterer(ClustererConfig config) {
  config.validate();
  model_.params = LossyParams::make(config.epsilon, config.support);
  model_.bin_origins.assign(config.arity(), std::nullopt);
  model_.config = std::move(config);
}

Record StreamClusterer::preprocess(const Record& raw) {
  if (raw.size() != model_.config.arity())
    throw std::invalid_argument("record arity mismatch");
  Record out;
  out.reserve(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) {
    const Cell& cell = raw[j];
    if (cell.is_missing()) {
      out.push_back(model_.config.missing_policy == MissingPolicy::AsValue
                        ? Cell::tok(kMissingToken)
                        : Cell::missing());
      continue;
    }
    if (cell.is_number()) {
      if (model_.config.schema[j] != AttrKind::Numeric || !model_.config.bin_width)
        throw std::invalid_argument(
            "numeric cell in attribute without binning configuration");
      if (!model_.bin_origins[j]) model_.bin_origins[j] = cell.number;
      const double origin = *model_.bin_origins[j];
      const auto bin = static_cast<std::int64_t>(
          std::floor((cell.number - origin) / *model_.config.bin_width));
      out.push_back(Cell::tok("bin:" + std::to_string(bin)));
      continue;
    }
    out.push_back(cell);
  }
  return out;
}

AssignmentOutcome StreamClusterer::process(const Record& raw) {
  AssignmentOutcome outcome;
  outcome.record_index = model_.total_seen;
  if (raw.size() != model_.config.arity()) {
    outcome.rejected = true;
    outcome.error = "record arity " + std::to_string(raw.size()) +
                    " does not match schema arity " +
                    std::to_string(model_.config.arity());
    return outcome;
  }
  const Record record = preprocess(raw);
  const auto& cfg = model_.config;
  const auto k = model_.clusters.size();

  std::size_t target = 0;
  bool create = false;
  if (k == 0) {
    create = true;
  } else {
    std::size_t best = 0;
    double best_score = -1.0;
    double best_sim = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double sim =
          histogram_similarity(model_.clusters[i], record, model_.params);
      const double score = selection_score(sim, model_.clusters[i].size(),
                                           model_.total_seen, k,
                                           cfg.balance_beta);
      if (score > best_score) {
        best_score = score;
        best_sim = sim;
        best = i;
      }
    }
    outcome.best_similarity = best_sim;
    if (best_sim > cfg.sim_threshold) {
      target = best;
    } else if (!cfg.max_clusters ||
               static_cast<std::int64_t>(k) < *cfg.max_clusters) {
      create = true;
    } else {
      target = best;  // cluster cap reached: absorb into the best candidate
    }
  }

  if (create) {
    model_.clusters.emplace_back(cfg.arity());
    target = model_.clusters.size() - 1;
    outcome.created_new = true;
  }

  ClusterHistogram& cluster = model_.clusters[target];
  cluster.begin_record();
  for (std::size_t j = 0; j < record.size(); ++j) {
    if (record[j].is_missing()) continue;
    cluster.observe(j, record[j].token, model_.params);
  }
  cluster.prune_if_boundary(model_.params);

  ++model_.total_seen;
  outcome.cluster_index = static_cast<std::int64_t>(target);
  return outcome;
}

std::pair<ClusterModel, std::vector<AssignmentOutcome>> run_stream(
    const ClustererConfig& config, const RecordSource& next) {
  StreamClusterer clusterer(config);
  std::vector<AssignmentOutcome> outcomes;
  std::int64_t index = 0;
  while (auto record = next()) {
    AssignmentOutcome o = clusterer.process(*record);
    o.record_index = index++;
    outcomes.push_back(std::move(o));
  }
  return {clusterer.snapshot(), std::move(outcomes)};
}

std::pair<ClusterModel, std::vector<AssignmentOutcome>> run_stream(
    const ClustererConfig& config, const std::vector<Record>& records) {
  std::size_t i = 0;
  return run_stream(config, [&]() -> std::optional<Record> {
    if (i >= records.size()) return std::nullopt;
    return records[i++];
  });
}

}  // namespace catstream
