#include "catstream/baselines.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace catstream {

std::int64_t ExactCluster::entry_count() const {
  std::int64_t total = 0;
  for (const auto& h : attrs) total += static_cast<std::int64_t>(h.size());
  return total;
}

double ExactCluster::similarity(const Record& y) const {
  std::int64_t mass = 0;
  for (std::size_t j = 0; j < attrs.size(); ++j) {
    if (y[j].is_missing()) continue;
    auto it = attrs[j].find(y[j].token);
    if (it != attrs[j].end()) mass += it->second;
  }
  return static_cast<double>(mass) / static_cast<double>(size);
}

std::int64_t SqueezerModel::entry_count() const {
  std::int64_t total = 0;
  for (const auto& c : clusters) total += c.entry_count();
  return total;
}

SqueezerClusterer::SqueezerClusterer(std::size_t arity, double sim_threshold)
    : sim_threshold_(sim_threshold) {
  model_.arity = arity;
}

AssignmentOutcome SqueezerClusterer::process(const Record& record) {
  AssignmentOutcome o;
  o.record_index = model_.total_seen;
  if (record.size() != model_.arity) {
    o.rejected = true;
    o.error = "record arity mismatch";
    return o;
  }
  std::size_t target = 0;
  bool create = model_.clusters.empty();
  if (!create) {
    std::size_t best = 0;
    double best_sim = -1.0;
    for (std::size_t i = 0; i < model_.clusters.size(); ++i) {
      const double sim = model_.clusters[i].similarity(record);
      if (sim > best_sim) {
        best_sim = sim;
        best = i;
      }
    }
    o.best_similarity = best_sim;
    if (best_sim > sim_threshold_) {
      target = best;
    } else {
      create = true;
    }
  }
  if (create) {
    model_.clusters.emplace_back(model_.arity);
    target = model_.clusters.size() - 1;
    o.created_new = true;
  }
  ExactCluster& cluster = model_.clusters[target];
  ++cluster.size;
  for (std::size_t j = 0; j < record.size(); ++j) {
    if (record[j].is_missing()) continue;
    ++cluster.attrs[j][record[j].token];
  }
  ++model_.total_seen;
  o.cluster_index = static_cast<std::int64_t>(target);
  return o;
}

std::pair<SqueezerModel, std::vector<AssignmentOutcome>> squeezer_run(
    std::size_t arity, double sim_threshold, const RecordSource& next) {
  SqueezerClusterer clusterer(arity, sim_threshold);
  std::vector<AssignmentOutcome> outcomes;
  std::int64_t index = 0;
  while (auto rec = next()) {
    AssignmentOutcome o = clusterer.process(*rec);
    o.record_index = index++;
    outcomes.push_back(std::move(o));
  }
  return {clusterer.model(), std::move(outcomes)};
}

std::pair<SqueezerModel, std::vector<AssignmentOutcome>> squeezer_run(
    std::size_t arity, double sim_threshold,
    const std::vector<Record>& records) {
  std::size_t i = 0;
  return squeezer_run(arity, sim_threshold, [&]() -> std::optional<Record> {
    if (i >= records.size()) return std::nullopt;
    return records[i++];
  });
}

namespace {

std::int64_t mode_distance(const Mode& mode, const Record& r) {
  std::int64_t d = 0;
  for (std::size_t j = 0; j < mode.values.size(); ++j) {
    if (!r[j].is_token())
      throw std::invalid_argument("k-modes requires token-only records");
    if (mode.values[j] != r[j].token) ++d;
  }
  return d;
}

std::size_t count_distinct(const std::vector<Record>& records) {
  std::set<std::vector<std::string>> seen;
  for (const Record& r : records) {
    std::vector<std::string> key;
    key.reserve(r.size());
    for (const Cell& c : r) {
      if (!c.is_token())
        throw std::invalid_argument("k-modes requires token-only records");
      key.push_back(c.token);
    }
    seen.insert(std::move(key));
  }
  return seen.size();
}

}  // namespace

KModesResult weighted_kmodes_fit(const std::vector<Record>& records,
                                 const std::vector<std::int64_t>& weights,
                                 int k, int max_iter) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (records.size() != weights.size())
    throw std::invalid_argument("records/weights length mismatch");
  if (count_distinct(records) < static_cast<std::size_t>(k))
    throw std::invalid_argument("fewer than k distinct records");
  const std::size_t m = records.front().size();
  const std::size_t n = records.size();

  // First k distinct records seed the modes.
  std::vector<Mode> modes;
  std::set<std::vector<std::string>> seen;
  for (const Record& r : records) {
    std::vector<std::string> values;
    values.reserve(m);
    for (const Cell& c : r) values.push_back(c.token);
    if (seen.insert(values).second) {
      modes.push_back(Mode{std::move(values), 1});
      if (modes.size() == static_cast<std::size_t>(k)) break;
    }
  }

  std::vector<std::int64_t> assignments(n, -1);
  int iterations = 0;
  for (int iter = 0; iter < max_iter; ++iter) {
    ++iterations;
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      std::int64_t best_d = mode_distance(modes[0], records[i]);
      for (std::size_t c = 1; c < modes.size(); ++c) {
        const std::int64_t d = mode_distance(modes[c], records[i]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assignments[i] != static_cast<std::int64_t>(best)) {
        assignments[i] = static_cast<std::int64_t>(best);
        changed = true;
      }
    }
    if (!changed) break;

    // Mode update: per attribute, the most frequent value weighted by record
    // multiplicity; frequency ties pick the smallest value.
    std::vector<std::vector<std::map<std::string, std::int64_t>>> counts(
        modes.size(), std::vector<std::map<std::string, std::int64_t>>(m));
    std::vector<std::int64_t> cluster_weight(modes.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(assignments[i]);
      cluster_weight[c] += weights[i];
      for (std::size_t j = 0; j < m; ++j)
        counts[c][j][records[i][j].token] += weights[i];
    }
    std::vector<bool> reseeded(n, false);
    for (std::size_t c = 0; c < modes.size(); ++c) {
      if (cluster_weight[c] > 0) {
        for (std::size_t j = 0; j < m; ++j) {
          const auto& freq = counts[c][j];
          auto best_it = freq.begin();
          for (auto it = freq.begin(); it != freq.end(); ++it)
            if (it->second > best_it->second) best_it = it;
          modes[c].values[j] = best_it->first;
        }
        modes[c].weight = cluster_weight[c];
      } else {
        // Empty cluster: reseed with the record farthest from its own mode.
        std::size_t far = 0;
        std::int64_t far_d = -1;
        for (std::size_t i = 0; i < n; ++i) {
          if (reseeded[i]) continue;
          const std::int64_t d =
              mode_distance(modes[static_cast<std::size_t>(assignments[i])],
                            records[i]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        reseeded[far] = true;
        for (std::size_t j = 0; j < m; ++j)
          modes[c].values[j] = records[far][j].token;
        modes[c].weight = 1;
      }
    }
  }

  return KModesResult{std::move(modes), std::move(assignments), iterations};
}

KModesResult kmodes_fit(const std::vector<Record>& records, int k,
                        int max_iter) {
  return weighted_kmodes_fit(records,
                             std::vector<std::int64_t>(records.size(), 1), k,
                             max_iter);
}

KModesResult chunked_kmodes_stream(const RecordSource& next, int k,
                                   int chunk_size, int max_iter) {
  if (chunk_size < k)
    throw std::invalid_argument("chunk_size must be at least k");

  std::vector<Record> mode_records;       // retained chunk modes, as records
  std::vector<std::int64_t> mode_weights;
  std::vector<std::int64_t> record_mode;  // record -> retained-mode index
  int chunks = 0;
  KModesResult single_chunk_result;

  std::vector<Record> chunk;
  chunk.reserve(static_cast<std::size_t>(chunk_size));
  bool done = false;
  while (!done) {
    auto rec = next();
    if (rec)
      chunk.push_back(std::move(*rec));
    else
      done = true;
    if (chunk.size() == static_cast<std::size_t>(chunk_size) ||
        (done && !chunk.empty())) {
      const int k_eff = static_cast<int>(std::min<std::size_t>(
          static_cast<std::size_t>(k), count_distinct(chunk)));
      KModesResult res = kmodes_fit(chunk, k_eff, max_iter);
      const auto base = static_cast<std::int64_t>(mode_records.size());
      std::vector<std::int64_t> local_index(res.modes.size(), -1);
      std::vector<std::int64_t> sizes(res.modes.size(), 0);
      for (std::int64_t a : res.assignments) ++sizes[static_cast<std::size_t>(a)];
      std::int64_t kept = 0;
      for (std::size_t c = 0; c < res.modes.size(); ++c) {
        if (sizes[c] == 0) continue;
        Record r;
        r.reserve(res.modes[c].values.size());
        for (const std::string& v : res.modes[c].values)
          r.push_back(Cell::tok(v));
        mode_records.push_back(std::move(r));
        mode_weights.push_back(sizes[c]);
        local_index[c] = base + kept++;
      }
      for (std::int64_t a : res.assignments)
        record_mode.push_back(local_index[static_cast<std::size_t>(a)]);
      ++chunks;
      single_chunk_result = std::move(res);
      chunk.clear();
    }
  }

  if (chunks == 0) throw std::invalid_argument("empty stream");
  if (chunks == 1) return single_chunk_result;

  const int k_final = static_cast<int>(std::min<std::size_t>(
      static_cast<std::size_t>(k), count_distinct(mode_records)));
  KModesResult final_res =
      weighted_kmodes_fit(mode_records, mode_weights, k_final, max_iter);

  KModesResult out;
  out.modes = final_res.modes;
  out.iterations = final_res.iterations;
  out.assignments.reserve(record_mode.size());
  for (std::int64_t mi : record_mode)
    out.assignments.push_back(
        final_res.assignments[static_cast<std::size_t>(mi)]);

  // Final mode weights aggregate the chunk weights they absorbed.
  std::vector<std::int64_t> agg(out.modes.size(), 0);
  for (std::size_t i = 0; i < mode_records.size(); ++i)
    agg[static_cast<std::size_t>(final_res.assignments[i])] += mode_weights[i];
  for (std::size_t c = 0; c < out.modes.size(); ++c) out.modes[c].weight = agg[c];
  return out;
}

KModesResult chunked_kmodes_stream(const std::vector<Record>& records, int k,
                                   int chunk_size, int max_iter) {
  std::size_t i = 0;
  return chunked_kmodes_stream(
      [&]() -> std::optional<Record> {
        if (i >= records.size()) return std::nullopt;
        return records[i++];
      },
      k, chunk_size, max_iter);
}

}  // namespace catstream
