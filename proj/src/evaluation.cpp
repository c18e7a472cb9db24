#include "catstream/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "catstream/baselines.hpp"

namespace catstream {

EvalReport accuracy(const std::vector<std::int64_t>& assignments,
                    const std::vector<std::string>& labels) {
  if (assignments.size() != labels.size())
    throw std::invalid_argument("assignments/labels length mismatch");
  if (assignments.empty()) throw std::invalid_argument("empty input");

  std::map<std::int64_t, std::map<std::string, std::int64_t>> by_cluster;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] < 0)
      throw std::invalid_argument("negative cluster index in assignments");
    ++by_cluster[assignments[i]][labels[i]];
  }

  EvalReport report;
  report.n = static_cast<std::int64_t>(assignments.size());
  report.k = static_cast<std::int64_t>(by_cluster.size());
  std::int64_t dominated = 0;
  for (const auto& [cluster, class_counts] : by_cluster) {
    auto best = class_counts.begin();
    for (auto it = class_counts.begin(); it != class_counts.end(); ++it)
      if (it->second > best->second) best = it;
    dominated += best->second;
    report.per_cluster.push_back({cluster, best->first, best->second});
  }
  report.accuracy =
      static_cast<double>(dominated) / static_cast<double>(report.n);
  report.error = 1.0 - report.accuracy;
  report.absolute_error = report.error * static_cast<double>(report.n);
  return report;
}

MemoryReport memory_report(const ClusterModel& model) {
  MemoryReport mr;
  const double eps = model.params.epsilon;
  for (const auto& cluster : model.clusters) {
    std::vector<std::int64_t> row;
    row.reserve(cluster.num_attributes());
    const double eps_n = eps * static_cast<double>(cluster.size());
    for (std::size_t j = 0; j < cluster.num_attributes(); ++j) {
      const std::int64_t count = cluster.attribute(j).entry_count();
      row.push_back(count);
      mr.total_entries += count;
      if (eps_n >= 3.0) {
        ++mr.bound_checked;
        if (static_cast<double>(count) > std::log(eps_n) / eps)
          ++mr.bound_violations;
      }
    }
    mr.entries.push_back(std::move(row));
    mr.cluster_sizes.push_back(cluster.size());
  }
  return mr;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::size_t distinct_count(const std::vector<Record>& records) {
  std::set<std::vector<std::string>> seen;
  for (const Record& r : records) {
    std::vector<std::string> key;
    for (const Cell& c : r)
      key.push_back(c.is_token() ? c.token : std::string("\x01missing"));
    seen.insert(std::move(key));
  }
  return seen.size();
}

std::vector<std::int64_t> clean_assignments(
    const std::vector<AssignmentOutcome>& outcomes) {
  std::vector<std::int64_t> a;
  a.reserve(outcomes.size());
  for (const auto& o : outcomes) a.push_back(o.cluster_index);
  return a;
}

}  // namespace

std::vector<SweepRow> sweep(const std::vector<SweepRun>& grid,
                            const std::vector<Record>& records,
                            const std::vector<std::string>& labels,
                            const ClustererConfig& base_config) {
  if (grid.empty()) throw std::invalid_argument("empty sweep grid");

  // Squeezer cluster counts per similarity threshold, for k-modes pairing.
  std::map<double, std::int64_t> squeezer_k;
  const auto squeezer_k_for = [&](double st) {
    auto it = squeezer_k.find(st);
    if (it != squeezer_k.end()) return it->second;
    auto [model, outcomes] = squeezer_run(base_config.arity(), st, records);
    const auto k = static_cast<std::int64_t>(model.clusters.size());
    squeezer_k.emplace(st, k);
    return k;
  };

  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const SweepRun& run : grid) {
    SweepRow row;
    row.run = run;
    try {
      if (run.algorithm == "streamclucd") {
        ClustererConfig cfg = base_config;
        cfg.epsilon = run.epsilon;
        cfg.support = run.support;
        cfg.sim_threshold = run.sim_threshold;
        cfg.validate();
        const auto start = Clock::now();
        auto [model, outcomes] = run_stream(cfg, records);
        const double elapsed = ms_since(start);
        EvalReport acc = accuracy(clean_assignments(outcomes), labels);
        acc.elapsed_ms = elapsed;
        acc.total_entries = model.entry_count();
        acc.prunings = model.prune_count();
        row.report = acc;
      } else if (run.algorithm == "squeezer") {
        const auto start = Clock::now();
        auto [model, outcomes] =
            squeezer_run(base_config.arity(), run.sim_threshold, records);
        const double elapsed = ms_since(start);
        EvalReport acc = accuracy(clean_assignments(outcomes), labels);
        acc.elapsed_ms = elapsed;
        acc.total_entries = model.entry_count();
        row.report = acc;
      } else if (run.algorithm == "kmodes") {
        // k-modes can't skip missing cells, so they become a token of their
        // own for this algorithm.
        std::vector<Record> tokens = records;
        for (Record& r : tokens)
          for (Cell& c : r)
            if (c.is_missing()) c = Cell::tok(kMissingToken);
        std::int64_t k = squeezer_k_for(run.sim_threshold);
        const auto distinct =
            static_cast<std::int64_t>(distinct_count(tokens));
        if (k > distinct) k = distinct;  // cannot seed more modes than that
        row.k_used = k;
        const auto start = Clock::now();
        KModesResult res =
            run.chunk_size > 0
                ? chunked_kmodes_stream(tokens, static_cast<int>(k),
                                        run.chunk_size, run.max_iter)
                : kmodes_fit(tokens, static_cast<int>(k), run.max_iter);
        const double elapsed = ms_since(start);
        EvalReport acc = accuracy(res.assignments, labels);
        acc.elapsed_ms = elapsed;
        row.report = acc;
      } else {
        throw std::invalid_argument("unknown algorithm: " + run.algorithm);
      }
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace catstream
