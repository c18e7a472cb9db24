#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catstream/clusterer.hpp"

namespace catstream {

struct ClusterDominant {
  std::int64_t cluster = 0;
  std::string label;
  std::int64_t count = 0;  // a_i
};

struct EvalReport {
  double accuracy = 0.0;        // r
  double error = 0.0;           // e = 1 - r
  double absolute_error = 0.0;  // ace = e * n
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::vector<ClusterDominant> per_cluster;
  std::int64_t total_entries = 0;
  std::int64_t prunings = 0;
  double elapsed_ms = 0.0;
};

/// Label-based clustering accuracy: each cluster is credited with its
/// dominant class, r = sum(a_i) / n. Throws on length mismatch or empty
/// input. Rejected records (cluster index < 0) are not allowed here.
EvalReport accuracy(const std::vector<std::int64_t>& assignments,
                    const std::vector<std::string>& labels);

struct MemoryReport {
  std::int64_t total_entries = 0;
  // entries[i][j] = entry count of cluster i, attribute j
  std::vector<std::vector<std::int64_t>> entries;
  std::vector<std::int64_t> cluster_sizes;
  // One flag per (cluster, attribute) where the bound applies
  // (epsilon * N_i >= 3): entries <= (1/eps) * ln(eps * N_i).
  std::int64_t bound_checked = 0;
  std::int64_t bound_violations = 0;
};

MemoryReport memory_report(const ClusterModel& model);

/// One grid point of an experiment sweep.
struct SweepRun {
  std::string algorithm;  // "streamclucd" | "squeezer" | "kmodes"
  double epsilon = 0.001;
  double support = 0.0;
  double sim_threshold = 0.0;
  int chunk_size = 0;  // kmodes only; 0 = plain batch fit
  int max_iter = 100;
};

struct SweepRow {
  SweepRun run;
  EvalReport report;
  std::int64_t k_used = 0;  // k handed to k-modes (from the paired squeezer run)
  bool failed = false;
  std::string error;
};

/// Runs every grid point on an in-memory labeled dataset. k-modes points get
/// k from the squeezer run at the same similarity threshold (computed and
/// cached on demand); k is capped at the distinct-record count. Timing covers
/// the clustering loop only. Per-run failures are recorded and the sweep
/// continues.
std::vector<SweepRow> sweep(const std::vector<SweepRun>& grid,
                            const std::vector<Record>& records,
                            const std::vector<std::string>& labels,
                            const ClustererConfig& base_config);

}  // namespace catstream
