#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "catstream/clusterer.hpp"
#include "catstream/types.hpp"

namespace catstream {

/// One cluster of the exact-counting baseline: per-attribute exact
/// value-frequency maps.
struct ExactCluster {
  std::vector<std::unordered_map<std::string, std::int64_t>> attrs;
  std::int64_t size = 0;

  explicit ExactCluster(std::size_t m) : attrs(m) {}

  std::int64_t entry_count() const;
  double similarity(const Record& y) const;
};

struct SqueezerModel {
  std::vector<ExactCluster> clusters;
  std::int64_t total_seen = 0;
  std::size_t arity = 0;

  std::int64_t entry_count() const;
};

/// One-pass clustering with exact histograms: no pruning, no entry
/// qualification. Same assignment contract as StreamClusterer.
class SqueezerClusterer {
 public:
  SqueezerClusterer(std::size_t arity, double sim_threshold);

  AssignmentOutcome process(const Record& record);

  const SqueezerModel& model() const { return model_; }

 private:
  SqueezerModel model_;
  double sim_threshold_;
};

std::pair<SqueezerModel, std::vector<AssignmentOutcome>> squeezer_run(
    std::size_t arity, double sim_threshold, const RecordSource& next);

std::pair<SqueezerModel, std::vector<AssignmentOutcome>> squeezer_run(
    std::size_t arity, double sim_threshold,
    const std::vector<Record>& records);

/// Per-attribute most frequent value of a cluster. weight carries the number
/// of records the mode stands for in the chunked pipeline.
struct Mode {
  std::vector<std::string> values;
  std::int64_t weight = 1;
};

struct KModesResult {
  std::vector<Mode> modes;
  std::vector<std::int64_t> assignments;
  int iterations = 0;
};

/// Alternating assignment / mode-update clustering. Initial modes are the
/// first k distinct records; ties in mode computation pick the
/// lexicographically smallest value, so the result is deterministic for a
/// fixed record order. Throws if there are fewer than k distinct records.
KModesResult kmodes_fit(const std::vector<Record>& records, int k,
                        int max_iter = 100);

/// kmodes_fit with per-record multiplicities in the mode-update step.
KModesResult weighted_kmodes_fit(const std::vector<Record>& records,
                                 const std::vector<std::int64_t>& weights,
                                 int k, int max_iter = 100);

/// Chunked streaming variant: each chunk is clustered into k weighted modes,
/// the retained modes are re-clustered by weighted k-modes, and every record
/// is mapped to a final cluster through its chunk-level mode.
KModesResult chunked_kmodes_stream(const RecordSource& next, int k,
                                   int chunk_size = 1000, int max_iter = 100);

KModesResult chunked_kmodes_stream(const std::vector<Record>& records, int k,
                                   int chunk_size = 1000, int max_iter = 100);

}  // namespace catstream
