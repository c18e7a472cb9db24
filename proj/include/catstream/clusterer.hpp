#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catstream/lossy_histogram.hpp"
#include "catstream/types.hpp"

namespace catstream {

struct ClustererConfig {
  double epsilon = 0.001;
  double support = 0.0;
  double sim_threshold = 0.0;
  std::optional<std::int64_t> max_clusters;  // mc
  std::optional<double> bin_width;           // required iff any attr is numeric
  MissingPolicy missing_policy = MissingPolicy::Ignore;
  double balance_beta = 0.0;  // 0 disables balance weighting
  std::vector<AttrKind> schema;

  std::size_t arity() const { return schema.size(); }

  /// Throws std::invalid_argument on out-of-range parameters or a numeric
  /// attribute without a bin width.
  void validate() const;

  static ClustererConfig categorical(std::size_t m, double epsilon,
                                     double support, double sim_threshold);
};

struct AssignmentOutcome {
  std::int64_t record_index = -1;
  std::int64_t cluster_index = -1;
  bool created_new = false;
  double best_similarity = 0.0;
  bool rejected = false;
  std::string error;
};

/// Full mutable clustering state. Value-semantic: copying yields a deep,
/// independent snapshot.
struct ClusterModel {
  std::vector<ClusterHistogram> clusters;  // creation order
  std::int64_t total_seen = 0;             // accepted records
  ClustererConfig config;
  LossyParams params;
  std::vector<std::optional<double>> bin_origins;  // per attribute

  std::int64_t entry_count() const;
  std::int64_t prune_count() const;
  std::size_t cluster_count() const { return clusters.size(); }
};

/// Balance-aware cluster selection score: sim * (N / (k * N_i))^beta.
/// With beta = 0 this is sim exactly.
double selection_score(double sim, std::int64_t cluster_size,
                       std::int64_t total_seen, std::size_t cluster_count,
                       double beta);

/// Token used when missing cells are treated as a categorical value.
inline constexpr const char* kMissingToken = "⟨MISSING⟩";

class StreamClusterer {
 public:
  explicit StreamClusterer(ClustererConfig config);

  /// Resolves numeric binning and the missing-value policy. Records the bin
  /// origin for a numeric attribute on first sight.
  Record preprocess(const Record& raw);

  /// One step of the main loop: preprocess, pick or create a cluster,
  /// update its histogram, prune at bucket boundaries. Arity mismatches are
  /// reported as rejected outcomes, not exceptions.
  AssignmentOutcome process(const Record& raw);

  const ClusterModel& model() const { return model_; }

  /// Deep, immutable copy of the current state.
  ClusterModel snapshot() const { return model_; }

 private:
  ClusterModel model_;
};

using RecordSource = std::function<std::optional<Record>()>;

/// Runs the whole one-pass loop over a source that is read exactly once.
std::pair<ClusterModel, std::vector<AssignmentOutcome>> run_stream(
    const ClustererConfig& config, const RecordSource& next);

/// Convenience wrapper over an in-memory dataset.
std::pair<ClusterModel, std::vector<AssignmentOutcome>> run_stream(
    const ClustererConfig& config, const std::vector<Record>& records);

}  // namespace catstream
