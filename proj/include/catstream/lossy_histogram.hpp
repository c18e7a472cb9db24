#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace catstream {

/// Parameters of the lossy counting discipline, shared by every histogram of
/// a clustering run. bucket_width is always ceil(1/epsilon).
struct LossyParams {
  double epsilon = 0.001;
  double support = 0.0;
  std::int64_t bucket_width = 1000;

  /// Validates ranges and derives the bucket width. Throws
  /// std::invalid_argument on epsilon outside (0,1), support outside [0,1)
  /// or epsilon > support.
  static LossyParams make(double epsilon, double support);
};

/// A counting triple. f is an exact count since this entry was inserted;
/// delta is the maximum possible undercount, fixed at insertion time.
struct LossyEntry {
  std::int64_t f = 0;
  std::int64_t delta = 0;
};

class AttributeHistogram {
 public:
  /// Increments the entry for value, or inserts (value, 1, bucket_id - 1).
  void observe(const std::string& value, std::int64_t bucket_id);

  /// Removes every entry with f + delta <= bucket_id. Returns the number of
  /// entries removed.
  std::int64_t prune(std::int64_t bucket_id);

  /// f of the entry for value, 0 if absent.
  std::int64_t estimated_frequency(const std::string& value) const;

  /// Reinstates a serialized triple verbatim (model-dump loading).
  void restore(const std::string& value, std::int64_t f, std::int64_t delta);

  /// Entries with f >= (support - epsilon) * cluster_size. With
  /// support <= epsilon this is every entry.
  std::vector<std::pair<std::string, std::int64_t>> qualifying_entries(
      const LossyParams& params, std::int64_t cluster_size) const;

  std::int64_t entry_count() const {
    return static_cast<std::int64_t>(entries_.size());
  }

  const std::unordered_map<std::string, LossyEntry>& entries() const {
    return entries_;
  }

 private:
  std::unordered_map<std::string, LossyEntry> entries_;
};

/// Compact representation of one cluster: m attribute histograms plus the
/// number of records absorbed. The caller increments size() once per record
/// (begin_record) before the per-attribute observes, then calls
/// prune_if_boundary.
class ClusterHistogram {
 public:
  explicit ClusterHistogram(std::size_t num_attributes)
      : attrs_(num_attributes) {}

  std::size_t num_attributes() const { return attrs_.size(); }
  std::int64_t size() const { return size_; }
  std::int64_t prune_count() const { return prune_count_; }

  /// b_current = ceil(N_i / w).
  std::int64_t current_bucket(const LossyParams& params) const;

  /// Absorbs the record-level bookkeeping: N_i += 1.
  void begin_record() { ++size_; }

  void observe(std::size_t attr_index, const std::string& value,
               const LossyParams& params);

  /// Prunes every attribute histogram if size is at a bucket boundary
  /// (size % w == 0). Returns the number of entries deleted (0 off-boundary).
  std::int64_t prune_if_boundary(const LossyParams& params);

  /// Unconditional pruning pass at the current bucket id.
  std::int64_t prune(const LossyParams& params);

  std::int64_t entry_count() const;

  const AttributeHistogram& attribute(std::size_t j) const { return attrs_[j]; }
  AttributeHistogram& attribute(std::size_t j) { return attrs_[j]; }

 private:
  std::vector<AttributeHistogram> attrs_;
  std::int64_t size_ = 0;
  std::int64_t prune_count_ = 0;
};

}  // namespace catstream
