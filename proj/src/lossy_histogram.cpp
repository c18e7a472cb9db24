#include "catstream/lossy_histogram.hpp"

#include <cmath>
#include <stdexcept>

namespace catstream {

LossyParams LossyParams::make(double epsilon, double support) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must be in (0,1)");
  if (!(support >= 0.0 && support < 1.0))
    throw std::invalid_argument("support must be in [0,1)");
  // support = 0 disables qualification filtering entirely, so any epsilon is
  // coherent with it; otherwise epsilon must not exceed support.
  if (support > 0.0 && epsilon > support)
    throw std::invalid_argument(
        "epsilon must not exceed a nonzero support (exact mode uses "
        "support = epsilon)");
  LossyParams p;
  p.epsilon = epsilon;
  p.support = support;
  p.bucket_width = static_cast<std::int64_t>(std::ceil(1.0 / epsilon));
  return p;
}

void AttributeHistogram::observe(const std::string& value,
                                 std::int64_t bucket_id) {
  auto it = entries_.find(value);
  if (it != entries_.end()) {
    ++it->second.f;
  } else {
    entries_.emplace(value, LossyEntry{1, bucket_id - 1});
  }
}

std::int64_t AttributeHistogram::prune(std::int64_t bucket_id) {
  std::int64_t removed = 0;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second.f + it->second.delta <= bucket_id) {
      it = entries_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

std::int64_t AttributeHistogram::estimated_frequency(
    const std::string& value) const {
  auto it = entries_.find(value);
  return it == entries_.end() ? 0 : it->second.f;
}

void AttributeHistogram::restore(const std::string& value, std::int64_t f,
                                 std::int64_t delta) {
  if (f < 1) throw std::invalid_argument("restored entry must have f >= 1");
  entries_[value] = LossyEntry{f, delta};
}

std::vector<std::pair<std::string, std::int64_t>>
AttributeHistogram::qualifying_entries(const LossyParams& params,
                                       std::int64_t cluster_size) const {
  const double threshold =
      (params.support - params.epsilon) * static_cast<double>(cluster_size);
  std::vector<std::pair<std::string, std::int64_t>> out;
  out.reserve(entries_.size());
  for (const auto& [value, entry] : entries_) {
    if (static_cast<double>(entry.f) >= threshold) out.emplace_back(value, entry.f);
  }
  return out;
}

std::int64_t ClusterHistogram::current_bucket(const LossyParams& params) const {
  // ceil(N_i / w) in integer arithmetic
  return (size_ + params.bucket_width - 1) / params.bucket_width;
}

void ClusterHistogram::observe(std::size_t attr_index, const std::string& value,
                               const LossyParams& params) {
  if (attr_index >= attrs_.size())
    throw std::out_of_range("attribute index out of range");
  attrs_[attr_index].observe(value, current_bucket(params));
}

std::int64_t ClusterHistogram::prune_if_boundary(const LossyParams& params) {
  if (size_ == 0 || size_ % params.bucket_width != 0) return 0;
  return prune(params);
}

std::int64_t ClusterHistogram::prune(const LossyParams& params) {
  const std::int64_t b = current_bucket(params);
  std::int64_t removed = 0;
  for (auto& h : attrs_) removed += h.prune(b);
  ++prune_count_;
  return removed;
}

std::int64_t ClusterHistogram::entry_count() const {
  std::int64_t total = 0;
  for (const auto& h : attrs_) total += h.entry_count();
  return total;
}

}  // namespace catstream
