#include "catstream/similarity.hpp"

#include <stdexcept>

namespace catstream {

int mismatch(const Cell& x, const Cell& y) {
  if (!x.is_token() || !y.is_token())
    throw std::invalid_argument("mismatch() requires non-missing tokens");
  return x.token == y.token ? 0 : 1;
}

std::int64_t record_distance(const Record& x, const Record& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("record arity mismatch");
  std::int64_t d = 0;
  for (std::size_t j = 0; j < x.size(); ++j) d += mismatch(x[j], y[j]);
  return d;
}

double set_distance(const std::vector<Record>& records, const Record& y) {
  if (records.empty())
    throw std::invalid_argument("set_distance over an empty set is undefined");
  std::int64_t total = 0;
  for (const Record& x : records) total += record_distance(x, y);
  return static_cast<double>(total) / static_cast<double>(records.size());
}

namespace {

double qualification_threshold(const LossyParams& params, std::int64_t n) {
  return (params.support - params.epsilon) * static_cast<double>(n);
}

}  // namespace

double histogram_distance(const ClusterHistogram& hist, const Record& y,
                          const LossyParams& params) {
  const std::int64_t n = hist.size();
  if (n < 1) throw std::invalid_argument("histogram_distance on empty cluster");
  if (y.size() != hist.num_attributes())
    throw std::invalid_argument("record arity mismatch");
  const double threshold = qualification_threshold(params, n);
  double mass = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j].is_missing()) continue;
    for (const auto& [value, entry] : hist.attribute(j).entries()) {
      if (static_cast<double>(entry.f) < threshold) continue;
      if (value != y[j].token) mass += static_cast<double>(entry.f);
    }
  }
  return mass / static_cast<double>(n);
}

double histogram_similarity(const ClusterHistogram& hist, const Record& y,
                            const LossyParams& params) {
  const std::int64_t n = hist.size();
  if (n < 1)
    throw std::invalid_argument("histogram_similarity on empty cluster");
  if (y.size() != hist.num_attributes())
    throw std::invalid_argument("record arity mismatch");
  const double threshold = qualification_threshold(params, n);
  double mass = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j].is_missing()) continue;
    // Only the matched pair per attribute can contribute, so a single lookup
    // replaces the full entry scan.
    const std::int64_t f = hist.attribute(j).estimated_frequency(y[j].token);
    if (f > 0 && static_cast<double>(f) >= threshold)
      mass += static_cast<double>(f);
  }
  return mass / static_cast<double>(n);
}

}  // namespace catstream
