#pragma once

#include "catstream/lossy_histogram.hpp"
#include "catstream/types.hpp"

namespace catstream {

/// Per-attribute mismatch indicator: 0 iff the tokens are equal.
/// Both cells must be non-missing tokens.
int mismatch(const Cell& x, const Cell& y);

/// Total mismatches over the m attribute positions.
std::int64_t record_distance(const Record& x, const Record& y);

/// Mean record_distance between every member of records and y.
/// Throws on an empty set.
double set_distance(const std::vector<Record>& records, const Record& y);

/// Distance between a record and a cluster histogram: the per-attribute
/// mismatch mass of qualifying entries, divided by cluster size.
double histogram_distance(const ClusterHistogram& hist, const Record& y,
                          const LossyParams& params);

/// Similarity between a record and a cluster histogram: the matched mass of
/// qualifying entries, divided by cluster size. Missing cells contribute 0.
/// Always in [0, m].
double histogram_similarity(const ClusterHistogram& hist, const Record& y,
                            const LossyParams& params);

}  // namespace catstream
