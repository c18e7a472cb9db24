#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "catstream/clusterer.hpp"
#include "catstream/csv.hpp"
#include "catstream/datagen.hpp"
#include "catstream/evaluation.hpp"

namespace catstream {

/// Assignments CSV: record_index, cluster_index, created_new, best_similarity.
void write_assignments_csv(std::ostream& out,
                           const std::vector<AssignmentOutcome>& outcomes);

/// Run summary: config echo, k, N, quality metrics when labels were given,
/// entry and prune counters, elapsed milliseconds. Floating-point values keep
/// 12+ significant digits.
std::string summary_json(const ClusterModel& model,
                         const EvalReport* report);

/// Per-cluster model dump: size and, per attribute, the (value, f, delta)
/// triples.
std::string model_json(const ClusterModel& model);

/// Rebuilds histograms from a model dump; inverse of model_json for
/// inspection tooling.
ClusterModel model_from_json(const std::string& text);

std::string eval_report_json(const EvalReport& report);

std::string sweep_rows_json(const std::vector<SweepRow>& rows);

/// Generated stream as CSV with a trailing class column. Generator metadata
/// (rng_id, spec echo) travels in gen_metadata_json, not in the CSV itself.
void write_generated_csv(std::ostream& out, const GeneratedData& data);

std::string gen_metadata_json(const GenSpec& spec, const GeneratedData& data);

}  // namespace catstream
