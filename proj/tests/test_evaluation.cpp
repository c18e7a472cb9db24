#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "catstream/clusterer.hpp"
#include "catstream/datagen.hpp"
#include "catstream/evaluation.hpp"

using namespace catstream;

TEST_CASE("accuracy: each cluster credited with its dominant label") {
  // Cluster 0: {x, x, y}; cluster 1: {y}. a = 2 + 1 = 3, r = 3/4.
  const std::vector<std::int64_t> assignments = {0, 0, 0, 1};
  const std::vector<std::string> labels = {"x", "x", "y", "y"};
  const EvalReport report = accuracy(assignments, labels);
  CHECK(report.accuracy == doctest::Approx(0.75));
  CHECK(report.error == doctest::Approx(0.25));
  CHECK(report.absolute_error == doctest::Approx(1.0));
  CHECK(report.n == 4);
  CHECK(report.k == 2);
  REQUIRE(report.per_cluster.size() == 2);
  CHECK(report.per_cluster[0].label == "x");
  CHECK(report.per_cluster[0].count == 2);
  CHECK(report.per_cluster[1].label == "y");
  CHECK(report.per_cluster[1].count == 1);
}

TEST_CASE("accuracy: perfect clustering scores 1") {
  const EvalReport report =
      accuracy({0, 1, 0, 1}, {"a", "b", "a", "b"});
  CHECK(report.accuracy == doctest::Approx(1.0));
  CHECK(report.absolute_error == doctest::Approx(0.0));
}

TEST_CASE("accuracy rejects malformed input") {
  CHECK_THROWS_AS(accuracy({0}, {"a", "b"}), std::invalid_argument);
  CHECK_THROWS_AS(accuracy({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(accuracy({-1}, {"a"}), std::invalid_argument);
}

TEST_CASE("accuracy never exceeds 1 and matches a naive recount") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 200);
    const int k = 1 + static_cast<int>(rng() % 6);
    std::vector<std::int64_t> assignments;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
      assignments.push_back(static_cast<std::int64_t>(rng() % k));
      labels.push_back("L" + std::to_string(rng() % 4));
    }
    const EvalReport report = accuracy(assignments, labels);
    CHECK(report.accuracy >= 0.0);
    CHECK(report.accuracy <= 1.0);
    std::int64_t credited = 0;
    for (const ClusterDominant& c : report.per_cluster) credited += c.count;
    CHECK(report.accuracy ==
          doctest::Approx(static_cast<double>(credited) / n));
    CHECK(report.n == n);
  }
}

TEST_CASE("memory report: totals and per-attribute counts agree") {
  GenSpec spec;
  spec.rows = 5000;
  spec.attrs = 5;
  spec.classes = 3;
  spec.purity = 0.9;
  spec.seed = 4;
  const GeneratedData data = generate(spec);
  auto config = ClustererConfig::categorical(5, 0.05, 0.1, 2.5);
  const auto [model, outcomes] = run_stream(config, data.records);
  const MemoryReport report = memory_report(model);

  REQUIRE(report.entries.size() == model.clusters.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    REQUIRE(report.entries[i].size() == 5);
    for (std::int64_t e : report.entries[i]) total += e;
    CHECK(report.cluster_sizes[i] == model.clusters[i].size());
  }
  CHECK(total == report.total_entries);
  CHECK(total == model.entry_count());
}

TEST_CASE("memory report: lossy space bound holds on long streams") {
  GenSpec spec;
  spec.rows = 20000;
  spec.attrs = 4;
  spec.classes = 2;
  spec.domain_size = 60;
  spec.purity = 0.7;
  spec.seed = 11;
  const GeneratedData data = generate(spec);
  auto config = ClustererConfig::categorical(4, 0.01, 0.1, 1.5);
  const auto [model, outcomes] = run_stream(config, data.records);
  const MemoryReport report = memory_report(model);
  CHECK(report.bound_checked > 0);
  CHECK(report.bound_violations == 0);
  // Spot-check the bound formula on the largest cluster.
  std::size_t big = 0;
  for (std::size_t i = 1; i < model.clusters.size(); ++i)
    if (model.clusters[i].size() > model.clusters[big].size()) big = i;
  const double n_i = static_cast<double>(model.clusters[big].size());
  if (config.epsilon * n_i >= 3.0) {
    const double cap = std::log(config.epsilon * n_i) / config.epsilon;
    for (std::int64_t e : report.entries[big])
      CHECK(static_cast<double>(e) <= cap);
  }
}

TEST_CASE("sweep: pairs k-modes k with the squeezer cluster count") {
  GenSpec spec;
  spec.rows = 1500;
  spec.attrs = 6;
  spec.classes = 3;
  spec.purity = 0.95;
  spec.seed = 8;
  const GeneratedData data = generate(spec);
  std::vector<std::string> labels;
  for (int c : data.labels) labels.push_back(class_token(c));

  const double st = 3.0;
  std::vector<SweepRun> grid;
  grid.push_back({"squeezer", 0.001, 0.0, st, 0, 100});
  grid.push_back({"streamclucd", 0.05, 0.1, st, 0, 100});
  grid.push_back({"kmodes", 0.001, 0.0, st, 0, 100});
  grid.push_back({"kmodes", 0.001, 0.0, st, 300, 100});

  auto base = ClustererConfig::categorical(6, 0.05, 0.1, st);
  const std::vector<SweepRow> rows = sweep(grid, data.records, labels, base);
  REQUIRE(rows.size() == 4);
  for (const SweepRow& row : rows) {
    INFO(row.run.algorithm << ": " << row.error);
    CHECK(!row.failed);
    CHECK(row.report.n == spec.rows);
    CHECK(row.report.accuracy >= 0.0);
    CHECK(row.report.elapsed_ms >= 0.0);
  }
  CHECK(rows[0].report.k == rows[2].k_used);
  CHECK(rows[2].k_used == rows[3].k_used);
}

TEST_CASE("sweep: a failing grid point does not abort the rest") {
  const std::vector<Record> records = {make_record({"a", "b"}),
                                       make_record({"a", "b"})};
  const std::vector<std::string> labels = {"x", "x"};
  std::vector<SweepRun> grid;
  grid.push_back({"nonsense", 0.001, 0.0, 1.0, 0, 100});
  grid.push_back({"squeezer", 0.001, 0.0, 1.0, 0, 100});
  auto base = ClustererConfig::categorical(2, 0.05, 0.1, 1.0);
  const std::vector<SweepRow> rows = sweep(grid, records, labels, base);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].failed);
  CHECK(!rows[0].error.empty());
  CHECK(!rows[1].failed);
}
