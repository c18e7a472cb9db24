#include <doctest.h>

#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "catstream/baselines.hpp"
#include "catstream/datagen.hpp"
#include "catstream/evaluation.hpp"

using namespace catstream;

TEST_CASE("squeezer: single record forms a single cluster") {
  const auto [model, outcomes] =
      squeezer_run(2, 1.0, std::vector<Record>{make_record({"a", "b"})});
  CHECK(model.clusters.size() == 1);
  CHECK(outcomes[0].created_new);
}

TEST_CASE("squeezer frequencies equal exact counts") {
  std::mt19937_64 rng(5);
  std::vector<Record> records;
  for (int i = 0; i < 800; ++i)
    records.push_back(make_record(
        {("v" + std::to_string(rng() % 4)).c_str(),
         ("w" + std::to_string(rng() % 3)).c_str()}));
  const auto [model, outcomes] = squeezer_run(2, 1.0, records);

  // Naive recount per assigned cluster.
  std::map<std::int64_t, std::vector<std::map<std::string, std::int64_t>>>
      naive;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& maps = naive[outcomes[i].cluster_index];
    if (maps.empty()) maps.resize(2);
    for (std::size_t j = 0; j < 2; ++j) ++maps[j][records[i][j].token];
  }
  for (const auto& [cluster, maps] : naive) {
    const auto& actual = model.clusters[static_cast<std::size_t>(cluster)];
    for (std::size_t j = 0; j < 2; ++j) {
      REQUIRE(actual.attrs[j].size() == maps[j].size());
      for (const auto& [value, count] : maps[j])
        CHECK(actual.attrs[j].at(value) == count);
    }
  }
}

TEST_CASE("squeezer entry growth is roughly linear in distinct values") {
  GenSpec spec;
  spec.rows = 4000;
  spec.attrs = 8;
  spec.classes = 4;
  spec.domain_size = 500;
  spec.purity = 0.85;
  spec.seed = 99;
  const GeneratedData data = generate(spec);
  std::vector<Record> half(data.records.begin(),
                           data.records.begin() + 2000);
  const double st = 4.0;
  const auto [m_half, o_half] = squeezer_run(8, st, half);
  const auto [m_full, o_full] = squeezer_run(8, st, data.records);
  CHECK(m_full.entry_count() > m_half.entry_count());
}

TEST_CASE("kmodes: k = 1 yields the per-attribute majority mode") {
  const std::vector<Record> records = {
      make_record({"a", "p"}), make_record({"a", "q"}), make_record({"b", "p"})};
  const KModesResult res = kmodes_fit(records, 1);
  REQUIRE(res.modes.size() == 1);
  CHECK(res.modes[0].values == std::vector<std::string>{"a", "p"});
  CHECK(res.modes[0].weight == 3);
}

TEST_CASE("kmodes: two separated blocks converge to pure clusters") {
  std::vector<Record> records;
  for (int i = 0; i < 10; ++i) records.push_back(make_record({"a", "a", "a"}));
  for (int i = 0; i < 10; ++i) records.push_back(make_record({"b", "b", "b"}));
  const KModesResult res = kmodes_fit(records, 2);
  CHECK(res.iterations <= 2);
  for (int i = 0; i < 10; ++i) CHECK(res.assignments[i] == res.assignments[0]);
  for (int i = 10; i < 20; ++i)
    CHECK(res.assignments[i] == res.assignments[10]);
  CHECK(res.assignments[0] != res.assignments[10]);
}

TEST_CASE("kmodes: fewer than k distinct records is an error") {
  const std::vector<Record> records = {make_record({"a"}), make_record({"a"})};
  CHECK_THROWS_AS(kmodes_fit(records, 2), std::invalid_argument);
}

TEST_CASE("kmodes mode ties pick the lexicographically smallest value") {
  // Two values with equal frequency in an attribute.
  const std::vector<Record> records = {make_record({"b", "x"}),
                                       make_record({"a", "x"})};
  const KModesResult res = kmodes_fit(records, 1);
  CHECK(res.modes[0].values[0] == "a");
}

TEST_CASE("kmodes is deterministic for a fixed record order") {
  std::mt19937_64 rng(23);
  std::vector<Record> records;
  for (int i = 0; i < 300; ++i)
    records.push_back(make_record(
        {("v" + std::to_string(rng() % 6)).c_str(),
         ("w" + std::to_string(rng() % 6)).c_str(),
         ("u" + std::to_string(rng() % 6)).c_str()}));
  const KModesResult a = kmodes_fit(records, 4);
  const KModesResult b = kmodes_fit(records, 4);
  CHECK(a.assignments == b.assignments);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("weighted k-modes with unit weights reduces to the plain fit") {
  std::mt19937_64 rng(29);
  std::vector<Record> records;
  for (int i = 0; i < 120; ++i)
    records.push_back(make_record(
        {("v" + std::to_string(rng() % 5)).c_str(),
         ("w" + std::to_string(rng() % 5)).c_str()}));
  const KModesResult plain = kmodes_fit(records, 3);
  const KModesResult weighted = weighted_kmodes_fit(
      records, std::vector<std::int64_t>(records.size(), 1), 3);
  CHECK(plain.assignments == weighted.assignments);
}

TEST_CASE("chunked k-modes: one chunk equals the batch fit") {
  std::mt19937_64 rng(31);
  std::vector<Record> records;
  for (int i = 0; i < 200; ++i)
    records.push_back(make_record(
        {("v" + std::to_string(rng() % 4)).c_str(),
         ("w" + std::to_string(rng() % 4)).c_str()}));
  const KModesResult batch = kmodes_fit(records, 3);
  const KModesResult chunked = chunked_kmodes_stream(records, 3, 1000);
  CHECK(batch.assignments == chunked.assignments);
}

TEST_CASE("chunked k-modes conserves weight across chunks") {
  GenSpec spec;
  spec.rows = 2500;
  spec.attrs = 6;
  spec.classes = 3;
  spec.purity = 1.0;
  spec.seed = 12;
  const GeneratedData data = generate(spec);
  const KModesResult res = chunked_kmodes_stream(data.records, 3, 400);
  std::int64_t total = 0;
  for (const Mode& mode : res.modes) total += mode.weight;
  CHECK(total == spec.rows);
  CHECK(res.assignments.size() == static_cast<std::size_t>(spec.rows));
}

TEST_CASE("chunked k-modes keeps pure classes pure") {
  GenSpec spec;
  spec.rows = 3000;
  spec.attrs = 8;
  spec.classes = 4;
  spec.purity = 1.0;
  spec.seed = 77;
  const GeneratedData data = generate(spec);
  const KModesResult res = chunked_kmodes_stream(data.records, 4, 500);
  std::vector<std::string> labels;
  for (int c : data.labels) labels.push_back(class_token(c));
  const EvalReport report = accuracy(res.assignments, labels);
  CHECK(report.accuracy == doctest::Approx(1.0));
}

TEST_CASE("chunk_size below k is rejected") {
  std::vector<Record> records = {make_record({"a"})};
  CHECK_THROWS_AS(chunked_kmodes_stream(records, 3, 2), std::invalid_argument);
}
