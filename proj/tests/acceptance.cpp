// Acceptance checks for the whole toolkit. Each check prints one PASS/FAIL
// line; the exit code is the number of failures.
//
// argv[1] is a data directory searched for the UCI mushroom table
// (mushroom.csv or agaricus-lepiota.data); check 1 fails with a diagnostic
// when the file is absent.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catstream/baselines.hpp"
#include "catstream/clusterer.hpp"
#include "catstream/datagen.hpp"
#include "catstream/evaluation.hpp"
#include "catstream/similarity.hpp"

using namespace catstream;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail) {
  std::cout << "check " << index << " " << name << ": "
            << (pass ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

struct LabeledData {
  std::vector<Record> records;
  std::vector<std::string> labels;
};

// Comma-separated table, one label column, "?" for missing cells. A header
// line is optional; it is recognized by multi-character fields (the mushroom
// data cells are all single characters). Without a header the label is the
// first column, matching the UCI layout.
std::optional<LabeledData> load_mushroom(const std::string& dir) {
  std::string path;
  for (const char* name : {"mushroom.csv", "agaricus-lepiota.data"}) {
    const std::string candidate = dir + "/" + name;
    if (std::filesystem::exists(candidate)) {
      path = candidate;
      break;
    }
  }
  if (path.empty()) return std::nullopt;

  std::ifstream in(path);
  LabeledData data;
  std::string line;
  std::size_t label_col = 0;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (first) {
      first = false;
      bool header = false;
      for (const std::string& f : fields)
        if (f.size() > 1) header = true;
      if (header) {
        for (std::size_t j = 0; j < fields.size(); ++j)
          if (fields[j] == "class" || fields[j] == "label") label_col = j;
        continue;
      }
    }
    Record r;
    r.reserve(fields.size() - 1);
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (j == label_col) {
        data.labels.push_back(fields[j]);
        continue;
      }
      r.push_back(fields[j] == "?" ? Cell::missing() : Cell::tok(fields[j]));
    }
    data.records.push_back(std::move(r));
  }
  if (data.records.empty()) return std::nullopt;
  return data;
}

void check_mushroom_quality(const std::string& data_dir) {
  const auto data = load_mushroom(data_dir);
  if (!data) {
    report(1, "mushroom quality", false,
           "no mushroom.csv or agaricus-lepiota.data under " + data_dir +
               "; place the UCI table there to run this check");
    return;
  }
  const std::size_t m = data->records.front().size();

  std::vector<SweepRun> grid;
  for (int st = 7; st <= 16; ++st) {
    const double t = static_cast<double>(st);
    grid.push_back({"squeezer", 0.001, 0.0, t, 0, 100});
    grid.push_back({"streamclucd", 0.001, 0.0, t, 0, 100});
    grid.push_back({"streamclucd", 0.001, 0.5, t, 0, 100});
    grid.push_back({"kmodes", 0.001, 0.0, t, 0, 100});
  }
  auto base = ClustererConfig::categorical(m, 0.001, 0.0, 7.0);

  const auto start = std::chrono::steady_clock::now();
  const std::vector<SweepRow> rows =
      sweep(grid, data->records, data->labels, base);
  const double elapsed = seconds_since(start);

  std::map<std::string, std::pair<double, int>> acc;  // sum error, count
  bool any_failed = false;
  for (const SweepRow& row : rows) {
    if (row.failed) {
      any_failed = true;
      continue;
    }
    std::string key = row.run.algorithm;
    if (key == "streamclucd")
      key += row.run.support > 0.0 ? "(s=0.5)" : "(s=0)";
    acc[key].first += row.report.error;
    acc[key].second += 1;
  }
  std::ostringstream detail;
  for (const auto& [key, sums] : acc)
    detail << key << "=" << fmt(sums.first / sums.second) << " ";
  detail << "in " << fmt(elapsed) << "s";

  const double filtered = acc["streamclucd(s=0.5)"].first /
                          std::max(1, acc["streamclucd(s=0.5)"].second);
  const double squeezer =
      acc["squeezer"].first / std::max(1, acc["squeezer"].second);
  const bool pass = !any_failed && filtered <= 0.12 &&
                    filtered <= squeezer + 0.02 && filtered <= squeezer &&
                    elapsed < 60.0;
  report(1, "mushroom quality", pass, detail.str());
}

void check_exact_mode_equivalence() {
  std::mt19937_64 rng(424242);
  std::int64_t mismatches = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + rng() % 20;
    const std::int64_t n = 200 + static_cast<std::int64_t>(rng() % 4801);
    const int domain = 2 + static_cast<int>(rng() % 7);
    const double st =
        static_cast<double>(rng() % 1000) / 1000.0 * static_cast<double>(m);

    auto config = ClustererConfig::categorical(m, 1e-7, 1e-7, st);
    StreamClusterer fine(config);
    SqueezerClusterer exact(m, st);
    bool histograms_ok = true;
    for (std::int64_t i = 0; i < n; ++i) {
      Record r;
      r.reserve(m);
      for (std::size_t j = 0; j < m; ++j)
        r.push_back(Cell::tok("v" + std::to_string(rng() % domain)));
      const AssignmentOutcome a = fine.process(r);
      const AssignmentOutcome b = exact.process(r);
      if (a.cluster_index != b.cluster_index || a.created_new != b.created_new)
        ++mismatches;
    }
    const ClusterModel& fm = fine.model();
    const SqueezerModel& em = exact.model();
    if (fm.clusters.size() != em.clusters.size()) {
      ++mismatches;
      continue;
    }
    for (std::size_t c = 0; c < fm.clusters.size(); ++c) {
      if (fm.clusters[c].size() != em.clusters[c].size) histograms_ok = false;
      for (std::size_t j = 0; j < m; ++j) {
        const auto& entries = fm.clusters[c].attribute(j).entries();
        const auto& truth = em.clusters[c].attrs[j];
        if (entries.size() != truth.size()) {
          histograms_ok = false;
          continue;
        }
        for (const auto& [value, entry] : entries) {
          auto it = truth.find(value);
          if (it == truth.end() || it->second != entry.f)
            histograms_ok = false;
        }
      }
    }
    if (!histograms_ok) ++mismatches;
  }
  report(2, "exact-mode equivalence", mismatches == 0,
         std::to_string(mismatches) + " mismatches over 50 streams");
}

void check_counting_guarantees() {
  std::mt19937_64 rng(7171);
  const double eps = 0.01;
  const double s = 0.1;
  const std::int64_t n = 10000;
  std::int64_t violations = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const LossyParams params = LossyParams::make(eps, s);
    ClusterHistogram hist(1);
    std::map<std::string, std::int64_t> truth;
    for (std::int64_t i = 0; i < n; ++i) {
      // Skewed source: mostly a small hot set, sometimes a long tail.
      std::string v = (rng() % 10 < 8)
                          ? "hot" + std::to_string(rng() % 12)
                          : "cold" + std::to_string(rng() % 2000);
      hist.begin_record();
      hist.observe(0, v, params);
      hist.prune_if_boundary(params);
      ++truth[v];
    }
    const auto output = hist.attribute(0).qualifying_entries(params, n);
    std::map<std::string, std::int64_t> emitted;
    for (const auto& [value, f] : output) emitted[value] = f;

    for (const auto& [value, count] : truth) {
      const double c = static_cast<double>(count);
      if (c >= s * n && emitted.count(value) == 0) ++violations;  // missed
    }
    for (const auto& [value, f] : emitted) {
      if (static_cast<double>(truth.at(value)) < (s - eps) * n) ++violations;
    }
    for (const auto& [value, entry] : hist.attribute(0).entries()) {
      const std::int64_t undercount = truth.at(value) - entry.f;
      if (undercount < 0 || static_cast<double>(undercount) > eps * n)
        ++violations;
    }
  }
  report(3, "counting guarantees", violations == 0,
         std::to_string(violations) + " violations over 20 streams");
}

struct FlatnessResult {
  std::vector<std::int64_t> stream_entries;   // per 10k prefix
  std::vector<std::int64_t> exact_entries;    // per 10k prefix
  bool bounds_ok = true;
  std::string bound_detail;
};

FlatnessResult run_flatness() {
  GenSpec spec;
  spec.rows = 100000;
  spec.attrs = 40;
  spec.classes = 40;
  spec.domain_size = 2000;
  spec.purity = 0.9;
  spec.seed = 10040;
  const GeneratedData data = generate(spec);

  auto config = ClustererConfig::categorical(40, 0.05, 0.1, 15.0);
  StreamClusterer clusterer(config);
  SqueezerClusterer exact(40, 15.0);

  FlatnessResult res;
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    clusterer.process(data.records[i]);
    exact.process(data.records[i]);
    if ((i + 1) % 10000 == 0) {
      res.stream_entries.push_back(clusterer.model().entry_count());
      res.exact_entries.push_back(exact.model().entry_count());
      const MemoryReport mr = memory_report(clusterer.model());
      if (mr.bound_violations != 0) {
        res.bounds_ok = false;
        res.bound_detail = std::to_string(mr.bound_violations) +
                           " per-histogram bound violations at prefix " +
                           std::to_string(i + 1);
      }
      // IID total bound: 7 * k * m / eps.
      const double cap = 7.0 *
                         static_cast<double>(clusterer.model().cluster_count()) *
                         40.0 / 0.05;
      if (static_cast<double>(mr.total_entries) > cap) {
        res.bounds_ok = false;
        res.bound_detail = "total entries " +
                           std::to_string(mr.total_entries) +
                           " above the IID cap at prefix " +
                           std::to_string(i + 1);
      }
    }
  }
  return res;
}

void check_memory_flatness(const FlatnessResult& res) {
  const double sc10 = static_cast<double>(res.stream_entries.front());
  const double sc100 = static_cast<double>(res.stream_entries.back());
  const double ex10 = static_cast<double>(res.exact_entries.front());
  const double ex100 = static_cast<double>(res.exact_entries.back());
  const bool pass =
      sc100 <= 3.0 * sc10 && ex100 >= 5.0 * ex10 && ex100 >= 3.0 * sc100;
  std::ostringstream detail;
  detail << "bounded growth " << fmt(sc100 / sc10) << "x, exact growth "
         << fmt(ex100 / ex10) << "x, final gap " << fmt(ex100 / sc100) << "x";
  report(4, "memory flatness", pass, detail.str());
}

void check_space_bounds(const FlatnessResult& res) {
  report(5, "space bounds", res.bounds_ok,
         res.bounds_ok ? "per-histogram and total caps hold at every prefix"
                       : res.bound_detail);
}

void check_runtime_linearity() {
  bool pass = true;
  std::ostringstream detail;
  for (int stream = 1; stream <= 4; ++stream) {
    const int d = 10 * stream;
    GenSpec spec;
    spec.rows = 100000;
    spec.attrs = d;
    spec.classes = d;
    spec.purity = 0.9;
    spec.seed = 500 + static_cast<std::uint64_t>(stream);
    const GeneratedData data = generate(spec);

    auto config = ClustererConfig::categorical(
        static_cast<std::size_t>(d), 0.05, 0.1, static_cast<double>(d) / 2.0);
    config.max_clusters = d;

    const auto timed_run = [&](std::size_t rows) {
      double best = 1e30;
      for (int rep = 0; rep < 2; ++rep) {
        StreamClusterer clusterer(config);
        const auto start = std::chrono::steady_clock::now();
        for (std::size_t i = 0; i < rows; ++i)
          clusterer.process(data.records[i]);
        best = std::min(best, seconds_since(start));
      }
      return best;
    };
    timed_run(5000);  // warm-up
    const double t50 = timed_run(50000);
    const double t100 = timed_run(100000);
    const double ratio = t100 / t50;
    if (ratio < 1.5 || ratio > 2.8) pass = false;
    detail << "d=" << d << " ratio " << fmt(ratio) << " ";
  }
  report(6, "runtime linearity", pass, detail.str());
}

void check_epsilon_insensitivity() {
  bool pass = true;
  std::ostringstream detail;
  for (int stream = 2; stream <= 4; ++stream) {
    const int d = 10 * stream;
    GenSpec spec;
    spec.rows = 100000;
    spec.attrs = d;
    spec.classes = d;
    spec.purity = 0.9;
    spec.seed = 900 + static_cast<std::uint64_t>(stream);
    const GeneratedData data = generate(spec);
    std::vector<std::string> labels;
    labels.reserve(data.labels.size());
    for (int c : data.labels) labels.push_back(class_token(c));

    double lo = 2.0, hi = -1.0;
    for (int e = 1; e <= 10; ++e) {
      auto config = ClustererConfig::categorical(
          static_cast<std::size_t>(d), 0.01 * e, 0.1,
          static_cast<double>(d) / 2.0);
      config.max_clusters = d;
      const auto [model, outcomes] = run_stream(config, data.records);
      std::vector<std::int64_t> assignments;
      assignments.reserve(outcomes.size());
      for (const auto& o : outcomes) assignments.push_back(o.cluster_index);
      const double r = accuracy(assignments, labels).accuracy;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (hi - lo > 0.05) pass = false;
    detail << "d=" << d << " spread " << fmt(hi - lo) << " ";
  }
  report(7, "epsilon insensitivity", pass, detail.str());
}

void check_randomized_properties() {
  std::mt19937_64 rng(8888);
  std::int64_t failures = 0;

  // Mismatch and record-distance symmetry.
  for (int i = 0; i < 1000; ++i) {
    const std::size_t m = 1 + rng() % 8;
    Record x, y;
    for (std::size_t j = 0; j < m; ++j) {
      x.push_back(Cell::tok("t" + std::to_string(rng() % 4)));
      y.push_back(Cell::tok("t" + std::to_string(rng() % 4)));
    }
    if (mismatch(x[0], y[0]) != mismatch(y[0], x[0])) ++failures;
    if (record_distance(x, y) != record_distance(y, x)) ++failures;
  }

  // Histogram distance and similarity against set brute force (exact mode).
  for (int i = 0; i < 1000; ++i) {
    const std::size_t m = 1 + rng() % 5;
    const std::size_t n = 1 + rng() % 200;
    const LossyParams params = LossyParams::make(1e-7, 1e-7);
    ClusterHistogram hist(m);
    std::vector<Record> members;
    for (std::size_t r = 0; r < n; ++r) {
      Record rec;
      for (std::size_t j = 0; j < m; ++j)
        rec.push_back(Cell::tok("t" + std::to_string(rng() % 5)));
      hist.begin_record();
      for (std::size_t j = 0; j < m; ++j) hist.observe(j, rec[j].token, params);
      members.push_back(std::move(rec));
    }
    Record probe;
    for (std::size_t j = 0; j < m; ++j)
      probe.push_back(Cell::tok("t" + std::to_string(rng() % 5)));
    const double d2 = set_distance(members, probe);
    if (std::abs(histogram_distance(hist, probe, params) - d2) > 1e-9)
      ++failures;
    if (std::abs(histogram_similarity(hist, probe, params) -
                 (static_cast<double>(m) - d2)) > 1e-9)
      ++failures;
  }

  // Accuracy invariance under cluster-index and class-name permutation.
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + rng() % 60;
    const std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 5);
    std::vector<std::int64_t> assignments;
    std::vector<std::string> labels;
    for (std::size_t r = 0; r < n; ++r) {
      assignments.push_back(
          static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(k)));
      labels.push_back("L" + std::to_string(rng() % 3));
    }
    std::vector<std::int64_t> perm(static_cast<std::size_t>(k));
    for (std::int64_t c = 0; c < k; ++c) perm[static_cast<std::size_t>(c)] = c;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::int64_t> renamed;
    std::vector<std::string> relabeled;
    for (std::size_t r = 0; r < n; ++r) {
      renamed.push_back(perm[static_cast<std::size_t>(assignments[r])]);
      relabeled.push_back("renamed_" + labels[r]);
    }
    const double a = accuracy(assignments, labels).accuracy;
    const double b = accuracy(renamed, relabeled).accuracy;
    if (std::abs(a - b) > 1e-12) ++failures;
  }

  // Conservation: cluster sizes sum to the number of accepted records.
  for (int i = 0; i < 1000; ++i) {
    const std::size_t m = 1 + rng() % 4;
    const std::size_t n = 1 + rng() % 100;
    std::vector<Record> records;
    for (std::size_t r = 0; r < n; ++r) {
      Record rec;
      for (std::size_t j = 0; j < m; ++j)
        rec.push_back(Cell::tok("t" + std::to_string(rng() % 3)));
      records.push_back(std::move(rec));
    }
    auto config = ClustererConfig::categorical(
        m, 0.1, 0.2, static_cast<double>(m) * 0.5);
    const auto [model, outcomes] = run_stream(config, records);
    std::int64_t total = 0;
    for (const auto& c : model.clusters) total += c.size();
    if (total != static_cast<std::int64_t>(n) || model.total_seen != total)
      ++failures;
  }

  report(8, "randomized properties", failures == 0,
         std::to_string(failures) + " failures over 4000 cases");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string data_dir = argc > 1 ? argv[1] : "data";

  check_mushroom_quality(data_dir);
  check_exact_mode_equivalence();
  check_counting_guarantees();
  const FlatnessResult flatness = run_flatness();
  check_memory_flatness(flatness);
  check_space_bounds(flatness);
  check_runtime_linearity();
  check_epsilon_insensitivity();
  check_randomized_properties();

  std::cout << (g_failures == 0 ? "all checks passed"
                                : std::to_string(g_failures) + " check(s) failed")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
