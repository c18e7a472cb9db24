#include "catstream/datagen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace catstream {

namespace {

// Bounded draw from the raw 64-bit stream. The modulo bias is negligible for
// the domain sizes involved and, unlike uniform_int_distribution, the mapping
// is identical across standard library implementations.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

}  // namespace

void GenSpec::validate() const {
  if (rows < 1) throw std::invalid_argument("rows must be positive");
  if (attrs < 1) throw std::invalid_argument("attrs must be positive");
  if (classes < 1) throw std::invalid_argument("classes must be positive");
  if (!(purity > 0.0 && purity <= 1.0))
    throw std::invalid_argument("purity must be in (0,1]");
  if (classes > effective_domain())
    throw std::invalid_argument("classes must not exceed domain_size");
}

std::string class_token(int class_index) {
  return "c" + std::to_string(class_index);
}

GeneratedData generate(const GenSpec& spec) {
  spec.validate();
  const int m = spec.attrs;
  const int d = spec.effective_domain();
  std::mt19937_64 rng(spec.seed);

  // Dominant token index per (attribute, class): a per-attribute shuffle of
  // the domain guarantees distinct dominants across classes.
  std::vector<std::vector<int>> dominant(m);
  for (int j = 0; j < m; ++j) {
    std::vector<int> perm(d);
    for (int t = 0; t < d; ++t) perm[t] = t;
    for (int t = d - 1; t > 0; --t)
      std::swap(perm[t], perm[bounded(rng, static_cast<std::uint64_t>(t + 1))]);
    perm.resize(spec.classes);
    dominant[j] = std::move(perm);
  }

  // Balanced class sequence, shuffled into interleaved arrival order.
  std::vector<int> label_seq;
  label_seq.reserve(spec.rows);
  for (std::int64_t i = 0; i < spec.rows; ++i)
    label_seq.push_back(static_cast<int>(i % spec.classes));
  for (std::int64_t i = spec.rows - 1; i > 0; --i)
    std::swap(label_seq[i],
              label_seq[bounded(rng, static_cast<std::uint64_t>(i + 1))]);

  // Purity draw resolution: purity maps to a fixed 64-bit cutoff so the
  // comparison is exact and platform-independent.
  const auto cutoff = static_cast<std::uint64_t>(
      spec.purity * 18446744073709551615.0);

  GeneratedData out;
  out.rng_id = "mt19937_64/mod";
  out.records.reserve(spec.rows);
  out.labels = label_seq;
  for (std::int64_t i = 0; i < spec.rows; ++i) {
    const int c = label_seq[i];
    Record r;
    r.reserve(m);
    for (int j = 0; j < m; ++j) {
      int token = dominant[j][c];
      if (spec.purity < 1.0 && d > 1 && rng() > cutoff) {
        // Noise: uniform over the domain excluding the dominant token, so the
        // empirical dominant frequency concentrates at `purity` exactly.
        int t = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(d - 1)));
        if (t >= token) ++t;
        token = t;
      }
      r.push_back(Cell::tok("v" + std::to_string(token)));
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace catstream
