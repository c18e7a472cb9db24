#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "catstream/types.hpp"

namespace catstream {

/// Planted-template stream: each class owns one dominant token per attribute
/// and emits it with probability `purity`, otherwise a uniform non-dominant
/// token from the attribute domain. Identical specs produce bit-identical
/// output.
struct GenSpec {
  std::int64_t rows = 0;
  int attrs = 0;
  int classes = 0;
  int domain_size = 0;  // 0 = default, 2 * classes
  double purity = 0.9;
  std::uint64_t seed = 0;

  int effective_domain() const { return domain_size > 0 ? domain_size : 2 * classes; }

  void validate() const;  // throws std::invalid_argument
};

struct GeneratedData {
  std::vector<Record> records;
  std::vector<int> labels;        // class index per row
  std::string rng_id;             // algorithm identifier, for reproducibility
};

GeneratedData generate(const GenSpec& spec);

/// Class label token used in CSV output: "c<index>".
std::string class_token(int class_index);

}  // namespace catstream
