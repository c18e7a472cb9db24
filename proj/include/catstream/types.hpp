#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace catstream {

enum class AttrKind { Categorical, Numeric };

enum class MissingPolicy { Ignore, AsValue };

/// One attribute value of a stream record. After preprocessing every
/// non-missing cell is a categorical token.
struct Cell {
  enum class Kind { Token, Number, Missing };

  Kind kind = Kind::Missing;
  std::string token;
  double number = 0.0;

  static Cell tok(std::string t) {
    Cell c;
    c.kind = Kind::Token;
    c.token = std::move(t);
    return c;
  }
  static Cell num(double v) {
    Cell c;
    c.kind = Kind::Number;
    c.number = v;
    return c;
  }
  static Cell missing() { return Cell{}; }

  bool is_token() const { return kind == Kind::Token; }
  bool is_number() const { return kind == Kind::Number; }
  bool is_missing() const { return kind == Kind::Missing; }

  bool operator==(const Cell& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case Kind::Token: return token == o.token;
      case Kind::Number: return number == o.number;
      case Kind::Missing: return true;
    }
    return false;
  }
};

using Record = std::vector<Cell>;

/// Builds an all-token record, mostly for tests and generators.
inline Record make_record(std::initializer_list<const char*> tokens) {
  Record r;
  r.reserve(tokens.size());
  for (const char* t : tokens) r.push_back(Cell::tok(t));
  return r;
}

}  // namespace catstream
