#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "catstream/types.hpp"

namespace catstream {

struct StreamSchema {
  std::vector<std::string> names;
  std::vector<AttrKind> kinds;  // parallel to names
  std::string missing_token = "?";
  std::optional<std::string> label_column;

  /// Throws std::invalid_argument on duplicate names, names/kinds length
  /// mismatch, or a label column absent from names.
  void validate() const;

  std::size_t label_index() const;  // requires label_column set
  /// Attribute arity excluding the label column.
  std::size_t arity() const;
  /// Attribute kinds excluding the label column.
  std::vector<AttrKind> attribute_kinds() const;
};

/// Streaming CSV reader: header first, one record per line, constant memory
/// per row. Without an explicit schema the header is taken as all-categorical
/// with "?" as the missing token.
class CsvReader {
 public:
  struct Row {
    Record record;                      // label column excluded
    std::vector<std::string> raw;       // original fields, label excluded
    std::optional<std::string> label;   // set when the schema names one
    std::int64_t line_number = 0;
    std::optional<std::string> error;   // malformed line; record is empty
  };

  CsvReader(std::istream& in, std::optional<StreamSchema> schema);

  /// Next row, std::nullopt at end of input. Reads each line exactly once.
  std::optional<Row> next();

  const StreamSchema& schema() const { return schema_; }

 private:
  std::istream& in_;
  StreamSchema schema_;
  std::vector<std::size_t> column_of_attr_;  // record position -> CSV column
  std::optional<std::size_t> label_col_;
  std::int64_t line_number_ = 1;  // header consumed in the constructor
};

/// Splits one CSV line, honoring double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

}  // namespace catstream
