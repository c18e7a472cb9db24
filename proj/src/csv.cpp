#include "catstream/csv.hpp"

#include <charconv>
#include <istream>
#include <set>
#include <stdexcept>

namespace catstream {

void StreamSchema::validate() const {
  if (names.empty()) throw std::invalid_argument("schema has no columns");
  if (names.size() != kinds.size())
    throw std::invalid_argument("schema names/kinds length mismatch");
  std::set<std::string> unique(names.begin(), names.end());
  if (unique.size() != names.size())
    throw std::invalid_argument("duplicate column names in schema");
  if (label_column &&
      unique.find(*label_column) == unique.end())
    throw std::invalid_argument("label column not present in schema");
}

std::size_t StreamSchema::label_index() const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (label_column && names[i] == *label_column) return i;
  throw std::logic_error("schema has no label column");
}

std::size_t StreamSchema::arity() const {
  return names.size() - (label_column ? 1 : 0);
}

std::vector<AttrKind> StreamSchema::attribute_kinds() const {
  std::vector<AttrKind> out;
  out.reserve(arity());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (label_column && names[i] == *label_column) continue;
    out.push_back(kinds[i]);
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvReader::CsvReader(std::istream& in, std::optional<StreamSchema> schema)
    : in_(in) {
  std::string header;
  if (!std::getline(in_, header))
    throw std::invalid_argument("missing CSV header");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  const std::vector<std::string> columns = split_csv_line(header);

  if (schema) {
    schema_ = std::move(*schema);
    schema_.validate();
    if (columns != schema_.names)
      throw std::invalid_argument("CSV header does not match the schema");
  } else {
    schema_.names = columns;
    schema_.kinds.assign(columns.size(), AttrKind::Categorical);
    schema_.validate();
  }
  for (std::size_t i = 0; i < schema_.names.size(); ++i) {
    if (schema_.label_column && schema_.names[i] == *schema_.label_column) {
      label_col_ = i;
      continue;
    }
    column_of_attr_.push_back(i);
  }
}

std::optional<CsvReader::Row> CsvReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    Row row;
    row.line_number = line_number_;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != schema_.names.size()) {
      row.error = "line " + std::to_string(line_number_) + ": expected " +
                  std::to_string(schema_.names.size()) + " fields, got " +
                  std::to_string(fields.size());
      return row;
    }
    row.record.reserve(column_of_attr_.size());
    row.raw.reserve(column_of_attr_.size());
    for (std::size_t a = 0; a < column_of_attr_.size(); ++a) {
      const std::size_t col = column_of_attr_[a];
      const std::string& field = fields[col];
      row.raw.push_back(field);
      if (field == schema_.missing_token) {
        row.record.push_back(Cell::missing());
      } else if (schema_.kinds[col] == AttrKind::Numeric) {
        double v = 0.0;
        const auto* begin = field.data();
        const auto* end = field.data() + field.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end) {
          row.error = "line " + std::to_string(line_number_) +
                      ": invalid numeric value '" + field + "' in column " +
                      schema_.names[col];
          row.record.clear();
          return row;
        }
        row.record.push_back(Cell::num(v));
      } else {
        row.record.push_back(Cell::tok(field));
      }
    }
    if (label_col_) row.label = fields[*label_col_];
    return row;
  }
  return std::nullopt;
}

}  // namespace catstream
