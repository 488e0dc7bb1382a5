#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "signsight/geometry.hpp"
#include "signsight/units.hpp"

namespace signsight::io {

/// Line-oriented key/value text format (a TOML subset): `# comments`,
/// `key = value`, `[table]`, `[[array of tables]]`. Values are quoted
/// strings, numbers (including inf), true/false, or single-line arrays.
struct Value {
  using Array = std::vector<Value>;
  std::variant<double, bool, std::string, Array> data;
  int line = 0;

  bool is_number() const { return std::holds_alternative<double>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_array() const { return std::holds_alternative<Array>(data); }
};

class Table {
public:
  Table() = default;
  Table(std::string source, std::string name, int line) : source_(std::move(source)), name_(std::move(name)), line_(line) {}

  const std::string& source() const { return source_; }
  const std::string& name() const { return name_; }
  int line() const { return line_; }

  bool contains(std::string_view key) const { return find(key) != nullptr; }
  const Value* find(std::string_view key) const;
  /// Keys in the order they appeared.
  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }
  void insert(std::string key, Value value);

  std::string get_string(std::string_view key) const;
  std::optional<std::string> optional_string(std::string_view key) const;
  double get_number(std::string_view key) const;
  std::optional<double> optional_number(std::string_view key) const;
  bool get_bool(std::string_view key, bool fallback) const;
  /// Number (SI, or degrees for angles) or a string with a unit tag.
  double get_quantity(std::string_view key, Dimension dim) const;
  std::optional<double> optional_quantity(std::string_view key, Dimension dim) const;
  std::vector<std::string> get_string_list(std::string_view key) const;
  std::vector<double> get_quantity_list(std::string_view key, Dimension dim) const;
  Point3 get_point(std::string_view key) const;

  /// "file:line: message" for the entry `key`, or for the table header.
  std::string where(std::string_view key = {}) const;
  /// Value text as written, for numbers and strings.
  static std::string text_of(const Value& v);

private:
  const Value& require(std::string_view key) const;

  std::string source_;
  std::string name_;
  int line_ = 0;
  std::vector<std::pair<std::string, Value>> entries_;
};

struct Document {
  std::string source;
  Table root;
  std::map<std::string, Table> tables;
  std::map<std::string, std::vector<Table>> arrays;

  const Table* table(const std::string& name) const;
  const std::vector<Table>& array(const std::string& name) const;
};

/// Throws Error(Parse) with "source:line:" prefixes.
Document parse_keyvalue(std::string_view text, const std::string& source = "<input>");
/// Throws Error(Io) when the file cannot be read.
Document load_keyvalue(const std::filesystem::path& path);

/// Reads a whole file; throws Error(Io) naming the path.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace signsight::io
