#include "signsight/io/keyvalue.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace signsight::io {
namespace {

class LineParser {
public:
  LineParser(std::string_view text, const std::string& source, int line) : s_(text), source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, source_ + ":" + std::to_string(line_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }

  bool at_end_or_comment() {
    skip_space();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string key() {
    skip_space();
    if (pos_ < s_.size() && (s_[pos_] == '"' || s_[pos_] == '\'')) return quoted();
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-' || s_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a key");
    return std::string(s_.substr(start, pos_ - start));
  }

  Value value() {
    skip_space();
    if (pos_ >= s_.size()) fail("missing value");
    Value v;
    v.line = line_;
    const char c = s_[pos_];
    if (c == '"' || c == '\'') {
      v.data = quoted();
    } else if (c == '[') {
      ++pos_;
      Value::Array items;
      if (!consume(']')) {
        while (true) {
          items.push_back(value());
          if (consume(']')) break;
          if (!consume(',')) fail("expected ',' or ']' in array");
          if (consume(']')) break;  // trailing comma
        }
      }
      v.data = std::move(items);
    } else {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' && s_[pos_] != '#' && s_[pos_] != ' ' &&
             s_[pos_] != '\t' && s_[pos_] != '\r') {
        ++pos_;
      }
      const std::string word(s_.substr(start, pos_ - start));
      if (word == "true") {
        v.data = true;
      } else if (word == "false") {
        v.data = false;
      } else if (word == "inf" || word == "+inf") {
        v.data = std::numeric_limits<double>::infinity();
      } else if (word == "-inf") {
        v.data = -std::numeric_limits<double>::infinity();
      } else {
        std::string digits;
        for (char ch : word) {
          if (ch != '_') digits.push_back(ch);
        }
        char* end = nullptr;
        const double d = std::strtod(digits.c_str(), &end);
        if (digits.empty() || end != digits.c_str() + digits.size() || !std::isfinite(d)) {
          fail("invalid value '" + word + "' (strings need quotes)");
        }
        v.data = d;
      }
    }
    return v;
  }

  std::string quoted() {
    const char q = s_[pos_++];
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != q) {
      char c = s_[pos_++];
      if (q == '"' && c == '\\') {
        if (pos_ >= s_.size()) fail("unterminated escape");
        const char e = s_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '\\': c = '\\'; break;
          case '"': c = '"'; break;
          default: fail(std::string("unknown escape \\") + e);
        }
      }
      out.push_back(c);
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string header_name() {
    std::string name = key();
    skip_space();
    return name;
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
  const std::string& source_;
  int line_;
};

std::string describe(const Value& v) {
  if (v.is_number()) return "number";
  if (v.is_bool()) return "boolean";
  if (v.is_string()) return "string";
  return "array";
}

}  // namespace

const Value* Table::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

void Table::insert(std::string key, Value value) {
  if (find(key)) {
    throw Error(ErrorKind::Parse, source_ + ":" + std::to_string(value.line) + ": duplicate key '" + key + "'");
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

std::string Table::where(std::string_view key) const {
  int line = line_;
  if (!key.empty()) {
    if (const Value* v = find(key)) line = v->line;
  }
  std::string out = source_ + ":" + std::to_string(line) + ":";
  if (!key.empty()) {
    out += " '";
    if (!name_.empty()) out += name_ + ".";
    out += std::string(key) + "'";
  }
  return out;
}

const Value& Table::require(std::string_view key) const {
  const Value* v = find(key);
  if (!v) {
    throw Error(ErrorKind::Validation, where() + " missing required key '" + std::string(key) + "'" +
                                           (name_.empty() ? "" : " in [" + name_ + "]"));
  }
  return *v;
}

std::string Table::text_of(const Value& v) {
  if (v.is_string()) return std::get<std::string>(v.data);
  if (v.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << std::get<double>(v.data);
    return os.str();
  }
  if (v.is_bool()) return std::get<bool>(v.data) ? "true" : "false";
  return "[...]";
}

std::string Table::get_string(std::string_view key) const {
  const Value& v = require(key);
  if (!v.is_string()) throw Error(ErrorKind::Validation, where(key) + " expected a string, got " + describe(v));
  return std::get<std::string>(v.data);
}

std::optional<std::string> Table::optional_string(std::string_view key) const {
  if (!contains(key)) return std::nullopt;
  return get_string(key);
}

double Table::get_number(std::string_view key) const {
  const Value& v = require(key);
  if (!v.is_number()) throw Error(ErrorKind::Validation, where(key) + " expected a number, got " + describe(v));
  return std::get<double>(v.data);
}

std::optional<double> Table::optional_number(std::string_view key) const {
  if (!contains(key)) return std::nullopt;
  return get_number(key);
}

bool Table::get_bool(std::string_view key, bool fallback) const {
  const Value* v = find(key);
  if (!v) return fallback;
  if (!v->is_bool()) throw Error(ErrorKind::Validation, where(key) + " expected true or false");
  return std::get<bool>(v->data);
}

namespace {

double quantity_of(const Value& v, Dimension dim, const std::string& where) {
  try {
    if (v.is_number()) {
      const double d = std::get<double>(v.data);
      return dim == Dimension::Angle ? deg_to_rad(d) : d;
    }
    if (v.is_string()) return parse_quantity(std::get<std::string>(v.data), dim);
  } catch (const Error& e) {
    throw Error(ErrorKind::Validation, where + " " + e.what());
  }
  throw Error(ErrorKind::Validation, where + " expected a quantity, got " + describe(v));
}

}  // namespace

double Table::get_quantity(std::string_view key, Dimension dim) const {
  return quantity_of(require(key), dim, where(key));
}

std::optional<double> Table::optional_quantity(std::string_view key, Dimension dim) const {
  if (!contains(key)) return std::nullopt;
  return get_quantity(key, dim);
}

std::vector<std::string> Table::get_string_list(std::string_view key) const {
  const Value& v = require(key);
  if (v.is_string()) return {std::get<std::string>(v.data)};
  if (!v.is_array()) throw Error(ErrorKind::Validation, where(key) + " expected a string or a list of strings");
  std::vector<std::string> out;
  for (const Value& item : std::get<Value::Array>(v.data)) {
    if (!item.is_string()) throw Error(ErrorKind::Validation, where(key) + " list items must be strings");
    out.push_back(std::get<std::string>(item.data));
  }
  return out;
}

std::vector<double> Table::get_quantity_list(std::string_view key, Dimension dim) const {
  const Value& v = require(key);
  if (!v.is_array()) throw Error(ErrorKind::Validation, where(key) + " expected a list");
  std::vector<double> out;
  for (const Value& item : std::get<Value::Array>(v.data)) out.push_back(quantity_of(item, dim, where(key)));
  return out;
}

Point3 Table::get_point(std::string_view key) const {
  const auto xs = get_quantity_list(key, Dimension::Length);
  if (xs.size() != 3) throw Error(ErrorKind::Validation, where(key) + " expected [x, y, z]");
  return {xs[0], xs[1], xs[2]};
}

const Table* Document::table(const std::string& name) const {
  const auto it = tables.find(name);
  return it == tables.end() ? nullptr : &it->second;
}

const std::vector<Table>& Document::array(const std::string& name) const {
  static const std::vector<Table> empty;
  const auto it = arrays.find(name);
  return it == arrays.end() ? empty : it->second;
}

Document parse_keyvalue(std::string_view text, const std::string& source) {
  Document doc;
  doc.source = source;
  doc.root = Table(source, "", 1);
  Table* current = &doc.root;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    LineParser p(line, source, line_no);
    if (p.at_end_or_comment()) {
      if (end == text.size()) break;
      continue;
    }
    if (p.consume('[')) {
      const bool is_array = p.consume('[');
      const std::string name = p.header_name();
      if (!p.consume(']') || (is_array && !p.consume(']'))) p.fail("malformed table header");
      if (!p.at_end_or_comment()) p.fail("trailing characters after table header");
      if (is_array) {
        if (doc.tables.count(name)) p.fail("'" + name + "' is already a table");
        auto& list = doc.arrays[name];
        list.emplace_back(source, name, line_no);
        current = &list.back();
      } else {
        if (doc.tables.count(name) || doc.arrays.count(name)) p.fail("table '" + name + "' defined twice");
        current = &doc.tables.emplace(name, Table(source, name, line_no)).first->second;
      }
    } else {
      std::string key = p.key();
      if (!p.consume('=')) p.fail("expected '=' after key '" + key + "'");
      Value v = p.value();
      if (!p.at_end_or_comment()) p.fail("trailing characters after value");
      current->insert(std::move(key), std::move(v));
    }
    if (end == text.size()) break;
  }
  return doc;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document load_keyvalue(const std::filesystem::path& path) {
  return parse_keyvalue(read_text_file(path), path.string());
}

}  // namespace signsight::io
