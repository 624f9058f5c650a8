#include "santalo/textdoc.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace santalo {

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// split at depth-0 commas; parentheses and brackets both track depth
std::vector<std::string> split_items(const std::string& body) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : body) {
    if (ch == '[' || ch == '(') ++depth;
    if (ch == ']' || ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!strip(cur).empty()) out.push_back(cur);
  return out;
}

TextValue parse_value(const std::string& raw) {
  std::string s = strip(raw);
  TextValue v;
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw ConfigError("unbalanced brackets in value: " + s);
    v.is_list = true;
    for (const std::string& item : split_items(s.substr(1, s.size() - 2)))
      v.items.push_back(parse_value(item));
    return v;
  }
  v.scalar = s;
  return v;
}

}  // namespace

double TextValue::as_number(const std::string& what) const {
  if (is_list) throw ConfigError(what + ": expected a number, found a list");
  const char* c = scalar.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (end == c || *end != '\0')
    throw ConfigError(what + ": cannot parse number '" + scalar + "'");
  return v;
}

long TextValue::as_integer(const std::string& what) const {
  double v = as_number(what);
  long l = static_cast<long>(v);
  if (static_cast<double>(l) != v)
    throw ConfigError(what + ": expected an integer, got '" + scalar + "'");
  return l;
}

const std::vector<TextValue>& TextValue::as_list(const std::string& what) const {
  if (!is_list) throw ConfigError(what + ": expected a list");
  return items;
}

bool TextDoc::has(const std::string& key) const { return find(key) != nullptr; }

const TextValue* TextDoc::find(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return &v;
  return nullptr;
}

const TextValue& TextDoc::get(const std::string& key) const {
  const TextValue* v = find(key);
  if (!v) throw ConfigError("missing key '" + key + "'");
  return *v;
}

TextDoc parse_textdoc(const std::string& text) {
  TextDoc doc;
  std::istringstream in(text);
  std::string line;
  std::string pending_key, pending_value;
  int depth = 0;

  auto flush = [&]() {
    if (pending_key.empty()) return;
    if (doc.has(pending_key))
      throw ConfigError("duplicate key '" + pending_key + "'");
    doc.entries.emplace_back(pending_key, parse_value(pending_value));
    pending_key.clear();
    pending_value.clear();
  };

  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string s = strip(line);
    if (s.empty()) continue;

    if (depth == 0) {
      size_t eq = s.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(lineno) +
                          ": expected 'key = value'");
      flush();
      pending_key = strip(s.substr(0, eq));
      if (pending_key.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty key");
      pending_value = strip(s.substr(eq + 1));
    } else {
      pending_value += " " + s;
    }
    depth = 0;
    for (char ch : pending_value) {
      if (ch == '[' || ch == '(') ++depth;
      if (ch == ']' || ch == ')') --depth;
    }
    if (depth < 0)
      throw ConfigError("line " + std::to_string(lineno) + ": stray bracket");
    if (depth == 0) flush();
  }
  if (depth != 0) throw ConfigError("unterminated list at end of document");
  flush();
  return doc;
}

TextDoc read_textdoc_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_textdoc(buf.str());
}

Vector value_to_vector(const TextValue& v, const std::string& what) {
  const auto& items = v.as_list(what);
  Vector out(static_cast<Eigen::Index>(items.size()));
  for (size_t i = 0; i < items.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = items[i].as_number(what);
  return out;
}

Matrix value_to_matrix(const TextValue& v, const std::string& what) {
  const auto& rows = v.as_list(what);
  if (rows.empty()) throw ConfigError(what + ": empty row list");
  Vector first = value_to_vector(rows[0], what);
  Matrix out(static_cast<Eigen::Index>(rows.size()), first.size());
  out.row(0) = first.transpose();
  for (size_t i = 1; i < rows.size(); ++i) {
    Vector r = value_to_vector(rows[i], what);
    if (r.size() != first.size())
      throw ConfigError(what + ": ragged row lengths");
    out.row(static_cast<Eigen::Index>(i)) = r.transpose();
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_vector(const Vector& v) {
  std::string s = "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return s + "]";
}

std::string format_matrix_rows(const Matrix& m, const std::string& indent) {
  std::string s = "[\n";
  for (int i = 0; i < m.rows(); ++i)
    s += indent + "  " + format_vector(m.row(i).transpose()) + ",\n";
  return s + indent + "]";
}

}  // namespace santalo
