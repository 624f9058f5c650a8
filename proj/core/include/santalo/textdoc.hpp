#pragma once

#include <string>
#include <vector>

#include "santalo/types.hpp"

namespace santalo {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Minimal line-oriented document format used for body files, experiment
// configs and sweep specs:
//
//   # comment
//   key = scalar
//   key.subkey = word(args)
//   key = [a, b, [1, 2]]      # lists nest; items split at depth-0 commas
//
// Values may span lines while brackets stay open. Scalars keep their exact
// source text so decimal round-trips are byte-faithful.
struct TextValue {
  bool is_list = false;
  std::string scalar;
  std::vector<TextValue> items;

  double as_number(const std::string& what) const;
  long as_integer(const std::string& what) const;
  const std::vector<TextValue>& as_list(const std::string& what) const;
};

struct TextDoc {
  std::vector<std::pair<std::string, TextValue>> entries;

  bool has(const std::string& key) const;
  const TextValue& get(const std::string& key) const;
  const TextValue* find(const std::string& key) const;
};

TextDoc parse_textdoc(const std::string& text);
TextDoc read_textdoc_file(const std::string& path);

// vector / matrix helpers for `[a, b]` and `[[a, b], [c, d]]`
Vector value_to_vector(const TextValue& v, const std::string& what);
Matrix value_to_matrix(const TextValue& v, const std::string& what);

// 17-significant-digit rendering used by every writer in the project
std::string format_double(double v);
std::string format_vector(const Vector& v);
std::string format_matrix_rows(const Matrix& m, const std::string& indent);

}  // namespace santalo
