#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace hrlab {

// Line-oriented key-value manifest with [section] headers.
//
// Grammar (one construct per line, blank lines ignored):
//   comment  := '#' ... end of line  (also trailing, outside values)
//   section  := '[' name ']'
//   entry    := key '=' value        (whitespace around tokens trimmed)
// Keys are unique within a section; duplicate keys are a parse error. Values are
// free text; lists use commas. Parsing is strict: anything else reports its
// line and column.
class Manifest {
 public:
  static Manifest parse_string(const std::string& text);
  static Manifest parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback = "") const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key) const;
  std::vector<int> get_int_list(const std::string& section, const std::string& key) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

  // canonical form: sections and keys sorted, normalized whitespace; the hash is
  // stable across reordering of the input file
  std::string serialize() const;
  std::string hash() const;  // FNV-1a 64-bit over the canonical form, hex

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

uint64_t fnv1a64(const std::string& s);

}  // namespace hrlab
