#include "io/config.hpp"

#include <fstream>
#include <sstream>

namespace hrlab {

namespace {
std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}
}  // namespace

Manifest Manifest::parse_string(const std::string& text) {
  Manifest m;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw DomainError("config parse error at line " + std::to_string(lineno) +
                          ", column " + std::to_string(t.size()) + ": unterminated section");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw DomainError("config parse error at line " + std::to_string(lineno) +
                          ": empty section name");
      m.sections_[section];
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw DomainError("config parse error at line " + std::to_string(lineno) +
                        ", column 1: expected 'key = value' or '[section]'");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty())
      throw DomainError("config parse error at line " + std::to_string(lineno) +
                        ": empty key");
    if (section.empty())
      throw DomainError("config parse error at line " + std::to_string(lineno) +
                        ": entry outside any [section]");
    auto [it, fresh] = m.sections_[section].emplace(key, val);
    if (!fresh)
      throw DomainError("config parse error at line " + std::to_string(lineno) +
                        ": duplicate key '" + key + "' in [" + section + "]");
  }
  return m;
}

Manifest Manifest::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

bool Manifest::has(const std::string& s, const std::string& k) const {
  auto it = sections_.find(s);
  return it != sections_.end() && it->second.count(k) > 0;
}

std::string Manifest::get(const std::string& s, const std::string& k,
                          const std::string& fallback) const {
  auto it = sections_.find(s);
  if (it == sections_.end()) return fallback;
  auto jt = it->second.find(k);
  return jt == it->second.end() ? fallback : jt->second;
}

double Manifest::get_double(const std::string& s, const std::string& k, double fallback) const {
  std::string v = get(s, k);
  if (v.empty()) return fallback;
  try {
    return std::stod(v);
  } catch (...) {
    throw DomainError("config: [" + s + "] " + k + " is not a number: '" + v + "'");
  }
}

int Manifest::get_int(const std::string& s, const std::string& k, int fallback) const {
  std::string v = get(s, k);
  if (v.empty()) return fallback;
  try {
    return std::stoi(v);
  } catch (...) {
    throw DomainError("config: [" + s + "] " + k + " is not an integer: '" + v + "'");
  }
}

bool Manifest::get_bool(const std::string& s, const std::string& k, bool fallback) const {
  std::string v = get(s, k);
  if (v.empty()) return fallback;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw DomainError("config: [" + s + "] " + k + " is not a boolean: '" + v + "'");
}

std::vector<double> Manifest::get_list(const std::string& s, const std::string& k) const {
  std::vector<double> out;
  std::string v = get(s, k);
  std::istringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw DomainError("config: [" + s + "] " + k + " has a non-numeric entry: '" + tok + "'");
    }
  }
  return out;
}

std::vector<int> Manifest::get_int_list(const std::string& s, const std::string& k) const {
  std::vector<int> out;
  for (double d : get_list(s, k)) out.push_back(int(std::lround(d)));
  return out;
}

void Manifest::set(const std::string& s, const std::string& k, const std::string& v) {
  sections_[s][k] = v;
}

std::string Manifest::serialize() const {
  std::ostringstream ss;
  for (const auto& [sec, kv] : sections_) {
    ss << "[" << sec << "]\n";
    for (const auto& [k, v] : kv) ss << k << " = " << v << "\n";
  }
  return ss.str();
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string Manifest::hash() const {
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(serialize())));
  return std::string(buf);
}

}  // namespace hrlab
