#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace hrlab {

inline constexpr const char* kToolVersion = "1.0.0";

struct Verdict {
  std::string name;
  std::string status;  // PASS | FAIL | REPORT
  std::string details;
};

// Envelope wrapping every emitted result: config hash, version, timing, metric
// tag, command payload, and the named verdicts it certifies.
struct ResultEnvelope {
  std::string command;
  std::string config_hash;
  std::string metric = "linf";
  double wall_ms = 0.0;
  nlohmann::json payload;
  std::vector<Verdict> verdicts;

  nlohmann::json to_json() const;
  static ResultEnvelope from_json(const nlohmann::json& j);
  bool any_fail() const;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace hrlab
