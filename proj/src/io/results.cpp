#include "io/results.hpp"

#include <fstream>
#include <sstream>

#include "core/types.hpp"

namespace hrlab {

nlohmann::json ResultEnvelope::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["config_hash"] = config_hash;
  j["metric"] = metric;
  j["wall_ms"] = wall_ms;
  j["payload"] = payload;
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : verdicts)
    vs.push_back({{"name", v.name}, {"status", v.status}, {"details", v.details}});
  j["verdicts"] = vs;
  return j;
}

ResultEnvelope ResultEnvelope::from_json(const nlohmann::json& j) {
  ResultEnvelope e;
  e.command = j.at("command").get<std::string>();
  e.config_hash = j.at("config_hash").get<std::string>();
  e.metric = j.value("metric", "linf");
  e.wall_ms = j.value("wall_ms", 0.0);
  e.payload = j.at("payload");
  for (const auto& v : j.at("verdicts"))
    e.verdicts.push_back({v.at("name").get<std::string>(), v.at("status").get<std::string>(),
                          v.value("details", "")});
  return e;
}

bool ResultEnvelope::any_fail() const {
  for (const auto& v : verdicts)
    if (v.status == "FAIL") return true;
  return false;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericalError("cannot write file: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hrlab
