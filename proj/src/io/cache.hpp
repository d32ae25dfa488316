#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace hrlab {

// Config-hash keyed result cache. Directory from HRLAB_CACHE_DIR, falling back
// to <out_dir>/.cache. Access is advisory-locked; a corrupt entry is dropped and
// the caller recomputes (with a warning flag set).
class Cache {
 public:
  Cache(const std::string& out_dir, bool disabled);

  std::optional<nlohmann::json> lookup(const std::string& key);
  void store(const std::string& key, const nlohmann::json& value);
  bool saw_corruption() const { return corrupt_; }
  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  bool disabled_ = false;
  bool corrupt_ = false;
};

}  // namespace hrlab
