#include "io/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hrlab {

namespace {

// RAII advisory lock on <dir>/lock
struct ScopedLock {
  int fd = -1;
  explicit ScopedLock(const std::string& dir) {
    fd = ::open((dir + "/lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (fd >= 0) ::flock(fd, LOCK_EX);
  }
  ~ScopedLock() {
    if (fd >= 0) {
      ::flock(fd, LOCK_UN);
      ::close(fd);
    }
  }
};

}  // namespace

Cache::Cache(const std::string& out_dir, bool disabled) : disabled_(disabled) {
  const char* env = std::getenv("HRLAB_CACHE_DIR");
  dir_ = env && *env ? env : out_dir + "/.cache";
  if (!disabled_) std::filesystem::create_directories(dir_);
}

std::optional<nlohmann::json> Cache::lookup(const std::string& key) {
  if (disabled_) return std::nullopt;
  ScopedLock lock(dir_);
  const std::string path = dir_ + "/" + key + ".json";
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (...) {
    corrupt_ = true;
    std::error_code ec;
    std::filesystem::remove(path, ec);
    return std::nullopt;
  }
}

void Cache::store(const std::string& key, const nlohmann::json& value) {
  if (disabled_) return;
  ScopedLock lock(dir_);
  const std::string path = dir_ + "/" + key + ".json";
  std::ofstream out(path + ".tmp", std::ios::binary);
  out << value.dump(2) << "\n";
  out.close();
  std::filesystem::rename(path + ".tmp", path);
}

}  // namespace hrlab
