#include "paths.hpp"

#include <atomic>
#include <unistd.h>

namespace iotrace::testing {

std::filesystem::path scratch_dir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("iotrace-" + tag + "-" + std::to_string(::getpid()) + "-" +
              std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace iotrace::testing
