#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace iotrace::tracer {

struct TraceConfig {
  // Names to watch; "file:name" picks one of several same-named statics.
  std::vector<std::string> functions;
  unsigned max_deref_depth = 3;
  std::size_t string_cap_bytes = 256;
  bool discard_on_failure = false;
  std::chrono::seconds timeout{300};

  // Extra NAME=value entries appended to the target's environment.
  std::vector<std::string> extra_env;
  // File descriptors to install as the target's stdin/stdout/stderr;
  // -1 inherits the tracer's.
  int stdin_fd = -1;
  int stdout_fd = -1;
  int stderr_fd = -1;
};

/// Problems with a configuration, one message each (empty when valid).
std::vector<std::string> validate(const TraceConfig& config);

/// The timeout after applying the IOTRACE_TIMEOUT environment override
/// (whole seconds). Malformed values are ignored.
std::chrono::seconds effective_timeout(const TraceConfig& config);

}  // namespace iotrace::tracer
