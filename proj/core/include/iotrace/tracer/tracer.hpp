#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iotrace/debuginfo/debug_index.hpp"
#include "iotrace/model/session.hpp"
#include "iotrace/tracer/config.hpp"

namespace iotrace::tracer {

class TraceError : public std::runtime_error {
 public:
  enum class Kind { InvalidConfig, LaunchFailure, BreakpointFailure, TraceTimeout, PtraceFailure };

  TraceError(Kind kind, const std::string& message, std::string function = {},
             std::optional<model::TraceSession> partial = std::nullopt)
      : std::runtime_error(message),
        kind_(kind),
        function_(std::move(function)),
        partial_(std::move(partial)) {}

  Kind kind() const { return kind_; }
  // BreakpointFailure: the function whose breakpoint could not be planted.
  const std::string& function() const { return function_; }
  // TraceTimeout: what was captured before the target was killed.
  const std::optional<model::TraceSession>& partial() const { return partial_; }

 private:
  Kind kind_;
  std::string function_;
  std::optional<model::TraceSession> partial_;
};

const char* to_string(TraceError::Kind kind);

/// Runs `binary` with `args` (argv[1..]) under ptrace and records every
/// call of the watched functions.
model::TraceSession trace(const std::filesystem::path& binary,
                          const std::vector<std::string>& args,
                          const debuginfo::DebugIndex& index, const TraceConfig& config);

}  // namespace iotrace::tracer
