#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace iotrace::debuginfo {

class DebugInfoError : public std::runtime_error {
 public:
  enum class Kind {
    Io,
    NoDebugInfo,
    UnsupportedFormat,
    UnsupportedWordSize,
    NotFound,
    Ambiguous,
    NoSuchMember,
  };

  DebugInfoError(Kind kind, const std::string& message,
                 std::vector<std::string> candidates = {})
      : std::runtime_error(message), kind_(kind), candidates_(std::move(candidates)) {}

  Kind kind() const { return kind_; }
  // Ambiguous: "file:name" spellings that would disambiguate.
  const std::vector<std::string>& candidates() const { return candidates_; }

 private:
  Kind kind_;
  std::vector<std::string> candidates_;
};

const char* to_string(DebugInfoError::Kind kind);

}  // namespace iotrace::debuginfo
