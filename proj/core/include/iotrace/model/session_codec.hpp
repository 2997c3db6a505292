#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "iotrace/model/session.hpp"

namespace iotrace::model {

inline constexpr int kTraceFormatVersion = 1;

class DecodeError : public std::runtime_error {
 public:
  enum class Kind { MalformedLine, SchemaViolation, DuplicateCallId };

  DecodeError(Kind kind, std::size_t line, const std::string& message);

  Kind kind() const { return kind_; }
  // 1-based line of the offending input; 0 when not line-specific.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// Writes `*.iotrace.jsonl`: a header object on line 1, then one
/// CallRecord per line (functions in name order, records by call_id).
void encode_session(const TraceSession& session, std::ostream& out);
std::string encode_session(const TraceSession& session);

/// Streams a trace back in; every model invariant is re-checked.
TraceSession decode_session(std::istream& in);
TraceSession decode_session_string(const std::string& text);

/// `examples.json`: a JSON array of IOExample objects.
std::string encode_examples(const std::vector<IOExample>& examples);
std::vector<IOExample> decode_examples(const std::string& text);

}  // namespace iotrace::model
