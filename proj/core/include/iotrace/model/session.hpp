#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iotrace/model/value.hpp"

namespace iotrace::model {

enum class CallStatus { Completed, Interrupted };

/// One dynamic invocation of a watched function.
struct CallRecord {
  std::string function;
  std::uint64_t call_id = 0;
  std::vector<NamedValue> inputs;
  std::vector<NamedValue> outputs;
  // Void for void functions; absent for interrupted calls.
  std::optional<Value> return_value;
  std::optional<std::uint64_t> exit_pc;
  CallStatus status = CallStatus::Completed;

  friend bool operator==(const CallRecord&, const CallRecord&) = default;
};

struct ExitStatus {
  enum class Kind { Exited, Signaled };
  Kind kind = Kind::Exited;
  int code = 0;  // exit code, or signal number

  bool success() const { return kind == Kind::Exited && code == 0; }
  std::string describe() const;
  static ExitStatus exited(int code) { return {Kind::Exited, code}; }
  static ExitStatus signaled(int sig) { return {Kind::Signaled, sig}; }

  friend bool operator==(const ExitStatus&, const ExitStatus&) = default;
};

/// Every CallRecord from one run of one target binary.
struct TraceSession {
  std::string target;
  std::vector<std::string> argv;
  ExitStatus exit_status;
  unsigned word_size_bits = 64;
  // Functions the tracer was asked to watch, including ones never called.
  std::vector<std::string> watched;
  // Per-function records ordered by call_id. Functions without records
  // have no entry.
  std::map<std::string, std::vector<CallRecord>> records;
  std::string tool_version;
  std::string created_at;  // ISO-8601 UTC
  bool discarded = false;
  bool timed_out = false;

  std::string identifier() const;
  std::size_t record_count() const;

  friend bool operator==(const TraceSession&, const TraceSession&) = default;
};

/// The single call chosen to document a function.
struct IOExample {
  std::string function;
  CallRecord record;
  std::string source_session;

  friend bool operator==(const IOExample&, const IOExample&) = default;
};

class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws InvariantViolation describing the first broken invariant.
void validate(const CallRecord& record);
void validate(const TraceSession& session);

/// Honors SOURCE_DATE_EPOCH for reproducible output.
std::string utc_timestamp_now();

}  // namespace iotrace::model
