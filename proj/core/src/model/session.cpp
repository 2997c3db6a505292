#include "iotrace/model/session.hpp"

#include <csignal>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <set>

namespace iotrace::model {

std::string ExitStatus::describe() const {
  if (kind == Kind::Exited) return "exit " + std::to_string(code);
  const char* abbrev = sigabbrev_np(code);
  return abbrev ? std::string("signal SIG") + abbrev
                : "signal " + std::to_string(code);
}

std::string TraceSession::identifier() const {
  return std::filesystem::path(target).filename().string() + "@" + created_at;
}

std::size_t TraceSession::record_count() const {
  std::size_t n = 0;
  for (const auto& [_, list] : records) n += list.size();
  return n;
}

void validate(const CallRecord& record) {
  if (record.function.empty()) throw InvariantViolation("record without function name");
  if (record.call_id == 0) {
    throw InvariantViolation(record.function + ": call_id must be positive");
  }
  const std::string where = record.function + "#" + std::to_string(record.call_id);
  if (record.status == CallStatus::Interrupted) {
    if (!record.outputs.empty() || record.return_value) {
      throw InvariantViolation(where + ": interrupted record carries outputs");
    }
    return;
  }
  if (!record.return_value) {
    throw InvariantViolation(where + ": completed record has no return value");
  }
  if (record.inputs.size() != record.outputs.size()) {
    throw InvariantViolation(where + ": inputs/outputs differ in length");
  }
  for (std::size_t i = 0; i < record.inputs.size(); ++i) {
    if (record.inputs[i].name != record.outputs[i].name) {
      throw InvariantViolation(where + ": inputs/outputs parameter names differ");
    }
  }
}

void validate(const TraceSession& session) {
  if (session.word_size_bits != 64) {
    throw InvariantViolation("word_size_bits must be 64");
  }
  for (const auto& [name, list] : session.records) {
    std::uint64_t previous = 0;
    for (const auto& r : list) {
      if (r.function != name) {
        throw InvariantViolation("record for '" + r.function + "' filed under '" + name + "'");
      }
      validate(r);
      if (r.call_id <= previous) {
        throw InvariantViolation(name + ": call ids not strictly increasing");
      }
      previous = r.call_id;
    }
  }
}

std::string utc_timestamp_now() {
  std::time_t now = std::time(nullptr);
  if (const char* fixed = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(fixed, &end, 10);
    if (end != fixed && *end == '\0' && v >= 0) now = static_cast<std::time_t>(v);
  }
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace iotrace::model
