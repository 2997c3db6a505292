#include "iotrace/model/session_codec.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "json_values.hpp"

namespace iotrace::model {

using json::Json;
using json::SchemaError;

DecodeError::DecodeError(Kind kind, std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
      kind_(kind),
      line_(line) {}

namespace {

std::string dump_line(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

Json header_json(const TraceSession& s) {
  Json h = Json::object();
  h["iotrace_version"] = kTraceFormatVersion;
  h["target"] = s.target;
  h["argv"] = s.argv;
  if (s.exit_status.kind == ExitStatus::Kind::Exited) {
    h["exit_status"] = s.exit_status.code;
  } else {
    h["exit_status"] = Json{{"signal", s.exit_status.code}};
  }
  h["word_size_bits"] = s.word_size_bits;
  h["tool_version"] = s.tool_version;
  h["created_at"] = s.created_at;
  h["watched"] = s.watched;
  h["discarded"] = s.discarded;
  h["timed_out"] = s.timed_out;
  return h;
}

template <typename T>
T typed(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("header missing '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(std::string("header '") + key + "' has the wrong type");
  }
}

void read_header(const Json& h, TraceSession& s) {
  if (!h.is_object()) throw SchemaError("header must be an object");
  if (typed<int>(h, "iotrace_version") != kTraceFormatVersion) {
    throw SchemaError("unsupported iotrace_version");
  }
  s.target = typed<std::string>(h, "target");
  s.argv = typed<std::vector<std::string>>(h, "argv");
  if (!h.contains("exit_status")) throw SchemaError("header missing 'exit_status'");
  const Json& status = h["exit_status"];
  if (status.is_number_integer()) {
    s.exit_status = ExitStatus::exited(status.get<int>());
  } else if (status.is_object() && status.contains("signal") &&
             status["signal"].is_number_integer()) {
    s.exit_status = ExitStatus::signaled(status["signal"].get<int>());
  } else {
    throw SchemaError("exit_status must be an integer or {\"signal\": n}");
  }
  s.word_size_bits = typed<unsigned>(h, "word_size_bits");
  if (s.word_size_bits != 64) throw SchemaError("word_size_bits must be 64");
  s.tool_version = typed<std::string>(h, "tool_version");
  s.created_at = typed<std::string>(h, "created_at");
  if (h.contains("watched")) s.watched = typed<std::vector<std::string>>(h, "watched");
  if (h.contains("discarded")) s.discarded = typed<bool>(h, "discarded");
  if (h.contains("timed_out")) s.timed_out = typed<bool>(h, "timed_out");
}

}  // namespace

void encode_session(const TraceSession& session, std::ostream& out) {
  out << dump_line(header_json(session)) << '\n';
  for (const auto& [name, list] : session.records) {
    for (const auto& record : list) out << dump_line(json::record_to_json(record)) << '\n';
  }
}

std::string encode_session(const TraceSession& session) {
  std::ostringstream out;
  encode_session(session, out);
  return out.str();
}

TraceSession decode_session(std::istream& in) {
  TraceSession session;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::map<std::string, std::set<std::uint64_t>> seen_ids;

  while (std::getline(in, line)) {
    ++line_no;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DecodeError(DecodeError::Kind::MalformedLine, line_no, e.what());
    }
    try {
      if (!have_header) {
        read_header(j, session);
        have_header = true;
        continue;
      }
      CallRecord record = json::record_from_json(j);
      if (!seen_ids[record.function].insert(record.call_id).second) {
        throw DecodeError(DecodeError::Kind::DuplicateCallId, line_no,
                          "duplicate call_id " + std::to_string(record.call_id) +
                              " for function '" + record.function + "'");
      }
      validate(record);
      session.records[record.function].push_back(std::move(record));
    } catch (const SchemaError& e) {
      throw DecodeError(DecodeError::Kind::SchemaViolation, line_no, e.what());
    } catch (const InvariantViolation& e) {
      throw DecodeError(DecodeError::Kind::SchemaViolation, line_no, e.what());
    }
  }
  if (!have_header) {
    throw DecodeError(DecodeError::Kind::SchemaViolation, 0, "missing header line");
  }
  for (auto& [name, list] : session.records) {
    std::sort(list.begin(), list.end(),
              [](const CallRecord& a, const CallRecord& b) { return a.call_id < b.call_id; });
  }
  try {
    validate(session);
  } catch (const InvariantViolation& e) {
    throw DecodeError(DecodeError::Kind::SchemaViolation, 0, e.what());
  }
  return session;
}

TraceSession decode_session_string(const std::string& text) {
  std::istringstream in(text);
  return decode_session(in);
}

std::string encode_examples(const std::vector<IOExample>& examples) {
  Json arr = Json::array();
  for (const auto& ex : examples) {
    Json j = Json::object();
    j["function"] = ex.function;
    j["source_session"] = ex.source_session;
    Json rec = json::record_to_json(ex.record);
    for (auto it = rec.begin(); it != rec.end(); ++it) {
      if (it.key() != "function") j[it.key()] = it.value();
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

std::vector<IOExample> decode_examples(const std::string& text) {
  Json arr;
  try {
    arr = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DecodeError(DecodeError::Kind::MalformedLine, 0, e.what());
  }
  if (!arr.is_array()) {
    throw DecodeError(DecodeError::Kind::SchemaViolation, 0, "examples must be a JSON array");
  }
  std::vector<IOExample> out;
  std::set<std::string> functions;
  for (const auto& j : arr) {
    try {
      IOExample ex;
      ex.record = json::record_from_json(j);
      ex.function = ex.record.function;
      if (j.contains("source_session") && j["source_session"].is_string()) {
        ex.source_session = j["source_session"].get<std::string>();
      }
      validate(ex.record);
      if (ex.record.status != CallStatus::Completed) {
        throw SchemaError(ex.function + ": an I/O example must be a completed call");
      }
      if (!functions.insert(ex.function).second) {
        throw SchemaError(ex.function + ": more than one example");
      }
      out.push_back(std::move(ex));
    } catch (const SchemaError& e) {
      throw DecodeError(DecodeError::Kind::SchemaViolation, 0, e.what());
    } catch (const InvariantViolation& e) {
      throw DecodeError(DecodeError::Kind::SchemaViolation, 0, e.what());
    }
  }
  return out;
}

}  // namespace iotrace::model
