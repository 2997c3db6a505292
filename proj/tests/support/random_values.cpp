#include "random_values.hpp"

#include <string>

namespace iotrace::testing {

using namespace model;

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

Bytes random_bytes(Rng& rng, std::size_t max) {
  Bytes b(pick(rng, max + 1));
  for (auto& x : b) x = static_cast<std::uint8_t>(rng());
  return b;
}

std::string random_text(Rng& rng) {
  static const char* const pieces[] = {"a", "Z", "0", " ", "\"", "\\", "\n", ",", "<", "&",
                                       "é", "€", "\xf0\x9f\x99\x82", "\t", "stereo", ""};
  std::string out;
  const std::size_t n = pick(rng, 8);
  for (std::size_t i = 0; i < n; ++i) out += pieces[pick(rng, std::size(pieces))];
  return out;
}

std::string random_name(Rng& rng) {
  static const char* const names[] = {"a", "b", "bp", "str", "len", "next", "x", "values", "n"};
  return names[pick(rng, std::size(names))] + std::to_string(pick(rng, 4));
}

std::vector<NamedValue> random_members(Rng& rng, unsigned depth) {
  std::vector<NamedValue> out;
  const std::size_t n = pick(rng, 4);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({random_name(rng) + "_" + std::to_string(i), random_value(rng, depth)});
  }
  return out;
}

}  // namespace

Value random_value(Rng& rng, unsigned depth) {
  const std::size_t kinds = depth == 0 ? 4 : 9;
  switch (pick(rng, kinds)) {
    case 0: {
      auto raw = random_bytes(rng, 8);
      return Scalar{raw, std::to_string(static_cast<std::int64_t>(rng() % 2000) - 1000)};
    }
    case 1: {
      const auto n = static_cast<std::int64_t>(rng() % 100) - 50;
      return EnumVal{n, pick(rng, 2) ? "E_" + std::to_string(n) : "unknown(" + std::to_string(n) + ")"};
    }
    case 2: return CString{random_text(rng), pick(rng, 2) == 0};
    case 3: {
      Pointer p;
      p.state = pick(rng, 2) ? PointerState::Null : PointerState::Unreadable;
      if (p.state == PointerState::Unreadable) p.address = rng() | 1;
      return p;
    }
    case 4: {
      Pointer p;
      p.state = PointerState::Valid;
      p.address = rng();
      if (pick(rng, 3) != 0) p.pointee = Box<Value>(random_value(rng, depth - 1));
      return p;
    }
    case 5: return StructVal{random_members(rng, depth - 1)};
    case 6: return UnionVal{random_bytes(rng, 8), random_members(rng, depth - 1)};
    case 7: return ArrayHead{Box<Value>(random_value(rng, depth - 1))};
    default:
      return pick(rng, 2) ? Value(Opaque{random_bytes(rng, 6), random_text(rng)}) : Value(Void{});
  }
}

CallRecord random_record(Rng& rng, const std::string& function, std::uint64_t call_id) {
  CallRecord r;
  r.function = function;
  r.call_id = call_id;
  const std::size_t params = pick(rng, 5);
  for (std::size_t i = 0; i < params; ++i) {
    r.inputs.push_back({"p" + std::to_string(i), random_value(rng)});
  }
  if (pick(rng, 5) == 0) {
    r.status = CallStatus::Interrupted;
    return r;
  }
  for (const auto& in : r.inputs) r.outputs.push_back({in.name, random_value(rng)});
  r.return_value = random_value(rng);
  if (pick(rng, 2)) r.exit_pc = rng() >> 16;
  return r;
}

TraceSession random_session(Rng& rng) {
  TraceSession s;
  s.target = "/tmp/bin/target" + std::to_string(pick(rng, 10));
  s.argv = {s.target};
  for (std::size_t i = pick(rng, 3); i > 0; --i) s.argv.push_back(random_text(rng));
  s.exit_status = pick(rng, 3) == 0 ? ExitStatus::signaled(static_cast<int>(1 + pick(rng, 15)))
                                    : ExitStatus::exited(static_cast<int>(pick(rng, 3)));
  s.tool_version = "iotrace test";
  s.created_at = "2024-0" + std::to_string(1 + pick(rng, 9)) + "-1" +
                 std::to_string(pick(rng, 10)) + "T12:00:00Z";
  s.discarded = pick(rng, 8) == 0;
  s.timed_out = pick(rng, 8) == 0;
  const std::size_t functions = pick(rng, 4);
  for (std::size_t f = 0; f < functions; ++f) {
    const std::string name = "fn_" + std::to_string(f);
    s.watched.push_back(name);
    std::uint64_t id = 0;
    std::vector<CallRecord> list;
    for (std::size_t n = pick(rng, 5); n > 0; --n) {
      id += 1 + pick(rng, 3);
      list.push_back(random_record(rng, name, id));
    }
    if (!list.empty()) s.records[name] = std::move(list);
  }
  if (pick(rng, 2)) s.watched.push_back("never_called");
  return s;
}

std::vector<CallRecord> random_records(Rng& rng, std::size_t n, double interrupted_share) {
  std::vector<CallRecord> out;
  std::bernoulli_distribution interrupted(interrupted_share);
  std::uint64_t id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    id += 1 + pick(rng, 2);
    CallRecord r;
    r.function = "f";
    r.call_id = id;
    r.inputs = {{"x", Value(Scalar{{static_cast<std::uint8_t>(i)}, std::to_string(i)})}};
    if (interrupted(rng)) {
      r.status = CallStatus::Interrupted;
    } else {
      r.outputs = r.inputs;
      r.return_value = Value(Void{});
    }
    out.push_back(std::move(r));
  }
  return out;
}

aggregator::CallTupleSet random_tuples(Rng& rng, std::size_t max_tuples, std::size_t max_vars) {
  aggregator::CallTupleSet set;
  set.function = "f";
  const std::size_t vars = 1 + pick(rng, max_vars);
  for (std::size_t v = 0; v < vars; ++v) {
    set.variables.push_back(v + 1 == vars && pick(rng, 2) ? "return" : "v" + std::to_string(v));
  }
  std::vector<std::size_t> alphabet(vars);
  std::vector<bool> numeric(vars);
  for (std::size_t v = 0; v < vars; ++v) {
    alphabet[v] = 1 + pick(rng, 12);
    numeric[v] = pick(rng, 3) != 0;
  }
  const std::size_t n = pick(rng, max_tuples + 1);
  for (std::size_t i = 0; i < n; ++i) {
    aggregator::CallTuple t;
    t.call_id = i + 1;
    for (std::size_t v = 0; v < vars; ++v) {
      const std::size_t k = pick(rng, alphabet[v]);
      t.values[set.variables[v]] =
          numeric[v] ? std::to_string(static_cast<long>(k * 7) - 20) : "\"s" + std::to_string(k) + "\"";
    }
    set.tuples.push_back(std::move(t));
  }
  return set;
}

}  // namespace iotrace::testing
