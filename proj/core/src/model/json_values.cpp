#include "json_values.hpp"

#include <charconv>
#include <cstdio>

namespace iotrace::model::json {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw SchemaError("expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing key '") + key + "'");
  return *it;
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw SchemaError(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

Bytes bits_field(const Json& j, const char* key) {
  auto bytes = from_hex(string_field(j, key));
  if (!bytes) throw SchemaError(std::string("'") + key + "' is not a hex string");
  return *bytes;
}

std::uint64_t parse_address(const std::string& text) {
  if (text.size() < 3 || text[0] != '0' || text[1] != 'x') {
    throw SchemaError("address must be a 0x-prefixed hex string");
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data() + 2, text.data() + text.size(), value, 16);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw SchemaError("malformed address '" + text + "'");
  }
  return value;
}

Json named_list(const std::vector<NamedValue>& list) {
  Json arr = Json::array();
  for (const auto& nv : list) {
    Json item = Json::object();
    item["name"] = nv.name;
    item["value"] = value_to_json(*nv.value);
    arr.push_back(std::move(item));
  }
  return arr;
}

std::vector<NamedValue> named_list_from(const Json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of named values");
  std::vector<NamedValue> out;
  out.reserve(j.size());
  for (const auto& item : j) {
    out.push_back(NamedValue{string_field(item, "name"), value_from_json(field(item, "value"))});
  }
  return out;
}

}  // namespace

std::string hex_address(std::uint64_t address) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(address));
  return buf;
}

Json value_to_json(const Value& value) {
  Json j = Json::object();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Void>) {
          j["kind"] = "void";
        } else if constexpr (std::is_same_v<T, Scalar>) {
          j["kind"] = "scalar";
          j["bits"] = to_hex(v.raw);
          j["text"] = v.text;
        } else if constexpr (std::is_same_v<T, EnumVal>) {
          j["kind"] = "enum";
          j["value"] = v.numeric;
          j["name"] = v.name;
        } else if constexpr (std::is_same_v<T, CString>) {
          j["kind"] = "cstring";
          j["text"] = v.text;
          j["truncated"] = v.truncated;
        } else if constexpr (std::is_same_v<T, Pointer>) {
          j["kind"] = "pointer";
          switch (v.state) {
            case PointerState::Null: j["state"] = "null"; break;
            case PointerState::Valid: j["state"] = "valid"; break;
            case PointerState::Unreadable: j["state"] = "unreadable"; break;
          }
          if (v.state != PointerState::Null) j["address"] = hex_address(v.address);
          if (v.pointee) j["pointee"] = value_to_json(**v.pointee);
        } else if constexpr (std::is_same_v<T, StructVal>) {
          j["kind"] = "struct";
          j["fields"] = named_list(v.fields);
        } else if constexpr (std::is_same_v<T, UnionVal>) {
          j["kind"] = "union";
          j["bits"] = to_hex(v.raw);
          j["members"] = named_list(v.interpretations);
        } else if constexpr (std::is_same_v<T, ArrayHead>) {
          j["kind"] = "array_head";
          j["first"] = value_to_json(*v.first);
          j["note"] = v.note;
        } else if constexpr (std::is_same_v<T, Opaque>) {
          j["kind"] = "opaque";
          j["bits"] = to_hex(v.raw);
          j["note"] = v.note;
        }
      },
      value.data);
  return j;
}

Value value_from_json(const Json& j) {
  const std::string kind = string_field(j, "kind");
  if (kind == "void") return Void{};
  if (kind == "scalar") return Scalar{bits_field(j, "bits"), string_field(j, "text")};
  if (kind == "enum") {
    const Json& v = field(j, "value");
    if (!v.is_number_integer()) throw SchemaError("enum value must be an integer");
    return EnumVal{v.get<std::int64_t>(), string_field(j, "name")};
  }
  if (kind == "cstring") {
    const Json& t = field(j, "truncated");
    if (!t.is_boolean()) throw SchemaError("'truncated' must be a boolean");
    return CString{string_field(j, "text"), t.get<bool>()};
  }
  if (kind == "pointer") {
    Pointer p;
    const std::string state = string_field(j, "state");
    if (state == "null") {
      p.state = PointerState::Null;
    } else if (state == "valid") {
      p.state = PointerState::Valid;
    } else if (state == "unreadable") {
      p.state = PointerState::Unreadable;
    } else {
      throw SchemaError("unknown pointer state '" + state + "'");
    }
    if (p.state != PointerState::Null) p.address = parse_address(string_field(j, "address"));
    if (auto it = j.find("pointee"); it != j.end()) {
      if (p.state != PointerState::Valid) throw SchemaError("only valid pointers carry a pointee");
      p.pointee = Box<Value>(value_from_json(*it));
    }
    return p;
  }
  if (kind == "struct") return StructVal{named_list_from(field(j, "fields"))};
  if (kind == "union") {
    return UnionVal{bits_field(j, "bits"), named_list_from(field(j, "members"))};
  }
  if (kind == "array_head") {
    return ArrayHead{Box<Value>(value_from_json(field(j, "first"))), string_field(j, "note")};
  }
  if (kind == "opaque") return Opaque{bits_field(j, "bits"), string_field(j, "note")};
  throw SchemaError("unknown value kind '" + kind + "'");
}

Json record_to_json(const CallRecord& record) {
  Json j = Json::object();
  j["function"] = record.function;
  j["call_id"] = record.call_id;
  j["status"] = record.status == CallStatus::Completed ? "completed" : "interrupted";
  j["inputs"] = named_list(record.inputs);
  if (record.status == CallStatus::Completed) {
    j["outputs"] = named_list(record.outputs);
    if (record.return_value) j["return"] = value_to_json(*record.return_value);
    if (record.exit_pc) j["exit_pc"] = hex_address(*record.exit_pc);
  }
  return j;
}

CallRecord record_from_json(const Json& j) {
  CallRecord r;
  r.function = string_field(j, "function");
  const Json& id = field(j, "call_id");
  if (!id.is_number_unsigned() || id.get<std::uint64_t>() == 0) {
    throw SchemaError("call_id must be a positive integer");
  }
  r.call_id = id.get<std::uint64_t>();
  const std::string status = string_field(j, "status");
  if (status == "completed") {
    r.status = CallStatus::Completed;
  } else if (status == "interrupted") {
    r.status = CallStatus::Interrupted;
  } else {
    throw SchemaError("unknown status '" + status + "'");
  }
  r.inputs = named_list_from(field(j, "inputs"));
  if (r.status == CallStatus::Completed) {
    r.outputs = named_list_from(field(j, "outputs"));
    r.return_value = value_from_json(field(j, "return"));
    if (auto it = j.find("exit_pc"); it != j.end()) {
      if (!it->is_string()) throw SchemaError("'exit_pc' must be a string");
      r.exit_pc = parse_address(it->get<std::string>());
    }
  } else if (j.contains("outputs") || j.contains("return")) {
    throw SchemaError("interrupted record must not carry outputs or return");
  }
  return r;
}

}  // namespace iotrace::model::json
