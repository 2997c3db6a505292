#include "iotrace/model/value.hpp"

#include <algorithm>

namespace iotrace::model {

namespace {

std::size_t depth_of_fields(const std::vector<NamedValue>& fields) {
  std::size_t depth = 0;
  for (const auto& f : fields) depth = std::max(depth, deref_depth(*f.value));
  return depth;
}

}  // namespace

std::size_t deref_depth(const Value& value) {
  if (const auto* p = value.get_if<Pointer>()) {
    return p->pointee ? 1 + deref_depth(**p->pointee) : 0;
  }
  if (const auto* s = value.get_if<StructVal>()) return depth_of_fields(s->fields);
  if (const auto* u = value.get_if<UnionVal>()) return depth_of_fields(u->interpretations);
  if (const auto* a = value.get_if<ArrayHead>()) return deref_depth(*a->first);
  return 0;
}

std::string display_text(const Value& value) {
  struct Visitor {
    std::string operator()(const Void&) const { return {}; }
    std::string operator()(const Scalar& s) const { return s.text; }
    std::string operator()(const EnumVal& e) const { return e.name; }
    std::string operator()(const CString& s) const {
      return "\"" + s.text + "\"" + (s.truncated ? "..." : "");
    }
    std::string operator()(const Pointer& p) const {
      switch (p.state) {
        case PointerState::Null: return "NULL";
        case PointerState::Unreadable: return "[unreadable]";
        case PointerState::Valid: break;
      }
      if (p.pointee && (*p.pointee)->is<CString>()) return display_text(**p.pointee);
      return "[memory addr.]";
    }
    std::string operator()(const StructVal&) const { return "{...}"; }
    std::string operator()(const UnionVal& u) const {
      return u.interpretations.empty() ? std::string("{...}")
                                       : display_text(*u.interpretations.front().value);
    }
    std::string operator()(const ArrayHead& a) const { return display_text(*a.first); }
    std::string operator()(const Opaque&) const { return "[opaque]"; }
  };
  return std::visit(Visitor{}, value.data);
}

std::string to_hex(const Bytes& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::optional<Bytes> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

}  // namespace iotrace::model
