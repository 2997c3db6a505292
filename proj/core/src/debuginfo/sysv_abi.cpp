#include "iotrace/debuginfo/sysv_abi.hpp"

#include <algorithm>
#include <optional>

namespace iotrace::debuginfo {

using model::BaseEncoding;
using model::TypeDesc;
using model::TypeKind;

namespace {

enum class Cls { None, Integer, Sse, X87, X87Up, Memory };

Cls merge(Cls a, Cls b) {
  if (a == b) return a;
  if (a == Cls::None) return b;
  if (b == Cls::None) return a;
  if (a == Cls::Memory || b == Cls::Memory) return Cls::Memory;
  if (a == Cls::Integer || b == Cls::Integer) return Cls::Integer;
  if (a == Cls::X87 || a == Cls::X87Up || b == Cls::X87 || b == Cls::X87Up) return Cls::Memory;
  return Cls::Sse;
}

// Returns false when some part of the type cannot be classified.
bool classify_into(const TypeDesc& desc, std::uint64_t offset, std::vector<Cls>& eb,
                   unsigned depth) {
  if (depth > 64) return false;
  const TypeDesc& t = model::strip_typedefs(desc);
  auto put = [&](std::uint64_t at, Cls c) {
    const std::uint64_t i = at / 8;
    if (i >= eb.size()) return false;
    eb[i] = merge(eb[i], c);
    return true;
  };
  switch (t.kind) {
    case TypeKind::Base:
      if (t.encoding == BaseEncoding::Float) {
        if (t.byte_size == 4 || t.byte_size == 8) return put(offset, Cls::Sse);
        if (t.byte_size == 16) return put(offset, Cls::X87) && put(offset + 8, Cls::X87Up);
        return false;
      }
      if (t.byte_size == 16) return put(offset, Cls::Integer) && put(offset + 8, Cls::Integer);
      return t.byte_size > 0 && t.byte_size <= 8 && put(offset, Cls::Integer);
    case TypeKind::Enum:
    case TypeKind::Pointer:
    case TypeKind::FunctionPointer:
      return put(offset, Cls::Integer);
    case TypeKind::Struct:
    case TypeKind::Union:
      for (const auto& m : t.members) {
        if (m.type == nullptr) return false;
        const std::uint64_t at = offset + m.byte_offset;
        if (m.bit_size) {
          if (!put(at, Cls::Integer)) return false;
          continue;
        }
        if (at % model::alignment_of(*m.type) != 0) {
          eb.assign(eb.size(), Cls::Memory);
          return true;
        }
        if (!classify_into(*m.type, at, eb, depth + 1)) return false;
      }
      return true;
    case TypeKind::Array: {
      if (t.target == nullptr) return false;
      const std::uint64_t elem = model::strip_typedefs(*t.target).byte_size;
      const std::uint64_t count = t.count.value_or(0);
      if (elem == 0 && count > 0) return false;
      for (std::uint64_t i = 0; i < count; ++i) {
        if (!classify_into(*t.target, offset + i * elem, eb, depth + 1)) return false;
      }
      return true;
    }
    case TypeKind::Typedef:
    case TypeKind::Void:
    case TypeKind::Opaque:
      return false;
  }
  return false;
}

// Eightbyte classes of a value type, a single Memory entry for values
// passed in memory, or nullopt when unclassifiable.
std::optional<std::vector<Cls>> classify(const TypeDesc& desc) {
  const TypeDesc& t = model::strip_typedefs(desc);
  const std::uint64_t size = t.byte_size;
  if (size == 0) return std::nullopt;
  const bool aggregate = t.kind == TypeKind::Struct || t.kind == TypeKind::Union ||
                         t.kind == TypeKind::Array;
  if (size > 16) {
    if (!aggregate) return std::nullopt;
    return std::vector<Cls>{Cls::Memory};
  }
  std::vector<Cls> eb((size + 7) / 8, Cls::None);
  if (!classify_into(t, 0, eb, 0)) return std::nullopt;
  for (std::size_t i = 0; i < eb.size(); ++i) {
    if (eb[i] == Cls::Memory) return std::vector<Cls>{Cls::Memory};
    if (eb[i] == Cls::X87Up && (i == 0 || eb[i - 1] != Cls::X87)) {
      return std::vector<Cls>{Cls::Memory};
    }
    if (eb[i] == Cls::None) eb[i] = Cls::Integer;
  }
  return eb;
}

bool is_x87(const std::vector<Cls>& eb) {
  return std::find(eb.begin(), eb.end(), Cls::X87) != eb.end();
}

std::uint64_t round_up(std::uint64_t v, std::uint64_t a) { return (v + a - 1) / a * a; }

}  // namespace

const char* integer_arg_register(unsigned index) {
  static constexpr const char* kNames[] = {"rdi", "rsi", "rdx", "rcx", "r8", "r9"};
  return index < 6 ? kNames[index] : "?";
}

CallingConvention classify_call(const std::vector<const TypeDesc*>& params, const TypeDesc& ret) {
  CallingConvention cc;
  unsigned next_int = 0;
  unsigned next_sse = 0;

  const TypeDesc& r = model::strip_typedefs(ret);
  if (r.kind == TypeKind::Void) {
    cc.result.kind = ReturnLocation::Kind::Void;
  } else if (auto eb = classify(r)) {
    if (eb->front() == Cls::Memory) {
      cc.result.kind = ReturnLocation::Kind::Memory;
      next_int = 1;  // hidden result pointer in rdi
    } else if (is_x87(*eb)) {
      cc.result.kind = ReturnLocation::Kind::X87;
    } else {
      cc.result.kind = ReturnLocation::Kind::Registers;
      unsigned ints = 0;
      unsigned sses = 0;
      for (Cls c : *eb) {
        if (c == Cls::Sse) {
          cc.result.pieces.push_back({RegPiece::File::Sse, sses++});
        } else {
          cc.result.pieces.push_back({RegPiece::File::Integer, ints++});
        }
      }
    }
  } else {
    cc.result.kind = ReturnLocation::Kind::Unsupported;
    cc.result.reason = "return type cannot be classified";
  }

  std::uint64_t stack = 8;
  bool lost = false;
  for (const TypeDesc* p : params) {
    ArgLocation loc;
    if (lost || p == nullptr) {
      loc.reason = "follows a parameter with unknown location";
      cc.params.push_back(std::move(loc));
      continue;
    }
    auto eb = classify(*p);
    if (!eb) {
      loc.reason = "parameter type cannot be classified";
      lost = true;
      cc.params.push_back(std::move(loc));
      continue;
    }
    bool in_memory = eb->front() == Cls::Memory || is_x87(*eb);
    if (!in_memory) {
      const auto need_sse = static_cast<unsigned>(std::count(eb->begin(), eb->end(), Cls::Sse));
      const auto need_int = static_cast<unsigned>(eb->size()) - need_sse;
      if (next_int + need_int <= 6 && next_sse + need_sse <= 8) {
        loc.kind = ArgLocation::Kind::Registers;
        for (Cls c : *eb) {
          if (c == Cls::Sse) {
            loc.pieces.push_back({RegPiece::File::Sse, next_sse++});
          } else {
            loc.pieces.push_back({RegPiece::File::Integer, next_int++});
          }
        }
      } else {
        in_memory = true;
      }
    }
    if (in_memory) {
      const TypeDesc& t = model::strip_typedefs(*p);
      const std::uint64_t align = std::max<std::uint64_t>(8, model::alignment_of(t));
      loc.kind = ArgLocation::Kind::Stack;
      loc.stack_offset = 8 + round_up(stack - 8, align);
      stack = loc.stack_offset + round_up(t.byte_size, 8);
    }
    cc.params.push_back(std::move(loc));
  }
  return cc;
}

}  // namespace iotrace::debuginfo
