#include "iotrace/tracer/snapshot.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_set>

#include "iotrace/model/scalar_format.hpp"

namespace iotrace::tracer {

using model::Bytes;
using model::PointerState;
using model::TypeDesc;
using model::TypeKind;
using model::Value;

void BufferMemory::map(std::uint64_t address, std::vector<std::uint8_t> bytes) {
  regions_[address] = std::move(bytes);
}

bool BufferMemory::read(std::uint64_t address, std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    const std::uint64_t at = address + done;
    auto it = regions_.upper_bound(at);
    if (it == regions_.begin()) return false;
    --it;
    const std::uint64_t offset = at - it->first;
    if (offset >= it->second.size()) return false;
    const std::size_t n = std::min<std::size_t>(out.size() - done, it->second.size() - offset);
    std::memcpy(out.data() + done, it->second.data() + offset, n);
    done += n;
  }
  return true;
}

std::string sanitize_utf8(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  const auto* s = reinterpret_cast<const unsigned char*>(in.data());
  const std::size_t n = in.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char c = s[i];
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
      ++i;
      continue;
    }
    // Well-formed sequences per the Unicode table: lead byte range, then
    // the allowed range of the second byte.
    std::size_t len = 0;
    unsigned char lo = 0x80;
    unsigned char hi = 0xbf;
    if (c >= 0xc2 && c <= 0xdf) {
      len = 2;
    } else if (c >= 0xe0 && c <= 0xef) {
      len = 3;
      if (c == 0xe0) lo = 0xa0;
      if (c == 0xed) hi = 0x9f;
    } else if (c >= 0xf0 && c <= 0xf4) {
      len = 4;
      if (c == 0xf0) lo = 0x90;
      if (c == 0xf4) hi = 0x8f;
    }
    // One replacement per maximal invalid subpart.
    std::size_t k = 1;
    while (len != 0 && k < len && i + k < n) {
      const unsigned char b = s[i + k];
      const bool fits = k == 1 ? (b >= lo && b <= hi) : (b & 0xc0) == 0x80;
      if (!fits) break;
      ++k;
    }
    if (len != 0 && k == len) {
      out.append(in.substr(i, len));
    } else {
      out += "\xef\xbf\xbd";
    }
    i += k;
  }
  return out;
}

namespace {

std::uint64_t load_le(std::span<const std::uint8_t> bytes) {
  std::uint64_t v = 0;
  for (std::size_t i = std::min<std::size_t>(bytes.size(), 8); i-- > 0;) v = (v << 8) | bytes[i];
  return v;
}

class Snapshotter {
 public:
  Snapshotter(MemoryReader& memory, const TraceConfig& config)
      : memory_(memory), config_(config) {}

  Value interpret(std::span<const std::uint8_t> bytes, const TypeDesc& desc, unsigned hops_left) {
    const TypeDesc& t = model::strip_typedefs(desc);
    const Bytes raw(bytes.begin(), bytes.end());
    switch (t.kind) {
      case TypeKind::Void:
        return model::Void{};
      case TypeKind::Base: {
        std::string text = model::render_scalar(bytes, t);
        if (text.empty()) return model::Opaque{raw, "unsupported scalar"};
        return model::Scalar{raw, std::move(text)};
      }
      case TypeKind::Enum: {
        std::int64_t n = static_cast<std::int64_t>(load_le(bytes));
        const bool is_signed = t.target == nullptr ||
                               model::strip_typedefs(*t.target).encoding ==
                                   model::BaseEncoding::SignedInt;
        if (is_signed && !bytes.empty() && bytes.size() < 8) {
          const unsigned shift = static_cast<unsigned>(64 - 8 * bytes.size());
          n = static_cast<std::int64_t>(static_cast<std::uint64_t>(n) << shift) >> shift;
        }
        for (const auto& e : t.enumerators) {
          if (e.value == n) return model::EnumVal{n, e.name};
        }
        return model::EnumVal{n, "unknown(" + std::to_string(n) + ")"};
      }
      case TypeKind::Opaque:
        return model::Opaque{raw, t.note.empty() ? std::string("opaque type") : t.note};
      case TypeKind::FunctionPointer: {
        model::Pointer p;
        p.address = load_le(bytes);
        p.state = p.address == 0 ? PointerState::Null : PointerState::Valid;
        return p;
      }
      case TypeKind::Pointer:
        return pointer(load_le(bytes), t, hops_left);
      case TypeKind::Struct: {
        model::StructVal s;
        for (const auto& m : t.members) s.fields.push_back({m.name, member(bytes, m, hops_left)});
        return s;
      }
      case TypeKind::Union: {
        model::UnionVal u;
        u.raw = raw;
        for (const auto& m : t.members) {
          u.interpretations.push_back({m.name, member(bytes, m, hops_left)});
        }
        return u;
      }
      case TypeKind::Array: {
        const std::uint64_t elem = t.target ? model::strip_typedefs(*t.target).byte_size : 0;
        if (t.target == nullptr || elem == 0 || t.count.value_or(0) == 0 || elem > bytes.size()) {
          return model::ArrayHead{Value{model::Opaque{{}, "no elements"}}};
        }
        return model::ArrayHead{interpret(bytes.first(elem), *t.target, hops_left)};
      }
      case TypeKind::Typedef:
        break;
    }
    return model::Opaque{raw, "unresolved typedef"};
  }

 private:
  Value member(std::span<const std::uint8_t> bytes, const model::Member& m, unsigned hops_left) {
    if (m.type == nullptr) return model::Opaque{{}, "member without type"};
    const std::uint64_t size = model::strip_typedefs(*m.type).byte_size;
    if (m.bit_size) {
      const std::uint64_t span = (*m.bit_size + 7) / 8;
      const std::uint64_t end = std::min<std::uint64_t>(m.byte_offset + span, bytes.size());
      Bytes raw;
      if (m.byte_offset < end) raw.assign(bytes.begin() + m.byte_offset, bytes.begin() + end);
      return model::Opaque{raw, "bitfield"};
    }
    if (m.byte_offset > bytes.size() || bytes.size() - m.byte_offset < size) {
      return model::Opaque{{}, "member outside object"};
    }
    return interpret(bytes.subspan(m.byte_offset, size), *m.type, hops_left);
  }

  bool readable(std::uint64_t address) {
    std::uint8_t b;
    return memory_.read(address, {&b, 1});
  }

  Value pointer(std::uint64_t address, const TypeDesc& t, unsigned hops_left) {
    model::Pointer p;
    p.address = address;
    if (address == 0) {
      p.state = PointerState::Null;
      return p;
    }
    p.state = PointerState::Valid;
    if (hops_left == 0) return p;
    const TypeDesc* target = t.target ? &model::strip_typedefs(*t.target) : nullptr;
    if (target == nullptr || target->kind == TypeKind::Void || target->kind == TypeKind::Opaque ||
        target->byte_size == 0) {
      if (!readable(address)) p.state = PointerState::Unreadable;
      return p;
    }
    if (model::is_char_like(*target)) {
      auto s = c_string(address);
      if (!s) {
        p.state = PointerState::Unreadable;
        return p;
      }
      p.pointee = Value{std::move(*s)};
      return p;
    }
    if (visited_.count(address)) {
      if (!readable(address)) p.state = PointerState::Unreadable;
      return p;
    }
    Bytes bytes(target->byte_size);
    if (!memory_.read(address, bytes)) {
      p.state = PointerState::Unreadable;
      return p;
    }
    visited_.insert(address);
    p.pointee = interpret(bytes, *t.target, hops_left - 1);
    return p;
  }

  std::optional<model::CString> c_string(std::uint64_t address) {
    constexpr std::uint64_t kPage = 4096;
    const std::size_t window = config_.string_cap_bytes + 1;
    std::string text;
    bool terminated = false;
    while (text.size() < window) {
      const std::uint64_t at = address + text.size();
      const std::size_t chunk =
          std::min<std::uint64_t>(window - text.size(), kPage - at % kPage);
      std::string buf(chunk, '\0');
      if (!memory_.read(at, {reinterpret_cast<std::uint8_t*>(buf.data()), chunk})) {
        // Salvage the readable prefix of the chunk.
        std::size_t got = 0;
        while (got < chunk &&
               memory_.read(at + got, {reinterpret_cast<std::uint8_t*>(buf.data()) + got, 1})) {
          if (buf[got++] == '\0') break;
        }
        buf.resize(got);
        const auto nul = buf.find('\0');
        text.append(buf, 0, nul == std::string::npos ? buf.size() : nul);
        terminated = nul != std::string::npos;
        if (text.empty() && !terminated) return std::nullopt;
        break;
      }
      const auto nul = buf.find('\0');
      if (nul != std::string::npos) {
        text.append(buf, 0, nul);
        terminated = true;
        break;
      }
      text += buf;
    }
    model::CString s;
    if (text.size() > config_.string_cap_bytes) text.resize(config_.string_cap_bytes);
    s.truncated = !terminated;
    s.text = sanitize_utf8(text);
    return s;
  }

  MemoryReader& memory_;
  const TraceConfig& config_;
  std::unordered_set<std::uint64_t> visited_;
};

}  // namespace

Value snapshot_value(MemoryReader& memory, const ValueSource& source, const TypeDesc& desc,
                     const TraceConfig& config) {
  Snapshotter snap(memory, config);
  if (!source.address) return snap.interpret(source.bytes, desc, config.max_deref_depth);
  Bytes bytes(model::strip_typedefs(desc).byte_size);
  if (!memory.read(*source.address, bytes)) return model::Opaque{{}, "unreadable"};
  return snap.interpret(bytes, desc, config.max_deref_depth);
}

std::optional<Bytes> capture_argument(const RegisterState& regs, MemoryReader& memory,
                                      const debuginfo::Parameter& param) {
  using Kind = debuginfo::ArgLocation::Kind;
  const std::uint64_t size = model::strip_typedefs(*param.type).byte_size;
  const auto& loc = param.location;
  switch (loc.kind) {
    case Kind::Registers: {
      Bytes out;
      for (const auto& piece : loc.pieces) {
        std::uint8_t word[8];
        if (piece.file == debuginfo::RegPiece::File::Integer) {
          std::memcpy(word, &regs.args.at(piece.index), 8);
        } else {
          std::memcpy(word, regs.xmm.at(piece.index).data(), 8);
        }
        out.insert(out.end(), word, word + 8);
      }
      out.resize(std::min<std::size_t>(out.size(), size));
      return out;
    }
    case Kind::Stack: {
      Bytes out(size);
      if (!memory.read(regs.rsp + loc.stack_offset, out)) return std::nullopt;
      return out;
    }
    case Kind::Unsupported:
      break;
  }
  return std::nullopt;
}

Value read_return_value(const RegisterState& regs, MemoryReader& memory,
                        const debuginfo::FunctionSig& sig, const TraceConfig& config) {
  using Kind = debuginfo::ReturnLocation::Kind;
  const auto& loc = sig.return_location;
  const TypeDesc& type = *sig.return_type;
  const std::uint64_t size = model::strip_typedefs(type).byte_size;
  switch (loc.kind) {
    case Kind::Void:
      return model::Void{};
    case Kind::Registers: {
      Bytes out;
      for (const auto& piece : loc.pieces) {
        std::uint8_t word[8];
        if (piece.file == debuginfo::RegPiece::File::Integer) {
          const std::uint64_t r = piece.index == 0 ? regs.rax : regs.rdx;
          std::memcpy(word, &r, 8);
        } else {
          std::memcpy(word, regs.xmm.at(piece.index).data(), 8);
        }
        out.insert(out.end(), word, word + 8);
      }
      out.resize(std::min<std::size_t>(out.size(), size));
      return snapshot_value(memory, ValueSource::of(std::move(out)), type, config);
    }
    case Kind::Memory:
      return snapshot_value(memory, ValueSource::at(regs.rax), type, config);
    case Kind::X87: {
      Bytes out(16, 0);
      std::copy(regs.st0.begin(), regs.st0.end(), out.begin());
      out.resize(std::min<std::size_t>(16, size));
      return snapshot_value(memory, ValueSource::of(std::move(out)), type, config);
    }
    case Kind::Unsupported:
      break;
  }
  Bytes raw(8);
  std::memcpy(raw.data(), &regs.rax, 8);
  return model::Opaque{raw, loc.reason.empty() ? std::string("unsupported return class")
                                               : loc.reason};
}

}  // namespace iotrace::tracer
