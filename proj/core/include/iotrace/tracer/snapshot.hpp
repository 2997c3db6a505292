#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "iotrace/debuginfo/debug_index.hpp"
#include "iotrace/model/value.hpp"
#include "iotrace/tracer/config.hpp"
#include "iotrace/tracer/memory.hpp"

namespace iotrace::tracer {

/// Registers of a stopped thread that matter for argument and return
/// value capture.
struct RegisterState {
  std::uint64_t rip = 0;
  std::uint64_t rsp = 0;
  std::uint64_t rax = 0;
  std::uint64_t rdx = 0;
  // rdi, rsi, rdx, rcx, r8, r9
  std::array<std::uint64_t, 6> args{};
  std::array<std::array<std::uint8_t, 16>, 8> xmm{};
  // x87 st(0), 80-bit extended precision.
  std::array<std::uint8_t, 10> st0{};
};

/// Either an address in the target or bytes already copied out of it
/// (register contents, or a stack argument captured at entry).
struct ValueSource {
  std::optional<std::uint64_t> address;
  model::Bytes bytes;

  static ValueSource at(std::uint64_t addr) { return {addr, {}}; }
  static ValueSource of(model::Bytes b) { return {std::nullopt, std::move(b)}; }
};

/// Builds the Value tree for an object of type `desc`. Pointers are
/// followed up to config.max_deref_depth hops; an address already visited
/// in this call is not expanded again. Never throws for unreadable
/// memory: that shows up as Pointer(Unreadable) or Opaque.
model::Value snapshot_value(MemoryReader& memory, const ValueSource& source,
                            const model::TypeDesc& desc, const TraceConfig& config);

/// The bytes of a parameter at function entry, or nullopt when its
/// location is unknown or unreadable.
std::optional<model::Bytes> capture_argument(const RegisterState& regs, MemoryReader& memory,
                                             const debuginfo::Parameter& param);

/// Return value at the matching exit of `sig`.
model::Value read_return_value(const RegisterState& regs, MemoryReader& memory,
                               const debuginfo::FunctionSig& sig, const TraceConfig& config);

/// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

}  // namespace iotrace::tracer
