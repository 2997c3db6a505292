#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iotrace/model/type_desc.hpp"

namespace iotrace::debuginfo {

// Where one eightbyte of a register-passed value lives at function entry.
struct RegPiece {
  enum class File { Integer, Sse };
  File file = File::Integer;
  // Integer: 0..5 = rdi, rsi, rdx, rcx, r8, r9 for arguments and 0..1 =
  // rax, rdx for return values. Sse: xmm register number.
  unsigned index = 0;
};

/// Location of a parameter at the first instruction of a function, as
/// fixed by the System V AMD64 calling convention.
struct ArgLocation {
  enum class Kind { Registers, Stack, Unsupported };
  Kind kind = Kind::Unsupported;
  std::vector<RegPiece> pieces;
  // Stack: offset from rsp at entry (the return address sits at offset 0).
  std::uint64_t stack_offset = 0;
  std::string reason;
};

struct ReturnLocation {
  enum class Kind { Void, Registers, Memory, X87, Unsupported };
  Kind kind = Kind::Void;
  // Registers: rax/rdx and xmm0/xmm1 pieces. Memory: the buffer address is
  // returned in rax.
  std::vector<RegPiece> pieces;
  std::string reason;
};

struct CallingConvention {
  std::vector<ArgLocation> params;
  ReturnLocation result;
};

/// Assigns locations to the named parameters of a function. `ret` is the
/// return type (kind Void for void functions).
CallingConvention classify_call(const std::vector<const model::TypeDesc*>& params,
                                const model::TypeDesc& ret);

const char* integer_arg_register(unsigned index);

}  // namespace iotrace::debuginfo
