#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iotrace::model {

enum class TypeKind {
  Base,
  Pointer,
  Struct,
  Union,
  Enum,
  Array,
  Typedef,
  Void,
  FunctionPointer,
  Opaque,
};

// Plain `char` is signed on x86-64; the two char encodings keep that
// distinction so rendering matches what a debugger would show.
enum class BaseEncoding {
  SignedInt,
  UnsignedInt,
  Float,
  Bool,
  SignedChar,
  UnsignedChar,
};

struct TypeDesc;

struct Member {
  std::string name;
  std::uint64_t byte_offset = 0;
  const TypeDesc* type = nullptr;
  // Set for bitfield members; those are captured as opaque.
  std::optional<std::uint32_t> bit_size;
};

struct Enumerator {
  std::string name;
  std::int64_t value = 0;
};

/// Description of a C type as recovered from debug information.
///
/// Nodes are owned by a TypeArena and refer to each other through stable
/// `const TypeDesc*` links, so self-referential structs (linked lists) form
/// cycles through pointer nodes only.
struct TypeDesc {
  TypeKind kind = TypeKind::Opaque;
  std::string name;
  std::uint64_t byte_size = 0;
  BaseEncoding encoding = BaseEncoding::SignedInt;
  // Pointer: pointee (nullptr for void*). Enum: underlying integer type.
  // Array: element type. Typedef: aliased type.
  const TypeDesc* target = nullptr;
  std::vector<Member> members;
  std::vector<Enumerator> enumerators;
  std::optional<std::uint64_t> count;
  // Why a type degraded to opaque, if it did.
  std::string note;
};

inline constexpr std::uint64_t kWordSize = 8;

/// Follows typedef links to the underlying type. Cycles (malformed input)
/// stop at the first revisited node.
const TypeDesc& strip_typedefs(const TypeDesc& desc);

std::uint64_t alignment_of(const TypeDesc& desc);

const Member* find_member(const TypeDesc& desc, std::string_view name);

bool is_char_like(const TypeDesc& desc);

/// Human-readable spelling, e.g. "struct bprint", "uint64_t", "int *".
std::string type_name(const TypeDesc& desc);

/// Checks the structural invariants of a type graph reachable from `desc`
/// and returns one message per violation (empty when valid).
std::vector<std::string> validate(const TypeDesc& desc);

class TypeArena {
 public:
  TypeArena() = default;
  TypeArena(const TypeArena&) = delete;
  TypeArena& operator=(const TypeArena&) = delete;
  TypeArena(TypeArena&&) = default;
  TypeArena& operator=(TypeArena&&) = default;

  TypeDesc* make(TypeDesc desc);

  const TypeDesc* void_type();
  const TypeDesc* base(std::string name, std::uint64_t byte_size,
                       BaseEncoding encoding);
  const TypeDesc* pointer_to(const TypeDesc* target);
  const TypeDesc* typedef_of(std::string name, const TypeDesc* target);
  const TypeDesc* array_of(const TypeDesc* element,
                           std::optional<std::uint64_t> count);
  const TypeDesc* opaque(std::string name, std::uint64_t byte_size,
                         std::string note);

  std::size_t size() const { return nodes_.size(); }

 private:
  std::deque<TypeDesc> nodes_;
  const TypeDesc* void_ = nullptr;
};

}  // namespace iotrace::model
