#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "iotrace/debuginfo/errors.hpp"
#include "iotrace/debuginfo/sysv_abi.hpp"
#include "iotrace/model/type_desc.hpp"

namespace iotrace::debuginfo {

struct Parameter {
  std::string name;
  const model::TypeDesc* type = nullptr;
  ArgLocation location;
};

struct FunctionSig {
  std::string name;
  // Link-time addresses; add the load bias for PIE targets.
  std::uint64_t low_pc = 0;
  std::uint64_t high_pc = 0;
  std::vector<Parameter> params;
  const model::TypeDesc* return_type = nullptr;  // kind Void for void
  ReturnLocation return_location;
  std::string decl_file;
  unsigned decl_line = 0;
  bool is_static = false;
  bool variadic = false;
  // C spelling of the prototype, e.g. "int gcd(int a, int b)".
  std::string declaration;

  bool returns_void() const { return return_type->kind == model::TypeKind::Void; }
  // "file:name" using the basename of decl_file.
  std::string qualified_name() const;
};

/// Functions and types recovered from the DWARF of one executable.
class DebugIndex {
 public:
  DebugIndex(DebugIndex&&) noexcept;
  DebugIndex& operator=(DebugIndex&&) noexcept;
  ~DebugIndex();

  const std::filesystem::path& binary() const;
  std::uint64_t entry_point() const;
  bool position_independent() const;

  const std::vector<FunctionSig>& functions() const { return functions_; }

  /// Sorted, de-duplicated names of functions with code, optionally
  /// filtered by an fnmatch-style glob.
  std::vector<std::string> list_functions(std::string_view glob = {}) const;

  /// Looks up a function by name or by "file:name", where file matches the
  /// basename or a trailing path of the declaring file.
  /// Throws DebugInfoError NotFound or Ambiguous.
  const FunctionSig& resolve_function(std::string_view name) const;

  /// A named struct/union/enum ("struct rect") or typedef ("size_t").
  /// Throws DebugInfoError NotFound.
  const model::TypeDesc& find_type(std::string_view name) const;

  // Non-fatal problems met while reading (skipped units, degraded types).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend DebugIndex load_debug_info(const std::filesystem::path& binary);
  struct Impl;
  explicit DebugIndex(std::unique_ptr<Impl> impl);

  std::unique_ptr<Impl> impl_;
  std::vector<FunctionSig> functions_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_name_;
  std::vector<std::string> warnings_;
};

/// Throws DebugInfoError: Io, UnsupportedFormat, UnsupportedWordSize, or
/// NoDebugInfo when the binary carries no .debug_info.
DebugIndex load_debug_info(const std::filesystem::path& binary);

/// Address of `member` in a struct/union value of type `desc` at `base`.
/// Throws DebugInfoError NoSuchMember.
std::uint64_t field_address(std::uint64_t base, const model::TypeDesc& desc,
                            std::string_view member);

}  // namespace iotrace::debuginfo
