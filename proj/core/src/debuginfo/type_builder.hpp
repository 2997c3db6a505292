#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "dwarf.hpp"
#include "iotrace/model/type_desc.hpp"

namespace iotrace::debuginfo {

/// Turns type DIEs into TypeDesc graphs. Results are cached by DIE offset,
/// so shared and self-referential types are built once. Anything the
/// builder does not understand becomes an Opaque node with a note.
class TypeBuilder {
 public:
  TypeBuilder(const DwarfReader& reader, model::TypeArena& arena)
      : reader_(reader), arena_(arena) {}

  // A null DieRef stands for void.
  const model::TypeDesc* build(DieRef die);
  // The type named by DW_AT_type of `owner`, void if absent.
  const model::TypeDesc* type_of(DieRef owner);

  /// C declarator spelling of the type DIE `type` around `inner`
  /// (a name, or empty for an abstract declarator).
  std::string declarator(DieRef type, const std::string& inner) const;
  std::string parameter_list(DieRef subprogram_or_type, bool name_params) const;

  std::vector<std::string>& warnings() { return warnings_; }

 private:
  const model::TypeDesc* build_uncached(DieRef die, unsigned depth);
  const model::TypeDesc* build_at(DieRef die, unsigned depth);
  void fill_members(model::TypeDesc& node, DieRef die, unsigned depth);
  std::string tag_name(DieRef die) const;

  const DwarfReader& reader_;
  model::TypeArena& arena_;
  std::unordered_map<std::uint64_t, const model::TypeDesc*> cache_;
  std::vector<std::string> warnings_;
};

}  // namespace iotrace::debuginfo
