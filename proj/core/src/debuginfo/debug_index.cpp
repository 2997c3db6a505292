#include "iotrace/debuginfo/debug_index.hpp"

#include <elf.h>
#include <fnmatch.h>

#include <algorithm>
#include <set>

#include "dwarf.hpp"
#include "dwarf_constants.hpp"
#include "iotrace/debuginfo/elf_file.hpp"
#include "line_table.hpp"
#include "type_builder.hpp"

namespace iotrace::debuginfo {

using Kind = DebugInfoError::Kind;

struct DebugIndex::Impl {
  explicit Impl(const std::filesystem::path& path)
      : elf(path), reader(elf), builder(reader, arena) {}

  ElfFile elf;
  DwarfReader reader;
  model::TypeArena arena;
  TypeBuilder builder;
  std::unordered_map<std::string, const model::TypeDesc*> types;
  bool types_scanned = false;
};

std::string FunctionSig::qualified_name() const {
  if (decl_file.empty()) return name;
  return std::filesystem::path(decl_file).filename().string() + ":" + name;
}

DebugIndex::DebugIndex(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
DebugIndex::DebugIndex(DebugIndex&&) noexcept = default;
DebugIndex& DebugIndex::operator=(DebugIndex&&) noexcept = default;
DebugIndex::~DebugIndex() = default;

const std::filesystem::path& DebugIndex::binary() const { return impl_->elf.path(); }
std::uint64_t DebugIndex::entry_point() const { return impl_->elf.entry_point(); }
bool DebugIndex::position_independent() const { return impl_->elf.position_independent(); }

std::vector<std::string> DebugIndex::list_functions(std::string_view glob) const {
  std::set<std::string> names;
  const std::string pattern(glob);
  for (const auto& [name, _] : by_name_) {
    if (pattern.empty() || ::fnmatch(pattern.c_str(), name.c_str(), 0) == 0) names.insert(name);
  }
  return {names.begin(), names.end()};
}

namespace {

bool file_matches(const std::string& decl_file, std::string_view wanted) {
  if (decl_file == wanted) return true;
  if (std::filesystem::path(decl_file).filename() == wanted) return true;
  const std::string suffix = "/" + std::string(wanted);
  return decl_file.size() > suffix.size() &&
         decl_file.compare(decl_file.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

const FunctionSig& DebugIndex::resolve_function(std::string_view query) const {
  std::string_view name = query;
  std::string_view file;
  if (auto colon = query.rfind(':'); colon != std::string_view::npos) {
    file = query.substr(0, colon);
    name = query.substr(colon + 1);
  }
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) {
    throw DebugInfoError(Kind::NotFound, "no function named '" + std::string(name) + "' in " +
                                             binary().string());
  }
  std::vector<std::size_t> hits;
  for (std::size_t i : it->second) {
    if (file.empty() || file_matches(functions_[i].decl_file, file)) hits.push_back(i);
  }
  if (hits.empty()) {
    throw DebugInfoError(Kind::NotFound, "no function named '" + std::string(name) +
                                             "' declared in " + std::string(file));
  }
  if (hits.size() > 1) {
    std::vector<std::string> candidates;
    for (std::size_t i : hits) candidates.push_back(functions_[i].qualified_name());
    std::sort(candidates.begin(), candidates.end());
    std::string msg = "'" + std::string(query) + "' is ambiguous; candidates:";
    for (const auto& c : candidates) msg += " " + c;
    throw DebugInfoError(Kind::Ambiguous, msg, std::move(candidates));
  }
  return functions_[hits.front()];
}

const model::TypeDesc& DebugIndex::find_type(std::string_view name) const {
  Impl& impl = *impl_;
  if (!impl.types_scanned) {
    impl.types_scanned = true;
    for (const Unit& unit : impl.reader.units()) {
      for (const Die& die : unit.dies) {
        const auto tag = die.tag();
        std::string prefix;
        switch (tag) {
          case dw::TAG_structure_type: prefix = "struct "; break;
          case dw::TAG_union_type: prefix = "union "; break;
          case dw::TAG_enumeration_type: prefix = "enum "; break;
          case dw::TAG_typedef:
          case dw::TAG_base_type: break;
          default: continue;
        }
        DieRef ref{&unit, &die};
        if (impl.reader.flag(ref, dw::AT_declaration)) continue;
        auto n = impl.reader.name(ref);
        if (!n || n->empty()) continue;
        const std::string key = prefix + std::string(*n);
        if (impl.types.count(key) == 0) impl.types[key] = impl.builder.build(ref);
      }
    }
  }
  auto it = impl.types.find(std::string(name));
  if (it == impl.types.end()) {
    throw DebugInfoError(Kind::NotFound, "no type named '" + std::string(name) + "'");
  }
  return *it->second;
}

namespace {

// The DIE holding `at` for `d`, following abstract_origin/specification.
DieRef owner_of(const DwarfReader& reader, DieRef d, std::uint16_t at) {
  for (unsigned hops = 0; d && hops < 4; ++hops) {
    if (reader.has_attr(*d.unit, *d.die, at)) return d;
    DieRef next = reader.ref(d, dw::AT_abstract_origin);
    if (!next) next = reader.ref(d, dw::AT_specification);
    d = next;
  }
  return {};
}

}  // namespace

DebugIndex load_debug_info(const std::filesystem::path& binary) {
  auto impl = std::make_unique<DebugIndex::Impl>(binary);
  const ElfFile& elf = impl->elf;
  const ElfSection* info = elf.find_section(".debug_info");
  if (info == nullptr || info->size == 0 || info->type == SHT_NOBITS) {
    throw DebugInfoError(Kind::NoDebugInfo, binary.string() + " has no DWARF debug information");
  }
  for (const auto& s : elf.sections()) {
    if (s.name.rfind(".debug_", 0) == 0 && (s.flags & SHF_COMPRESSED)) {
      throw DebugInfoError(Kind::UnsupportedFormat,
                           binary.string() + ": compressed debug section " + s.name);
    }
  }
  const DwarfReader& reader = impl->reader;
  if (reader.units().empty()) {
    throw DebugInfoError(Kind::NoDebugInfo,
                         binary.string() + ": no readable DWARF compilation units");
  }

  DebugIndex index(std::move(impl));
  DebugIndex::Impl& im = *index.impl_;
  index.warnings_ = reader.warnings();
  TypeBuilder& builder = im.builder;

  for (const Unit& unit : reader.units()) {
    if (unit.unit_type != dw::UT_compile && unit.unit_type != dw::UT_partial) continue;
    std::optional<std::vector<std::string>> files;
    for (const Die& die : unit.dies) {
      if (die.tag() != dw::TAG_subprogram) continue;
      DieRef d{&unit, &die};
      if (reader.flag(d, dw::AT_declaration)) continue;
      auto low = reader.attr(unit, die, dw::AT_low_pc);
      if (!low) continue;
      auto low_pc = reader.address(unit, *low);
      if (!low_pc) continue;
      DieRef named = owner_of(reader, d, dw::AT_name);
      auto name = reader.name(named);
      if (!name || name->empty()) continue;

      FunctionSig sig;
      sig.name = std::string(*name);
      sig.low_pc = *low_pc;
      sig.high_pc = sig.low_pc;
      if (auto high = reader.attr(unit, die, dw::AT_high_pc)) {
        if (auto a = reader.address(unit, *high)) {
          sig.high_pc = *a;
        } else {
          sig.high_pc = sig.low_pc + high->u;
        }
      }
      sig.is_static = !reader.flag(owner_of(reader, d, dw::AT_external), dw::AT_external);
      if (DieRef f = owner_of(reader, d, dw::AT_decl_file)) {
        if (auto idx = reader.udata(f, dw::AT_decl_file)) {
          if (!files) files = file_names(reader, *f.unit);
          if (*idx < files->size()) sig.decl_file = (*files)[*idx];
        }
        sig.decl_line = static_cast<unsigned>(reader.udata(f, dw::AT_decl_line).value_or(0));
      }

      DieRef typed = owner_of(reader, d, dw::AT_type);
      sig.return_type = typed ? builder.type_of(typed) : im.arena.void_type();
      std::vector<const model::TypeDesc*> param_types;
      for (DieRef child : reader.children(d)) {
        const auto tag = child.die->tag();
        if (tag == dw::TAG_unspecified_parameters) {
          sig.variadic = true;
          continue;
        }
        if (tag != dw::TAG_formal_parameter) continue;
        Parameter p;
        p.name = std::string(reader.name(owner_of(reader, child, dw::AT_name)).value_or(""));
        if (p.name.empty()) p.name = "arg" + std::to_string(sig.params.size());
        DieRef ptype = owner_of(reader, child, dw::AT_type);
        p.type = ptype ? builder.type_of(ptype) : im.arena.opaque("", 0, "parameter has no type");
        param_types.push_back(p.type);
        sig.params.push_back(std::move(p));
      }
      CallingConvention cc = classify_call(param_types, *sig.return_type);
      for (std::size_t i = 0; i < sig.params.size(); ++i) {
        sig.params[i].location = cc.params[i];
        if (cc.params[i].kind == ArgLocation::Kind::Unsupported) {
          index.warnings_.push_back(sig.name + ": parameter '" + sig.params[i].name +
                                    "' will be captured as opaque (" + cc.params[i].reason + ")");
        }
      }
      sig.return_location = cc.result;

      const std::string params = builder.parameter_list(d, true);
      sig.declaration = (sig.is_static ? "static " : "") +
                        builder.declarator(reader.ref(typed, dw::AT_type),
                                           sig.name + "(" + params + ")");

      index.by_name_[sig.name].push_back(index.functions_.size());
      index.functions_.push_back(std::move(sig));
    }
  }
  for (auto& w : builder.warnings()) index.warnings_.push_back(w);
  return index;
}

std::uint64_t field_address(std::uint64_t base, const model::TypeDesc& desc,
                            std::string_view member) {
  const model::TypeDesc& t = model::strip_typedefs(desc);
  if (t.kind != model::TypeKind::Struct && t.kind != model::TypeKind::Union) {
    throw DebugInfoError(Kind::NoSuchMember, model::type_name(t) + " has no members");
  }
  const model::Member* m = model::find_member(t, member);
  if (m == nullptr) {
    throw DebugInfoError(Kind::NoSuchMember,
                         model::type_name(t) + " has no member '" + std::string(member) + "'");
  }
  return base + m->byte_offset;
}

}  // namespace iotrace::debuginfo
