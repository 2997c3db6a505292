#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "byte_reader.hpp"
#include "iotrace/debuginfo/elf_file.hpp"

namespace iotrace::debuginfo {

struct AttrSpec {
  std::uint16_t name = 0;
  std::uint16_t form = 0;
  std::int64_t implicit_const = 0;
};

struct Abbrev {
  std::uint64_t code = 0;
  std::uint16_t tag = 0;
  bool has_children = false;
  std::vector<AttrSpec> specs;
};

struct AttrValue {
  std::uint16_t form = 0;
  // Constants, addresses, section offsets, flags, strx/addrx indices and
  // absolute (section-relative) DIE references.
  std::uint64_t u = 0;
  // Sign-extended view of fixed-size data forms, sdata and implicit_const.
  std::int64_t s = 0;
  std::string_view str;
  std::span<const std::uint8_t> block;
};

struct Die {
  std::uint64_t offset = 0;
  std::uint64_t attrs_offset = 0;
  const Abbrev* abbrev = nullptr;
  std::int32_t parent = -1;
  std::int32_t first_child = -1;
  std::int32_t next_sibling = -1;

  std::uint16_t tag() const { return abbrev->tag; }
};

struct Unit {
  std::uint64_t offset = 0;
  std::uint64_t end = 0;
  std::uint16_t version = 0;
  std::uint8_t unit_type = 0;
  std::uint8_t address_size = 8;
  bool dwarf64 = false;
  std::vector<Die> dies;
  std::uint64_t str_offsets_base = 8;
  std::uint64_t addr_base = 8;
  std::optional<std::uint64_t> stmt_list;
  std::string comp_dir;
  std::string name;
};

struct DieRef {
  const Unit* unit = nullptr;
  const Die* die = nullptr;
  explicit operator bool() const { return die != nullptr; }
};

/// Parsed `.debug_info` of one ELF file. DIE trees are indexed eagerly but
/// attribute values are decoded on demand.
///
/// A unit that fails to parse is dropped with a warning; the rest of the
/// section is still usable.
class DwarfReader {
 public:
  explicit DwarfReader(const ElfFile& elf);

  const std::vector<Unit>& units() const { return units_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  DieRef lookup(std::uint64_t offset) const;

  std::optional<AttrValue> attr(const Unit& unit, const Die& die, std::uint16_t name) const;
  bool has_attr(const Unit& unit, const Die& die, std::uint16_t name) const;

  std::optional<std::string_view> string(const Unit& unit, const AttrValue& v) const;
  std::optional<std::uint64_t> address(const Unit& unit, const AttrValue& v) const;
  // Absolute offset of the referenced DIE, for reference forms.
  std::optional<std::uint64_t> reference(const AttrValue& v) const;

  // Convenience accessors on a DieRef.
  std::optional<std::string_view> name(DieRef d) const;
  std::optional<std::uint64_t> udata(DieRef d, std::uint16_t at) const;
  std::optional<std::int64_t> sdata(DieRef d, std::uint16_t at) const;
  bool flag(DieRef d, std::uint16_t at) const;
  DieRef ref(DieRef d, std::uint16_t at) const;
  std::vector<DieRef> children(DieRef d) const;

  std::span<const std::uint8_t> line_section() const { return line_; }
  std::span<const std::uint8_t> line_str_section() const { return line_str_; }
  std::span<const std::uint8_t> str_section() const { return str_; }

  // Decodes one value of `form`; offsets and addresses are sized per `unit`.
  AttrValue read_form(ByteReader& r, const Unit& unit, std::uint16_t form,
                      std::int64_t implicit_const = 0) const;

 private:
  const std::unordered_map<std::uint64_t, Abbrev>& abbrev_table(std::uint64_t offset);
  void parse_unit(ByteReader& r);

  std::span<const std::uint8_t> info_, abbrev_, str_, line_str_, str_offsets_, addr_, line_;
  std::map<std::uint64_t, std::unique_ptr<std::unordered_map<std::uint64_t, Abbrev>>> abbrevs_;
  std::vector<Unit> units_;
  std::vector<std::string> warnings_;
};

}  // namespace iotrace::debuginfo
