#include "dwarf.hpp"

#include <algorithm>

#include "dwarf_constants.hpp"

namespace iotrace::debuginfo {

DwarfReader::DwarfReader(const ElfFile& elf)
    : info_(elf.section_data(".debug_info")),
      abbrev_(elf.section_data(".debug_abbrev")),
      str_(elf.section_data(".debug_str")),
      line_str_(elf.section_data(".debug_line_str")),
      str_offsets_(elf.section_data(".debug_str_offsets")),
      addr_(elf.section_data(".debug_addr")),
      line_(elf.section_data(".debug_line")) {
  ByteReader r(info_);
  while (!r.at_end()) {
    const std::size_t start = r.pos();
    try {
      parse_unit(r);
    } catch (const FormatError& e) {
      warnings_.push_back("skipping unit at 0x" + std::to_string(start) + ": " + e.what());
      // Resynchronise on the unit length if it was readable.
      ByteReader len(info_, start);
      try {
        std::uint64_t length = len.u32();
        if (length == 0xffffffff) length = len.u64();
        if (length == 0) break;
        r.seek(len.pos() + length);
      } catch (const FormatError&) {
        break;
      }
    }
  }
}

const std::unordered_map<std::uint64_t, Abbrev>& DwarfReader::abbrev_table(std::uint64_t offset) {
  auto& slot = abbrevs_[offset];
  if (slot) return *slot;
  slot = std::make_unique<std::unordered_map<std::uint64_t, Abbrev>>();
  ByteReader r(abbrev_, 0);
  r.seek(offset);
  while (true) {
    Abbrev a;
    a.code = r.uleb128();
    if (a.code == 0) break;
    a.tag = static_cast<std::uint16_t>(r.uleb128());
    a.has_children = r.u8() != 0;
    while (true) {
      AttrSpec spec;
      spec.name = static_cast<std::uint16_t>(r.uleb128());
      spec.form = static_cast<std::uint16_t>(r.uleb128());
      if (spec.form == dw::FORM_implicit_const) spec.implicit_const = r.sleb128();
      if (spec.name == 0 && spec.form == 0) break;
      a.specs.push_back(spec);
    }
    (*slot)[a.code] = std::move(a);
  }
  return *slot;
}

void DwarfReader::parse_unit(ByteReader& r) {
  Unit unit;
  unit.offset = r.pos();
  std::uint64_t length = r.u32();
  if (length == 0xffffffff) {
    unit.dwarf64 = true;
    length = r.u64();
  }
  if (length > r.remaining()) throw FormatError("unit length exceeds section");
  unit.end = r.pos() + length;
  unit.version = r.u16();
  if (unit.version < 2 || unit.version > 5) {
    throw FormatError("unsupported DWARF version " + std::to_string(unit.version));
  }
  std::uint64_t abbrev_offset = 0;
  if (unit.version >= 5) {
    unit.unit_type = r.u8();
    unit.address_size = r.u8();
    abbrev_offset = r.offset(unit.dwarf64);
    switch (unit.unit_type) {
      case dw::UT_skeleton:
      case dw::UT_split_compile:
        r.skip(8);  // dwo id
        break;
      case dw::UT_type:
      case dw::UT_split_type:
        r.skip(8);  // type signature
        r.offset(unit.dwarf64);
        break;
      default:
        break;
    }
  } else {
    unit.unit_type = dw::UT_compile;
    abbrev_offset = r.offset(unit.dwarf64);
    unit.address_size = r.u8();
  }
  if (unit.address_size != 8) {
    throw FormatError("unsupported address size " + std::to_string(unit.address_size));
  }
  const auto& table = abbrev_table(abbrev_offset);

  struct Level {
    std::int32_t die;
    std::int32_t last_child;
  };
  std::vector<Level> stack;
  ByteReader dr(info_.first(unit.end), r.pos());
  while (dr.pos() < unit.end) {
    const std::uint64_t die_offset = dr.pos();
    const std::uint64_t code = dr.uleb128();
    if (code == 0) {
      if (!stack.empty()) stack.pop_back();
      continue;
    }
    auto it = table.find(code);
    if (it == table.end()) throw FormatError("unknown abbreviation code " + std::to_string(code));
    Die die;
    die.offset = die_offset;
    die.attrs_offset = dr.pos();
    die.abbrev = &it->second;
    const auto index = static_cast<std::int32_t>(unit.dies.size());
    if (!stack.empty()) {
      Level& parent = stack.back();
      die.parent = parent.die;
      if (parent.last_child >= 0) {
        unit.dies[parent.last_child].next_sibling = index;
      } else {
        unit.dies[parent.die].first_child = index;
      }
      parent.last_child = index;
    } else if (!unit.dies.empty()) {
      // A second top-level DIE; keep it reachable as a sibling of the root.
      std::int32_t last = 0;
      while (unit.dies[last].next_sibling >= 0) last = unit.dies[last].next_sibling;
      unit.dies[last].next_sibling = index;
    }
    for (const auto& spec : die.abbrev->specs) read_form(dr, unit, spec.form, spec.implicit_const);
    unit.dies.push_back(die);
    if (die.abbrev->has_children) stack.push_back({index, -1});
  }
  r.seek(unit.end);

  if (!unit.dies.empty()) {
    const Die& root = unit.dies.front();
    if (auto v = attr(unit, root, dw::AT_str_offsets_base)) unit.str_offsets_base = v->u;
    if (auto v = attr(unit, root, dw::AT_addr_base)) unit.addr_base = v->u;
    if (auto v = attr(unit, root, dw::AT_GNU_addr_base)) unit.addr_base = v->u;
    if (auto v = attr(unit, root, dw::AT_stmt_list)) unit.stmt_list = v->u;
    // Strings that use strx need the bases above, so resolve them last.
    if (auto v = attr(unit, root, dw::AT_comp_dir)) {
      if (auto s = string(unit, *v)) unit.comp_dir = std::string(*s);
    }
    if (auto v = attr(unit, root, dw::AT_name)) {
      if (auto s = string(unit, *v)) unit.name = std::string(*s);
    }
  }
  units_.push_back(std::move(unit));
}

AttrValue DwarfReader::read_form(ByteReader& r, const Unit& unit, std::uint16_t form,
                                 std::int64_t implicit_const) const {
  AttrValue v;
  v.form = form;
  auto fixed = [&](std::size_t n) {
    v.u = r.sized(n);
    const unsigned shift = static_cast<unsigned>(64 - 8 * n);
    v.s = shift == 0 ? static_cast<std::int64_t>(v.u)
                     : static_cast<std::int64_t>(v.u << shift) >> shift;
  };
  switch (form) {
    case dw::FORM_addr: v.u = r.sized(unit.address_size); break;
    case dw::FORM_block1: v.block = r.bytes(r.u8()); break;
    case dw::FORM_block2: v.block = r.bytes(r.u16()); break;
    case dw::FORM_block4: v.block = r.bytes(r.u32()); break;
    case dw::FORM_block:
    case dw::FORM_exprloc: v.block = r.bytes(r.uleb128()); break;
    case dw::FORM_data1: fixed(1); break;
    case dw::FORM_data2: fixed(2); break;
    case dw::FORM_data4: fixed(4); break;
    case dw::FORM_data8: fixed(8); break;
    case dw::FORM_data16: v.block = r.bytes(16); break;
    case dw::FORM_string: v.str = r.cstr(); break;
    case dw::FORM_flag: v.u = r.u8(); break;
    case dw::FORM_flag_present: v.u = 1; break;
    case dw::FORM_sdata: v.s = r.sleb128(); v.u = static_cast<std::uint64_t>(v.s); break;
    case dw::FORM_udata: v.u = r.uleb128(); v.s = static_cast<std::int64_t>(v.u); break;
    case dw::FORM_implicit_const: v.s = implicit_const; v.u = static_cast<std::uint64_t>(v.s); break;
    case dw::FORM_strp:
    case dw::FORM_line_strp:
    case dw::FORM_sec_offset:
    case dw::FORM_strp_sup:
    case dw::FORM_GNU_strp_alt:
    case dw::FORM_GNU_ref_alt:
      v.u = r.offset(unit.dwarf64);
      break;
    case dw::FORM_ref_addr:
      v.u = unit.version <= 2 ? r.sized(unit.address_size) : r.offset(unit.dwarf64);
      break;
    case dw::FORM_ref1: v.u = unit.offset + r.u8(); break;
    case dw::FORM_ref2: v.u = unit.offset + r.u16(); break;
    case dw::FORM_ref4: v.u = unit.offset + r.u32(); break;
    case dw::FORM_ref8: v.u = unit.offset + r.u64(); break;
    case dw::FORM_ref_udata: v.u = unit.offset + r.uleb128(); break;
    case dw::FORM_ref_sup4: v.u = r.u32(); break;
    case dw::FORM_ref_sup8:
    case dw::FORM_ref_sig8:
      v.u = r.u64();
      break;
    case dw::FORM_strx:
    case dw::FORM_addrx:
    case dw::FORM_GNU_str_index:
    case dw::FORM_GNU_addr_index:
    case dw::FORM_loclistx:
    case dw::FORM_rnglistx:
      v.u = r.uleb128();
      break;
    case dw::FORM_strx1: case dw::FORM_addrx1: v.u = r.u8(); break;
    case dw::FORM_strx2: case dw::FORM_addrx2: v.u = r.u16(); break;
    case dw::FORM_strx3: case dw::FORM_addrx3: v.u = r.u24(); break;
    case dw::FORM_strx4: case dw::FORM_addrx4: v.u = r.u32(); break;
    case dw::FORM_indirect: {
      const auto actual = static_cast<std::uint16_t>(r.uleb128());
      return read_form(r, unit, actual, implicit_const);
    }
    default:
      throw FormatError("unknown attribute form 0x" + std::to_string(form));
  }
  return v;
}

DieRef DwarfReader::lookup(std::uint64_t offset) const {
  auto uit = std::upper_bound(units_.begin(), units_.end(), offset,
                              [](std::uint64_t off, const Unit& u) { return off < u.offset; });
  if (uit == units_.begin()) return {};
  const Unit& unit = *std::prev(uit);
  if (offset >= unit.end) return {};
  auto dit = std::lower_bound(unit.dies.begin(), unit.dies.end(), offset,
                              [](const Die& d, std::uint64_t off) { return d.offset < off; });
  if (dit == unit.dies.end() || dit->offset != offset) return {};
  return {&unit, &*dit};
}

std::optional<AttrValue> DwarfReader::attr(const Unit& unit, const Die& die,
                                           std::uint16_t name) const {
  ByteReader r(info_.first(unit.end), die.attrs_offset);
  for (const auto& spec : die.abbrev->specs) {
    AttrValue v = read_form(r, unit, spec.form, spec.implicit_const);
    if (spec.name == name) return v;
  }
  return std::nullopt;
}

bool DwarfReader::has_attr(const Unit&, const Die& die, std::uint16_t name) const {
  return std::any_of(die.abbrev->specs.begin(), die.abbrev->specs.end(),
                     [&](const AttrSpec& s) { return s.name == name; });
}

std::optional<std::string_view> DwarfReader::string(const Unit& unit, const AttrValue& v) const {
  auto from = [](std::span<const std::uint8_t> section,
                 std::uint64_t offset) -> std::optional<std::string_view> {
    if (offset >= section.size()) return std::nullopt;
    ByteReader r(section, offset);
    try {
      return r.cstr();
    } catch (const FormatError&) {
      return std::nullopt;
    }
  };
  switch (v.form) {
    case dw::FORM_string:
      return v.str;
    case dw::FORM_strp:
      return from(str_, v.u);
    case dw::FORM_line_strp:
      return from(line_str_, v.u);
    case dw::FORM_strx:
    case dw::FORM_strx1:
    case dw::FORM_strx2:
    case dw::FORM_strx3:
    case dw::FORM_strx4:
    case dw::FORM_GNU_str_index: {
      const std::uint64_t entry = unit.dwarf64 ? 8 : 4;
      const std::uint64_t pos = unit.str_offsets_base + v.u * entry;
      if (pos + entry > str_offsets_.size()) return std::nullopt;
      ByteReader r(str_offsets_, pos);
      return from(str_, r.offset(unit.dwarf64));
    }
    default:
      return std::nullopt;
  }
}

std::optional<std::uint64_t> DwarfReader::address(const Unit& unit, const AttrValue& v) const {
  switch (v.form) {
    case dw::FORM_addr:
      return v.u;
    case dw::FORM_addrx:
    case dw::FORM_addrx1:
    case dw::FORM_addrx2:
    case dw::FORM_addrx3:
    case dw::FORM_addrx4:
    case dw::FORM_GNU_addr_index: {
      const std::uint64_t pos = unit.addr_base + v.u * unit.address_size;
      if (pos + unit.address_size > addr_.size()) return std::nullopt;
      ByteReader r(addr_, pos);
      return r.sized(unit.address_size);
    }
    default:
      return std::nullopt;
  }
}

std::optional<std::uint64_t> DwarfReader::reference(const AttrValue& v) const {
  switch (v.form) {
    case dw::FORM_ref1:
    case dw::FORM_ref2:
    case dw::FORM_ref4:
    case dw::FORM_ref8:
    case dw::FORM_ref_udata:
    case dw::FORM_ref_addr:
      return v.u;
    default:
      return std::nullopt;
  }
}

std::optional<std::string_view> DwarfReader::name(DieRef d) const {
  if (!d) return std::nullopt;
  auto v = attr(*d.unit, *d.die, dw::AT_name);
  if (!v) return std::nullopt;
  return string(*d.unit, *v);
}

std::optional<std::uint64_t> DwarfReader::udata(DieRef d, std::uint16_t at) const {
  if (!d) return std::nullopt;
  auto v = attr(*d.unit, *d.die, at);
  if (!v || !v->block.empty() || !v->str.empty()) return std::nullopt;
  return v->u;
}

std::optional<std::int64_t> DwarfReader::sdata(DieRef d, std::uint16_t at) const {
  if (!d) return std::nullopt;
  auto v = attr(*d.unit, *d.die, at);
  if (!v || !v->block.empty() || !v->str.empty()) return std::nullopt;
  return v->s;
}

bool DwarfReader::flag(DieRef d, std::uint16_t at) const {
  if (!d) return false;
  auto v = attr(*d.unit, *d.die, at);
  return v && v->u != 0;
}

DieRef DwarfReader::ref(DieRef d, std::uint16_t at) const {
  if (!d) return {};
  auto v = attr(*d.unit, *d.die, at);
  if (!v) return {};
  auto off = reference(*v);
  return off ? lookup(*off) : DieRef{};
}

std::vector<DieRef> DwarfReader::children(DieRef d) const {
  std::vector<DieRef> out;
  if (!d) return out;
  for (std::int32_t i = d.die->first_child; i >= 0; i = d.unit->dies[i].next_sibling) {
    out.push_back({d.unit, &d.unit->dies[i]});
  }
  return out;
}

}  // namespace iotrace::debuginfo
