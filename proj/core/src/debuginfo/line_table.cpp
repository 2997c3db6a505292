#include "line_table.hpp"

#include <filesystem>

#include "dwarf_constants.hpp"

namespace iotrace::debuginfo {

namespace {

std::string join(const std::string& dir, const std::string& name) {
  if (name.empty() || name.front() == '/' || dir.empty()) return name;
  return (std::filesystem::path(dir) / name).lexically_normal().string();
}

struct EntryFormat {
  std::uint16_t content;
  std::uint16_t form;
};

struct Entry {
  std::string path;
  std::uint64_t dir = 0;
};

std::vector<Entry> read_v5_entries(const DwarfReader& reader, ByteReader& r,
                                   const Unit& form_unit) {
  std::vector<EntryFormat> formats(r.u8());
  for (auto& f : formats) {
    f.content = static_cast<std::uint16_t>(r.uleb128());
    f.form = static_cast<std::uint16_t>(r.uleb128());
  }
  std::vector<Entry> entries(r.uleb128());
  for (auto& e : entries) {
    for (const auto& f : formats) {
      AttrValue v = reader.read_form(r, form_unit, f.form);
      if (f.content == dw::LNCT_path) {
        if (auto s = reader.string(form_unit, v)) e.path = std::string(*s);
      } else if (f.content == dw::LNCT_directory_index) {
        e.dir = v.u;
      }
    }
  }
  return entries;
}

}  // namespace

std::vector<std::string> file_names(const DwarfReader& reader, const Unit& unit) {
  std::vector<std::string> out;
  if (!unit.stmt_list) return out;
  try {
    ByteReader r(reader.line_section());
    r.seek(*unit.stmt_list);
    bool dwarf64 = false;
    std::uint64_t length = r.u32();
    if (length == 0xffffffff) {
      dwarf64 = true;
      length = r.u64();
    }
    const std::uint16_t version = r.u16();
    if (version < 2 || version > 5) return out;
    if (version >= 5) {
      r.u8();  // address_size
      r.u8();  // segment_selector_size
    }
    r.offset(dwarf64);  // header_length
    r.u8();             // minimum_instruction_length
    if (version >= 4) r.u8();  // maximum_operations_per_instruction
    r.u8();                    // default_is_stmt
    r.u8();                    // line_base
    r.u8();                    // line_range
    const std::uint8_t opcode_base = r.u8();
    if (opcode_base > 0) r.skip(opcode_base - 1u);

    if (version >= 5) {
      Unit form_unit = {};
      form_unit.dwarf64 = dwarf64;
      form_unit.version = version;
      form_unit.str_offsets_base = unit.str_offsets_base;
      const auto dirs = read_v5_entries(reader, r, form_unit);
      const auto files = read_v5_entries(reader, r, form_unit);
      for (const auto& f : files) {
        std::string dir = f.dir < dirs.size() ? dirs[f.dir].path : std::string();
        out.push_back(join(join(unit.comp_dir, dir), f.path));
      }
    } else {
      std::vector<std::string> dirs{unit.comp_dir};
      while (true) {
        std::string_view d = r.cstr();
        if (d.empty()) break;
        dirs.push_back(join(unit.comp_dir, std::string(d)));
      }
      out.push_back(join(unit.comp_dir, unit.name));
      while (true) {
        std::string_view name = r.cstr();
        if (name.empty()) break;
        const std::uint64_t dir = r.uleb128();
        r.uleb128();  // mtime
        r.uleb128();  // length
        out.push_back(join(dir < dirs.size() ? dirs[dir] : unit.comp_dir, std::string(name)));
      }
    }
  } catch (const FormatError&) {
    out.clear();
  }
  return out;
}

}  // namespace iotrace::debuginfo
