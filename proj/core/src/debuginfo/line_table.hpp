#pragma once

#include <string>
#include <vector>

#include "dwarf.hpp"

namespace iotrace::debuginfo {

/// File names from the line-program header of `unit`, indexed the way
/// DW_AT_decl_file values index them (1-based before DWARF 5, 0-based from
/// DWARF 5 on). Relative names are joined with their include directory and
/// the unit's compilation directory. Returns an empty table when the unit
/// has no line program or the header is malformed.
std::vector<std::string> file_names(const DwarfReader& reader, const Unit& unit);

}  // namespace iotrace::debuginfo
