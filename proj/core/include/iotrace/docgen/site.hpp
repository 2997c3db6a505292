#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iotrace/debuginfo/debug_index.hpp"
#include "iotrace/docgen/doc_comments.hpp"
#include "iotrace/docgen/io_table.hpp"
#include "iotrace/model/session.hpp"

namespace iotrace::docgen {

struct SiteEntry {
  std::string function;
  std::string declaration;
  DocComment doc;
  std::optional<std::vector<IOTableRow>> rows;
};

/// One entry per documented function that the debug index knows, sorted by
/// name. Undocumented functions never get an entry.
std::vector<SiteEntry> assemble_site(const debuginfo::DebugIndex& index,
                                     const std::map<std::string, DocComment>& docs,
                                     const std::vector<model::IOExample>& examples);

std::string page_file_name(const std::string& function);
std::string render_index(const std::vector<SiteEntry>& entries);

/// Writes <function>.html per entry, index.html and style.css into `dir`
/// (created if needed) and returns the paths written.
/// Throws std::runtime_error on I/O failure.
std::vector<std::filesystem::path> render_site(const std::vector<SiteEntry>& entries,
                                               const std::filesystem::path& dir);

}  // namespace iotrace::docgen
