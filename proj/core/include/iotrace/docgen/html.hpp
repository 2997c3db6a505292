#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iotrace/docgen/doc_comments.hpp"
#include "iotrace/docgen/io_table.hpp"

namespace iotrace::docgen {

inline constexpr const char* kNoExampleNotice = "No I/O example available.";

/// Escapes &, < and >.
std::string escape_html(std::string_view text);

/// A function page: declaration, brief and the I/O table (or the
/// no-example notice when `rows` is empty-optional).
std::string render_function_page(const std::string& function, const std::string& declaration,
                                 const DocComment& doc,
                                 const std::optional<std::vector<IOTableRow>>& rows);

/// Just the <table> element for `rows`, plus the <style> rules that drive
/// its collapse toggles.
std::string render_io_table(const std::vector<IOTableRow>& rows);

std::string stylesheet();

}  // namespace iotrace::docgen
