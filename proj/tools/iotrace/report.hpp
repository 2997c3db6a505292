#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iotrace/debuginfo/debug_index.hpp"
#include "iotrace/docgen/doc_comments.hpp"
#include "iotrace/model/session.hpp"

namespace iotrace::cli {

struct Coverage {
  std::string library;
  std::size_t source = 0;
  std::size_t documented = 0;
  std::size_t with_examples = 0;
};

/// Source functions come from the debug index (only those declared under
/// `src` when given); documented ones also carry a doc comment; the last
/// column counts documented functions that have an example.
Coverage coverage(const std::string& library, const std::set<std::string>& source,
                  const std::map<std::string, docgen::DocComment>& docs,
                  const std::vector<model::IOExample>& examples);

bool declared_under(const debuginfo::FunctionSig& function,
                    const std::optional<std::filesystem::path>& src);

std::set<std::string> source_functions(const debuginfo::DebugIndex& index,
                                       const std::optional<std::filesystem::path>& src);

std::string format_report(const std::vector<Coverage>& rows);

}  // namespace iotrace::cli
