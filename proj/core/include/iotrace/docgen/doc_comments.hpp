#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace iotrace::docgen {

struct DocComment {
  std::string function;
  std::string brief;
  // Comment text without the delimiters and leading asterisks.
  std::string raw;
  std::filesystem::path file;
  unsigned line = 0;
};

/// `/** ... */` blocks followed (whitespace only) by a function declaration
/// or definition in one translation unit's text. Blocks whose brief comes
/// out empty are dropped.
std::vector<DocComment> parse_doc_comments(std::string_view source,
                                           const std::filesystem::path& file = {});

/// The brief of a comment body: the first sentence of the @brief / \brief
/// paragraph if there is one, else the first sentence of the whole body.
std::string brief_of(std::string_view body);

/// Doc comments from many files keyed by function name; the first file in
/// the given order wins on duplicates. Unreadable files are skipped and
/// reported through `warnings`.
std::map<std::string, DocComment> extract_doc_comments(
    const std::vector<std::filesystem::path>& files, std::vector<std::string>* warnings = nullptr);

/// *.c and *.h files under `dir`, sorted.
std::vector<std::filesystem::path> collect_sources(const std::filesystem::path& dir);

}  // namespace iotrace::docgen
