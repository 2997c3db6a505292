#include "iotrace/docgen/site.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

#include "iotrace/docgen/html.hpp"

namespace iotrace::docgen {

std::vector<SiteEntry> assemble_site(const debuginfo::DebugIndex& index,
                                     const std::map<std::string, DocComment>& docs,
                                     const std::vector<model::IOExample>& examples) {
  std::vector<SiteEntry> out;
  for (const auto& item : docs) {
    const std::string& name = item.first;
    const DocComment& doc = item.second;
    const debuginfo::FunctionSig* sig = nullptr;
    try {
      sig = &index.resolve_function(name);
    } catch (const debuginfo::DebugInfoError& e) {
      if (e.kind() != debuginfo::DebugInfoError::Kind::Ambiguous) continue;
      // Same-named statics: take the one declared in the commented file.
      try {
        sig = &index.resolve_function(doc.file.filename().string() + ":" + name);
      } catch (const debuginfo::DebugInfoError&) {
        continue;
      }
    }
    SiteEntry entry;
    entry.function = name;
    entry.declaration = sig->declaration;
    entry.doc = doc;
    auto ex = std::find_if(examples.begin(), examples.end(),
                           [&](const model::IOExample& e) {
                             return e.function == name || e.function == sig->qualified_name();
                           });
    if (ex != examples.end()) entry.rows = flatten_example(*ex);
    out.push_back(std::move(entry));
  }
  return out;
}

std::string page_file_name(const std::string& function) {
  std::string out;
  for (char c : function) {
    const bool safe = std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' ||
                      c == '.';
    out.push_back(safe ? c : '_');
  }
  return out + ".html";
}

std::string render_index(const std::vector<SiteEntry>& entries) {
  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>API reference</title>\n";
  out += "<link rel=\"stylesheet\" href=\"style.css\">\n</head>\n<body>\n<main>\n";
  out += "<h1>API reference</h1>\n";
  std::size_t with_examples = 0;
  for (const auto& e : entries) with_examples += e.rows ? 1 : 0;
  out += "<p class=\"summary\">" + std::to_string(entries.size()) + " documented functions, " +
         std::to_string(with_examples) + " with I/O examples.</p>\n";
  out += "<ul class=\"functions\">\n";
  for (const auto& e : entries) {
    out += "<li><a href=\"" + escape_html(page_file_name(e.function)) + "\">" +
           escape_html(e.function) + "</a>";
    if (e.rows) out += " <span class=\"badge\">I/O example</span>";
    out += " <span class=\"brief\">" + escape_html(e.doc.brief) + "</span></li>\n";
  }
  out += "</ul>\n</main>\n</body>\n</html>\n";
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> render_site(const std::vector<SiteEntry>& entries,
                                               const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& e : entries) {
    const auto path = dir / page_file_name(e.function);
    write_file(path, render_function_page(e.function, e.declaration, e.doc, e.rows));
    written.push_back(path);
  }
  write_file(dir / "index.html", render_index(entries));
  written.push_back(dir / "index.html");
  write_file(dir / "style.css", stylesheet());
  written.push_back(dir / "style.css");
  return written;
}

}  // namespace iotrace::docgen
