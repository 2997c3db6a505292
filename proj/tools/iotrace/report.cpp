#include "report.hpp"

#include <cstdio>

namespace iotrace::cli {

namespace {

bool under(const std::filesystem::path& file, const std::filesystem::path& dir) {
  std::error_code ec;
  const auto f = std::filesystem::weakly_canonical(file, ec);
  const auto d = std::filesystem::weakly_canonical(dir, ec);
  auto fi = f.begin();
  for (auto di = d.begin(); di != d.end(); ++di, ++fi) {
    if (di->empty()) continue;  // trailing slash
    if (fi == f.end() || *fi != *di) return false;
  }
  return true;
}

}  // namespace

bool declared_under(const debuginfo::FunctionSig& function,
                    const std::optional<std::filesystem::path>& src) {
  if (!src) return true;
  return !function.decl_file.empty() && under(function.decl_file, *src);
}

std::set<std::string> source_functions(const debuginfo::DebugIndex& index,
                                       const std::optional<std::filesystem::path>& src) {
  std::set<std::string> out;
  for (const auto& f : index.functions()) {
    if (declared_under(f, src)) out.insert(f.name);
  }
  return out;
}

Coverage coverage(const std::string& library, const std::set<std::string>& source,
                  const std::map<std::string, docgen::DocComment>& docs,
                  const std::vector<model::IOExample>& examples) {
  Coverage c;
  c.library = library;
  c.source = source.size();
  std::set<std::string> documented;
  for (const auto& [name, doc] : docs) {
    if (source.count(name)) documented.insert(name);
  }
  c.documented = documented.size();
  std::set<std::string> exemplified;
  for (const auto& ex : examples) {
    std::string name = ex.function;
    if (auto colon = name.rfind(':'); colon != std::string::npos) name = name.substr(colon + 1);
    if (documented.count(name)) exemplified.insert(name);
  }
  c.with_examples = exemplified.size();
  return c;
}

std::string format_report(const std::vector<Coverage>& rows) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-20s %10s %12s %15s\n", "library", "source", "documented",
                "with-examples");
  out += line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-20s %10zu %12zu %15zu\n", r.library.c_str(), r.source,
                  r.documented, r.with_examples);
    out += line;
  }
  for (const auto& r : rows) {
    out += "summary: " + std::to_string(r.source) + " / " + std::to_string(r.documented) + " / " +
           std::to_string(r.with_examples) + "\n";
  }
  return out;
}

}  // namespace iotrace::cli
