#include "iotrace/docgen/doc_comments.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace iotrace::docgen {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

const std::set<std::string, std::less<>>& non_names() {
  static const std::set<std::string, std::less<>> words = {
      "auto", "break", "case", "char", "const", "continue", "default", "do", "double",
      "else", "enum", "extern", "float", "for", "goto", "if", "inline", "int", "long",
      "register", "restrict", "return", "short", "signed", "sizeof", "static", "struct",
      "switch", "typedef", "union", "unsigned", "void", "volatile", "while", "_Bool",
      "_Noreturn", "_Alignas", "_Alignof", "_Atomic", "_Static_assert", "__attribute__",
      "__declspec", "__typeof__", "typeof", "__inline", "__inline__", "__restrict",
      "__extension__", "_Generic"};
  return words;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
    } else {
      if (space) out.push_back(' ');
      space = false;
      out.push_back(c);
    }
  }
  return out;
}

std::string first_sentence(const std::string& text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '.' &&
        (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      return text.substr(0, i + 1);
    }
  }
  return text;
}

// Comment text between the delimiters with each line's leading
// decoration removed.
std::string clean_body(std::string_view inner) {
  std::istringstream in{std::string(inner)};
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    while (i < line.size() && line[i] == '*') ++i;
    if (i < line.size() && line[i] == ' ') ++i;
    std::string rest = line.substr(i);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.pop_back();
    lines.push_back(std::move(rest));
  }
  while (!lines.empty() && lines.front().empty()) lines.erase(lines.begin());
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out.push_back('\n');
    out += lines[i];
  }
  return out;
}

// Name of the function declared by `decl`, or empty if it is not a
// function declaration.
std::string declared_function(std::string_view decl) {
  std::string_view head = decl;
  while (!head.empty() && std::isspace(static_cast<unsigned char>(head.front()))) {
    head.remove_prefix(1);
  }
  if (head.rfind("typedef", 0) == 0 || head.rfind("#", 0) == 0) return {};
  const auto paren = decl.find('(');
  if (paren == std::string_view::npos) return {};
  if (decl.substr(0, paren).find('=') != std::string_view::npos) return {};
  for (std::size_t p = paren; p != std::string_view::npos; p = decl.find('(', p + 1)) {
    std::size_t end = p;
    while (end > 0 && std::isspace(static_cast<unsigned char>(decl[end - 1]))) --end;
    std::size_t begin = end;
    while (begin > 0 && is_ident_char(decl[begin - 1])) --begin;
    if (begin == end) continue;
    const std::string_view word = decl.substr(begin, end - begin);
    if (std::isdigit(static_cast<unsigned char>(word.front()))) continue;
    if (non_names().count(word)) continue;
    return std::string(word);
  }
  return {};
}

}  // namespace

std::string brief_of(std::string_view body) {
  const std::string text(body);
  std::size_t tag = std::string::npos;
  for (const char* marker : {"@brief", "\\brief"}) {
    const auto at = text.find(marker);
    if (at != std::string::npos && (tag == std::string::npos || at < tag)) tag = at;
  }
  if (tag == std::string::npos) return first_sentence(collapse_whitespace(text));
  // The @brief paragraph ends at a blank line or the next tag.
  std::string paragraph;
  std::istringstream in(text.substr(tag + 6));
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const std::string trimmed = collapse_whitespace(line);
    if (!first && (trimmed.empty() || trimmed.front() == '@' || trimmed.front() == '\\')) break;
    paragraph += trimmed + " ";
    first = false;
  }
  return first_sentence(collapse_whitespace(paragraph));
}

std::vector<DocComment> parse_doc_comments(std::string_view src,
                                           const std::filesystem::path& file) {
  std::vector<DocComment> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  auto line_at = [&](std::size_t pos) {
    return static_cast<unsigned>(std::count(src.begin(), src.begin() + pos, '\n') + 1);
  };
  while (i < n) {
    const char c = src[i];
    if (c == '"' || c == '\'') {
      const char quote = c;
      for (++i; i < n && src[i] != quote; ++i) {
        if (src[i] == '\\') ++i;
        if (i < n && src[i] == '\n') break;
      }
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (!(c == '/' && i + 1 < n && src[i + 1] == '*')) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    const auto close = src.find("*/", i + 2);
    if (close == std::string_view::npos) break;
    i = close + 2;
    // "/**/" is an ordinary empty comment.
    if (close == start + 2 || src[start + 2] != '*') continue;

    std::size_t j = i;
    while (j < n && std::isspace(static_cast<unsigned char>(src[j]))) ++j;
    // The declaration runs to its body or terminating semicolon.
    std::size_t k = j;
    int depth = 0;
    while (k < n) {
      const char d = src[k];
      if (d == '(') ++depth;
      if (d == ')') --depth;
      if (depth <= 0 && (d == '{' || d == ';')) break;
      if (d == '/' && k + 1 < n && (src[k + 1] == '*' || src[k + 1] == '/')) break;
      ++k;
    }
    const std::string name = declared_function(src.substr(j, k - j));
    if (name.empty()) continue;
    DocComment dc;
    dc.function = name;
    dc.raw = clean_body(src.substr(start + 3, close - start - 3));
    dc.brief = brief_of(dc.raw);
    dc.file = file;
    dc.line = line_at(start);
    if (dc.brief.empty()) continue;
    out.push_back(std::move(dc));
  }
  return out;
}

std::map<std::string, DocComment> extract_doc_comments(
    const std::vector<std::filesystem::path>& files, std::vector<std::string>* warnings) {
  std::map<std::string, DocComment> out;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      if (warnings) warnings->push_back("cannot read " + path.string());
      continue;
    }
    std::ostringstream text;
    text << in.rdbuf();
    for (auto& dc : parse_doc_comments(text.str(), path)) {
      out.try_emplace(dc.function, std::move(dc));
    }
  }
  return out;
}

std::vector<std::filesystem::path> collect_sources(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  std::error_code ec;
  if (std::filesystem::is_regular_file(dir, ec)) return {dir};
  for (std::filesystem::recursive_directory_iterator it(dir, ec), end; !ec && it != end;
       it.increment(ec)) {
    if (!it->is_regular_file()) continue;
    const auto ext = it->path().extension();
    if (ext == ".c" || ext == ".h") out.push_back(it->path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace iotrace::docgen
