#include "iotrace/docgen/html.hpp"

namespace iotrace::docgen {

std::string escape_html(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

std::string toggle_id(std::size_t row) { return "io-toggle-" + std::to_string(row); }

}  // namespace

std::string render_io_table(const std::vector<IOTableRow>& rows) {
  std::string out;
  bool any_collapsible = false;
  for (const auto& r : rows) any_collapsible = any_collapsible || r.collapsible;
  if (any_collapsible) {
    out += "<style>\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].collapsible) continue;
      out += ".io-table:has(#" + toggle_id(i) + ":not(:checked)) tr.in-" + std::to_string(i) +
             " { display: none; }\n";
    }
    out += "</style>\n";
  }
  out += "<table class=\"io-table\">\n<thead>\n";
  out += "<tr><th>Parameter name</th><th>Before function call</th>"
         "<th>After function call</th></tr>\n";
  out += "</thead>\n<tbody>\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const IOTableRow& r = rows[i];
    std::string classes = "depth-" + std::to_string(r.depth);
    if (r.collapsible) classes += " collapsible";
    for (auto a = r.parent; a; a = rows[*a].parent) classes += " in-" + std::to_string(*a);
    out += "<tr class=\"" + classes + "\" data-depth=\"" + std::to_string(r.depth) + "\"";
    if (r.parent) out += " data-parent=\"" + std::to_string(*r.parent) + "\"";
    out += "><td class=\"name\" style=\"--depth: " + std::to_string(r.depth) + "\">";
    if (r.collapsible) {
      out += "<input type=\"checkbox\" class=\"toggle\" id=\"" + toggle_id(i) +
             "\" checked><label for=\"" + toggle_id(i) + "\">" + escape_html(r.name) + "</label>";
    } else {
      out += escape_html(r.name);
    }
    if (!r.note.empty()) out += " <span class=\"note\">" + escape_html(r.note) + "</span>";
    out += "</td>";
    const bool differs = r.before != r.after && r.name != "return";
    out += differs ? "<td class=\"before changed\">" : "<td class=\"before\">";
    out += escape_html(r.before) + "</td>";
    out += differs ? "<td class=\"after changed\">" : "<td class=\"after\">";
    out += escape_html(r.after) + "</td></tr>\n";
  }
  out += "</tbody>\n</table>\n";
  return out;
}

std::string render_function_page(const std::string& function, const std::string& declaration,
                                 const DocComment& doc,
                                 const std::optional<std::vector<IOTableRow>>& rows) {
  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>" + escape_html(function) + "</title>\n";
  out += "<link rel=\"stylesheet\" href=\"style.css\">\n</head>\n<body>\n";
  out += "<nav><a href=\"index.html\">All functions</a></nav>\n<main>\n";
  out += "<h1 class=\"function-name\">" + escape_html(function) + "</h1>\n";
  out += "<section class=\"declaration\">\n<pre><code>" + escape_html(declaration) +
         "</code></pre>\n</section>\n";
  out += "<section class=\"description\">\n<p>" + escape_html(doc.brief) + "</p>\n</section>\n";
  out += "<section class=\"io-example\">\n<h2>I/O example</h2>\n";
  if (rows && !rows->empty()) {
    out += render_io_table(*rows);
  } else if (rows) {
    out += "<p class=\"no-parameters\">This function takes no parameters and returns "
           "nothing.</p>\n";
  } else {
    out += "<p class=\"no-example\">" + std::string(kNoExampleNotice) + "</p>\n";
  }
  out += "</section>\n</main>\n</body>\n</html>\n";
  return out;
}

std::string stylesheet() {
  return R"(body {
  font-family: system-ui, sans-serif;
  margin: 2em auto;
  max-width: 60em;
  padding: 0 1em;
  color: #222;
}
nav { margin-bottom: 1em; }
.declaration pre {
  background: #f4f4f4;
  padding: 0.6em 0.8em;
  overflow-x: auto;
}
.io-table { border-collapse: collapse; width: 100%; }
.io-table th, .io-table td {
  border: 1px solid #bbb;
  padding: 0.25em 0.5em;
  text-align: left;
  font-family: ui-monospace, monospace;
}
.io-table th { background: #e8e8e8; font-family: system-ui, sans-serif; }
.io-table td.name { padding-left: calc(0.5em + var(--depth, 0) * 1.5em); }
.io-table td.changed { background: #fff4d6; }
.io-table .note { color: #666; font-size: 0.85em; }
.io-table input.toggle { display: none; }
.io-table input.toggle + label { cursor: pointer; }
.io-table input.toggle + label::before { content: "\25BE  "; }
.io-table input.toggle:not(:checked) + label::before { content: "\25B8  "; }
.no-example { color: #666; font-style: italic; }
ul.functions { list-style: none; padding: 0; }
ul.functions li { margin: 0.3em 0; }
.badge {
  display: inline-block;
  margin-left: 0.5em;
  padding: 0 0.5em;
  border-radius: 0.6em;
  background: #2d7d46;
  color: #fff;
  font-size: 0.8em;
}
)";
}

}  // namespace iotrace::docgen
