#include "iotrace/aggregator/viewer_json.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace iotrace::aggregator {

using nlohmann::json;

std::string encode_viewer_json(const CallTupleSet& tuples,
                               const std::map<std::string, Histogram>& histograms) {
  json doc;
  doc["viewer_version"] = kViewerVersion;
  doc["function"] = tuples.function;
  doc["variables"] = tuples.variables;
  json rows = json::array();
  for (const auto& t : tuples.tuples) {
    json values = json::object();
    for (const auto& v : tuples.variables) {
      auto it = t.values.find(v);
      if (it != t.values.end()) values[v] = it->second;
    }
    rows.push_back({{"call_id", t.call_id}, {"values", std::move(values)}});
  }
  doc["tuples"] = std::move(rows);
  json hs = json::object();
  for (const auto& v : tuples.variables) {
    auto it = histograms.find(v);
    if (it == histograms.end()) continue;
    json bins = json::array();
    for (const auto& [label, n] : it->second.bins) bins.push_back({{"value", label}, {"count", n}});
    hs[v] = std::move(bins);
  }
  doc["histograms"] = std::move(hs);
  return doc.dump(1) + "\n";
}

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw AggregatorError(AggregatorError::Kind::BadViewerJson, "viewer JSON: " + what);
}

}  // namespace

CallTupleSet decode_viewer_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
  if (!doc.is_object()) bad("top level is not an object");
  if (doc.value("viewer_version", 0) != kViewerVersion) bad("unsupported viewer_version");
  try {
    CallTupleSet set;
    set.function = doc.at("function").get<std::string>();
    set.variables = doc.at("variables").get<std::vector<std::string>>();
    for (const auto& row : doc.at("tuples")) {
      CallTuple t;
      t.call_id = row.at("call_id").get<std::uint64_t>();
      t.values = row.at("values").get<std::map<std::string, std::string>>();
      for (const auto& v : set.variables) {
        if (!t.values.count(v)) bad("tuple " + std::to_string(t.call_id) + " lacks '" + v + "'");
      }
      set.tuples.push_back(std::move(t));
    }
    return set;
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

void export_viewer_json(const CallTupleSet& tuples,
                        const std::map<std::string, Histogram>& histograms,
                        const std::filesystem::path& path) {
  if (tuples.tuples.empty()) {
    throw AggregatorError(AggregatorError::Kind::EmptyInput, "nothing to export");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << encode_viewer_json(tuples, histograms);
  if (!out) {
    throw AggregatorError(AggregatorError::Kind::IoError, "cannot write " + path.string());
  }
}

CallTupleSet load_viewer_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AggregatorError(AggregatorError::Kind::IoError, "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return decode_viewer_json(text.str());
}

}  // namespace iotrace::aggregator
