#include "iotrace/aggregator/aggregator.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <unordered_map>

namespace iotrace::aggregator {

const char* to_string(AggregatorError::Kind kind) {
  switch (kind) {
    case AggregatorError::Kind::EmptyInput: return "EmptyInput";
    case AggregatorError::Kind::UnknownVariable: return "UnknownVariable";
    case AggregatorError::Kind::MixedFunctions: return "MixedFunctions";
    case AggregatorError::Kind::IoError: return "IoError";
    case AggregatorError::Kind::BadViewerJson: return "BadViewerJson";
  }
  return "?";
}

std::size_t Histogram::count(const std::string& label) const {
  for (const auto& [l, n] : bins) {
    if (l == label) return n;
  }
  return 0;
}

std::size_t Histogram::total() const {
  std::size_t sum = 0;
  for (const auto& bin : bins) sum += bin.second;
  return sum;
}

std::size_t Histogram::max_count() const {
  std::size_t best = 0;
  for (const auto& bin : bins) best = std::max(best, bin.second);
  return best;
}

CallTupleSet build_tuples(const std::vector<model::CallRecord>& records) {
  CallTupleSet set;
  bool have_shape = false;
  for (const auto& rec : records) {
    if (set.function.empty()) set.function = rec.function;
    if (rec.function != set.function) {
      throw AggregatorError(AggregatorError::Kind::MixedFunctions,
                            "records of '" + set.function + "' and '" + rec.function +
                                "' cannot share one chart set");
    }
    if (rec.status != model::CallStatus::Completed) continue;
    if (!have_shape) {
      for (const auto& in : rec.inputs) set.variables.push_back(in.name);
      if (rec.return_value && !rec.return_value->is<model::Void>()) {
        set.variables.push_back("return");
      }
      have_shape = true;
    }
    CallTuple t;
    t.call_id = rec.call_id;
    for (const auto& in : rec.inputs) t.values[in.name] = model::display_text(*in.value);
    if (rec.return_value && !rec.return_value->is<model::Void>()) {
      t.values["return"] = model::display_text(*rec.return_value);
    }
    set.tuples.push_back(std::move(t));
  }
  if (set.tuples.empty()) {
    throw AggregatorError(AggregatorError::Kind::EmptyInput,
                          "no completed calls" +
                              (set.function.empty() ? std::string() : " of " + set.function));
  }
  if (set.variables.empty()) {
    throw AggregatorError(AggregatorError::Kind::EmptyInput,
                          set.function + " has no parameters or return value to chart");
  }
  return set;
}

namespace {

std::optional<double> as_number(const std::string& label) {
  double v = 0;
  const char* end = label.data() + label.size();
  auto [ptr, ec] = std::from_chars(label.data(), end, v);
  if (ec != std::errc() || ptr != end || label.empty()) return std::nullopt;
  return v;
}

void require_variable(const CallTupleSet& tuples, const std::string& variable) {
  if (std::find(tuples.variables.begin(), tuples.variables.end(), variable) ==
      tuples.variables.end()) {
    throw AggregatorError(AggregatorError::Kind::UnknownVariable,
                          "'" + variable + "' is not a variable of " + tuples.function);
  }
}

template <typename Pred>
Histogram count_where(const CallTupleSet& tuples, const std::string& variable, Pred keep) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& t : tuples.tuples) {
    if (!keep(t)) continue;
    auto it = t.values.find(variable);
    if (it != t.values.end()) ++counts[it->second];
  }
  Histogram h;
  h.variable = variable;
  h.bins.assign(counts.begin(), counts.end());
  sort_bins(h.bins);
  return h;
}

}  // namespace

void sort_bins(std::vector<std::pair<std::string, std::size_t>>& bins) {
  const bool numeric = std::all_of(bins.begin(), bins.end(),
                                   [](const auto& bin) { return as_number(bin.first).has_value(); });
  if (!numeric) {
    std::sort(bins.begin(), bins.end());
    return;
  }
  std::sort(bins.begin(), bins.end(), [](const auto& a, const auto& b) {
    const double x = *as_number(a.first);
    const double y = *as_number(b.first);
    if (x != y) return x < y;
    return a.first < b.first;
  });
}

Histogram histogram(const CallTupleSet& tuples, const std::string& variable) {
  require_variable(tuples, variable);
  return count_where(tuples, variable, [](const CallTuple&) { return true; });
}

std::map<std::string, Histogram> histograms(const CallTupleSet& tuples) {
  std::map<std::string, Histogram> out;
  for (const auto& v : tuples.variables) out.emplace(v, histogram(tuples, v));
  return out;
}

std::map<std::string, Histogram> cofilter(const CallTupleSet& tuples,
                                          const std::string& anchor_variable,
                                          const std::string& anchor_value) {
  require_variable(tuples, anchor_variable);
  auto keep = [&](const CallTuple& t) {
    auto it = t.values.find(anchor_variable);
    return it != t.values.end() && it->second == anchor_value;
  };
  std::map<std::string, Histogram> out;
  for (const auto& v : tuples.variables) out.emplace(v, count_where(tuples, v, keep));
  return out;
}

}  // namespace iotrace::aggregator
