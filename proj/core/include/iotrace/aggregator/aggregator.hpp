#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iotrace/model/session.hpp"

namespace iotrace::aggregator {

struct CallTuple {
  std::uint64_t call_id = 0;
  std::map<std::string, std::string> values;  // variable -> rendered value

  friend bool operator==(const CallTuple&, const CallTuple&) = default;
};

/// Entry values of every completed call of one function, plus its return.
struct CallTupleSet {
  std::string function;
  std::vector<std::string> variables;  // parameters in order, then "return"
  std::vector<CallTuple> tuples;

  friend bool operator==(const CallTupleSet&, const CallTupleSet&) = default;
};

struct Histogram {
  std::string variable;
  // Numeric order when every label parses as a number, else lexicographic.
  std::vector<std::pair<std::string, std::size_t>> bins;

  std::size_t count(const std::string& label) const;
  std::size_t total() const;
  std::size_t max_count() const;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

class AggregatorError : public std::runtime_error {
 public:
  enum class Kind { EmptyInput, UnknownVariable, MixedFunctions, IoError, BadViewerJson };

  AggregatorError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(AggregatorError::Kind kind);

/// Interrupted records are skipped. Throws EmptyInput when nothing is left
/// to chart, MixedFunctions when records name different functions.
CallTupleSet build_tuples(const std::vector<model::CallRecord>& records);

Histogram histogram(const CallTupleSet& tuples, const std::string& variable);

/// One histogram per variable over all tuples.
std::map<std::string, Histogram> histograms(const CallTupleSet& tuples);

/// Histograms over the tuples whose `anchor_variable` renders as
/// `anchor_value`.
std::map<std::string, Histogram> cofilter(const CallTupleSet& tuples,
                                          const std::string& anchor_variable,
                                          const std::string& anchor_value);

void sort_bins(std::vector<std::pair<std::string, std::size_t>>& bins);

}  // namespace iotrace::aggregator
