#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iotrace/model/session.hpp"

namespace iotrace::selector {

struct SelectionStrategy {
  enum class Kind { Random, First, Last };
  Kind kind = Kind::Random;
  std::uint64_t seed = 0;

  static SelectionStrategy random(std::uint64_t seed) { return {Kind::Random, seed}; }
  static SelectionStrategy first() { return {Kind::First, 0}; }
  static SelectionStrategy last() { return {Kind::Last, 0}; }
};

class SelectorError : public std::runtime_error {
 public:
  enum class Kind { NoCompletedCalls, UnknownStrategy };
  SelectorError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Picks one completed record. Random draws an index uniformly from the
/// completed records ordered by call_id, using mt19937_64 seeded with
/// `strategy.seed` and rejection sampling (see uniform_index).
/// Throws SelectorError NoCompletedCalls.
model::IOExample select_example(const std::vector<model::CallRecord>& records,
                                const SelectionStrategy& strategy,
                                const std::string& source_session = {});

/// One example per function that has a completed call, ordered by
/// function name. Under Random each function draws from its own stream
/// seeded with function_seed(strategy.seed, name).
std::vector<model::IOExample> select_all(const model::TraceSession& session,
                                         const SelectionStrategy& strategy);

/// Uniform integer in [0, n): draws x from the generator until
/// x < floor(2^64 / n) * n, then returns x % n.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n);

std::uint64_t fnv1a64(std::string_view text);
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t function_seed(std::uint64_t seed, std::string_view function);
// Seed used when none is given: FNV-1a of the session's created_at.
std::uint64_t default_seed(const model::TraceSession& session);

SelectionStrategy::Kind parse_strategy(std::string_view name);

}  // namespace iotrace::selector
