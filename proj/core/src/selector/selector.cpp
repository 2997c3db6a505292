#include "iotrace/selector/selector.hpp"

#include <algorithm>
#include <limits>

namespace iotrace::selector {

using model::CallRecord;

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  // Largest multiple of n that fits, i.e. floor(2^64 / n) * n, computed
  // without overflow; zero stands for 2^64 itself (n a power of two).
  const std::uint64_t limit = max - (max % n + 1) % n + 1;
  while (true) {
    const std::uint64_t x = rng();
    if (limit == 0 || x < limit) return x % n;
  }
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t function_seed(std::uint64_t seed, std::string_view function) {
  return splitmix64(seed ^ fnv1a64(function));
}

std::uint64_t default_seed(const model::TraceSession& session) {
  return fnv1a64(session.created_at);
}

SelectionStrategy::Kind parse_strategy(std::string_view name) {
  if (name == "random") return SelectionStrategy::Kind::Random;
  if (name == "first") return SelectionStrategy::Kind::First;
  if (name == "last") return SelectionStrategy::Kind::Last;
  throw SelectorError(SelectorError::Kind::UnknownStrategy,
                      "unknown strategy '" + std::string(name) + "' (random, first, last)");
}

model::IOExample select_example(const std::vector<CallRecord>& records,
                                const SelectionStrategy& strategy,
                                const std::string& source_session) {
  std::vector<const CallRecord*> completed;
  for (const auto& r : records) {
    if (r.status == model::CallStatus::Completed) completed.push_back(&r);
  }
  if (completed.empty()) {
    const std::string name = records.empty() ? std::string() : " for " + records.front().function;
    throw SelectorError(SelectorError::Kind::NoCompletedCalls, "no completed calls" + name);
  }
  std::sort(completed.begin(), completed.end(),
            [](const CallRecord* a, const CallRecord* b) { return a->call_id < b->call_id; });
  const CallRecord* pick = nullptr;
  switch (strategy.kind) {
    case SelectionStrategy::Kind::First:
      pick = completed.front();
      break;
    case SelectionStrategy::Kind::Last:
      pick = completed.back();
      break;
    case SelectionStrategy::Kind::Random: {
      std::mt19937_64 rng(strategy.seed);
      pick = completed[uniform_index(rng, completed.size())];
      break;
    }
  }
  return {pick->function, *pick, source_session};
}

std::vector<model::IOExample> select_all(const model::TraceSession& session,
                                         const SelectionStrategy& strategy) {
  std::vector<model::IOExample> out;
  for (const auto& [name, records] : session.records) {
    const bool any = std::any_of(records.begin(), records.end(), [](const CallRecord& r) {
      return r.status == model::CallStatus::Completed;
    });
    if (!any) continue;
    SelectionStrategy s = strategy;
    if (s.kind == SelectionStrategy::Kind::Random) s.seed = function_seed(strategy.seed, name);
    out.push_back(select_example(records, s, session.identifier()));
  }
  return out;
}

}  // namespace iotrace::selector
