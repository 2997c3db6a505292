#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iotrace/model/session.hpp"

namespace iotrace::docgen {

struct IOTableRow {
  std::string name;
  unsigned depth = 0;
  std::string before;
  std::string after;
  // Extra annotation shown next to the name, e.g. "(first item only)".
  std::string note;
  bool collapsible = false;
  std::optional<std::size_t> parent;

  friend bool operator==(const IOTableRow&, const IOTableRow&) = default;
};

class ShapeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Depth-first rows for the paired entry/exit values of an example, with
/// a final "return" row for non-void functions.
std::vector<IOTableRow> flatten_example(const model::IOExample& example);

/// Rows for one before/after pair; either side may be missing.
void flatten_pair(const std::string& name, const model::Value* before, const model::Value* after,
                  std::vector<IOTableRow>& rows);

}  // namespace iotrace::docgen
