#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "iotrace/model/session.hpp"

namespace iotrace::model::json {

using Json = nlohmann::ordered_json;

// Thrown for structurally valid JSON that does not follow the schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json value_to_json(const Value& value);
Value value_from_json(const Json& j);

Json record_to_json(const CallRecord& record);
CallRecord record_from_json(const Json& j);

std::string hex_address(std::uint64_t address);

}  // namespace iotrace::model::json
