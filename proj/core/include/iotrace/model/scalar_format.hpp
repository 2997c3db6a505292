#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "iotrace/model/type_desc.hpp"

namespace iotrace::model {

/// Renders the little-endian bytes of a base-type value as text.
///
/// Integers print in decimal, floats in shortest round-trip form ("nan",
/// "inf", "-inf" for specials), bools as true/false, and chars gdb-style
/// as `97 'a'`. Returns an empty string when the width is unsupported.
std::string render_scalar(std::span<const std::uint8_t> bits, const TypeDesc& base);

/// Shortest round-trip text for a double / float.
std::string format_double(double value);
std::string format_float(float value);

/// The quoted character part of a char rendering, e.g. `'a'`, `'\n'`, `'\310'`.
std::string char_literal(std::uint8_t byte);

}  // namespace iotrace::model
