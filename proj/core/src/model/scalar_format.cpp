#include "iotrace/model/scalar_format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace iotrace::model {

namespace {

__extension__ typedef unsigned __int128 u128;

template <typename F>
std::string format_floating(F value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return {};
  return std::string(buf.data(), end);
}

u128 load_unsigned(std::span<const std::uint8_t> bits) {
  u128 v = 0;
  for (std::size_t i = bits.size(); i-- > 0;) v = (v << 8) | bits[i];
  return v;
}

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return out;
}

std::string render_integer(std::span<const std::uint8_t> bits, bool is_signed) {
  const std::size_t n = bits.size();
  if (n == 0 || n > 16) return {};
  u128 raw = load_unsigned(bits);
  if (!is_signed) return u128_to_string(raw);
  const u128 sign_bit = static_cast<u128>(1) << (n * 8 - 1);
  if ((raw & sign_bit) == 0) return u128_to_string(raw);
  // Two's complement magnitude within n bytes.
  u128 mask =
      n == 16 ? ~static_cast<u128>(0)
              : (static_cast<u128>(1) << (n * 8)) - 1;
  u128 magnitude = ((~raw) & mask) + 1;
  return "-" + u128_to_string(magnitude);
}

}  // namespace

std::string format_double(double value) { return format_floating(value); }
std::string format_float(float value) { return format_floating(value); }

std::string char_literal(std::uint8_t byte) {
  std::string out = "'";
  switch (byte) {
    case '\a': out += "\\a"; break;
    case '\b': out += "\\b"; break;
    case '\f': out += "\\f"; break;
    case '\n': out += "\\n"; break;
    case '\r': out += "\\r"; break;
    case '\t': out += "\\t"; break;
    case '\v': out += "\\v"; break;
    case '\\': out += "\\\\"; break;
    case '\'': out += "\\'"; break;
    default:
      if (byte < 0x20 || byte >= 0x7f) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\%03o", byte);
        out += buf;
      } else {
        out.push_back(static_cast<char>(byte));
      }
  }
  out += "'";
  return out;
}

std::string render_scalar(std::span<const std::uint8_t> bits, const TypeDesc& base) {
  const TypeDesc& t = strip_typedefs(base);
  if (bits.empty()) return {};
  switch (t.encoding) {
    case BaseEncoding::SignedInt:
      return render_integer(bits, true);
    case BaseEncoding::UnsignedInt:
      return render_integer(bits, false);
    case BaseEncoding::Bool: {
      bool any = false;
      for (auto b : bits) any = any || b != 0;
      return any ? "true" : "false";
    }
    case BaseEncoding::SignedChar:
    case BaseEncoding::UnsignedChar: {
      const bool is_signed = t.encoding == BaseEncoding::SignedChar;
      return render_integer(bits.first(1), is_signed) + " " + char_literal(bits[0]);
    }
    case BaseEncoding::Float:
      if (bits.size() == 4) {
        float f;
        std::memcpy(&f, bits.data(), 4);
        return format_float(f);
      }
      if (bits.size() == 8) {
        double d;
        std::memcpy(&d, bits.data(), 8);
        return format_double(d);
      }
      if (bits.size() >= 10 && sizeof(long double) == 16) {
        // x87 extended precision, stored in the low 10 of 16 bytes.
        std::array<std::uint8_t, 16> buf{};
        std::memcpy(buf.data(), bits.data(), std::min<std::size_t>(bits.size(), 16));
        long double ld;
        std::memcpy(&ld, buf.data(), sizeof ld);
        return format_floating(ld);
      }
      return {};
  }
  return {};
}

}  // namespace iotrace::model
