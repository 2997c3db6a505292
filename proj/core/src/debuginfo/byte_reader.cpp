#include "byte_reader.hpp"

#include <cstring>

namespace iotrace::debuginfo {

void ByteReader::need(std::size_t n) const {
  if (pos_ > data_.size() || data_.size() - pos_ < n) {
    throw FormatError("read past end of section at offset " + std::to_string(pos_));
  }
}

std::uint64_t ByteReader::sized(std::size_t n) {
  need(n);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
  pos_ += n;
  return v;
}

std::uint8_t ByteReader::u8() { return static_cast<std::uint8_t>(sized(1)); }
std::uint16_t ByteReader::u16() { return static_cast<std::uint16_t>(sized(2)); }
std::uint32_t ByteReader::u24() { return static_cast<std::uint32_t>(sized(3)); }
std::uint32_t ByteReader::u32() { return static_cast<std::uint32_t>(sized(4)); }
std::uint64_t ByteReader::u64() { return sized(8); }

std::uint64_t ByteReader::uleb128() {
  std::uint64_t result = 0;
  unsigned shift = 0;
  while (true) {
    std::uint8_t byte = u8();
    if (shift < 64) result |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
    shift += 7;
    if ((byte & 0x80) == 0) break;
  }
  return result;
}

std::int64_t ByteReader::sleb128() {
  std::int64_t result = 0;
  unsigned shift = 0;
  std::uint8_t byte;
  do {
    byte = u8();
    if (shift < 64) result |= static_cast<std::int64_t>(byte & 0x7f) << shift;
    shift += 7;
  } while (byte & 0x80);
  if (shift < 64 && (byte & 0x40)) result |= -(static_cast<std::int64_t>(1) << shift);
  return result;
}

std::string_view ByteReader::cstr() {
  need(1);
  const auto* begin = reinterpret_cast<const char*>(data_.data() + pos_);
  const void* nul = std::memchr(begin, 0, data_.size() - pos_);
  if (nul == nullptr) throw FormatError("unterminated string at offset " + std::to_string(pos_));
  std::size_t len = static_cast<const char*>(nul) - begin;
  pos_ += len + 1;
  return {begin, len};
}

std::span<const std::uint8_t> ByteReader::bytes(std::size_t n) {
  need(n);
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

void ByteReader::skip(std::size_t n) {
  need(n);
  pos_ += n;
}

void ByteReader::seek(std::size_t pos) {
  if (pos > data_.size()) throw FormatError("seek past end of section");
  pos_ = pos;
}

}  // namespace iotrace::debuginfo
