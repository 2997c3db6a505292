#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

namespace iotrace::debuginfo {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Little-endian cursor over a debug section. Every read is bounds checked
/// and throws FormatError on overrun.
class ByteReader {
 public:
  ByteReader() = default;
  explicit ByteReader(std::span<const std::uint8_t> data, std::size_t pos = 0)
      : data_(data), pos_(pos) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u24();
  std::uint32_t u32();
  std::uint64_t u64();
  std::uint64_t uleb128();
  std::int64_t sleb128();
  std::uint64_t sized(std::size_t bytes);
  // 4 bytes in 32-bit DWARF, 8 in 64-bit DWARF.
  std::uint64_t offset(bool dwarf64) { return dwarf64 ? u64() : u32(); }
  std::string_view cstr();
  std::span<const std::uint8_t> bytes(std::size_t n);
  void skip(std::size_t n);

  std::size_t pos() const { return pos_; }
  void seek(std::size_t pos);
  bool at_end() const { return pos_ >= data_.size(); }
  std::size_t remaining() const { return pos_ < data_.size() ? data_.size() - pos_ : 0; }
  std::span<const std::uint8_t> data() const { return data_; }

 private:
  void need(std::size_t n) const;

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace iotrace::debuginfo
