#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iotrace::debuginfo {

/// Read-only memory mapping of a file.
class MappedFile {
 public:
  explicit MappedFile(const std::filesystem::path& path);
  MappedFile(const MappedFile&) = delete;
  MappedFile& operator=(const MappedFile&) = delete;
  MappedFile(MappedFile&& other) noexcept;
  MappedFile& operator=(MappedFile&& other) noexcept;
  ~MappedFile();

  std::span<const std::uint8_t> bytes() const { return {data_, size_}; }

 private:
  const std::uint8_t* data_ = nullptr;
  std::size_t size_ = 0;
};

struct ElfSection {
  std::string name;
  std::uint32_t type = 0;
  std::uint64_t flags = 0;
  std::uint64_t address = 0;
  std::uint64_t offset = 0;
  std::uint64_t size = 0;
};

struct ExecRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  bool contains(std::uint64_t addr) const { return addr >= begin && addr < end; }
};

/// A 64-bit little-endian x86-64 ELF executable or shared object.
///
/// Construction throws DebugInfoError: UnsupportedFormat for non-ELF input,
/// relocatable objects or foreign machines; UnsupportedWordSize for ELFCLASS32.
class ElfFile {
 public:
  explicit ElfFile(const std::filesystem::path& path);

  const std::filesystem::path& path() const { return path_; }
  std::uint64_t entry_point() const { return entry_; }
  bool position_independent() const { return pie_; }

  const std::vector<ElfSection>& sections() const { return sections_; }
  const ElfSection* find_section(std::string_view name) const;
  // Contents of a section; empty for missing or NOBITS sections.
  std::span<const std::uint8_t> section_data(std::string_view name) const;

  const std::vector<ExecRange>& executable_ranges() const { return exec_ranges_; }
  bool is_executable_address(std::uint64_t addr) const;

 private:
  std::filesystem::path path_;
  MappedFile file_;
  std::uint64_t entry_ = 0;
  bool pie_ = false;
  std::vector<ElfSection> sections_;
  std::vector<ExecRange> exec_ranges_;
};

}  // namespace iotrace::debuginfo
