#include "iotrace/debuginfo/elf_file.hpp"

#include <elf.h>
#include <fcntl.h>
#include <sys/mman.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <utility>

#include "iotrace/debuginfo/errors.hpp"

namespace iotrace::debuginfo {

using Kind = DebugInfoError::Kind;

const char* to_string(DebugInfoError::Kind kind) {
  switch (kind) {
    case Kind::Io: return "IoError";
    case Kind::NoDebugInfo: return "NoDebugInfo";
    case Kind::UnsupportedFormat: return "UnsupportedFormat";
    case Kind::UnsupportedWordSize: return "UnsupportedWordSize";
    case Kind::NotFound: return "NotFound";
    case Kind::Ambiguous: return "Ambiguous";
    case Kind::NoSuchMember: return "NoSuchMember";
  }
  return "DebugInfoError";
}

MappedFile::MappedFile(const std::filesystem::path& path) {
  int fd = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd < 0) {
    throw DebugInfoError(Kind::Io, path.string() + ": " + std::strerror(errno));
  }
  struct stat st {};
  if (::fstat(fd, &st) != 0 || !S_ISREG(st.st_mode)) {
    ::close(fd);
    throw DebugInfoError(Kind::Io, path.string() + ": not a regular file");
  }
  size_ = static_cast<std::size_t>(st.st_size);
  if (size_ > 0) {
    void* p = ::mmap(nullptr, size_, PROT_READ, MAP_PRIVATE, fd, 0);
    if (p == MAP_FAILED) {
      ::close(fd);
      throw DebugInfoError(Kind::Io, path.string() + ": mmap failed");
    }
    data_ = static_cast<const std::uint8_t*>(p);
  }
  ::close(fd);
}

MappedFile::MappedFile(MappedFile&& other) noexcept
    : data_(std::exchange(other.data_, nullptr)), size_(std::exchange(other.size_, 0)) {}

MappedFile& MappedFile::operator=(MappedFile&& other) noexcept {
  if (this != &other) {
    if (data_) ::munmap(const_cast<std::uint8_t*>(data_), size_);
    data_ = std::exchange(other.data_, nullptr);
    size_ = std::exchange(other.size_, 0);
  }
  return *this;
}

MappedFile::~MappedFile() {
  if (data_) ::munmap(const_cast<std::uint8_t*>(data_), size_);
}

namespace {

template <typename T>
T load(std::span<const std::uint8_t> bytes, std::uint64_t offset, const std::string& what) {
  if (offset > bytes.size() || bytes.size() - offset < sizeof(T)) {
    throw DebugInfoError(Kind::UnsupportedFormat, "truncated ELF " + what);
  }
  T out;
  std::memcpy(&out, bytes.data() + offset, sizeof(T));
  return out;
}

}  // namespace

ElfFile::ElfFile(const std::filesystem::path& path) : path_(path), file_(path) {
  auto bytes = file_.bytes();
  const std::string where = path.string();
  if (bytes.size() < EI_NIDENT || std::memcmp(bytes.data(), ELFMAG, SELFMAG) != 0) {
    throw DebugInfoError(Kind::UnsupportedFormat, where + ": not an ELF file");
  }
  if (bytes[EI_CLASS] == ELFCLASS32) {
    throw DebugInfoError(Kind::UnsupportedWordSize,
                         where + ": 32-bit ELF; only 64-bit targets are supported");
  }
  if (bytes[EI_CLASS] != ELFCLASS64 || bytes[EI_DATA] != ELFDATA2LSB) {
    throw DebugInfoError(Kind::UnsupportedFormat, where + ": not a 64-bit little-endian ELF");
  }
  const auto ehdr = load<Elf64_Ehdr>(bytes, 0, "header");
  if (ehdr.e_machine != EM_X86_64) {
    throw DebugInfoError(Kind::UnsupportedFormat, where + ": not an x86-64 binary");
  }
  if (ehdr.e_type != ET_EXEC && ehdr.e_type != ET_DYN) {
    throw DebugInfoError(Kind::UnsupportedFormat,
                         where + ": not an executable (relocatable objects are unsupported)");
  }
  entry_ = ehdr.e_entry;
  pie_ = ehdr.e_type == ET_DYN;

  for (std::uint16_t i = 0; i < ehdr.e_phnum; ++i) {
    const auto ph = load<Elf64_Phdr>(bytes, ehdr.e_phoff + std::uint64_t{i} * ehdr.e_phentsize,
                                     "program header");
    if (ph.p_type == PT_LOAD && (ph.p_flags & PF_X)) {
      exec_ranges_.push_back({ph.p_vaddr, ph.p_vaddr + ph.p_memsz});
    }
  }

  if (ehdr.e_shoff == 0 || ehdr.e_shnum == 0) return;
  std::vector<Elf64_Shdr> headers;
  headers.reserve(ehdr.e_shnum);
  for (std::uint16_t i = 0; i < ehdr.e_shnum; ++i) {
    headers.push_back(load<Elf64_Shdr>(
        bytes, ehdr.e_shoff + std::uint64_t{i} * ehdr.e_shentsize, "section header"));
  }
  if (ehdr.e_shstrndx >= headers.size()) return;
  const auto& strtab = headers[ehdr.e_shstrndx];
  for (const auto& sh : headers) {
    ElfSection s;
    const std::uint64_t name_off = strtab.sh_offset + sh.sh_name;
    if (name_off < bytes.size()) {
      const auto* name = reinterpret_cast<const char*>(bytes.data() + name_off);
      s.name.assign(name, strnlen(name, bytes.size() - name_off));
    }
    s.type = sh.sh_type;
    s.flags = sh.sh_flags;
    s.address = sh.sh_addr;
    s.offset = sh.sh_offset;
    s.size = sh.sh_size;
    if (s.type != SHT_NOBITS && (s.offset > bytes.size() || bytes.size() - s.offset < s.size)) {
      throw DebugInfoError(Kind::UnsupportedFormat, where + ": section " + s.name + " out of bounds");
    }
    sections_.push_back(std::move(s));
  }
}

const ElfSection* ElfFile::find_section(std::string_view name) const {
  for (const auto& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::span<const std::uint8_t> ElfFile::section_data(std::string_view name) const {
  const ElfSection* s = find_section(name);
  if (s == nullptr || s->type == SHT_NOBITS) return {};
  return file_.bytes().subspan(s->offset, s->size);
}

bool ElfFile::is_executable_address(std::uint64_t addr) const {
  for (const auto& r : exec_ranges_) {
    if (r.contains(addr)) return true;
  }
  return false;
}

}  // namespace iotrace::debuginfo
