#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace iotrace::tracer {

/// Read access to the address space of a stopped process.
class MemoryReader {
 public:
  virtual ~MemoryReader() = default;
  // Fills `out` from `address`; false if any byte is unreadable.
  virtual bool read(std::uint64_t address, std::span<std::uint8_t> out) = 0;
};

/// In-memory address space made of disjoint mapped regions.
class BufferMemory : public MemoryReader {
 public:
  void map(std::uint64_t address, std::vector<std::uint8_t> bytes);
  bool read(std::uint64_t address, std::span<std::uint8_t> out) override;

 private:
  std::map<std::uint64_t, std::vector<std::uint8_t>> regions_;
};

/// Reads another process with process_vm_readv, falling back to
/// PTRACE_PEEKDATA where that is refused.
class ProcessMemory : public MemoryReader {
 public:
  explicit ProcessMemory(int pid) : pid_(pid) {}
  bool read(std::uint64_t address, std::span<std::uint8_t> out) override;
  // PTRACE_PEEKDATA needs a stopped thread; point it at one.
  void use_thread(int tid) { pid_ = tid; }

 private:
  bool peek(std::uint64_t address, std::span<std::uint8_t> out);
  int pid_;
  bool vm_readv_ok_ = true;
};

}  // namespace iotrace::tracer
