#pragma once

#include <sys/types.h>
#include <sys/user.h>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "iotrace/tracer/config.hpp"
#include "iotrace/tracer/snapshot.hpp"

namespace iotrace::tracer::detail {

/// Forks and execs `binary` as a tracee. Returns once the child is stopped
/// at its first instruction after exec with trace options set.
/// Throws TraceError LaunchFailure.
pid_t launch(const std::filesystem::path& binary, const std::vector<std::string>& args,
             const TraceConfig& config);

/// Load bias of the main executable (AT_ENTRY minus the ELF entry point).
std::optional<std::uint64_t> load_bias(pid_t pid, std::uint64_t elf_entry);

bool read_word(pid_t pid, std::uint64_t addr, std::uint64_t& word);
bool write_word(pid_t pid, std::uint64_t addr, std::uint64_t word);
bool read_byte(pid_t pid, std::uint64_t addr, std::uint8_t& byte);
bool write_byte(pid_t pid, std::uint64_t addr, std::uint8_t byte);

bool get_regs(pid_t tid, user_regs_struct& regs);
bool set_regs(pid_t tid, const user_regs_struct& regs);
// Fills the general and vector/x87 registers of a RegisterState.
bool capture_registers(pid_t tid, RegisterState& out);

}  // namespace iotrace::tracer::detail
