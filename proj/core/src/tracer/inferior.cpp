#include "inferior.hpp"

#include <elf.h>
#include <fcntl.h>
#include <sys/personality.h>
#include <sys/ptrace.h>
#include <sys/uio.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <cstring>
#include <fstream>

#include "iotrace/tracer/tracer.hpp"

extern char** environ;

namespace iotrace::tracer {

bool ProcessMemory::read(std::uint64_t address, std::span<std::uint8_t> out) {
  if (out.empty()) return true;
  if (vm_readv_ok_) {
    iovec local{out.data(), out.size()};
    iovec remote{reinterpret_cast<void*>(address), out.size()};
    const ssize_t n = ::process_vm_readv(pid_, &local, 1, &remote, 1, 0);
    if (n == static_cast<ssize_t>(out.size())) return true;
    if (n < 0 && (errno == ENOSYS || errno == EPERM)) {
      vm_readv_ok_ = false;
    } else {
      // Partial reads stop at the first unmapped page; let PEEKDATA decide.
      return peek(address, out);
    }
  }
  return peek(address, out);
}

bool ProcessMemory::peek(std::uint64_t address, std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    const std::uint64_t at = address + done;
    const std::uint64_t aligned = at & ~std::uint64_t{7};
    std::uint64_t word;
    if (!detail::read_word(pid_, aligned, word)) return false;
    const std::size_t skip = at - aligned;
    const std::size_t n = std::min<std::size_t>(8 - skip, out.size() - done);
    std::memcpy(out.data() + done, reinterpret_cast<std::uint8_t*>(&word) + skip, n);
    done += n;
  }
  return true;
}

namespace detail {

namespace {

[[noreturn]] void child_fail(int fd) {
  const int err = errno;
  [[maybe_unused]] auto n = ::write(fd, &err, sizeof err);
  ::_exit(127);
}

}  // namespace

pid_t launch(const std::filesystem::path& binary, const std::vector<std::string>& args,
             const TraceConfig& config) {
  // Everything the child needs is prepared before fork.
  std::vector<std::string> argv_storage{binary.string()};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  argv.push_back(nullptr);

  std::vector<std::string> env_storage;
  for (char** e = environ; *e != nullptr; ++e) env_storage.emplace_back(*e);
  for (const auto& extra : config.extra_env) {
    const auto key = extra.substr(0, extra.find('=') + 1);
    std::erase_if(env_storage, [&](const std::string& e) { return e.rfind(key, 0) == 0; });
    env_storage.push_back(extra);
  }
  std::vector<char*> envp;
  for (auto& e : env_storage) envp.push_back(e.data());
  envp.push_back(nullptr);

  int pipe_fds[2];
  if (::pipe2(pipe_fds, O_CLOEXEC) != 0) {
    throw TraceError(TraceError::Kind::LaunchFailure,
                     std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(pipe_fds[0]);
    ::close(pipe_fds[1]);
    throw TraceError(TraceError::Kind::LaunchFailure,
                     std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::close(pipe_fds[0]);
    const int fds[3] = {config.stdin_fd, config.stdout_fd, config.stderr_fd};
    for (int target = 0; target < 3; ++target) {
      if (fds[target] >= 0 && fds[target] != target && ::dup2(fds[target], target) < 0) {
        child_fail(pipe_fds[1]);
      }
    }
    ::personality(ADDR_NO_RANDOMIZE);
    if (::ptrace(PTRACE_TRACEME, 0, nullptr, nullptr) != 0) child_fail(pipe_fds[1]);
    ::execve(argv[0], argv.data(), envp.data());
    child_fail(pipe_fds[1]);
  }
  ::close(pipe_fds[1]);
  int child_errno = 0;
  const ssize_t n = ::read(pipe_fds[0], &child_errno, sizeof child_errno);
  ::close(pipe_fds[0]);
  if (n == static_cast<ssize_t>(sizeof child_errno)) {
    int status;
    ::waitpid(pid, &status, 0);
    throw TraceError(TraceError::Kind::LaunchFailure,
                     "cannot start " + binary.string() + ": " + std::strerror(child_errno));
  }
  int status = 0;
  if (::waitpid(pid, &status, 0) != pid || !WIFSTOPPED(status) || WSTOPSIG(status) != SIGTRAP) {
    ::kill(pid, SIGKILL);
    ::waitpid(pid, &status, 0);
    throw TraceError(TraceError::Kind::LaunchFailure,
                     "target did not stop after exec: " + binary.string());
  }
  const long options = PTRACE_O_EXITKILL | PTRACE_O_TRACECLONE | PTRACE_O_TRACEFORK |
                       PTRACE_O_TRACEVFORK | PTRACE_O_TRACEEXEC;
  if (::ptrace(PTRACE_SETOPTIONS, pid, nullptr, reinterpret_cast<void*>(options)) != 0) {
    ::kill(pid, SIGKILL);
    ::waitpid(pid, &status, 0);
    throw TraceError(TraceError::Kind::LaunchFailure,
                     std::string("PTRACE_SETOPTIONS: ") + std::strerror(errno));
  }
  return pid;
}

std::optional<std::uint64_t> load_bias(pid_t pid, std::uint64_t elf_entry) {
  std::ifstream auxv("/proc/" + std::to_string(pid) + "/auxv", std::ios::binary);
  Elf64_auxv_t entry;
  while (auxv.read(reinterpret_cast<char*>(&entry), sizeof entry)) {
    if (entry.a_type == AT_NULL) break;
    if (entry.a_type == AT_ENTRY) return entry.a_un.a_val - elf_entry;
  }
  return std::nullopt;
}

bool read_word(pid_t pid, std::uint64_t addr, std::uint64_t& word) {
  errno = 0;
  const long v = ::ptrace(PTRACE_PEEKDATA, pid, reinterpret_cast<void*>(addr), nullptr);
  if (errno != 0) return false;
  word = static_cast<std::uint64_t>(v);
  return true;
}

bool write_word(pid_t pid, std::uint64_t addr, std::uint64_t word) {
  return ::ptrace(PTRACE_POKEDATA, pid, reinterpret_cast<void*>(addr),
                  reinterpret_cast<void*>(word)) == 0;
}

bool read_byte(pid_t pid, std::uint64_t addr, std::uint8_t& byte) {
  std::uint64_t word;
  if (!read_word(pid, addr, word)) return false;
  byte = static_cast<std::uint8_t>(word & 0xff);
  return true;
}

bool write_byte(pid_t pid, std::uint64_t addr, std::uint8_t byte) {
  std::uint64_t word;
  if (!read_word(pid, addr, word)) return false;
  word = (word & ~std::uint64_t{0xff}) | byte;
  return write_word(pid, addr, word);
}

bool get_regs(pid_t tid, user_regs_struct& regs) {
  return ::ptrace(PTRACE_GETREGS, tid, nullptr, &regs) == 0;
}

bool set_regs(pid_t tid, const user_regs_struct& regs) {
  return ::ptrace(PTRACE_SETREGS, tid, nullptr, &regs) == 0;
}

bool capture_registers(pid_t tid, RegisterState& out) {
  user_regs_struct regs{};
  if (!get_regs(tid, regs)) return false;
  out.rip = regs.rip;
  out.rsp = regs.rsp;
  out.rax = regs.rax;
  out.rdx = regs.rdx;
  out.args = {regs.rdi, regs.rsi, regs.rdx, regs.rcx, regs.r8, regs.r9};
  user_fpregs_struct fp{};
  if (::ptrace(PTRACE_GETFPREGS, tid, nullptr, &fp) == 0) {
    for (std::size_t i = 0; i < out.xmm.size(); ++i) {
      std::memcpy(out.xmm[i].data(), reinterpret_cast<const std::uint8_t*>(fp.xmm_space) + 16 * i,
                  16);
    }
    std::memcpy(out.st0.data(), fp.st_space, out.st0.size());
  }
  return true;
}

}  // namespace detail
}  // namespace iotrace::tracer
