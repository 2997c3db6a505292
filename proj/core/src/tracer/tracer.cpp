#include "iotrace/tracer/tracer.hpp"

#include <signal.h>
#include <sys/ptrace.h>
#include <sys/syscall.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <condition_variable>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "inferior.hpp"
#include "iotrace/tracer/snapshot.hpp"
#include "iotrace/version.hpp"

namespace iotrace::tracer {

using debuginfo::FunctionSig;
using model::Bytes;
using model::CallRecord;

const char* to_string(TraceError::Kind kind) {
  switch (kind) {
    case TraceError::Kind::InvalidConfig: return "InvalidConfig";
    case TraceError::Kind::LaunchFailure: return "LaunchFailure";
    case TraceError::Kind::BreakpointFailure: return "BreakpointFailure";
    case TraceError::Kind::TraceTimeout: return "TraceTimeout";
    case TraceError::Kind::PtraceFailure: return "PtraceFailure";
  }
  return "TraceError";
}

std::vector<std::string> validate(const TraceConfig& config) {
  std::vector<std::string> problems;
  if (config.functions.empty()) problems.emplace_back("no functions to watch");
  if (config.max_deref_depth < 1) problems.emplace_back("max_deref_depth must be at least 1");
  if (config.string_cap_bytes < 1) problems.emplace_back("string_cap_bytes must be at least 1");
  if (config.timeout.count() < 1) problems.emplace_back("timeout must be at least one second");
  return problems;
}

std::chrono::seconds effective_timeout(const TraceConfig& config) {
  if (const char* env = std::getenv("IOTRACE_TIMEOUT")) {
    long long secs = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, secs);
    if (ec == std::errc{} && ptr == end && secs > 0) return std::chrono::seconds(secs);
  }
  return config.timeout;
}

namespace {

constexpr std::uint8_t kInt3 = 0xcc;

struct Watched {
  const FunctionSig* sig;
  std::string key;  // spelling used in the session
};

struct Breakpoint {
  std::uint8_t original = 0;
  bool inserted = false;
  std::optional<Watched> entry;
  unsigned return_refs = 0;
};

struct ActiveCall {
  const Watched* watched;
  std::size_t record_index;
  std::uint64_t return_address;
  std::uint64_t entry_sp;
  std::vector<std::optional<Bytes>> args;
};

class Watchdog {
 public:
  Watchdog(pid_t pid, std::chrono::seconds timeout)
      : thread_([this, pid, timeout] {
          std::unique_lock lock(mutex_);
          if (!cv_.wait_for(lock, timeout, [this] { return finished_; })) {
            fired_ = true;
            ::kill(pid, SIGKILL);
          }
        }) {}
  Watchdog(const Watchdog&) = delete;
  Watchdog& operator=(const Watchdog&) = delete;
  ~Watchdog() { stop(); }

  void stop() {
    {
      std::lock_guard lock(mutex_);
      finished_ = true;
    }
    cv_.notify_all();
    if (thread_.joinable()) thread_.join();
  }
  bool fired() {
    std::lock_guard lock(mutex_);
    return fired_;
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  bool finished_ = false;
  bool fired_ = false;
  std::thread thread_;
};

class Controller {
 public:
  Controller(pid_t pid, std::uint64_t bias, const TraceConfig& config)
      : pid_(pid), bias_(bias), config_(config), memory_(pid) {
    known_.insert(pid);
  }

  void plant(const Watched& w) {
    const std::uint64_t addr = w.sig->low_pc + bias_;
    auto& bp = bps_[addr];
    if (bp.entry) return;
    if (!bp.inserted && !insert(addr, bp)) {
      throw TraceError(TraceError::Kind::BreakpointFailure,
                       "cannot plant a breakpoint at the entry of " + w.key, w.key);
    }
    bp.entry = w;
    records_[w.key];
  }

  void run() {
    while (!exit_) {
      if (!deferred_.empty()) {
        const auto [tid, status] = deferred_.front();
        deferred_.pop_front();
        held_.erase(tid);
        handle(tid, status);
        continue;
      }
      int status = 0;
      const pid_t tid = ::waitpid(-1, &status, __WALL);
      if (tid < 0) {
        if (errno == EINTR) continue;
        break;
      }
      handle(tid, status);
    }
  }

  const std::optional<model::ExitStatus>& exit_status() const { return exit_; }

  std::map<std::string, std::vector<CallRecord>> take_records() {
    std::map<std::string, std::vector<CallRecord>> out;
    for (auto& [name, recs] : records_) {
      if (!recs.empty()) out[name] = std::move(recs);
    }
    return out;
  }

 private:
  bool insert(std::uint64_t addr, Breakpoint& bp) {
    if (!detail::read_byte(current_, addr, bp.original)) return false;
    if (!detail::write_byte(current_, addr, kInt3)) return false;
    bp.inserted = true;
    return true;
  }

  void resume(pid_t tid, int sig) {
    ::ptrace(PTRACE_CONT, tid, nullptr, reinterpret_cast<void*>(static_cast<long>(sig)));
  }

  bool note_exit(pid_t tid, int status) {
    if (WIFEXITED(status) || WIFSIGNALED(status)) {
      if (tid == pid_) {
        exit_ = WIFEXITED(status) ? model::ExitStatus::exited(WEXITSTATUS(status))
                                  : model::ExitStatus::signaled(WTERMSIG(status));
      }
      stacks_.erase(tid);
      known_.erase(tid);
      return true;
    }
    return false;
  }

  void handle(pid_t tid, int status) {
    if (note_exit(tid, status)) return;
    if (!WIFSTOPPED(status)) return;
    current_ = tid;
    memory_.use_thread(tid);
    const int sig = WSTOPSIG(status);
    const int event = status >> 16;

    if (!known_.count(tid)) {
      if (pending_threads_.erase(tid)) {
        known_.insert(tid);
        resume(tid, 0);
      } else if (auto it = pending_children_.find(tid); it != pending_children_.end()) {
        const bool vfork = it->second;
        pending_children_.erase(it);
        detach_child(tid, vfork);
      } else {
        // Initial stop of a new thread or child, reported before the event
        // that announces it.
        early_.insert(tid);
      }
      return;
    }

    if (sig == SIGSTOP && event == 0 && stop_pending_.erase(tid)) {
      resume(tid, 0);
      return;
    }
    if (sig == SIGTRAP && event != 0) {
      on_event(tid, event);
      resume(tid, 0);
      return;
    }
    if (sig == SIGTRAP && on_trap(tid)) return;
    resume(tid, sig);
  }

  void on_event(pid_t tid, int event) {
    unsigned long msg = 0;
    ::ptrace(PTRACE_GETEVENTMSG, tid, nullptr, &msg);
    const auto child = static_cast<pid_t>(msg);
    switch (event) {
      case PTRACE_EVENT_CLONE:
        if (early_.erase(child)) {
          known_.insert(child);
          resume(child, 0);
        } else {
          pending_threads_.insert(child);
        }
        break;
      case PTRACE_EVENT_FORK:
      case PTRACE_EVENT_VFORK: {
        const bool vfork = event == PTRACE_EVENT_VFORK;
        if (early_.erase(child)) {
          detach_child(child, vfork);
        } else {
          pending_children_[child] = vfork;
        }
        break;
      }
      case PTRACE_EVENT_EXEC:
        // The old image and every breakpoint in it are gone. Calls still
        // active stay interrupted.
        bps_.clear();
        stacks_.clear();
        known_ = {pid_};
        break;
      default:
        break;
    }
  }

  void detach_child(pid_t child, bool vfork) {
    // A vfork child shares our breakpoints with its parent, so it is left
    // alone; a fork child gets a clean copy of the original code.
    if (!vfork) {
      for (const auto& [addr, bp] : bps_) {
        if (bp.inserted) detail::write_byte(child, addr, bp.original);
      }
    }
    ::ptrace(PTRACE_DETACH, child, nullptr, nullptr);
  }

  bool on_trap(pid_t tid) {
    user_regs_struct regs{};
    if (!detail::get_regs(tid, regs)) return false;
    const std::uint64_t addr = regs.rip - 1;
    auto it = bps_.find(addr);
    if (it == bps_.end() || !it->second.inserted) return false;
    regs.rip = addr;
    detail::set_regs(tid, regs);
    if (it->second.return_refs > 0) on_return(tid, addr, regs.rsp);
    if (auto again = bps_.find(addr); again != bps_.end() && again->second.entry) {
      on_entry(tid, *again->second.entry);
    }
    step_over(tid, addr);
    return true;
  }

  model::Value argument_value(const debuginfo::Parameter& p, const std::optional<Bytes>& bytes) {
    if (!bytes) {
      return model::Opaque{{}, p.location.reason.empty() ? std::string("argument unreadable")
                                                         : p.location.reason};
    }
    return snapshot_value(memory_, ValueSource::of(*bytes), *p.type, config_);
  }

  void on_entry(pid_t tid, const Watched& w) {
    RegisterState rs;
    if (!detail::capture_registers(tid, rs)) return;
    ActiveCall call{&w, 0, 0, rs.rsp, {}};
    CallRecord rec;
    rec.function = w.key;
    rec.call_id = ++next_id_[w.key];
    rec.status = model::CallStatus::Interrupted;
    for (const auto& p : w.sig->params) {
      call.args.push_back(capture_argument(rs, memory_, p));
      rec.inputs.push_back({p.name, argument_value(p, call.args.back())});
    }
    auto& recs = records_[w.key];
    call.record_index = recs.size();
    recs.push_back(std::move(rec));

    std::uint64_t ret = 0;
    if (!memory_.read(rs.rsp, {reinterpret_cast<std::uint8_t*>(&ret), sizeof ret})) return;
    auto& bp = bps_[ret];
    if (!bp.inserted && !insert(ret, bp)) {
      if (!bp.entry && bp.return_refs == 0) bps_.erase(ret);
      return;
    }
    ++bp.return_refs;
    call.return_address = ret;
    stacks_[tid].push_back(std::move(call));
  }

  // Return breakpoints stay planted once inserted; lifting them while
  // other threads run towards them loses traps.
  void release_return(std::uint64_t addr) {
    auto it = bps_.find(addr);
    if (it != bps_.end() && it->second.return_refs > 0) --it->second.return_refs;
  }

  void on_return(pid_t tid, std::uint64_t addr, std::uint64_t rsp) {
    auto& stack = stacks_[tid];
    std::size_t i = stack.size();
    while (i-- > 0) {
      if (stack[i].return_address == addr && stack[i].entry_sp + 8 == rsp) break;
    }
    if (i == static_cast<std::size_t>(-1)) return;
    // Deeper frames were abandoned (longjmp and the like).
    for (std::size_t k = stack.size(); k-- > i + 1;) release_return(stack[k].return_address);
    ActiveCall call = std::move(stack[i]);
    stack.resize(i);

    RegisterState rs;
    if (detail::capture_registers(tid, rs)) {
      const FunctionSig& sig = *call.watched->sig;
      CallRecord& rec = records_[call.watched->key][call.record_index];
      for (std::size_t k = 0; k < sig.params.size(); ++k) {
        rec.outputs.push_back({sig.params[k].name, argument_value(sig.params[k], call.args[k])});
      }
      rec.return_value = read_return_value(rs, memory_, sig, config_);
      rec.exit_pc = addr - bias_;
      rec.status = model::CallStatus::Completed;
    }
    release_return(addr);
  }

  void step_over(pid_t tid, std::uint64_t addr) {
    auto it = bps_.find(addr);
    if (it == bps_.end() || !it->second.inserted) {
      resume(tid, 0);
      return;
    }
    const std::uint8_t original = it->second.original;
    // Other threads must not run past the lifted breakpoint.
    const std::vector<pid_t> paused = stop_others(tid);
    detail::write_byte(tid, addr, original);
    int pending = 0;
    bool alive = true;
    while (true) {
      if (::ptrace(PTRACE_SINGLESTEP, tid, nullptr, nullptr) != 0) {
        alive = false;
        break;
      }
      int status = 0;
      if (::waitpid(tid, &status, __WALL) != tid || note_exit(tid, status) ||
          !WIFSTOPPED(status)) {
        alive = false;
        break;
      }
      const int sig = WSTOPSIG(status);
      if (sig == SIGTRAP) break;
      if (sig == SIGSTOP && stop_pending_.erase(tid)) continue;
      // A signal arrived before the instruction ran; deliver it afterwards.
      pending = sig;
    }
    if (auto again = bps_.find(addr); again != bps_.end() && again->second.inserted) {
      detail::write_byte(tid, addr, kInt3);
    }
    for (pid_t t : paused) resume(t, 0);
    if (alive) resume(tid, pending);
  }

  // Stops every other running thread. Threads that report some other stop
  // first are queued for the main loop and their SIGSTOP is swallowed later.
  std::vector<pid_t> stop_others(pid_t self) {
    std::vector<pid_t> targets;
    for (pid_t t : known_) {
      if (t == self || held_.count(t)) continue;
      if (::syscall(SYS_tgkill, pid_, t, SIGSTOP) == 0) targets.push_back(t);
    }
    std::vector<pid_t> paused;
    for (pid_t t : targets) {
      int status = 0;
      if (::waitpid(t, &status, __WALL) != t || note_exit(t, status)) continue;
      if (WIFSTOPPED(status) && WSTOPSIG(status) == SIGSTOP && (status >> 16) == 0) {
        paused.push_back(t);
      } else {
        deferred_.emplace_back(t, status);
        held_.insert(t);
        stop_pending_.insert(t);
      }
    }
    return paused;
  }

  pid_t pid_;
  // The stopped thread whose event is being handled.
  pid_t current_ = pid_;
  std::uint64_t bias_;
  const TraceConfig& config_;
  ProcessMemory memory_;
  std::map<std::uint64_t, Breakpoint> bps_;
  std::map<pid_t, std::vector<ActiveCall>> stacks_;
  std::set<pid_t> known_;
  std::set<pid_t> early_;
  std::set<pid_t> pending_threads_;
  std::map<pid_t, bool> pending_children_;
  std::deque<std::pair<pid_t, int>> deferred_;
  std::set<pid_t> held_;
  std::set<pid_t> stop_pending_;
  std::map<std::string, std::vector<CallRecord>> records_;
  std::map<std::string, std::uint64_t> next_id_;
  std::optional<model::ExitStatus> exit_;
};

struct KillGuard {
  pid_t pid;
  bool armed = true;
  ~KillGuard() {
    if (!armed) return;
    ::kill(pid, SIGKILL);
    int status;
    while (::waitpid(pid, &status, __WALL) == pid && !WIFEXITED(status) && !WIFSIGNALED(status)) {
    }
  }
};

}  // namespace

model::TraceSession trace(const std::filesystem::path& binary, const std::vector<std::string>& args,
                          const debuginfo::DebugIndex& index, const TraceConfig& config) {
  if (auto problems = validate(config); !problems.empty()) {
    throw TraceError(TraceError::Kind::InvalidConfig, problems.front());
  }
  std::vector<Watched> watched;
  for (const auto& name : config.functions) {
    try {
      watched.push_back({&index.resolve_function(name), name});
    } catch (const debuginfo::DebugInfoError& e) {
      throw TraceError(TraceError::Kind::BreakpointFailure, e.what(), name);
    }
  }

  model::TraceSession session;
  session.target = binary.string();
  session.argv.push_back(binary.string());
  session.argv.insert(session.argv.end(), args.begin(), args.end());
  session.watched = config.functions;
  session.tool_version = kToolVersion;
  session.created_at = model::utc_timestamp_now();

  const pid_t pid = detail::launch(binary, args, config);
  KillGuard guard{pid};
  std::uint64_t bias = 0;
  if (index.position_independent()) {
    auto b = detail::load_bias(pid, index.entry_point());
    if (!b) throw TraceError(TraceError::Kind::LaunchFailure, "cannot determine load address");
    bias = *b;
  }
  Controller controller(pid, bias, config);
  for (const auto& w : watched) controller.plant(w);

  Watchdog watchdog(pid, effective_timeout(config));
  ::ptrace(PTRACE_CONT, pid, nullptr, nullptr);
  controller.run();
  watchdog.stop();
  guard.armed = !controller.exit_status().has_value();

  session.exit_status = controller.exit_status().value_or(model::ExitStatus::signaled(SIGKILL));
  session.records = controller.take_records();
  if (watchdog.fired()) {
    session.timed_out = true;
    throw TraceError(TraceError::Kind::TraceTimeout,
                     "target killed after " + std::to_string(effective_timeout(config).count()) +
                         "s timeout",
                     {}, std::move(session));
  }
  if (config.discard_on_failure && !session.exit_status.success()) {
    session.records.clear();
    session.discarded = true;
  }
  return session;
}

}  // namespace iotrace::tracer

