#include "process.hpp"

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "iotrace/tracer/tracer.hpp"
#include "paths.hpp"

extern char** environ;

namespace iotrace::testing {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

RunResult run_program(const std::filesystem::path& binary, const std::vector<std::string>& args,
                      const std::vector<std::string>& env) {
  const auto dir = scratch_dir("run");
  const auto out_path = dir / "stdout";
  const auto err_path = dir / "stderr";
  const pid_t pid = ::fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    const int out = ::open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    const int err = ::open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    ::dup2(out, 1);
    ::dup2(err, 2);
    for (const auto& e : env) ::putenv(const_cast<char*>(e.c_str()));
    std::vector<std::string> storage{binary.string()};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    argv.push_back(nullptr);
    ::execve(binary.c_str(), argv.data(), environ);
    ::_exit(127);
  }
  int status = 0;
  ::waitpid(pid, &status, 0);
  RunResult r;
  r.out = read_text(out_path);
  r.err = read_text(err_path);
  r.status = WIFSIGNALED(status) ? model::ExitStatus::signaled(WTERMSIG(status))
                                 : model::ExitStatus::exited(WEXITSTATUS(status));
  std::filesystem::remove_all(dir);
  return r;
}

TracedRun traced_run(const std::filesystem::path& binary, const std::vector<std::string>& args,
                     const debuginfo::DebugIndex& index, tracer::TraceConfig config) {
  const auto dir = scratch_dir("traced");
  const int out = ::open((dir / "stdout").c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
  const int err = ::open((dir / "stderr").c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
  config.stdout_fd = out;
  config.stderr_fd = err;
  TracedRun run;
  try {
    run.session = tracer::trace(binary, args, index, config);
  } catch (...) {
    ::close(out);
    ::close(err);
    std::filesystem::remove_all(dir);
    throw;
  }
  ::close(out);
  ::close(err);
  run.out = read_text(dir / "stdout");
  run.err = read_text(dir / "stderr");
  std::filesystem::remove_all(dir);
  return run;
}

}  // namespace iotrace::testing
