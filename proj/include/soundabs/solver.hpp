#ifndef SOUNDABS_SOLVER_HPP
#define SOUNDABS_SOLVER_HPP

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <mutex>
#include <sstream>
#include <string>

namespace soundabs {

enum class SolverStatus { Unsat, Sat, Unknown, Timeout, Error };

inline const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Unsat: return "unsat";
    case SolverStatus::Sat: return "sat";
    case SolverStatus::Unknown: return "unknown";
    case SolverStatus::Timeout: return "timeout";
    case SolverStatus::Error: return "error";
  }
  return "?";
}

struct SolverResult {
  SolverStatus status = SolverStatus::Error;
  std::string output;   // full stdout of the solver
  std::string detail;   // diagnostic note (spawn failures, exit codes)
  long long wallMillis = 0;
};

// Runs `command` through /bin/sh, writes `script` to its stdin, collects
// stdout, and classifies the first whitespace-delimited token as
// sat/unsat/unknown.  The process group is killed once the deadline passes.
inline SolverResult run_solver(const std::string& command, const std::string& script,
                               int timeoutSecs) {
  static std::once_flag sigpipeOnce;
  std::call_once(sigpipeOnce, [] { ::signal(SIGPIPE, SIG_IGN); });

  SolverResult res;
  auto started = std::chrono::steady_clock::now();

  int inPipe[2], outPipe[2];
  if (pipe(inPipe) != 0 || pipe(outPipe) != 0) {
    res.detail = "pipe() failed: " + std::string(std::strerror(errno));
    return res;
  }

  pid_t pid = fork();
  if (pid < 0) {
    res.detail = "fork() failed: " + std::string(std::strerror(errno));
    return res;
  }
  if (pid == 0) {
    setpgid(0, 0);  // own process group so the whole pipeline can be killed
    dup2(inPipe[0], STDIN_FILENO);
    dup2(outPipe[1], STDOUT_FILENO);
    close(inPipe[0]);
    close(inPipe[1]);
    close(outPipe[0]);
    close(outPipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(inPipe[0]);
  close(outPipe[1]);

  // Feed the script and read output concurrently via poll so a solver that
  // fills its output pipe before consuming all input cannot deadlock us.
  fcntl(inPipe[1], F_SETFL, O_NONBLOCK);
  fcntl(outPipe[0], F_SETFL, O_NONBLOCK);
  std::size_t written = 0;
  bool stdinOpen = true, stdoutOpen = true;
  bool timedOut = false;
  auto deadline = started + std::chrono::seconds(timeoutSecs);

  while (stdoutOpen || stdinOpen) {
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      timedOut = true;
      break;
    }
    struct pollfd fds[2];
    int n = 0;
    int inIdx = -1, outIdx = -1;
    if (stdinOpen) {
      fds[n] = {inPipe[1], POLLOUT, 0};
      inIdx = n++;
    }
    if (stdoutOpen) {
      fds[n] = {outPipe[0], POLLIN, 0};
      outIdx = n++;
    }
    int waitMs = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count());
    if (waitMs > 200) waitMs = 200;
    if (waitMs < 1) waitMs = 1;
    int rv = poll(fds, n, waitMs);
    if (rv < 0 && errno != EINTR) break;
    if (rv <= 0) continue;
    if (inIdx >= 0 && (fds[inIdx].revents & (POLLOUT | POLLERR | POLLHUP))) {
      if (fds[inIdx].revents & (POLLERR | POLLHUP)) {
        close(inPipe[1]);
        stdinOpen = false;
      } else {
        ssize_t w = write(inPipe[1], script.data() + written, script.size() - written);
        if (w > 0) written += static_cast<std::size_t>(w);
        if (w < 0 && errno != EAGAIN && errno != EINTR) {
          close(inPipe[1]);
          stdinOpen = false;
        }
        if (written == script.size()) {
          close(inPipe[1]);
          stdinOpen = false;
        }
      }
    }
    if (outIdx >= 0 && (fds[outIdx].revents & (POLLIN | POLLERR | POLLHUP))) {
      char buf[4096];
      ssize_t r = read(outPipe[0], buf, sizeof buf);
      if (r > 0) {
        res.output.append(buf, static_cast<std::size_t>(r));
      } else if (r == 0 || (r < 0 && errno != EAGAIN && errno != EINTR)) {
        close(outPipe[0]);
        stdoutOpen = false;
      }
    }
  }
  if (stdinOpen) close(inPipe[1]);
  if (stdoutOpen) close(outPipe[0]);

  int wstatus = 0;
  if (timedOut) {
    kill(-pid, SIGKILL);
    kill(pid, SIGKILL);
    waitpid(pid, &wstatus, 0);
    res.status = SolverStatus::Timeout;
    res.detail = "solver exceeded " + std::to_string(timeoutSecs) + "s and was killed";
  } else {
    waitpid(pid, &wstatus, 0);
    std::istringstream in(res.output);
    std::string token;
    in >> token;
    if (token == "unsat")
      res.status = SolverStatus::Unsat;
    else if (token == "sat")
      res.status = SolverStatus::Sat;
    else if (token == "unknown")
      res.status = SolverStatus::Unknown;
    else {
      res.status = SolverStatus::Error;
      std::string head = res.output.substr(0, 200);
      res.detail = "unrecognized solver output";
      if (!head.empty()) res.detail += ": " + head;
      if (WIFEXITED(wstatus) && WEXITSTATUS(wstatus) == 127)
        res.detail = "solver command not found: " + command;
    }
  }
  res.wallMillis = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
  return res;
}

}  // namespace soundabs

#endif  // SOUNDABS_SOLVER_HPP
