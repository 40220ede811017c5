#include "combench/subproc.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace combench {

std::vector<std::string> split_command(const std::string& command) {
  std::vector<std::string> out;
  std::istringstream in(command);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

ProcessResult run_process(const std::vector<std::string>& argv, const std::string& stdin_data,
                          double budget_s, size_t max_output) {
  ProcessResult res;
  if (argv.empty()) {
    res.spawn_failed = true;
    return res;
  }
  int in_pipe[2], out_pipe[2], err_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0 || pipe(err_pipe) != 0) {
    res.spawn_failed = true;
    return res;
  }
  auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    res.spawn_failed = true;
    return res;
  }
  if (pid == 0) {
    dup2(in_pipe[0], 0);
    dup2(out_pipe[1], 1);
    dup2(err_pipe[1], 2);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    setpgid(0, 0);  // own process group so the whole tree can be killed
    std::vector<char*> cargv;
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  close(err_pipe[1]);

  // write stdin (nonblocking; the payload is small in practice)
  size_t written = 0;
  fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);
  fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
  fcntl(err_pipe[0], F_SETFL, O_NONBLOCK);

  bool out_open = true, err_open = true;
  bool in_open = !stdin_data.empty();
  if (!in_open) close(in_pipe[1]);

  auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(budget_s));
  char buf[8192];
  while (out_open || err_open || in_open) {
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      res.timed_out = true;
      kill(-pid, SIGKILL);
      break;
    }
    struct pollfd fds[3];
    int nfds = 0;
    int out_idx = -1, err_idx = -1, in_idx = -1;
    if (out_open) {
      out_idx = nfds;
      fds[nfds++] = {out_pipe[0], POLLIN, 0};
    }
    if (err_open) {
      err_idx = nfds;
      fds[nfds++] = {err_pipe[0], POLLIN, 0};
    }
    if (in_open) {
      in_idx = nfds;
      fds[nfds++] = {in_pipe[1], POLLOUT, 0};
    }
    int wait_ms = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count());
    wait_ms = std::max(1, std::min(wait_ms, 50));
    int rc = poll(fds, static_cast<nfds_t>(nfds), wait_ms);
    if (rc < 0 && errno != EINTR) break;
    if (rc <= 0) continue;
    if (out_idx >= 0 && (fds[out_idx].revents & (POLLIN | POLLHUP))) {
      ssize_t n = read(out_pipe[0], buf, sizeof(buf));
      if (n <= 0) {
        if (n == 0 || (n < 0 && errno != EAGAIN)) {
          out_open = false;
          close(out_pipe[0]);
        }
      } else if (res.stdout_text.size() < max_output) {
        size_t take = std::min(static_cast<size_t>(n), max_output - res.stdout_text.size());
        res.stdout_text.append(buf, take);
        if (take < static_cast<size_t>(n)) res.stdout_truncated = true;
      } else {
        res.stdout_truncated = true;
      }
    }
    if (err_idx >= 0 && (fds[err_idx].revents & (POLLIN | POLLHUP))) {
      ssize_t n = read(err_pipe[0], buf, sizeof(buf));
      if (n <= 0) {
        if (n == 0 || (n < 0 && errno != EAGAIN)) {
          err_open = false;
          close(err_pipe[0]);
        }
      } else if (res.stderr_text.size() < max_output) {
        size_t take = std::min(static_cast<size_t>(n), max_output - res.stderr_text.size());
        res.stderr_text.append(buf, take);
        if (take < static_cast<size_t>(n)) res.stderr_truncated = true;
      } else {
        res.stderr_truncated = true;
      }
    }
    if (in_idx >= 0 && (fds[in_idx].revents & (POLLOUT | POLLERR | POLLHUP))) {
      if (fds[in_idx].revents & (POLLERR | POLLHUP)) {
        in_open = false;
        close(in_pipe[1]);
      } else {
        ssize_t n = write(in_pipe[1], stdin_data.data() + written, stdin_data.size() - written);
        if (n > 0) written += static_cast<size_t>(n);
        if (written >= stdin_data.size() || (n < 0 && errno != EAGAIN)) {
          in_open = false;
          close(in_pipe[1]);
        }
      }
    }
  }
  if (out_open) close(out_pipe[0]);
  if (err_open) close(err_pipe[0]);
  if (in_open) close(in_pipe[1]);

  int status = 0;
  waitpid(pid, &status, 0);
  if (WIFEXITED(status)) {
    res.exit_code = WEXITSTATUS(status);
    if (res.exit_code == 127 && res.stdout_text.empty() && res.stderr_text.empty())
      res.spawn_failed = true;
  } else if (WIFSIGNALED(status)) {
    res.exit_code = 128 + WTERMSIG(status);
  }
  res.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

ProcessResult run_with_input_file(const std::string& command, const std::string& content,
                                  const std::string& suffix, double budget_s) {
  char tmpl[] = "/tmp/combench_XXXXXX";
  int fd = mkstemp(tmpl);
  if (fd < 0) {
    ProcessResult r;
    r.spawn_failed = true;
    return r;
  }
  std::string path = std::string(tmpl) + suffix;
  // rename so tools that sniff extensions behave
  close(fd);
  std::rename(tmpl, path.c_str());
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) {
    ProcessResult r;
    r.spawn_failed = true;
    return r;
  }
  std::fwrite(content.data(), 1, content.size(), f);
  std::fclose(f);

  std::vector<std::string> argv = split_command(command);
  argv.push_back(path);
  ProcessResult res = run_process(argv, "", budget_s);
  std::remove(path.c_str());
  return res;
}

}  // namespace combench
