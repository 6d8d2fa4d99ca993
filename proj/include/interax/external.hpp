// Copyright 2026 The Interax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <spawn.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstring>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>

#include "interax/error.hpp"
#include "interax/game.hpp"
#include "interax/player_set.hpp"

extern char** environ;

namespace interax {

struct ExternalOptions {
  // Maximum number of memoized subsets; least recently used entries are
  // evicted beyond this.
  std::size_t cache_capacity = std::size_t{1} << 20;
};

// A child process that evaluates v(S) over a line protocol on its stdio:
//
//   parent: "INIT <n>\n"            child: "OK\n"
//   parent: "<n chars of 0/1>\n"    child: "<decimal real>\n"
//   parent: "QUIT\n"
//
// Character i of a query is '1' iff player i is in S. Replies are memoized
// in an LRU cache and at most one request is in flight at a time.
class ExternalEvaluator {
 public:
  ExternalEvaluator(std::string command, int n, ExternalOptions options = {})
      : command_(std::move(command)), n_(n), options_(options) {
    check_player_count(n);
    if (options_.cache_capacity == 0) options_.cache_capacity = 1;
    spawn();
    send_line("INIT " + std::to_string(n_));
    const std::string reply = read_line("INIT handshake");
    if (reply != "OK") {
      fail();
      throw EvaluationError(
          "external evaluator: protocol violation, expected \"OK\" after INIT, "
          "got \"" + reply + "\"",
          reply);
    }
  }

  ExternalEvaluator(const ExternalEvaluator&) = delete;
  ExternalEvaluator& operator=(const ExternalEvaluator&) = delete;

  ~ExternalEvaluator() { shutdown(); }

  int n() const { return n_; }
  const std::string& command() const { return command_; }

  double evaluate(Mask s) {
    std::lock_guard lock(mu_);
    if (auto it = index_.find(s); it != index_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second;
    }
    if (broken_) {
      throw EvaluationError("external evaluator: unusable after an earlier "
                            "protocol error");
    }
    std::string query(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i) {
      if ((s >> i) & 1U) query[static_cast<std::size_t>(i)] = '1';
    }
    send_line(query);
    ++round_trips_;
    const std::string reply = read_line("query " + query);
    const double value = parse_reply(reply);
    lru_.emplace_front(s, value);
    index_[s] = lru_.begin();
    if (lru_.size() > options_.cache_capacity) {
      index_.erase(lru_.back().first);
      lru_.pop_back();
    }
    return value;
  }

  std::size_t round_trips() const {
    std::lock_guard lock(mu_);
    return round_trips_;
  }
  std::size_t cache_size() const {
    std::lock_guard lock(mu_);
    return lru_.size();
  }

 private:
  void spawn() {
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
      throw EvaluationError(std::string("external evaluator: socketpair: ") +
                            std::strerror(errno));
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, fds[1], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, fds[1], STDOUT_FILENO);
    std::string sh = "sh", flag = "-c";
    char* argv[] = {sh.data(), flag.data(), command_.data(), nullptr};
    const int rc = ::posix_spawn(&pid_, "/bin/sh", &actions, nullptr, argv,
                                 environ);
    posix_spawn_file_actions_destroy(&actions);
    ::close(fds[1]);
    if (rc != 0) {
      ::close(fds[0]);
      pid_ = -1;
      throw EvaluationError("external evaluator: cannot spawn \"" + command_ +
                            "\": " + std::strerror(rc));
    }
    fd_ = fds[0];
  }

  void send_line(const std::string& line) {
    std::string data = line + "\n";
    const char* p = data.data();
    std::size_t left = data.size();
    while (left > 0) {
      const ssize_t w = ::send(fd_, p, left, MSG_NOSIGNAL);
      if (w < 0) {
        if (errno == EINTR) continue;
        fail();
        throw EvaluationError("external evaluator: child exited (write failed: " +
                              std::string(std::strerror(errno)) + ")");
      }
      p += w;
      left -= static_cast<std::size_t>(w);
    }
  }

  std::string read_line(const std::string& context) {
    while (true) {
      const auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      char chunk[4096];
      const ssize_t r = ::recv(fd_, chunk, sizeof chunk, 0);
      if (r < 0 && errno == EINTR) continue;
      if (r <= 0) {
        fail();
        throw EvaluationError("external evaluator: child exited during " +
                                  context,
                              buffer_);
      }
      buffer_.append(chunk, static_cast<std::size_t>(r));
    }
  }

  double parse_reply(const std::string& raw) {
    std::size_t b = 0, e = raw.size();
    while (b < e && (raw[b] == ' ' || raw[b] == '\t')) ++b;
    while (e > b && (raw[e - 1] == ' ' || raw[e - 1] == '\t')) --e;
    double value = 0.0;
    const char* first = raw.data() + b;
    const char* last = raw.data() + e;
    if (b < e && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (b == e || ec != std::errc() || ptr != last) {
      fail();
      throw EvaluationError(
          "external evaluator: non-numeric reply \"" + raw + "\"", raw);
    }
    if (!std::isfinite(value)) {
      fail();
      throw EvaluationError(
          "external evaluator: non-finite reply \"" + raw + "\"", raw);
    }
    return value;
  }

  void fail() { broken_ = true; }

  void shutdown() {
    if (fd_ >= 0) {
      if (!broken_) {
        const char quit[] = "QUIT\n";
        (void)::send(fd_, quit, sizeof quit - 1, MSG_NOSIGNAL);
      }
      ::close(fd_);
      fd_ = -1;
    }
    if (pid_ > 0) {
      int status = 0;
      for (int i = 0; i < 200; ++i) {
        const pid_t r = ::waitpid(pid_, &status, WNOHANG);
        if (r == pid_ || (r < 0 && errno != EINTR)) {
          pid_ = -1;
          return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
      pid_ = -1;
    }
  }

  std::string command_;
  int n_;
  ExternalOptions options_;
  pid_t pid_ = -1;
  int fd_ = -1;
  bool broken_ = false;
  std::string buffer_;

  mutable std::mutex mu_;
  std::size_t round_trips_ = 0;
  std::list<std::pair<Mask, double>> lru_;
  std::unordered_map<Mask, std::list<std::pair<Mask, double>>::iterator> index_;
};

// A game evaluated by a child process; see ExternalEvaluator for the
// protocol. The process lives as long as any copy of the returned Game.
inline Game attach_external(const std::string& command, int n,
                            ExternalOptions options = {}) {
  auto evaluator = std::make_shared<ExternalEvaluator>(command, n, options);
  return Game(n, GameKind::kExternal, "external: " + command,
              [evaluator](Mask s) { return evaluator->evaluate(s); });
}

// Same as attach_external, but also hands back the evaluator so callers can
// inspect round-trip counts.
inline std::pair<Game, std::shared_ptr<ExternalEvaluator>>
attach_external_with_handle(const std::string& command, int n,
                            ExternalOptions options = {}) {
  auto evaluator = std::make_shared<ExternalEvaluator>(command, n, options);
  Game game(n, GameKind::kExternal, "external: " + command,
            [evaluator](Mask s) { return evaluator->evaluate(s); });
  return {std::move(game), std::move(evaluator)};
}

}  // namespace interax
