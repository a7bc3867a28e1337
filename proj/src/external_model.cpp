// Copyright 2026 The posdom Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "posdom/external_model.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <thread>

#include "posdom/error.hpp"

namespace posdom {

namespace {

std::string command_text(const std::vector<std::string>& argv) {
  std::string s;
  for (const std::string& a : argv) {
    if (!s.empty()) s += ' ';
    s += a;
  }
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  return s;
}

}  // namespace

ExternalModel::ExternalModel(std::vector<std::string> argv, std::size_t arity,
                             std::chrono::milliseconds timeout)
    : argv_(std::move(argv)), arity_(arity), timeout_(timeout) {
  if (argv_.empty()) throw ValidationError("external model command is empty");
  if (arity_ == 0) throw ValidationError("external model arity must be positive");

  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
    throw ProcessDied(std::string("socketpair failed: ") + std::strerror(errno));
  }
  std::vector<char*> cargv;
  for (std::string& a : argv_) cargv.push_back(a.data());
  cargv.push_back(nullptr);

  pid_ = ::fork();
  if (pid_ < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw ProcessDied(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid_ == 0) {
    ::dup2(fds[1], STDIN_FILENO);
    ::dup2(fds[1], STDOUT_FILENO);
    ::execvp(cargv[0], cargv.data());
    ::_exit(127);
  }
  ::close(fds[1]);
  fd_ = fds[0];

  try {
    send_line("ARITY " + std::to_string(arity_) + "\n");
    const std::string reply = read_line();
    if (trim(reply) != "OK") {
      throw ProtocolError("model '" + command_text(argv_) +
                          "' answered handshake with '" + reply + "'");
    }
  } catch (...) {
    shutdown();
    throw;
  }
}

ExternalModel::~ExternalModel() { shutdown(); }

void ExternalModel::shutdown() noexcept {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
  if (pid_ > 0) {
    // Closing the socket gives the child EOF; give it a moment to exit.
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, nullptr, WNOHANG) != 0) {
        pid_ = -1;
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }
}

void ExternalModel::send_line(const std::string& line) {
  if (fd_ < 0) throw ProcessDied("model '" + command_text(argv_) + "' is not running");
  std::size_t sent = 0;
  while (sent < line.size()) {
    const ssize_t n =
        ::send(fd_, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ProcessDied("model '" + command_text(argv_) +
                        "' stopped accepting input: " + std::strerror(errno));
    }
    sent += static_cast<std::size_t>(n);
  }
}

std::string ExternalModel::read_line() {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  for (;;) {
    const std::size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      throw Timeout("model '" + command_text(argv_) + "' did not reply within " +
                    std::to_string(timeout_.count()) + " ms");
    }
    pollfd p{fd_, POLLIN, 0};
    const int rc = ::poll(&p, 1, static_cast<int>(left.count()));
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw ProcessDied(std::string("poll failed: ") + std::strerror(errno));
    }
    if (rc == 0) continue;
    char chunk[4096];
    const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ProcessDied("model '" + command_text(argv_) +
                        "' read failed: " + std::strerror(errno));
    }
    if (n == 0) {
      throw ProcessDied("model '" + command_text(argv_) + "' exited");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

double ExternalModel::evaluate(std::span<const double> point) {
  if (point.size() != arity_) {
    throw ArityMismatch("external model takes " + std::to_string(arity_) +
                        " inputs, got " + std::to_string(point.size()));
  }
  std::string request;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) request += ' ';
    request += format_number(point[i]);
  }
  request += '\n';
  send_line(request);
  const std::string reply = read_line();
  const std::string_view text = trim(reply);
  double y = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), y);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw ProtocolError("model '" + command_text(argv_) +
                        "' sent a non-numeric reply '" + reply + "'");
  }
  return y;
}

}  // namespace posdom
