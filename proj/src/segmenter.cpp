#include "subtok/segmenter.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <mutex>
#include <thread>

#include "subtok/tokenize.hpp"

namespace subtok {

namespace {

// Child processes that die mid-conversation must surface as SegmenterFailure,
// not SIGPIPE. Only installed when the disposition is still the default.
void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    struct sigaction sa{};
    if (sigaction(SIGPIPE, nullptr, &sa) == 0 && sa.sa_handler == SIG_DFL) {
      sa.sa_handler = SIG_IGN;
      sigaction(SIGPIPE, &sa, nullptr);
    }
  });
}

[[noreturn]] void fail(const std::string& what) { throw SegmenterFailure(what); }

}  // namespace

ExternalSegmenter::ExternalSegmenter(const std::string& command, int timeout_ms)
    : name_("exec:" + command), timeout_ms_(timeout_ms) {
  ignore_sigpipe_once();

  int to_child[2];    // parent writes, child reads
  int from_child[2];  // child writes, parent reads
  if (pipe(to_child) != 0) fail("pipe: " + std::string(strerror(errno)));
  if (pipe(from_child) != 0) {
    close(to_child[0]);
    close(to_child[1]);
    fail("pipe: " + std::string(strerror(errno)));
  }

  pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) close(fd);
    fail("fork: " + std::string(strerror(errno)));
  }
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }

  pid_ = pid;
  to_child_ = to_child[1];
  from_child_ = from_child[0];
  close(to_child[0]);
  close(from_child[1]);
}

ExternalSegmenter::~ExternalSegmenter() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (pid_ > 0) {
    pid_t pid = static_cast<pid_t>(pid_);
    // Closing stdin asks the child to exit; give it a moment, then kill.
    for (int i = 0; i < 200; ++i) {
      if (waitpid(pid, nullptr, WNOHANG) != 0) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    kill(pid, SIGKILL);
    waitpid(pid, nullptr, 0);
  }
}

std::string ExternalSegmenter::read_reply_line() {
  while (true) {
    std::size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    struct pollfd pfd{from_child_, POLLIN, 0};
    int rc = poll(&pfd, 1, timeout_ms_);
    if (rc == 0) fail("segmenter '" + name_ + "' timed out after " + std::to_string(timeout_ms_) + " ms");
    if (rc < 0) {
      if (errno == EINTR) continue;
      fail("poll: " + std::string(strerror(errno)));
    }
    char chunk[4096];
    ssize_t n = read(from_child_, chunk, sizeof(chunk));
    if (n == 0) fail("segmenter '" + name_ + "' closed its output stream");
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("read: " + std::string(strerror(errno)));
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::vector<std::string> ExternalSegmenter::segment(const std::string& word) {
  if (word.empty()) return {};
  if (word.find('\n') != std::string::npos)
    fail("word contains a newline, which the line protocol cannot carry");

  std::string request = word + "\n";
  std::size_t written = 0;
  while (written < request.size()) {
    ssize_t n = write(to_child_, request.data() + written, request.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("segmenter '" + name_ + "' is not accepting input: " + strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }

  std::string reply = read_reply_line();
  if (reply.empty()) fail("segmenter '" + name_ + "' sent an empty reply line for: " + word);

  std::vector<std::string> morphemes;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = reply.find('\t', start);
    std::string piece = reply.substr(start, tab == std::string::npos ? std::string::npos : tab - start);
    if (piece.empty())
      fail("segmenter '" + name_ + "' sent an empty morpheme for: " + word);
    morphemes.push_back(std::move(piece));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }

  std::string joined;
  for (const std::string& m : morphemes) joined += m;
  if (joined != word) surface_preserving_ = false;
  return morphemes;
}

std::unique_ptr<Segmenter> make_segmenter(const std::string& spec, int timeout_ms) {
  if (spec == "rule") return std::make_unique<RuleSegmenter>();
  if (spec.rfind("exec:", 0) == 0) {
    std::string command = spec.substr(5);
    if (command.empty()) throw BadSpec("empty command in segmenter spec: " + spec);
    return std::make_unique<ExternalSegmenter>(command, timeout_ms);
  }
  throw BadSpec("unknown segmenter spec: " + spec + " (expected 'rule' or 'exec:<command>')");
}

}  // namespace subtok
