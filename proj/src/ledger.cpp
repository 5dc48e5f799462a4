#include "arithcoh/ledger.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <mutex>
#include <stdexcept>
#include <system_error>

#ifndef ARITHCOH_CODE_VERSION
#define ARITHCOH_CODE_VERSION "unknown"
#endif

namespace arithcoh {

namespace {

// flock locks belong to open file descriptions; threads of one process each
// open their own descriptor, and this mutex orders them cheaply.
std::mutex g_ledger_mutex;

class FileLock {
 public:
  FileLock(const std::filesystem::path& p, bool exclusive) {
    fd_ = ::open(p.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "cannot open " + p.string());
    if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      const int err = errno;
      ::close(fd_);
      throw std::system_error(err, std::generic_category(), "cannot lock " + p.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  int fd() const { return fd_; }

 private:
  int fd_;
};

bool matches(const nlohmann::json& j, const std::string& kind, uint32_t q, unsigned h, uint32_t r) {
  if (!j.is_object() || j.value("code_version", "") != code_version()) return false;
  const std::string k = j.value("kind", "");
  const bool kind_ok = k == kind || (kind == "dim" && k == "packets");
  return kind_ok && j.value("q", 0u) == q && j.value("h", 0u) == h && j.value("r", 0u) == r;
}

}  // namespace

std::string code_version() { return ARITHCOH_CODE_VERSION; }

Ledger::Ledger(std::filesystem::path dir) : dir_(std::move(dir)), file_(dir_ / "results.jsonl") {
  std::filesystem::create_directories(dir_);
}

std::vector<nlohmann::json> Ledger::read_locked(int fd, size_t* malformed) const {
  std::string data;
  char buf[1 << 16];
  ssize_t n;
  off_t off = 0;
  while ((n = ::pread(fd, buf, sizeof buf, off)) > 0) {
    data.append(buf, static_cast<size_t>(n));
    off += n;
  }
  std::vector<nlohmann::json> out;
  size_t pos = 0;
  while (pos < data.size()) {
    auto nl = data.find('\n', pos);
    if (nl == std::string::npos) nl = data.size();
    const std::string line = data.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      if (malformed) ++*malformed;
      continue;
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::optional<nlohmann::json> Ledger::find(const std::string& kind, uint32_t q, unsigned h, uint32_t r) const {
  std::lock_guard<std::mutex> guard(g_ledger_mutex);
  FileLock lock(file_, false);
  std::optional<nlohmann::json> hit;
  for (auto& j : read_locked(lock.fd(), nullptr))
    if (matches(j, kind, q, h, r) && (!hit || j.value("kind", "") == kind)) hit = j;
  return hit;
}

bool Ledger::append(nlohmann::json record) {
  record["schema"] = kLedgerSchema;
  record["code_version"] = code_version();
  const std::string kind = record.at("kind");
  const uint32_t q = record.at("q"), r = record.at("r");
  const unsigned h = record.at("h");
  std::lock_guard<std::mutex> guard(g_ledger_mutex);
  FileLock lock(file_, true);
  for (auto& j : read_locked(lock.fd(), nullptr))
    if (matches(j, kind, q, h, r) && j.value("kind", "") == kind) return false;
  const std::string line = record.dump() + "\n";
  size_t done = 0;
  while (done < line.size()) {
    const ssize_t w = ::write(lock.fd(), line.data() + done, line.size() - done);
    if (w < 0) throw std::system_error(errno, std::generic_category(), "ledger write failed");
    done += static_cast<size_t>(w);
  }
  return true;
}

Ledger::Stats Ledger::inspect() const {
  std::lock_guard<std::mutex> guard(g_ledger_mutex);
  FileLock lock(file_, false);
  Stats s;
  auto records = read_locked(lock.fd(), &s.malformed);
  s.records = records.size();
  for (auto& j : records) {
    ++s.by_kind[j.value("kind", "?")];
    if (j.value("code_version", "") == code_version()) ++s.current_version;
  }
  s.bytes = std::filesystem::file_size(file_);
  return s;
}

void Ledger::clear() {
  std::lock_guard<std::mutex> guard(g_ledger_mutex);
  FileLock lock(file_, true);
  if (::ftruncate(lock.fd(), 0) != 0) throw std::system_error(errno, std::generic_category(), "cannot clear ledger");
}

}  // namespace arithcoh
