#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace arithcoh {

inline constexpr int kLedgerSchema = 1;

// Build identifier stored with every record.
std::string code_version();

// Append-only JSON-lines store results.jsonl in a cache directory. Records are
// unique in (kind, q, h, r, code_version); a record of kind "packets" also
// answers lookups of kind "dim". Writers hold an exclusive advisory lock.
class Ledger {
 public:
  explicit Ledger(std::filesystem::path dir);

  const std::filesystem::path& file() const { return file_; }

  std::optional<nlohmann::json> find(const std::string& kind, uint32_t q, unsigned h, uint32_t r) const;

  // Adds the schema and code version; returns false when an equivalent record
  // already exists.
  bool append(nlohmann::json record);

  struct Stats {
    size_t records = 0;
    size_t malformed = 0;
    size_t current_version = 0;
    std::map<std::string, size_t> by_kind;
    uintmax_t bytes = 0;
  };
  Stats inspect() const;

  void clear();

 private:
  std::vector<nlohmann::json> read_locked(int fd, size_t* malformed) const;
  std::filesystem::path dir_;
  std::filesystem::path file_;
};

}  // namespace arithcoh
