#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "arithcoh/boundary.hpp"
#include "arithcoh/config.hpp"
#include "arithcoh/ledger.hpp"
#include "arithcoh/rigidity.hpp"

namespace arithcoh {

nlohmann::json lift_to_json(const PacketLift& e);
PacketLift lift_from_json(const nlohmann::json& j);

// Summary of the packets of one space: minimal polynomial, values, Hecke
// polynomials, esd flags and the characteristic polynomials of every T(l,k)
// on each packet block, with coefficients as signed residues mod r.
nlohmann::json packet_summaries(const SymbolSpace& space, const HeckeMatrices& mats,
                                const std::vector<Eigenpacket>& packets, const std::vector<uint32_t>& primes);

struct TableRow {
  uint32_t q;
  unsigned h;
  CuspidalCertificate certificate;
};

// Cached computations backed by an optional ledger. Heartbeats go to the
// progress callback; results never depend on the cache state.
class Pipeline {
 public:
  Pipeline(RunConfig cfg, std::shared_ptr<Ledger> ledger, std::function<void(const std::string&)> progress = {});

  const RunConfig& config() const { return cfg_; }

  size_t dim(uint32_t q, unsigned h, uint32_t r);
  // Record with h3_dim and the packet summaries.
  nlohmann::json packets(uint32_t q, unsigned h, uint32_t r);
  PacketLift lift(uint32_t q, unsigned h);
  // Certificate over the configured moduli; packet analysis at the first
  // modulus attributes any even-weight excess.
  CuspidalCertificate certify(uint32_t q, unsigned h);
  std::vector<TableRow> table(uint32_t qmin, uint32_t qmax, const std::vector<unsigned>& hset);
  RigidityReport rigid(uint32_t q, uint32_t p, uint32_t witness);

 private:
  void note(const std::string& msg) const;
  RunConfig cfg_;
  std::shared_ptr<Ledger> ledger_;
  std::mutex memo_mutex_;
  std::map<std::tuple<uint32_t, unsigned, uint32_t>, size_t> dims_;
  std::map<std::tuple<uint32_t, unsigned, uint32_t>, nlohmann::json> packets_;
  std::function<void(const std::string&)> progress_;
};

// Runs jobs 0..n-1 on at most `threads` workers; the first exception is rethrown.
void run_pool(size_t n, unsigned threads, const std::function<void(size_t)>& job);

}  // namespace arithcoh
