#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bfto/diag_core.hpp"
#include "bfto/partition.hpp"

namespace bfto {

// 72k^2 + 1 pairwise distinct partitions; partition j has the single block
// {base, base + j + 1}.
std::vector<FinitaryPartition> seed_partitions(std::uint64_t k, Atom base);

inline std::uint64_t part_seed_threshold(std::uint64_t k) { return 72 * k * k; }

struct PartStepTrace {
  std::size_t m = 0;
  std::vector<AtomSet> c;  // distinct oracle values in first-occurrence order
  QuotientFrame frame;
  SetPartition q;
  std::size_t rank_checked = 0;  // candidates examined, the chosen one included
  FinitaryPartition result;
  bool found = false;

  std::size_t l() const { return frame.l(); }
  Json to_json() const;
};

class PartEngine {
 public:
  enum class Status { Running, Violated, Inconsistent };

  PartEngine(std::uint64_t k, PartOracle oracle, std::size_t instance = 0);

  // Extends g by one element. Returns nullopt when the oracle audit ends the
  // run; if no fresh lift exists the trace is returned with found == false
  // and the engine becomes Inconsistent.
  std::optional<PartStepTrace> step();

  Status status() const { return status_; }
  std::uint64_t k() const { return k_; }
  const std::vector<FinitaryPartition>& g() const { return g_; }
  const std::vector<AtomSet>& c_list() const { return c_list_; }
  const OracleLedger& ledger() const { return ledger_; }
  const std::optional<Violation>& violation() const { return violation_; }
  const std::string& note() const { return note_; }

 private:
  bool query_pending();

  std::uint64_t k_;
  PartOracle oracle_;
  std::vector<FinitaryPartition> g_;
  std::set<FinitaryPartition> g_set_;
  std::size_t queried_ = 0;
  std::vector<AtomSet> c_list_;
  std::set<AtomSet> c_set_;
  OracleLedger ledger_;
  Status status_ = Status::Running;
  std::optional<Violation> violation_;
  std::string note_;
};

// Throws BadParameters for steps == 0 or k == 0.
Certificate run_part(std::uint64_t k, PartOracle oracle, std::size_t steps,
                     std::vector<PartStepTrace>* traces_out = nullptr);

}  // namespace bfto
