#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bfto/diag_core.hpp"
#include "bfto/perm.hpp"

namespace bfto {

enum class PermMode { Strict, Opportunistic };

// Pairwise distinct transpositions (base; base + j + 1), j < count.
std::vector<FinPerm> seed(std::size_t count, Atom base);

struct FamilyMember {
  enum class Case { One, Two };

  FinPerm t;
  Case kind = Case::One;
  std::size_t i = 0;  // index into B of the permutation used
  std::size_t j = 0;  // second index, Case::Two only
  Atom x;             // least witness point
};

struct FamilyStuck {
  std::size_t l = 0;
  AtomSet c;
};

struct Family {
  std::vector<FamilyMember> members;
  std::vector<AtomSet> c_growth;  // C seen at each stage l
  std::optional<FamilyStuck> stuck;
};

// One stage of the family: the next t given the union C of earlier supports,
// or nullopt when neither construction applies.
std::optional<FamilyMember> family_member(std::span<const FinPerm> values, std::size_t m,
                                          const AtomSet& c);

// floor(log2 m) + 1 for m >= 1.
std::size_t family_length(std::size_t m);

// Builds t_0, ..., t_{floor(log2 m)} with pairwise disjoint supports from the
// oracle values B = values[0..m-1]. Stops with `stuck` set when at some stage
// neither construction applies.
Family build_family(std::span<const FinPerm> values, std::size_t m, std::size_t n);

// Product of the selected (disjoint) family members; identity for no indices.
FinPerm assemble_F(std::span<const FinPerm> family, std::span<const std::size_t> indices);
FinPerm assemble_F(std::span<const FamilyMember> family, std::span<const std::size_t> indices);

struct PermStepTrace {
  std::size_t m = 0;
  std::size_t distinct_values = 0;
  Family family;
  std::vector<std::size_t> chosen;  // the index set a
  bool fallback = false;
  FinPerm result;

  Json to_json() const;
};

class PermEngine {
 public:
  enum class Status { Running, Violated, Inconsistent };

  // Strict mode seeds m0 + 1 permutations and throws BudgetExceeded when that
  // is more than kStrictSeedLimit. Opportunistic mode seeds `seeds` of them.
  PermEngine(std::size_t n, std::uint64_t k, PermOracle oracle, PermMode mode,
             std::size_t seeds = 64, std::size_t instance = 0);

  static constexpr std::uint64_t kStrictSeedLimit = 1'000'000;

  // Extends g by one element. Returns nullopt when the oracle audit ends the
  // run; a strict-mode dead end returns its trace (without a result) and
  // leaves the engine Inconsistent.
  std::optional<PermStepTrace> step();

  Status status() const { return status_; }
  // Unset in opportunistic mode when m0 does not fit in 64 bits.
  const std::optional<BoundParams>& params() const { return params_; }
  const std::vector<FinPerm>& g() const { return g_; }
  const std::vector<FinPerm>& values() const { return values_; }
  const OracleLedger& ledger() const { return ledger_; }
  const std::optional<Violation>& violation() const { return violation_; }
  std::size_t seed_count() const { return seed_count_; }
  const std::string& note() const { return note_; }

 private:
  bool query_pending();

  std::size_t n_;
  std::uint64_t k_;
  PermOracle oracle_;
  PermMode mode_;
  std::optional<BoundParams> params_;
  std::vector<FinPerm> g_;
  std::set<FinPerm> g_set_;
  std::vector<FinPerm> values_;  // values_[i] = oracle(g_[i])
  std::set<FinPerm> distinct_values_;
  OracleLedger ledger_;
  std::size_t seed_count_ = 0;
  std::uint64_t next_reserved_ = 0;
  Status status_ = Status::Running;
  std::optional<Violation> violation_;
  std::string note_;
};

// Runs up to `steps` constructed steps and returns the audited certificate.
// Throws BadParameters for steps == 0.
Certificate run_perm(std::size_t n, std::uint64_t k, PermOracle oracle, std::size_t steps,
                     PermMode mode, std::size_t seeds = 64,
                     std::vector<PermStepTrace>* traces_out = nullptr);

}  // namespace bfto
