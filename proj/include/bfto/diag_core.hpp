#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bfto/carrier.hpp"
#include "bfto/error.hpp"
#include "bfto/partition.hpp"
#include "bfto/perm.hpp"

namespace bfto {

using Json = nlohmann::ordered_json;

inline constexpr std::size_t kBoundWindow = 100;

struct BoundParams {
  std::size_t n = 0;
  std::uint64_t k = 1;
  std::uint64_t l0 = 0;
  std::uint64_t m0 = 0;
  std::size_t window = kBoundWindow;
};

// l0 is the least L such that k(2nl)^{2n} < 2^l for every l in (L, L + window]
// and 2^l / l^{2n} does not decrease across that window; m0 = k(2n l0)^{2n},
// with 0^0 = 1. Throws BadParameters for k == 0 and Overflow when m0 leaves
// 64 bits or no L is found below the search limit.
BoundParams compute_bounds(std::size_t n, std::uint64_t k, std::size_t window = kBoundWindow);

// k(2nl)^{2n} < 2^l, exactly.
bool bound_inequality_holds(std::size_t n, std::uint64_t k, std::uint64_t l);

struct Violation {
  std::string output;
  std::vector<std::string> witnesses;  // k + 1 distinct inputs
};

// Audit log of oracle answers keyed by canonical text.
class OracleLedger {
 public:
  // Records input -> output. Repeating an identical pair is a no-op. Returns
  // the violation the first time a fiber grows past k. Throws
  // InconsistentOracle if `input` was seen with a different output.
  std::optional<Violation> record(const std::string& input, const std::string& output,
                                  std::uint64_t k);

  std::size_t queries() const { return queries_.size(); }
  std::size_t distinct_outputs() const { return fibers_.size(); }
  std::size_t fiber_size(const std::string& output) const;
  std::size_t max_fiber() const;

 private:
  std::map<std::string, std::string> queries_;
  std::map<std::string, std::vector<std::string>> fibers_;
};

inline std::optional<Violation> ledger_record(OracleLedger& ledger, const std::string& input,
                                              const std::string& output, std::uint64_t k) {
  return ledger.record(input, output, k);
}

enum class CertificateKind { PermDiag, PartDiag, LedgerViolation, Stuck };

std::string to_string(CertificateKind kind);

struct Certificate {
  CertificateKind kind = CertificateKind::PermDiag;
  std::optional<std::size_t> n;
  std::uint64_t k = 1;
  std::optional<std::uint64_t> l0;
  std::optional<std::uint64_t> m0;
  std::size_t steps = 0;                // constructed (non-seed) outputs
  std::vector<std::string> outputs;     // every g(i), seeds included
  bool all_distinct = true;
  std::optional<Violation> violation;
  Json traces = Json::array();
  std::optional<std::size_t> window;    // bound search window, perm engine only
  std::string note;                     // diagnostic for stuck runs

  Json to_json() const;
};

// Serializes with a fixed field order and indentation so identical runs give
// identical bytes.
std::string dump_certificate(const Certificate& cert);

// Re-checks pairwise distinctness of the emitted outputs.
bool outputs_distinct(const std::vector<std::string>& outputs);

template <class In, class Out>
using Oracle = std::function<Out(const In&)>;

using PermOracle = Oracle<FinPerm, FinPerm>;
using PartOracle = Oracle<FinitaryPartition, AtomSet>;

template <class In>
struct BoundedOracle {
  Oracle<In, AtomSet> fn;
  std::uint64_t k = 1;
};

// max_{j <= n} D_j: the largest number of permutations in S_{<=n} sharing a
// support.
std::uint64_t mov_fiber_bound(std::size_t n);

// Turns an oracle into S_{<=n} into one into fin(A) by taking supports. The
// declared bound grows by mov_fiber_bound(n). The wrapped oracle must stay in
// S_{<=n}; CodomainViolation otherwise.
template <class In>
BoundedOracle<In> mov_adapter(Oracle<In, FinPerm> f, std::uint64_t k, std::size_t n) {
  BoundedOracle<In> out;
  out.k = k * mov_fiber_bound(n);
  out.fn = [f = std::move(f), n](const In& x) {
    const FinPerm y = f(x);
    if (y.mov_size() > n) {
      throw Error(ErrorCode::CodomainViolation,
                  "oracle value " + to_cycles(y) + " moves more than " + std::to_string(n) + " atoms");
    }
    return mov(y);
  };
  return out;
}

}  // namespace bfto
