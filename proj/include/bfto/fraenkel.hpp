#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "bfto/carrier.hpp"
#include "bfto/diag_core.hpp"
#include "bfto/perm.hpp"

namespace bfto {

struct SupportConfig {
  AtomSet e;                    // finite support of the candidate map
  std::size_t n = 2;            // s in S_n, t in S_{n+1}
  std::size_t carrier_size = 6; // s and t live on atoms [0, carrier_size)
};

inline constexpr std::size_t kMissingMovedSample = 2;

// Some a in mov(s) \ mov(t): every transposition (a;b) with b outside
// E u mov(t) fixes both the map and t, so all conjugates (a;b) s (a;b) share
// the value t. `sample` lists that family for the least admissible b.
struct MissingMoved {
  Atom a;
  std::vector<Atom> b;
  std::vector<FinPerm> sample;
};

// Some a in mov(t) \ (mov(s) u E): tau = (a;b) fixes E u mov(s) pointwise but
// tau t tau != t.
struct ExtraOutside {
  Atom a;
  FinPerm tau;
  FinPerm moved_t;  // tau o t o tau
};

// mov(t) = mov(s) u {e} with e in E and d = t(e) in mov(s). Conjugating by s,
// which fixes E pointwise and fixes s, changes t.
struct ForcedFixedPoint {
  Atom e;
  Atom d;
  FinPerm conjugated;  // s o t o s^-1
};

struct PreconditionFailure {
  std::string reason;
};

// No branch applied. Never produced for valid input; counted by scan.
struct Escape {
  std::string reason;
};

using ProbeVerdict =
    std::variant<MissingMoved, ExtraOutside, ForcedFixedPoint, PreconditionFailure, Escape>;

// Returns the first applicable branch in the order above.
ProbeVerdict classify(const FinPerm& s, const FinPerm& t, const SupportConfig& cfg);

// Re-checks a verdict's witnesses pointwise against s, t and the config.
bool verify_verdict(const ProbeVerdict& verdict, const FinPerm& s, const FinPerm& t,
                    const SupportConfig& cfg);

inline constexpr std::size_t kMaxScanCarrier = 8;

struct ScanReport {
  std::size_t carrier = 0;
  AtomSet e;
  std::size_t n = 0;
  std::size_t pairs = 0;
  std::size_t missing_moved = 0;
  std::size_t extra_outside = 0;
  std::size_t forced_fixed_point = 0;
  std::size_t escapes = 0;
  std::size_t unverified = 0;  // verdicts whose witnesses failed the re-check

  Json to_json() const;
};

// Classifies every s in S_n avoiding E against every t in S_{n+1}, both over
// the carrier. Throws PreconditionFail for n < 2, a carrier larger than
// kMaxScanCarrier or smaller than |E| + n + 2, or E outside the carrier.
ScanReport scan(const SupportConfig& cfg);

}  // namespace bfto
