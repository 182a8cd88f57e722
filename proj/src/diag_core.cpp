#include "bfto/diag_core.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace bfto {

namespace {

using boost::multiprecision::cpp_int;

constexpr std::uint64_t kSearchLimit = 1u << 16;

cpp_int power(std::uint64_t base, std::size_t exp) {
  return boost::multiprecision::pow(cpp_int(base), static_cast<unsigned>(exp));
}

// 2^{l+1}/(l+1)^{2n} >= 2^l/l^{2n}, for l >= 1.
bool ratio_step_nondecreasing(std::size_t n, std::uint64_t l) {
  return 2 * power(l, 2 * n) >= power(l + 1, 2 * n);
}

}  // namespace

bool bound_inequality_holds(std::size_t n, std::uint64_t k, std::uint64_t l) {
  const cpp_int lhs = cpp_int(k) * power(2 * n * l, 2 * n);  // pow(0, 0) == 1
  return lhs < (cpp_int(1) << l);
}

BoundParams compute_bounds(std::size_t n, std::uint64_t k, std::size_t window) {
  if (k == 0) throw Error(ErrorCode::BadParameters, "k must be at least 1");
  if (window == 0) throw Error(ErrorCode::BadParameters, "window must be positive");
  // good[l]: the inequality holds at l and (from l on) the ratio is
  // nondecreasing up to l + 1. L is admissible when the inequality holds on
  // (L, L + window] and the ratio steps inside that window are nondecreasing.
  std::vector<char> holds;
  std::vector<char> rises;
  auto fill = [&](std::uint64_t upto) {
    while (holds.size() <= upto) {
      const auto l = static_cast<std::uint64_t>(holds.size());
      holds.push_back(bound_inequality_holds(n, k, l));
      rises.push_back(l == 0 ? 1 : ratio_step_nondecreasing(n, l));
    }
  };
  for (std::uint64_t L = 0; L < kSearchLimit; ++L) {
    fill(L + window);
    bool ok = true;
    for (std::uint64_t l = L + 1; l <= L + window && ok; ++l) {
      ok = holds[l] && (l == L + window || rises[l]);
    }
    if (!ok) continue;
    const cpp_int m0 = cpp_int(k) * power(2 * n * L, 2 * n);
    if (m0 > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorCode::Overflow, "m0 does not fit in 64 bits");
    }
    return BoundParams{n, k, L, static_cast<std::uint64_t>(m0), window};
  }
  throw Error(ErrorCode::Overflow, "no l0 below the search limit");
}

std::optional<Violation> OracleLedger::record(const std::string& input, const std::string& output,
                                              std::uint64_t k) {
  auto [it, inserted] = queries_.emplace(input, output);
  if (!inserted) {
    if (it->second != output) {
      throw Error(ErrorCode::InconsistentOracle,
                  "input " + input + " answered " + it->second + " and then " + output);
    }
    return std::nullopt;
  }
  auto& fiber = fibers_[output];
  fiber.push_back(input);
  if (fiber.size() == k + 1) return Violation{output, fiber};
  return std::nullopt;
}

std::size_t OracleLedger::fiber_size(const std::string& output) const {
  auto it = fibers_.find(output);
  return it == fibers_.end() ? 0 : it->second.size();
}

std::size_t OracleLedger::max_fiber() const {
  std::size_t best = 0;
  for (const auto& [_, inputs] : fibers_) best = std::max(best, inputs.size());
  return best;
}

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::PermDiag: return "perm-diag";
    case CertificateKind::PartDiag: return "part-diag";
    case CertificateKind::LedgerViolation: return "ledger-violation";
    case CertificateKind::Stuck: return "stuck";
  }
  return "unknown";
}

Json Certificate::to_json() const {
  auto opt = [](const auto& v) -> Json { return v ? Json(*v) : Json(nullptr); };
  Json j;
  j["kind"] = to_string(kind);
  j["n"] = opt(n);
  j["k"] = k;
  j["l0"] = opt(l0);
  j["m0"] = opt(m0);
  j["steps"] = steps;
  j["outputs"] = outputs;
  j["all_distinct"] = all_distinct;
  if (violation) {
    j["violation"] = Json{{"output", violation->output}, {"witnesses", violation->witnesses}};
  } else {
    j["violation"] = nullptr;
  }
  j["traces"] = traces;
  j["window"] = opt(window);
  if (!note.empty()) j["note"] = note;
  return j;
}

std::string dump_certificate(const Certificate& cert) { return cert.to_json().dump(2) + "\n"; }

bool outputs_distinct(const std::vector<std::string>& outputs) {
  std::set<std::string> seen;
  for (const auto& o : outputs) {
    if (!seen.insert(o).second) return false;
  }
  return true;
}

std::uint64_t mov_fiber_bound(std::size_t n) {
  std::uint64_t best = 0;
  for (std::size_t j = 0; j <= n; ++j) best = std::max(best, derangement(j));
  return best;
}

}  // namespace bfto
