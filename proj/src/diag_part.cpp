#include "bfto/diag_part.hpp"

#include "bfto/error.hpp"

namespace bfto {

std::vector<FinitaryPartition> seed_partitions(std::uint64_t k, Atom base) {
  const std::uint64_t count = part_seed_threshold(k) + 1;
  std::vector<FinitaryPartition> out;
  out.reserve(count);
  for (std::uint64_t j = 0; j < count; ++j) {
    out.push_back(FinitaryPartition::from_blocks({AtomSet{base.index, base.index + j + 1}}));
  }
  return out;
}

Json PartStepTrace::to_json() const {
  Json j;
  j["m"] = m;
  j["C_size"] = c.size();
  j["l"] = l();
  Json classes = Json::array();
  for (const auto& cls : frame.classes) classes.push_back(cls.atoms.size());
  j["class_sizes"] = std::move(classes);
  j["Q"] = q;
  j["rank_checked"] = rank_checked;
  j["result"] = found ? Json(to_string(result)) : Json(nullptr);
  return j;
}

PartEngine::PartEngine(std::uint64_t k, PartOracle oracle, std::size_t instance)
    : k_(k), oracle_(std::move(oracle)) {
  if (k == 0) throw Error(ErrorCode::BadParameters, "k must be at least 1");
  g_ = seed_partitions(k, Atom(1000 * (instance + 1)));
  g_set_.insert(g_.begin(), g_.end());
}

bool PartEngine::query_pending() {
  for (; queried_ < g_.size(); ++queried_) {
    const FinitaryPartition& input = g_[queried_];
    AtomSet value = oracle_(input);
    auto v = ledger_.record(to_string(input), to_string(value), k_);
    if (c_set_.insert(value).second) c_list_.push_back(std::move(value));
    if (v) {
      ++queried_;
      violation_ = std::move(v);
      status_ = Status::Violated;
      return false;
    }
  }
  return true;
}

std::optional<PartStepTrace> PartEngine::step() {
  if (status_ != Status::Running) return std::nullopt;
  if (!query_pending()) return std::nullopt;

  PartStepTrace trace;
  trace.m = g_.size();
  trace.c = c_list_;
  trace.frame = build_frame(c_list_);
  for_each_partition_R(trace.frame.l(), [&](const SetPartition& q) {
    ++trace.rank_checked;
    FinitaryPartition candidate = lift(q, trace.frame);
    if (g_set_.contains(candidate)) return true;
    trace.q = q;
    trace.result = std::move(candidate);
    trace.found = true;
    return false;
  });
  if (!trace.found) {
    status_ = Status::Inconsistent;
    note_ = "no fresh partition among " + std::to_string(trace.rank_checked) + " candidates at m = " +
            std::to_string(trace.m);
    return trace;
  }
  g_.push_back(trace.result);
  g_set_.insert(trace.result);
  return trace;
}

Certificate run_part(std::uint64_t k, PartOracle oracle, std::size_t steps,
                     std::vector<PartStepTrace>* traces_out) {
  if (steps == 0) throw Error(ErrorCode::BadParameters, "steps must be at least 1");
  PartEngine engine(k, std::move(oracle));
  Certificate cert;
  cert.k = k;
  cert.m0 = part_seed_threshold(k);
  for (std::size_t s = 0; s < steps; ++s) {
    auto trace = engine.step();
    if (!trace) break;
    cert.traces.push_back(trace->to_json());
    if (trace->found) ++cert.steps;
    if (traces_out) traces_out->push_back(std::move(*trace));
    if (engine.status() != PartEngine::Status::Running) break;
  }
  for (const auto& p : engine.g()) cert.outputs.push_back(to_string(p));
  cert.all_distinct = outputs_distinct(cert.outputs);
  cert.violation = engine.violation();
  switch (engine.status()) {
    case PartEngine::Status::Running: cert.kind = CertificateKind::PartDiag; break;
    case PartEngine::Status::Violated: cert.kind = CertificateKind::LedgerViolation; break;
    case PartEngine::Status::Inconsistent:
      cert.kind = CertificateKind::Stuck;
      cert.note = engine.note();
      break;
  }
  return cert;
}

}  // namespace bfto
