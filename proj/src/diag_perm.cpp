#include "bfto/diag_perm.hpp"

#include <bit>
#include <cassert>

#include "bfto/error.hpp"

namespace bfto {

std::vector<FinPerm> seed(std::size_t count, Atom base) {
  std::vector<FinPerm> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(cycle({base.index, base.index + j + 1}));
  return out;
}

std::size_t family_length(std::size_t m) {
  assert(m >= 1);
  return static_cast<std::size_t>(std::bit_width(m));
}

std::optional<FamilyMember> family_member(std::span<const FinPerm> values, std::size_t m,
                                          const AtomSet& c) {
  assert(m <= values.size());
  const SetSpec outside_c = SetSpec::cofinite_complement(c);

  // Case 1: some s_i moves a point outside C to a point outside C.
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [x, y] : values[i].entries()) {
      if (!c.contains(x) && !c.contains(y)) {
        return FamilyMember{deflate(values[i], outside_c), FamilyMember::Case::One, i, 0, x};
      }
    }
  }

  // Case 2: two values send a common point of C to distinct points outside C.
  // Only points of C that s_i moves out of C can serve as x.
  std::vector<std::vector<FinPerm::Entry>> exits(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& e : values[i].entries()) {
      if (c.contains(e.first) && !c.contains(e.second)) exits[i].push_back(e);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (exits[i].empty()) continue;
    for (std::size_t j = i + 1; j < m; ++j) {
      for (const auto& [x, yi] : exits[i]) {
        const Atom yj = values[j](x);
        if (!c.contains(yj) && yj != yi) {
          const FinPerm quotient = compose(values[j], inverse(values[i]));
          return FamilyMember{deflate(quotient, outside_c), FamilyMember::Case::Two, i, j, x};
        }
      }
    }
  }
  return std::nullopt;
}

Family build_family(std::span<const FinPerm> values, std::size_t m, std::size_t n) {
  Family fam;
  AtomSet c;
  const std::size_t length = family_length(m);
  for (std::size_t l = 0; l < length; ++l) {
    fam.c_growth.push_back(c);
    std::optional<FamilyMember> member = family_member(values, m, c);
    if (!member) {
      fam.stuck = FamilyStuck{l, c};
      return fam;
    }
    assert(!member->t.is_identity());
    assert(member->t.mov_size() <= 2 * n);
    assert(!mov(member->t).intersects(c));
    (void)n;
    c = set_union(c, mov(member->t));
    fam.members.push_back(std::move(*member));
  }
  return fam;
}

FinPerm assemble_F(std::span<const FinPerm> family, std::span<const std::size_t> indices) {
  FinPerm out;
  for (std::size_t i : indices) out = compose(family[i], out);
  return out;
}

FinPerm assemble_F(std::span<const FamilyMember> family, std::span<const std::size_t> indices) {
  FinPerm out;
  for (std::size_t i : indices) out = compose(family[i].t, out);
  return out;
}

Json PermStepTrace::to_json() const {
  Json j;
  j["m"] = m;
  j["distinct_values"] = distinct_values;
  Json members = Json::array();
  for (const auto& mem : family.members) {
    Json e;
    e["t"] = to_cycles(mem.t);
    e["case"] = mem.kind == FamilyMember::Case::One ? 1 : 2;
    e["i"] = mem.i;
    if (mem.kind == FamilyMember::Case::Two) e["j"] = mem.j;
    e["x"] = mem.x.index;
    members.push_back(std::move(e));
  }
  j["family"] = std::move(members);
  Json cs = Json::array();
  for (const auto& c : family.c_growth) cs.push_back(to_string(c));
  j["C"] = std::move(cs);
  if (family.stuck) {
    j["stuck"] = Json{{"l", family.stuck->l}, {"C", to_string(family.stuck->c)}};
  } else {
    j["stuck"] = nullptr;
  }
  j["chosen"] = chosen;
  j["fallback"] = fallback;
  j["result"] = to_cycles(result);
  return j;
}

PermEngine::PermEngine(std::size_t n, std::uint64_t k, PermOracle oracle, PermMode mode,
                       std::size_t seeds, std::size_t instance)
    : n_(n), k_(k), oracle_(std::move(oracle)), mode_(mode) {
  if (k == 0) throw Error(ErrorCode::BadParameters, "k must be at least 1");
  if (mode == PermMode::Strict) {
    params_ = compute_bounds(n, k);
    if (params_->m0 >= kStrictSeedLimit) {
      throw Error(ErrorCode::BudgetExceeded,
                  "strict mode needs m0 + 1 = " + std::to_string(params_->m0) + " + 1 seeds");
    }
    seed_count_ = static_cast<std::size_t>(params_->m0) + 1;
  } else {
    if (seeds == 0) throw Error(ErrorCode::BadParameters, "need at least one seed");
    try {
      params_ = compute_bounds(n, k);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
    }
    seed_count_ = seeds;
  }
  const Atom base(1000 * (instance + 1));
  g_ = seed(seed_count_, base);
  g_set_.insert(g_.begin(), g_.end());
  next_reserved_ = base.index + seed_count_ + 1;
}

bool PermEngine::query_pending() {
  while (values_.size() < g_.size()) {
    const FinPerm& input = g_[values_.size()];
    FinPerm value = oracle_(input);
    if (value.mov_size() > n_) {
      throw Error(ErrorCode::CodomainViolation, "oracle value " + to_cycles(value) + " moves more than " +
                                                    std::to_string(n_) + " atoms");
    }
    auto v = ledger_.record(to_cycles(input), to_cycles(value), k_);
    distinct_values_.insert(value);
    values_.push_back(std::move(value));
    if (v) {
      violation_ = std::move(v);
      status_ = Status::Violated;
      return false;
    }
  }
  return true;
}

std::optional<PermStepTrace> PermEngine::step() {
  if (status_ != Status::Running) return std::nullopt;
  if (!query_pending()) return std::nullopt;

  PermStepTrace trace;
  trace.m = g_.size();
  trace.distinct_values = distinct_values_.size();
  trace.family = build_family(values_, trace.m, n_);

  if (trace.family.stuck) {
    if (mode_ == PermMode::Strict) {
      status_ = Status::Inconsistent;
      note_ = "no family member at stage " + std::to_string(trace.family.stuck->l) + " with m = " +
              std::to_string(trace.m) + " > m0";
      return trace;
    }
    // Below m0 the counting argument does not apply; use two unused atoms.
    for (;;) {
      const Atom a(next_reserved_++);
      const Atom b(next_reserved_++);
      trace.result = cycle({a.index, b.index});
      if (!g_set_.contains(trace.result)) break;
    }
    trace.fallback = true;
  } else {
    const std::size_t length = trace.family.members.size();
    bool found = false;
    // Index sets in lexicographic order of their characteristic strings,
    // index 0 most significant: code c selects i when bit (length-1-i) is set.
    for (std::uint64_t code = 0; length >= 64 || code < (std::uint64_t{1} << length); ++code) {
      std::vector<std::size_t> chosen;
      for (std::size_t i = 0; i < length; ++i) {
        if (code & (std::uint64_t{1} << (length - 1 - i))) chosen.push_back(i);
      }
      FinPerm candidate = assemble_F(std::span<const FamilyMember>(trace.family.members), chosen);
      if (!g_set_.contains(candidate)) {
        trace.chosen = std::move(chosen);
        trace.result = std::move(candidate);
        found = true;
        break;
      }
    }
    if (!found) {
      status_ = Status::Inconsistent;
      note_ = "every F(a) already emitted at m = " + std::to_string(trace.m);
      return trace;
    }
  }
  g_.push_back(trace.result);
  g_set_.insert(trace.result);
  return trace;
}

Certificate run_perm(std::size_t n, std::uint64_t k, PermOracle oracle, std::size_t steps,
                     PermMode mode, std::size_t seeds, std::vector<PermStepTrace>* traces_out) {
  if (steps == 0) throw Error(ErrorCode::BadParameters, "steps must be at least 1");
  PermEngine engine(n, k, std::move(oracle), mode, seeds);
  Certificate cert;
  cert.n = n;
  cert.k = k;
  if (engine.params()) {
    cert.l0 = engine.params()->l0;
    cert.m0 = engine.params()->m0;
    cert.window = engine.params()->window;
  }
  for (std::size_t s = 0; s < steps; ++s) {
    auto trace = engine.step();
    if (!trace) break;
    cert.traces.push_back(trace->to_json());
    if (engine.status() == PermEngine::Status::Running) ++cert.steps;
    if (traces_out) traces_out->push_back(std::move(*trace));
    if (engine.status() != PermEngine::Status::Running) break;
  }
  for (const auto& p : engine.g()) cert.outputs.push_back(to_cycles(p));
  cert.all_distinct = outputs_distinct(cert.outputs);
  cert.violation = engine.violation();
  switch (engine.status()) {
    case PermEngine::Status::Running: cert.kind = CertificateKind::PermDiag; break;
    case PermEngine::Status::Violated: cert.kind = CertificateKind::LedgerViolation; break;
    case PermEngine::Status::Inconsistent:
      cert.kind = CertificateKind::Stuck;
      cert.note = engine.note();
      break;
  }
  return cert;
}

}  // namespace bfto
