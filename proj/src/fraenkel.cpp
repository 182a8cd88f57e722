#include "bfto/fraenkel.hpp"

#include <algorithm>
#include <set>

#include "bfto/error.hpp"

namespace bfto {

namespace {

bool fits_carrier(const AtomSet& atoms, std::size_t carrier) {
  return atoms.empty() || atoms.back().index < carrier;
}

FinPerm transposition(Atom a, Atom b) { return cycle({a.index, b.index}); }

}  // namespace

ProbeVerdict classify(const FinPerm& s, const FinPerm& t, const SupportConfig& cfg) {
  const AtomSet ms = mov(s);
  const AtomSet mt = mov(t);
  if (cfg.n < 2) return PreconditionFailure{"n must be at least 2"};
  if (ms.size() != cfg.n) return PreconditionFailure{"|mov(s)| != n"};
  if (mt.size() != cfg.n + 1) return PreconditionFailure{"|mov(t)| != n + 1"};
  if (ms.intersects(cfg.e)) return PreconditionFailure{"s moves a point of E"};
  if (cfg.carrier_size < cfg.e.size() + cfg.n + 2) return PreconditionFailure{"carrier too small"};
  if (!fits_carrier(ms, cfg.carrier_size) || !fits_carrier(mt, cfg.carrier_size) ||
      !fits_carrier(cfg.e, cfg.carrier_size)) {
    return PreconditionFailure{"atoms outside the carrier"};
  }

  // (1) a point moved by s but not by t.
  const AtomSet missing = set_difference(ms, mt);
  if (!missing.empty()) {
    MissingMoved v;
    v.a = missing.front();
    const AtomSet taken = set_union(set_union(cfg.e, mt), ms);
    for (Atom b : fresh_atoms(kMissingMovedSample, taken)) {
      v.b.push_back(b);
      v.sample.push_back(conjugate(transposition(v.a, b), s));
    }
    return v;
  }

  // (2) a point moved by t outside mov(s) u E.
  const AtomSet extra = set_difference(mt, set_union(ms, cfg.e));
  if (!extra.empty()) {
    ExtraOutside v;
    v.a = extra.front();
    const Atom b = fresh_atoms(1, set_union(cfg.e, mt)).front();
    v.tau = transposition(v.a, b);
    v.moved_t = conjugate(v.tau, t);
    if (v.moved_t == t) return Escape{"tau fixes t"};
    return v;
  }

  // (3) mov(t) = mov(s) u {e}.
  const AtomSet from_e = set_difference(mt, ms);
  if (from_e.size() != 1 || !cfg.e.contains(from_e.front())) {
    return Escape{"mov(t) is not mov(s) plus one point of E"};
  }
  ForcedFixedPoint v;
  v.e = from_e.front();
  v.d = t(v.e);
  if (!ms.contains(v.d)) return Escape{"t(e) outside mov(s)"};
  v.conjugated = conjugate(s, t);
  if (v.conjugated == t) return Escape{"conjugation by s fixes t"};
  return v;
}

bool verify_verdict(const ProbeVerdict& verdict, const FinPerm& s, const FinPerm& t,
                    const SupportConfig& cfg) {
  const AtomSet ms = mov(s);
  const AtomSet mt = mov(t);
  const AtomSet fixed_by_pi = set_union(cfg.e, mt);

  if (const auto* v = std::get_if<MissingMoved>(&verdict)) {
    if (!ms.contains(v->a) || mt.contains(v->a) || cfg.e.contains(v->a)) return false;
    if (v->sample.size() < 2 || v->sample.size() != v->b.size()) return false;
    std::set<FinPerm> distinct;
    for (std::size_t i = 0; i < v->sample.size(); ++i) {
      const Atom b = v->b[i];
      if (fixed_by_pi.contains(b) || b == v->a) return false;
      const FinPerm& member = v->sample[i];
      // (a;b) s (a;b) evaluated pointwise.
      auto swap = [&](Atom x) { return x == v->a ? b : (x == b ? v->a : x); };
      for (Atom x : set_union(set_union(ms, mov(member)), AtomSet{v->a.index, b.index})) {
        if (member(x) != swap(s(swap(x)))) return false;
      }
      if (member.mov_size() != cfg.n || mov(member).intersects(cfg.e)) return false;
      // The same transposition leaves t unchanged.
      for (Atom x : set_union(mt, AtomSet{v->a.index, b.index})) {
        if (swap(t(swap(x))) != t(x)) return false;
      }
      distinct.insert(member);
    }
    return distinct.size() == v->sample.size();
  }

  if (const auto* v = std::get_if<ExtraOutside>(&verdict)) {
    if (!mt.contains(v->a) || ms.contains(v->a) || cfg.e.contains(v->a)) return false;
    if (v->tau.mov_size() != 2) return false;
    for (Atom x : set_union(cfg.e, ms)) {
      if (v->tau(x) != x) return false;
    }
    // tau t tau sends tau(a) to tau(t(a)); t sends tau(a) = b to b.
    const Atom b = v->tau(v->a);
    return v->moved_t(b) == v->tau(t(v->a)) && t(b) == b && v->moved_t(b) != b;
  }

  if (const auto* v = std::get_if<ForcedFixedPoint>(&verdict)) {
    if (!cfg.e.contains(v->e) || ms.contains(v->e)) return false;
    AtomSet expected = ms;
    expected.insert(v->e);
    if (mt != expected) return false;
    if (t(v->e) != v->d || v->d == v->e || !ms.contains(v->d)) return false;
    for (Atom x : cfg.e) {
      if (s(x) != x) return false;
    }
    // (s t s^-1)(e) = s(t(e)) = s(d), while t(e) = d.
    return v->conjugated(v->e) == s(v->d) && s(v->d) != v->d;
  }
  return false;
}

Json ScanReport::to_json() const {
  Json j;
  j["carrier"] = carrier;
  j["E"] = to_string(e);
  j["n"] = n;
  j["pairs"] = pairs;
  j["missing_moved"] = missing_moved;
  j["extra_outside"] = extra_outside;
  j["forced_fixed_point"] = forced_fixed_point;
  j["escapes"] = escapes;
  j["sample_size"] = kMissingMovedSample;
  j["unverified"] = unverified;
  return j;
}

ScanReport scan(const SupportConfig& cfg) {
  if (cfg.n < 2) throw Error(ErrorCode::PreconditionFail, "S_1 is empty; need n >= 2");
  if (cfg.carrier_size > kMaxScanCarrier) {
    throw Error(ErrorCode::PreconditionFail,
                "carrier " + std::to_string(cfg.carrier_size) + " exceeds " + std::to_string(kMaxScanCarrier));
  }
  if (cfg.carrier_size < cfg.e.size() + cfg.n + 2) {
    throw Error(ErrorCode::PreconditionFail, "carrier smaller than |E| + n + 2");
  }
  if (!fits_carrier(cfg.e, cfg.carrier_size)) {
    throw Error(ErrorCode::PreconditionFail, "E lies outside the carrier");
  }
  std::vector<Atom> universe;
  for (std::size_t i = 0; i < cfg.carrier_size; ++i) universe.emplace_back(i);
  const AtomSet all(universe);
  const auto sources = permutations_moving_exactly(set_difference(all, cfg.e), cfg.n);
  const auto targets = permutations_moving_exactly(all, cfg.n + 1);

  ScanReport report;
  report.carrier = cfg.carrier_size;
  report.e = cfg.e;
  report.n = cfg.n;
  for (const auto& s : sources) {
    for (const auto& t : targets) {
      ++report.pairs;
      const ProbeVerdict v = classify(s, t, cfg);
      if (std::holds_alternative<MissingMoved>(v)) {
        ++report.missing_moved;
      } else if (std::holds_alternative<ExtraOutside>(v)) {
        ++report.extra_outside;
      } else if (std::holds_alternative<ForcedFixedPoint>(v)) {
        ++report.forced_fixed_point;
      } else {
        ++report.escapes;
        continue;
      }
      if (!verify_verdict(v, s, t, cfg)) ++report.unverified;
    }
  }
  return report;
}

}  // namespace bfto
