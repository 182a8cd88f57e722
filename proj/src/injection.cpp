#include "bfto/injection.hpp"

#include <cassert>

#include "bfto/error.hpp"

namespace bfto {

Tableau::Tableau(std::size_t n, std::size_t m) : n_(n), m_(m) {
  if (m < n + 2) {
    throw Error(ErrorCode::BadParameters,
                "need m >= n + 2, got n = " + std::to_string(n) + ", m = " + std::to_string(m));
  }
  if (n > 20) throw Error(ErrorCode::BadParameters, "n too large for a reserved tableau");
  std::uint64_t next = 0;
  AtomSet lower;  // union of the levels built so far
  for (std::size_t i = 0; i <= n; ++i) {
    AtomSet level;
    std::vector<Atom> as;
    for (std::size_t j = 0; j < width(); ++j) {
      as.emplace_back(next++);
      level.insert(as.back());
    }
    std::map<Atom, Atom> bs;
    for (Atom x : lower) {
      bs.emplace(x, Atom(next++));
      level.insert(bs.at(x));
    }
    lower = set_union(lower, level);
    levels_.push_back(std::move(level));
    a_atoms_.push_back(std::move(as));
    b_atoms_.push_back(std::move(bs));
  }
  reserved_ = std::move(lower);
}

Encoded encode(const FinPerm& s, const Tableau& tableau) {
  if (s.mov_size() != tableau.n()) {
    throw Error(ErrorCode::WrongMovSize, "|mov(s)| = " + std::to_string(s.mov_size()) +
                                             ", expected " + std::to_string(tableau.n()));
  }
  const AtomSet moved = mov(s);
  // n moved atoms cannot meet all n + 1 pairwise disjoint levels.
  std::size_t level = 0;
  while (level < tableau.levels() && moved.intersects(tableau.level(level))) ++level;
  assert(level < tableau.levels());

  std::vector<FinPerm::Entry> swaps;
  for (const auto& [lower, target] : tableau.b_row(level)) {
    if (moved.contains(lower)) {
      swaps.emplace_back(lower, target);
      swaps.emplace_back(target, lower);
    }
  }
  Encoded out;
  out.trace.level = level;
  out.trace.swap = FinPerm::from_pairs(std::move(swaps));
  out.trace.relocated = compose(compose(out.trace.swap, s), out.trace.swap);
  std::vector<Atom> marker_points;
  for (std::size_t j = 0; j < tableau.width(); ++j) marker_points.push_back(tableau.a(level, j));
  out.trace.marker = cycle(marker_points);
  out.image = compose(out.trace.relocated, out.trace.marker);
  return out;
}

FinPerm decode(const FinPerm& t, const Tableau& tableau) {
  auto reject = [](const std::string& why) { return Error(ErrorCode::NotInImage, why); };
  if (t.mov_size() != tableau.m()) {
    throw reject("|mov| = " + std::to_string(t.mov_size()) + ", expected " + std::to_string(tableau.m()));
  }
  const AtomSet moved = mov(t);
  std::size_t level = 0;
  while (level < tableau.levels() && !moved.intersects(tableau.level(level))) ++level;
  if (level == tableau.levels()) throw reject("moves no reserved atom");

  std::vector<Atom> marker_points;
  for (std::size_t j = 0; j < tableau.width(); ++j) marker_points.push_back(tableau.a(level, j));
  const FinPerm marker = cycle(marker_points);
  for (std::size_t j = 0; j < marker_points.size(); ++j) {
    if (t(marker_points[j]) != marker(marker_points[j])) throw reject("marker cycle missing");
  }
  // t agrees with the marker on its atoms, so t o marker^-1 fixes them and
  // agrees with t elsewhere.
  const FinPerm relocated = compose(t, inverse(marker));

  std::vector<FinPerm::Entry> swaps;
  const AtomSet relocated_mov = mov(relocated);
  for (const auto& [lower, target] : tableau.b_row(level)) {
    if (relocated_mov.contains(target)) {
      swaps.emplace_back(lower, target);
      swaps.emplace_back(target, lower);
    }
  }
  const FinPerm swap = FinPerm::from_pairs(std::move(swaps));
  FinPerm s = compose(compose(swap, relocated), swap);
  if (s.mov_size() != tableau.n()) throw reject("reconstruction has the wrong support size");
  if (encode(s, tableau).image != t) throw reject("re-encoding differs");
  return s;
}

}  // namespace bfto
