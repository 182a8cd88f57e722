#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "bfto/carrier.hpp"
#include "bfto/perm.hpp"

namespace bfto {

// Reserved atoms for the injection S_n -> S_m (m >= n + 2).
//
// Level i holds m - n "a" atoms plus one "b" atom for every atom of the lower
// levels, so |H_i| = (m - n) * 2^i. Atoms are drawn from index 0 upwards,
// level by level, a atoms before b atoms, b atoms keyed in atom order.
class Tableau {
 public:
  // Throws BadParameters unless m >= n + 2.
  Tableau(std::size_t n, std::size_t m);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t width() const { return m_ - n_; }

  const AtomSet& level(std::size_t i) const { return levels_.at(i); }
  std::size_t levels() const { return levels_.size(); }
  Atom a(std::size_t i, std::size_t j) const { return a_atoms_.at(i).at(j); }
  // b_{i,x} for x in some H_k with k < i.
  Atom b(std::size_t i, Atom x) const { return b_atoms_.at(i).at(x); }
  const std::map<Atom, Atom>& b_row(std::size_t i) const { return b_atoms_.at(i); }

  // Union of H_0..H_n.
  const AtomSet& reserved() const { return reserved_; }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<AtomSet> levels_;
  std::vector<std::vector<Atom>> a_atoms_;
  std::vector<std::map<Atom, Atom>> b_atoms_;
  AtomSet reserved_;
};

inline Tableau build_tableau(std::size_t n, std::size_t m) { return Tableau(n, m); }

struct EncodeTrace {
  std::size_t level = 0;  // least i with mov(s) disjoint from H_i
  FinPerm swap;           // involution moving mov(s) off the lower levels
  FinPerm relocated;      // swap o s o swap
  FinPerm marker;         // the a-cycle of the chosen level
};

struct Encoded {
  FinPerm image;
  EncodeTrace trace;
};

// Throws WrongMovSize unless |mov(s)| == tableau.n().
Encoded encode(const FinPerm& s, const Tableau& tableau);

// Recovers s from encode(s).image, validating by re-encoding. Throws
// NotInImage for anything outside the image.
FinPerm decode(const FinPerm& t, const Tableau& tableau);

}  // namespace bfto
