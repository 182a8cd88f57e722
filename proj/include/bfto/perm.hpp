#pragma once

#include <compare>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bfto/carrier.hpp"

namespace bfto {

// A permutation of the atom universe that moves finitely many atoms.
//
// Only moved points are stored, sorted by atom, so two permutations are equal
// exactly when their representations are equal. A value can never move a
// single point.
class FinPerm {
 public:
  using Entry = std::pair<Atom, Atom>;

  FinPerm() = default;

  // Builds from (x, image) pairs. Pairs with x == image are dropped. Throws
  // NotABijection if the pairs do not permute their key set, DuplicatePoint
  // if a key repeats.
  static FinPerm from_pairs(std::vector<Entry> pairs);

  static FinPerm identity() { return {}; }

  Atom operator()(Atom a) const;

  bool is_identity() const { return moved_.empty(); }
  std::size_t mov_size() const { return moved_.size(); }
  const std::vector<Entry>& entries() const { return moved_; }

  friend auto operator<=>(const FinPerm&, const FinPerm&) = default;
  friend bool operator==(const FinPerm&, const FinPerm&) = default;

 private:
  explicit FinPerm(std::vector<Entry> sorted_moved);

  std::vector<Entry> moved_;
};

// (a_0;...;a_n): a_0 -> a_1 -> ... -> a_n -> a_0. The empty sequence is the
// identity.
FinPerm cycle(std::span<const Atom> points);
FinPerm cycle(std::initializer_list<std::uint64_t> points);

inline Atom apply(const FinPerm& s, Atom a) { return s(a); }

// g after f: (g o f)(x) = g(f(x)).
FinPerm compose(const FinPerm& g, const FinPerm& f);
FinPerm inverse(const FinPerm& s);

// pi o s o pi^-1.
FinPerm conjugate(const FinPerm& pi, const FinPerm& s);

// The restriction of s to X: each x in X goes to the first point of its forward
// s-orbit that lies in X again. Atoms outside X are fixed.
FinPerm deflate(const FinPerm& s, const SetSpec& x);

AtomSet mov(const FinPerm& s);

// Product of the disjoint cycles of s in canonical order, "()" for identity.
std::string to_cycles(const FinPerm& s);
std::ostream& operator<<(std::ostream& os, const FinPerm& s);

// Inverse of to_cycles. Accepts any rotation of a cycle and any cycle order;
// cycles must be disjoint.
FinPerm parse_cycles(const std::string& text);

// Every permutation whose support is an n-subset of `atoms`.
std::vector<FinPerm> permutations_moving_exactly(const AtomSet& atoms, std::size_t n);

}  // namespace bfto
