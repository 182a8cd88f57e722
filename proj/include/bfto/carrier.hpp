#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace bfto {

// An element of the countable atom universe {0, 1, 2, ...}.
struct Atom {
  std::uint64_t index = 0;

  constexpr Atom() = default;
  constexpr explicit Atom(std::uint64_t i) : index(i) {}

  friend constexpr auto operator<=>(Atom, Atom) = default;
};

constexpr std::strong_ordering atom_cmp(Atom a, Atom b) { return a <=> b; }

std::ostream& operator<<(std::ostream& os, Atom a);

// A finite set of atoms kept as a sorted, duplicate-free vector.
class AtomSet {
 public:
  using const_iterator = std::vector<Atom>::const_iterator;

  AtomSet() = default;
  AtomSet(std::initializer_list<std::uint64_t> indices);
  explicit AtomSet(std::vector<Atom> atoms);

  bool contains(Atom a) const;
  void insert(Atom a);
  bool erase(Atom a);

  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  Atom front() const { return atoms_.front(); }
  Atom back() const { return atoms_.back(); }
  const_iterator begin() const { return atoms_.begin(); }
  const_iterator end() const { return atoms_.end(); }
  const std::vector<Atom>& atoms() const { return atoms_; }

  bool is_subset_of(const AtomSet& other) const;
  bool intersects(const AtomSet& other) const;

  friend AtomSet set_union(const AtomSet& a, const AtomSet& b);
  friend AtomSet set_intersection(const AtomSet& a, const AtomSet& b);
  friend AtomSet set_difference(const AtomSet& a, const AtomSet& b);

  friend auto operator<=>(const AtomSet&, const AtomSet&) = default;
  friend bool operator==(const AtomSet&, const AtomSet&) = default;

 private:
  std::vector<Atom> atoms_;
};

// "{a,b,c}" ascending; the empty set prints "{}".
std::string to_string(const AtomSet& s);
std::ostream& operator<<(std::ostream& os, const AtomSet& s);

// Parses the "{a,b,c}" form. Order and duplicates in the input are tolerated.
AtomSet parse_atom_set(const std::string& text);

// The `count` smallest-index atoms not in `avoid`.
AtomSet fresh_atoms(std::size_t count, const AtomSet& avoid);

// A subset of the universe that is either finite or cofinite.
class SetSpec {
 public:
  static SetSpec finite(AtomSet members) { return SetSpec(std::move(members), false); }
  static SetSpec cofinite_complement(AtomSet excluded) {
    return SetSpec(std::move(excluded), true);
  }
  static SetSpec universe() { return cofinite_complement({}); }

  bool contains(Atom a) const { return complemented_ != listed_.contains(a); }
  bool is_cofinite() const { return complemented_; }
  const AtomSet& listed() const { return listed_; }

 private:
  SetSpec(AtomSet listed, bool complemented)
      : listed_(std::move(listed)), complemented_(complemented) {}

  AtomSet listed_;
  bool complemented_;
};

inline bool spec_contains(const SetSpec& x, Atom a) { return x.contains(a); }

}  // namespace bfto

namespace bfto::detail {

// Reads a run of decimal digits starting at `pos`, advancing `pos`.
// Throws ParseError when no digit is present or the value overflows.
std::uint64_t parse_decimal(const std::string& text, std::size_t& pos);

}  // namespace bfto::detail
