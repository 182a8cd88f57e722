#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bfto/carrier.hpp"

namespace bfto {

// A partition of the atom universe into finite blocks. Only blocks with at
// least two atoms are stored; every other atom is a singleton block.
class FinitaryPartition {
 public:
  FinitaryPartition() = default;

  // Throws OverlappingBlocks when two blocks share an atom.
  static FinitaryPartition from_blocks(std::vector<AtomSet> blocks);

  static FinitaryPartition all_singletons() { return {}; }

  // Blocks of size >= 2, ordered by least atom.
  const std::vector<AtomSet>& exceptional_blocks() const { return blocks_; }

  // The block containing `a` (a singleton when `a` is in no stored block).
  AtomSet block_of(Atom a) const;

  friend auto operator<=>(const FinitaryPartition&, const FinitaryPartition&) = default;
  friend bool operator==(const FinitaryPartition&, const FinitaryPartition&) = default;

 private:
  std::vector<AtomSet> blocks_;
};

// "{1,2}{5,6,7}"; all-singletons prints "{}*".
std::string to_string(const FinitaryPartition& p);
std::ostream& operator<<(std::ostream& os, const FinitaryPartition& p);
FinitaryPartition parse_partition(const std::string& text);

inline FinitaryPartition from_blocks(std::vector<AtomSet> blocks) {
  return FinitaryPartition::from_blocks(std::move(blocks));
}

// The quotient of the union of a list of finite sets by "belongs to exactly
// the same listed sets", with classes sorted by their membership vectors
// (lexicographic, 0 < 1, first listed set most significant).
struct QuotientClass {
  AtomSet atoms;
  std::vector<bool> membership;  // membership[c] == (atoms lie in c_list[c])
};

struct QuotientFrame {
  std::vector<AtomSet> c_list;
  std::vector<QuotientClass> classes;

  std::size_t l() const { return classes.size(); }
};

// `values` must already be duplicate-free and in the intended order.
QuotientFrame build_frame(std::span<const AtomSet> values);

// A set of class indices, ascending.
using ClassSubset = std::vector<std::size_t>;
// A set partition of {0..l-1}: every block ascending, blocks ordered by their
// least index.
using SetPartition = std::vector<ClassSubset>;

// Lexicographic comparison of characteristic strings over the classes, class
// 0 most significant, 0 < 1.
std::strong_ordering cmp_subsets(const ClassSubset& u, const ClassSubset& v,
                                 const QuotientFrame& frame);

// The ordering R on set partitions: characteristic functions over P(D) listed
// in cmp_subsets order, compared lexicographically. The cmp_subsets-least
// block in the symmetric difference decides; its owner is the greater one.
std::strong_ordering cmp_partitions_R(const SetPartition& q1, const SetPartition& q2,
                                      const QuotientFrame& frame);

inline constexpr std::size_t kPartitionBudget = 12;

// All set partitions of {0..l-1}, materialized from restricted-growth strings
// and sorted by cmp_partitions_R. Holds a compact form; at(i) expands one.
class RankedPartitions {
 public:
  std::size_t l() const { return l_; }
  std::size_t size() const { return keys_.size(); }
  SetPartition at(std::size_t i) const;

 private:
  friend RankedPartitions enumerate_partitions_R(std::size_t l, std::size_t budget);

  struct Compact {
    std::array<std::uint16_t, kPartitionBudget> keys{};
    std::uint8_t count = 0;
  };

  std::size_t l_ = 0;
  std::vector<Compact> keys_;
};

// Throws BudgetExceeded when l > min(budget, kPartitionBudget).
RankedPartitions enumerate_partitions_R(std::size_t l, std::size_t budget = kPartitionBudget);
inline RankedPartitions enumerate_partitions_R(const QuotientFrame& frame,
                                               std::size_t budget = kPartitionBudget) {
  return enumerate_partitions_R(frame.l(), budget);
}

// Visits the set partitions of {0..l-1} ascending in R without materializing
// them, stopping as soon as `visit` returns false. Work per visited partition
// is polynomial in l, so any l is accepted.
void for_each_partition_R(std::size_t l, const std::function<bool(const SetPartition&)>& visit);

// Unions the classes of each block of `q`; atoms outside the frame stay
// singletons.
FinitaryPartition lift(const SetPartition& q, const QuotientFrame& frame);

// Bell numbers through the Bell triangle. bell() throws OutOfRange for l > 25.
std::uint64_t bell(std::size_t l);
boost::multiprecision::cpp_int bell_exact(std::size_t l);

// D_j = (j-1)(D_{j-1} + D_{j-2}). Throws OutOfRange for j > 20.
std::uint64_t derangement(std::size_t j);

}  // namespace bfto
