#include "bfto/partition.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "bfto/error.hpp"

namespace bfto {

FinitaryPartition FinitaryPartition::from_blocks(std::vector<AtomSet> blocks) {
  std::erase_if(blocks, [](const AtomSet& b) { return b.size() < 2; });
  std::sort(blocks.begin(), blocks.end());
  std::vector<Atom> all;
  for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw Error(ErrorCode::OverlappingBlocks, "blocks are not pairwise disjoint");
  }
  FinitaryPartition p;
  p.blocks_ = std::move(blocks);
  return p;
}

AtomSet FinitaryPartition::block_of(Atom a) const {
  for (const auto& b : blocks_) {
    if (b.contains(a)) return b;
  }
  AtomSet single;
  single.insert(a);
  return single;
}

std::string to_string(const FinitaryPartition& p) {
  if (p.exceptional_blocks().empty()) return "{}*";
  std::ostringstream os;
  for (const auto& b : p.exceptional_blocks()) os << b;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FinitaryPartition& p) { return os << to_string(p); }

FinitaryPartition parse_partition(const std::string& text) {
  if (text == "{}*") return FinitaryPartition::all_singletons();
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty partition text");
  std::vector<AtomSet> blocks;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto close = text.find('}', pos);
    if (close == std::string::npos) throw Error(ErrorCode::ParseError, "unterminated block in \"" + text + "\"");
    AtomSet block = parse_atom_set(text.substr(pos, close - pos + 1));
    if (block.size() < 2) {
      throw Error(ErrorCode::ParseError, "blocks in partition text need at least two atoms");
    }
    blocks.push_back(std::move(block));
    pos = close + 1;
  }
  try {
    return FinitaryPartition::from_blocks(std::move(blocks));
  } catch (const Error&) {
    throw Error(ErrorCode::ParseError, "overlapping blocks in \"" + text + "\"");
  }
}

QuotientFrame build_frame(std::span<const AtomSet> values) {
  QuotientFrame frame;
  frame.c_list.assign(values.begin(), values.end());
  AtomSet all;
  for (const auto& c : values) all = set_union(all, c);

  // std::map orders vector<bool> lexicographically with false < true.
  std::map<std::vector<bool>, std::vector<Atom>> groups;
  for (Atom a : all) {
    std::vector<bool> bits(values.size());
    for (std::size_t c = 0; c < values.size(); ++c) bits[c] = values[c].contains(a);
    groups[std::move(bits)].push_back(a);
  }
  frame.classes.reserve(groups.size());
  for (auto& [bits, atoms] : groups) {
    frame.classes.push_back(QuotientClass{AtomSet(std::move(atoms)), bits});
  }
  return frame;
}

std::strong_ordering cmp_subsets(const ClassSubset& u, const ClassSubset& v,
                                 const QuotientFrame& /*frame*/) {
  std::size_t p = 0;
  while (p < u.size() && p < v.size() && u[p] == v[p]) ++p;
  if (p == u.size() && p == v.size()) return std::strong_ordering::equal;
  // Whoever holds the least index of the symmetric difference has a 1 there.
  if (p == v.size() || (p < u.size() && u[p] < v[p])) return std::strong_ordering::greater;
  return std::strong_ordering::less;
}

std::strong_ordering cmp_partitions_R(const SetPartition& q1, const SetPartition& q2,
                                      const QuotientFrame& frame) {
  auto sorted = [&](SetPartition q) {
    for (auto& b : q) std::sort(b.begin(), b.end());
    std::sort(q.begin(), q.end(), [&](const ClassSubset& a, const ClassSubset& b) {
      return cmp_subsets(a, b, frame) < 0;
    });
    return q;
  };
  const SetPartition a = sorted(q1);
  const SetPartition b = sorted(q2);
  std::size_t p = 0;
  while (p < a.size() && p < b.size() && cmp_subsets(a[p], b[p], frame) == 0) ++p;
  if (p == a.size() && p == b.size()) return std::strong_ordering::equal;
  if (p == b.size() || (p < a.size() && cmp_subsets(a[p], b[p], frame) < 0)) {
    return std::strong_ordering::greater;
  }
  return std::strong_ordering::less;
}

SetPartition RankedPartitions::at(std::size_t i) const {
  const Compact& c = keys_.at(i);
  SetPartition q;
  q.reserve(c.count);
  for (std::size_t b = 0; b < c.count; ++b) {
    ClassSubset block;
    for (std::size_t idx = 0; idx < l_; ++idx) {
      if (c.keys[b] & (1u << (l_ - 1 - idx))) block.push_back(idx);
    }
    q.push_back(std::move(block));
  }
  std::sort(q.begin(), q.end());
  return q;
}

RankedPartitions enumerate_partitions_R(std::size_t l, std::size_t budget) {
  const std::size_t cap = std::min(budget, kPartitionBudget);
  if (l > cap) {
    throw Error(ErrorCode::BudgetExceeded,
                "l = " + std::to_string(l) + " exceeds the cap " + std::to_string(cap));
  }
  RankedPartitions out;
  out.l_ = l;
  out.keys_.reserve(static_cast<std::size_t>(bell(l)));

  // Restricted-growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
  std::vector<std::size_t> rgs(l, 0);
  std::vector<std::size_t> prefix_max(l, 0);
  for (;;) {
    RankedPartitions::Compact c;
    for (std::size_t i = 0; i < l; ++i) {
      c.keys[rgs[i]] |= static_cast<std::uint16_t>(1u << (l - 1 - i));
      c.count = static_cast<std::uint8_t>(std::max<std::size_t>(c.count, rgs[i] + 1));
    }
    std::sort(c.keys.begin(), c.keys.begin() + c.count);
    out.keys_.push_back(c);

    // Advance to the next restricted-growth string: bump the rightmost
    // position that may still grow and reset everything after it.
    std::size_t i = l;
    bool advanced = false;
    while (i-- > 1) {
      if (rgs[i] <= prefix_max[i - 1]) {
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < l; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }

  // R-smaller means a larger key at the first mismatch of the ascending key
  // lists.
  std::sort(out.keys_.begin(), out.keys_.end(),
            [](const RankedPartitions::Compact& a, const RankedPartitions::Compact& b) {
              const std::size_t n = std::min(a.count, b.count);
              for (std::size_t p = 0; p < n; ++p) {
                if (a.keys[p] != b.keys[p]) return a.keys[p] > b.keys[p];
              }
              return a.count < b.count;
            });
  return out;
}

namespace {

// Blocks of a set partition have pairwise distinct least elements, and among
// disjoint blocks the characteristic string is larger exactly when the least
// element is smaller. So listing the blocks by ascending key is listing them
// by descending least element, and R ascending is the descending
// lexicographic order of those lists. The generator picks the block with the
// largest least element first, largest key first, then recurses on the rest
// with a strict upper bound on the next least element. Every branch produces
// at least one partition (the rest taken as one block is always admissible).
class RGenerator {
 public:
  explicit RGenerator(const std::function<bool(const SetPartition&)>& visit) : visit_(visit) {}

  void run(std::size_t l) {
    std::vector<std::size_t> all(l);
    for (std::size_t i = 0; i < l; ++i) all[i] = i;
    partitions(all, l);
  }

 private:
  void partitions(const std::vector<std::size_t>& rest, std::size_t bound) {
    if (stop_) return;
    if (rest.empty()) {
      emit();
      return;
    }
    chosen_.push_back(rest);
    partitions({}, 0);
    chosen_.pop_back();
    for (std::size_t p = 1; p < rest.size() && !stop_ && rest[p] < bound; ++p) {
      const std::vector<std::size_t> tail(rest.begin() + static_cast<std::ptrdiff_t>(p) + 1, rest.end());
      ClassSubset block{rest[p]};
      subsets(rest, tail, 0, block);
    }
  }

  // Subsets of `tail` in descending characteristic order: include before
  // exclude, most significant element first.
  void subsets(const std::vector<std::size_t>& rest, const std::vector<std::size_t>& tail,
               std::size_t idx, ClassSubset& block) {
    if (stop_) return;
    if (idx == tail.size()) {
      std::vector<std::size_t> remaining;
      std::set_difference(rest.begin(), rest.end(), block.begin(), block.end(),
                          std::back_inserter(remaining));
      chosen_.push_back(block);
      partitions(remaining, block.front());
      chosen_.pop_back();
      return;
    }
    block.push_back(tail[idx]);
    subsets(rest, tail, idx + 1, block);
    block.pop_back();
    subsets(rest, tail, idx + 1, block);
  }

  void emit() {
    SetPartition q(chosen_.rbegin(), chosen_.rend());
    if (!visit_(q)) stop_ = true;
  }

  const std::function<bool(const SetPartition&)>& visit_;
  std::vector<ClassSubset> chosen_;
  bool stop_ = false;
};

}  // namespace

void for_each_partition_R(std::size_t l, const std::function<bool(const SetPartition&)>& visit) {
  RGenerator(visit).run(l);
}

FinitaryPartition lift(const SetPartition& q, const QuotientFrame& frame) {
  std::vector<AtomSet> blocks;
  blocks.reserve(q.size());
  for (const auto& b : q) {
    std::vector<Atom> atoms;
    for (std::size_t idx : b) {
      const auto& cls = frame.classes.at(idx).atoms;
      atoms.insert(atoms.end(), cls.begin(), cls.end());
    }
    blocks.emplace_back(std::move(atoms));
  }
  return FinitaryPartition::from_blocks(std::move(blocks));
}

namespace {

// Row r of the Bell triangle ends in B_{r+1}.
template <class Int>
Int bell_triangle(std::size_t l) {
  if (l == 0) return Int(1);
  std::vector<Int> row{Int(1)};
  for (std::size_t r = 1; r < l; ++r) {
    std::vector<Int> next{row.back()};
    next.reserve(row.size() + 1);
    for (const auto& x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.back();
}

}  // namespace

std::uint64_t bell(std::size_t l) {
  if (l > 25) throw Error(ErrorCode::OutOfRange, "bell(l) needs l <= 25, got " + std::to_string(l));
  return bell_triangle<std::uint64_t>(l);
}

boost::multiprecision::cpp_int bell_exact(std::size_t l) {
  return bell_triangle<boost::multiprecision::cpp_int>(l);
}

std::uint64_t derangement(std::size_t j) {
  if (j > 20) throw Error(ErrorCode::OutOfRange, "derangement(j) needs j <= 20, got " + std::to_string(j));
  std::uint64_t prev2 = 1;  // D_0
  std::uint64_t prev1 = 0;  // D_1
  if (j == 0) return prev2;
  for (std::size_t i = 2; i <= j; ++i) {
    const std::uint64_t next = (i - 1) * (prev1 + prev2);
    prev2 = prev1;
    prev1 = next;
  }
  return prev1;
}

}  // namespace bfto
