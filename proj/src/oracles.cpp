#include "bfto/oracles.hpp"

#include <charconv>

#include "bfto/error.hpp"

namespace bfto {

namespace {

std::uint64_t parse_pool(const std::string& name) {
  const std::string digits = name.substr(5);
  std::uint64_t p = 0;
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || end != digits.data() + digits.size() || p == 0) {
    throw Error(ErrorCode::BadParameters, "bad pool size in \"" + name + "\"");
  }
  return p;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

PermOracle truncate_oracle(std::size_t n) {
  return [n](const FinPerm& s) {
    const AtomSet moved = mov(s);
    std::vector<Atom> keep(moved.begin(), moved.begin() + static_cast<std::ptrdiff_t>(std::min(n, moved.size())));
    return deflate(s, SetSpec::finite(AtomSet(std::move(keep))));
  };
}

PermOracle perm_pool_oracle(std::size_t n, std::uint64_t pool) {
  return [n, pool](const FinPerm& s) {
    if (n < 2) return FinPerm::identity();
    const std::uint64_t p = fnv1a(to_cycles(s)) % pool;
    return cycle({2 * p, 2 * p + 1});
  };
}

PartOracle min_block_oracle() {
  return [](const FinitaryPartition& p) {
    const auto& blocks = p.exceptional_blocks();
    return blocks.empty() ? AtomSet{} : blocks.front();
  };
}

PartOracle part_pool_oracle(std::uint64_t pool) {
  return [pool](const FinitaryPartition& p) {
    return AtomSet{fnv1a(to_string(p)) % pool};
  };
}

Oracle<FinitaryPartition, FinPerm> block_cycle_oracle(std::size_t n) {
  auto truncate = truncate_oracle(n);
  return [truncate](const FinitaryPartition& p) {
    const auto& blocks = p.exceptional_blocks();
    if (blocks.empty()) return FinPerm::identity();
    return truncate(cycle(std::span<const Atom>(blocks.front().atoms())));
  };
}

NamedPermOracle make_perm_oracle(const std::string& name, std::size_t n) {
  if (name == "truncate") return {truncate_oracle(n)};
  if (name.rfind("pool:", 0) == 0) return {perm_pool_oracle(n, parse_pool(name))};
  throw Error(ErrorCode::BadParameters, "unknown permutation oracle \"" + name + "\"");
}

NamedPartOracle make_part_oracle(const std::string& name, std::uint64_t k, std::size_t n) {
  if (name == "min-block") return {min_block_oracle(), k};
  if (name.rfind("pool:", 0) == 0) return {part_pool_oracle(parse_pool(name)), k};
  if (name == "mov-block-cycle") {
    auto adapted = mov_adapter<FinitaryPartition>(block_cycle_oracle(n), k, n);
    return {std::move(adapted.fn), adapted.k};
  }
  throw Error(ErrorCode::BadParameters, "unknown partition oracle \"" + name + "\"");
}

}  // namespace bfto
