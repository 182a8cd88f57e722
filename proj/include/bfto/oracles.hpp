#pragma once

#include <cstdint>
#include <string>

#include "bfto/diag_core.hpp"

namespace bfto {

// Built-in adversaries for the engines. None of them can be an honest
// bounded-fiber map; they exist to drive both engine outcomes.

// s |-> s restricted to its n least moved atoms.
PermOracle truncate_oracle(std::size_t n);

// FNV-1a of the canonical text, reduced into `pool` fixed values of S_{<=n}:
// value p is (2p;2p+1). With n < 2 the only value is the identity.
PermOracle perm_pool_oracle(std::size_t n, std::uint64_t pool);

// The block of the least atom in an exceptional block; {} for all-singletons.
PartOracle min_block_oracle();

// FNV-1a into the `pool` sets {0}, {1}, ...
PartOracle part_pool_oracle(std::uint64_t pool);

// Into S_{<=n}: the least exceptional block as a cycle, restricted to its n
// least atoms. Feed through mov_adapter for the partition engine.
Oracle<FinitaryPartition, FinPerm> block_cycle_oracle(std::size_t n);

std::uint64_t fnv1a(const std::string& text);

struct NamedPermOracle {
  PermOracle fn;
};

struct NamedPartOracle {
  PartOracle fn;
  std::uint64_t k = 1;  // bound the engine must audit
};

// "truncate" | "pool:P". Throws BadParameters for anything else.
NamedPermOracle make_perm_oracle(const std::string& name, std::size_t n);

// "min-block" | "pool:P" | "mov-block-cycle" (needs n; multiplies k by the
// support fiber bound). Throws BadParameters for anything else.
NamedPartOracle make_part_oracle(const std::string& name, std::uint64_t k, std::size_t n);

}  // namespace bfto
