#include <map>
#include <memory>
#include <set>

#include "bfto/diag_perm.hpp"
#include "bfto/error.hpp"
#include "bfto/oracles.hpp"
#include "doctest.h"

using namespace bfto;

namespace {

// Answers the i-th distinct query with (base; base + 1 + i). All values share
// the point `base`, which stalls the family after one stage.
PermOracle star_oracle(std::uint64_t base) {
  auto seen = std::make_shared<std::map<FinPerm, std::uint64_t>>();
  return [seen, base](const FinPerm& s) {
    auto it = seen->try_emplace(s, seen->size()).first;
    return cycle({base, base + 1 + it->second});
  };
}

// Answers the i-th distinct query with the disjoint (base + 2i; base + 2i + 1).
PermOracle fresh_oracle(std::uint64_t base) {
  auto seen = std::make_shared<std::map<FinPerm, std::uint64_t>>();
  return [seen, base](const FinPerm& s) {
    auto it = seen->try_emplace(s, seen->size()).first;
    return cycle({base + 2 * it->second, base + 2 * it->second + 1});
  };
}

void check_trace_invariants(const PermStepTrace& tr, std::size_t n, const std::vector<FinPerm>& earlier) {
  AtomSet c;
  for (std::size_t l = 0; l < tr.family.members.size(); ++l) {
    const FinPerm& t = tr.family.members[l].t;
    CHECK_FALSE(t.is_identity());
    CHECK(t.mov_size() <= 2 * n);
    CHECK_FALSE(mov(t).intersects(c));
    CHECK(tr.family.c_growth[l] == c);
    CHECK(c.size() <= 2 * n * l);
    c = set_union(c, mov(t));
  }
  if (!tr.family.stuck) CHECK(tr.family.members.size() == family_length(tr.m));
  for (const auto& p : earlier) CHECK(p != tr.result);
}

}  // namespace

TEST_CASE("seed") {
  const auto s = seed(3, Atom(1000));
  REQUIRE(s.size() == 3);
  CHECK(s[0] == cycle({1000, 1001}));
  CHECK(s[1] == cycle({1000, 1002}));
  CHECK(s[2] == cycle({1000, 1003}));
  CHECK(seed(1, Atom(5)).size() == 1);
  const auto many = seed(500, Atom(1000));
  CHECK(std::set<FinPerm>(many.begin(), many.end()).size() == 500);
}

TEST_CASE("family_length") {
  CHECK(family_length(1) == 1);
  CHECK(family_length(2) == 2);
  CHECK(family_length(3) == 2);
  CHECK(family_length(4) == 3);
  CHECK(family_length(257) == 9);
  for (std::size_t m = 1; m < 2000; ++m) {
    const std::size_t len = family_length(m);
    CHECK((std::size_t{1} << len) > m);
    CHECK((std::size_t{1} << (len - 1)) <= m);
  }
}

TEST_CASE("build_family stalls once the only support is used up") {
  const std::vector<FinPerm> b{cycle({1, 2}), cycle({1, 2})};
  const Family f = build_family(b, 2, 2);
  REQUIRE(f.members.size() == 1);
  CHECK(f.members[0].t == cycle({1, 2}));
  CHECK(f.members[0].kind == FamilyMember::Case::One);
  CHECK(f.members[0].i == 0);
  CHECK(f.members[0].x == Atom(1));
  REQUIRE(f.stuck);
  CHECK(f.stuck->l == 1);
  CHECK(f.stuck->c == AtomSet{1, 2});
}

TEST_CASE("family_member falls back to the quotient of two values") {
  const std::vector<FinPerm> b{cycle({1, 3}), cycle({1, 4})};
  const auto t = family_member(b, 2, AtomSet{1});
  REQUIRE(t);
  CHECK(t->kind == FamilyMember::Case::Two);
  CHECK(t->i == 0);
  CHECK(t->j == 1);
  CHECK(t->x == Atom(1));
  CHECK(t->t == cycle({3, 4}));
}

TEST_CASE("build_family on identities is stuck immediately") {
  const std::vector<FinPerm> b(5, FinPerm::identity());
  const Family f = build_family(b, 5, 2);
  CHECK(f.members.empty());
  REQUIRE(f.stuck);
  CHECK(f.stuck->l == 0);
  CHECK(f.stuck->c.empty());
}

TEST_CASE("build_family mixes both cases") {
  // Stage 0 takes (1;2;3) whole.
  const std::vector<FinPerm> b{cycle({1, 2, 3}), cycle({1, 4}), cycle({1, 5})};
  const Family f = build_family(b, 3, 3);
  REQUIRE(f.members.size() == 2);
  CHECK(f.members[0].t == cycle({1, 2, 3}));
  // (1;4) and (1;5) send 4, 5 back into C, so only the quotient works.
  CHECK(f.members[1].kind == FamilyMember::Case::Two);
  CHECK(f.members[1].i == 1);
  CHECK(f.members[1].j == 2);
  CHECK(f.members[1].x == Atom(1));
  CHECK(f.members[1].t == cycle({4, 5}));
}

TEST_CASE("assemble_F") {
  const std::vector<FinPerm> fam{cycle({1, 2}), cycle({3, 4})};
  const std::vector<std::size_t> both{0, 1}, none{}, second{1};
  CHECK(assemble_F(fam, both) == parse_cycles("(1;2)(3;4)"));
  CHECK(assemble_F(fam, none).is_identity());
  CHECK(assemble_F(fam, second) == cycle({3, 4}));
}

TEST_CASE("assemble_F is injective on index sets") {
  for (std::size_t len = 0; len <= 10; ++len) {
    std::vector<FinPerm> fam;
    for (std::uint64_t i = 0; i < len; ++i) {
      fam.push_back(i % 2 == 0 ? cycle({3 * i, 3 * i + 1}) : cycle({3 * i, 3 * i + 1, 3 * i + 2}));
    }
    std::set<FinPerm> images;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < len; ++i) {
        if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
      }
      const FinPerm f = assemble_F(fam, idx);
      // Pointwise: the product agrees with each chosen member on its support.
      for (std::size_t i : idx) {
        for (Atom x : mov(fam[i])) CHECK(f(x) == fam[i](x));
      }
      images.insert(f);
    }
    CHECK(images.size() == (std::size_t{1} << len));
  }
}

TEST_CASE("h is injective under the stage conditions") {
  // Universe {0..5}, values in S_{<=2}. For a fixed C, values satisfying:
  // (4) every moved point outside C is sent into C, and pairwise (5) two
  // values never send a common point to distinct points outside C, are
  // determined by h(s) = (s deflated to C, points of C sent outside C).
  const AtomSet universe{0, 1, 2, 3, 4, 5};
  std::vector<FinPerm> small{FinPerm::identity()};
  for (const auto& t : permutations_moving_exactly(universe, 2)) small.push_back(t);
  std::size_t pairs_checked = 0;
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    std::vector<Atom> cv;
    for (std::uint64_t a = 0; a < 6; ++a) {
      if (mask & (1u << a)) cv.emplace_back(a);
    }
    const AtomSet c(cv);
    auto cond4 = [&](const FinPerm& s) {
      for (Atom x : mov(s)) {
        if (!c.contains(x) && !c.contains(s(x))) return false;
      }
      return true;
    };
    auto cond5 = [&](const FinPerm& s, const FinPerm& u) {
      for (Atom x : universe) {
        if (!c.contains(s(x)) && !c.contains(u(x)) && s(x) != u(x)) return false;
      }
      return true;
    };
    auto h = [&](const FinPerm& s) {
      AtomSet exits;
      for (Atom x : c) {
        if (!c.contains(s(x))) exits.insert(x);
      }
      return std::make_pair(deflate(s, SetSpec::finite(c)), exits);
    };
    for (const auto& s : small) {
      if (!cond4(s)) continue;
      for (const auto& u : small) {
        if (!cond4(u) || !cond5(s, u)) continue;
        ++pairs_checked;
        if (h(s) == h(u)) CHECK(s == u);
      }
    }
  }
  CHECK(pairs_checked > 0);
}

TEST_CASE("strict mode with n = 1 ends in a violation on the seeds") {
  const Certificate cert = run_perm(1, 1, truncate_oracle(1), 5, PermMode::Strict);
  CHECK(cert.kind == CertificateKind::LedgerViolation);
  CHECK(cert.m0 == 256);
  CHECK(cert.l0 == 8);
  CHECK(cert.outputs.size() == 257);
  CHECK(cert.all_distinct);
  CHECK(cert.steps == 0);
  REQUIRE(cert.violation);
  CHECK(cert.violation->output == "()");
  CHECK(cert.violation->witnesses == std::vector<std::string>{"(1000;1001)", "(1000;1002)"});
}

TEST_CASE("strict mode refuses oversized seed budgets") {
  CHECK_THROWS_WITH_AS(run_perm(2, 1, truncate_oracle(2), 5, PermMode::Strict),
                       doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("a small pool collides while seeding") {
  const Certificate cert = run_perm(2, 1, perm_pool_oracle(2, 10), 50, PermMode::Opportunistic, 64);
  CHECK(cert.kind == CertificateKind::LedgerViolation);
  CHECK(cert.steps == 0);
  CHECK(cert.outputs.size() == 64);
  REQUIRE(cert.violation);
  CHECK(cert.violation->witnesses.size() == 2);
}

TEST_CASE("pairwise distinct oracle values never trigger the audit") {
  std::vector<PermStepTrace> traces;
  const Certificate cert = run_perm(2, 1, fresh_oracle(5000), 40, PermMode::Opportunistic, 4, &traces);
  CHECK(cert.kind == CertificateKind::PermDiag);
  CHECK(cert.steps == 40);
  CHECK(cert.outputs.size() == 44);
  CHECK(cert.all_distinct);
  CHECK_FALSE(cert.violation);
  std::vector<FinPerm> emitted = seed(4, Atom(1000));
  for (const auto& tr : traces) {
    CHECK_FALSE(tr.fallback);
    check_trace_invariants(tr, 2, emitted);
    CHECK(tr.m <= 1 * tr.distinct_values);
    emitted.push_back(tr.result);
  }
  // The first step picks the empty index set; the next the last index alone.
  CHECK(traces[0].chosen.empty());
  CHECK(traces[0].result.is_identity());
  REQUIRE(traces[1].chosen.size() == 1);
  CHECK(traces[1].chosen[0] == traces[1].family.members.size() - 1);
}

TEST_CASE("opportunistic mode falls back to fresh transpositions when stuck") {
  std::vector<PermStepTrace> traces;
  const Certificate cert = run_perm(2, 1, star_oracle(7000), 3, PermMode::Opportunistic, 2, &traces);
  REQUIRE(!traces.empty());
  CHECK(traces[0].family.stuck);
  CHECK(traces[0].fallback);
  CHECK(traces[0].result == cycle({1003, 1004}));
  CHECK(cert.all_distinct);
}

TEST_CASE("truncate oracle in opportunistic mode") {
  std::vector<PermStepTrace> traces;
  const Certificate cert = run_perm(2, 1, truncate_oracle(2), 200, PermMode::Opportunistic, 64, &traces);
  CHECK(cert.all_distinct);
  CHECK(cert.kind == CertificateKind::LedgerViolation);
  REQUIRE(cert.violation);
  CHECK(cert.violation->witnesses.size() == 2);
  // The witnesses really share the reported value.
  const PermOracle f = truncate_oracle(2);
  for (const auto& w : cert.violation->witnesses) CHECK(to_cycles(f(parse_cycles(w))) == cert.violation->output);
  std::vector<FinPerm> emitted = seed(64, Atom(1000));
  for (const auto& tr : traces) {
    check_trace_invariants(tr, 2, emitted);
    emitted.push_back(tr.result);
  }
}

TEST_CASE("run_perm argument checks") {
  CHECK_THROWS_WITH_AS(run_perm(2, 1, truncate_oracle(2), 0, PermMode::Opportunistic),
                       doctest::Contains("BadParameters"), Error);
  CHECK_THROWS_AS(run_perm(2, 0, truncate_oracle(2), 1, PermMode::Opportunistic), Error);
  const PermOracle bad = [](const FinPerm&) { return cycle({1, 2, 3}); };
  CHECK_THROWS_WITH_AS(run_perm(2, 1, bad, 1, PermMode::Opportunistic),
                       doctest::Contains("CodomainViolation"), Error);
}

TEST_CASE("runs are deterministic") {
  const auto a = dump_certificate(run_perm(2, 1, truncate_oracle(2), 50, PermMode::Opportunistic));
  const auto b = dump_certificate(run_perm(2, 1, truncate_oracle(2), 50, PermMode::Opportunistic));
  CHECK(a == b);
}
