// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "bfto/diag_core.hpp"
#include "bfto/diag_part.hpp"
#include "bfto/diag_perm.hpp"
#include "bfto/fraenkel.hpp"
#include "bfto/injection.hpp"
#include "bfto/oracles.hpp"
#include "bfto/partition.hpp"
#include "bfto/perm.hpp"

using namespace bfto;
using boost::multiprecision::cpp_int;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects failures without stopping at the first one.
class Checker {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && failures_++ < 5) first_ += (first_.empty() ? "" : "; ") + what;
  }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failure(s): " + first_};
  }

 private:
  std::size_t failures_ = 0;
  std::string first_;
};

AtomSet range_atoms(std::uint64_t lo, std::uint64_t hi) {
  std::vector<Atom> atoms;
  for (std::uint64_t a = lo; a < hi; ++a) atoms.emplace_back(a);
  return AtomSet(atoms);
}

Outcome encode_decode_round_trip() {
  Checker c;
  std::size_t total = 0;
  std::string counts;
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{2, 4}, {2, 5}, {3, 5}}) {
    const Tableau t(n, m);
    const std::uint64_t top = t.reserved().back().index + 1;
    const AtomSet pool = range_atoms(0, top + 4);
    const auto all = permutations_moving_exactly(pool, n);
    std::set<FinPerm> images;
    for (const auto& s : all) {
      const FinPerm image = encode(s, t).image;
      c.expect(image.mov_size() == m, "|mov| of encode(" + to_cycles(s) + ")");
      c.expect(decode(image, t) == s, "decode(encode(" + to_cycles(s) + "))");
      images.insert(image);
    }
    c.expect(images.size() == all.size(), "images not pairwise distinct");
    if (n == 2 && m == 4) c.expect(all.size() == 153, "expected 153 inputs for (2,4)");
    total += all.size();
    counts += (counts.empty() ? "" : ", ") + std::to_string(all.size());
  }
  return c.done(std::to_string(total) + " permutations (" + counts + ")");
}

Outcome bound_computation() {
  Checker c;
  for (auto [k, l0, m0] : {std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>{1, 8, 256}, {2, 9, 648}}) {
    const BoundParams p = compute_bounds(1, k);
    c.expect(p.l0 == l0 && p.m0 == m0, "compute_bounds(1," + std::to_string(k) + ")");
    // k(2l)^2 < 2^l checked with exact integers.
    auto holds = [&](std::uint64_t l) { return cpp_int(k) * cpp_int(2 * l) * cpp_int(2 * l) < (cpp_int(1) << l); };
    for (std::uint64_t l = p.l0 + 1; l <= p.l0 + 100; ++l) c.expect(holds(l), "inequality at l=" + std::to_string(l));
    c.expect(!holds(p.l0), "inequality should fail at l0");
  }
  return c.done("(l0, m0) = (8, 256) and (9, 648)");
}

Outcome bell_bound() {
  Checker c;
  // Bell triangle: each row starts with the last entry of the previous row.
  std::vector<cpp_int> row{1};
  std::vector<cpp_int> expected{1};
  for (std::size_t l = 1; l <= 12; ++l) {
    expected.push_back(row.back());
    std::vector<cpp_int> next{row.back()};
    for (const auto& v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  for (std::size_t l = 0; l <= 12; ++l) c.expect(cpp_int(bell(l)) == expected[l], "bell(" + std::to_string(l) + ")");
  c.expect(bell(12) == 4213597, "B_12");
  for (std::size_t l = 1; l <= 12; ++l) {
    c.expect(72 * cpp_int(bell(l)) > (cpp_int(1) << (2 * l)), "72 B_l > 4^l at l=" + std::to_string(l));
  }
  return c.done("B_0..B_12 match, 72 B_l > 4^l for 1 <= l <= 12");
}

Outcome h_injectivity() {
  Checker c;
  const AtomSet universe = range_atoms(0, 6);
  std::vector<FinPerm> small{FinPerm::identity()};
  for (const auto& t : permutations_moving_exactly(universe, 2)) small.push_back(t);
  std::size_t sets = 0, pairs = 0;
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    std::vector<Atom> cv;
    for (std::uint64_t a = 0; a < 6; ++a) {
      if (mask & (1u << a)) cv.emplace_back(a);
    }
    if (cv.size() > 4) continue;
    ++sets;
    const AtomSet cset(cv);
    auto cond4 = [&](const FinPerm& s) {
      for (Atom x : mov(s)) {
        if (!cset.contains(x) && !cset.contains(s(x))) return false;
      }
      return true;
    };
    auto cond5 = [&](const FinPerm& s, const FinPerm& u) {
      for (Atom x : universe) {
        if (!cset.contains(s(x)) && !cset.contains(u(x)) && s(x) != u(x)) return false;
      }
      return true;
    };
    auto h = [&](const FinPerm& s) {
      AtomSet exits;
      for (Atom x : cset) {
        if (!cset.contains(s(x))) exits.insert(x);
      }
      return std::make_pair(deflate(s, SetSpec::finite(cset)), exits);
    };
    for (const auto& s : small) {
      if (!cond4(s)) continue;
      for (const auto& u : small) {
        if (!cond4(u) || !cond5(s, u)) continue;
        ++pairs;
        if (h(s) == h(u)) c.expect(s == u, "counterexample " + to_cycles(s) + " / " + to_cycles(u));
      }
    }
  }
  return c.done(std::to_string(sets) + " sets C, " + std::to_string(pairs) + " admissible pairs, 0 counterexamples");
}

Outcome strict_perm_n1() {
  Checker c;
  const Certificate cert = run_perm(1, 1, truncate_oracle(1), 1, PermMode::Strict);
  c.expect(cert.kind == CertificateKind::LedgerViolation, "kind " + to_string(cert.kind));
  c.expect(cert.outputs.size() == 257, "seed count " + std::to_string(cert.outputs.size()));
  c.expect(cert.violation.has_value(), "no violation");
  if (cert.violation) {
    c.expect(cert.violation->witnesses.size() == 2, "witness count");
    c.expect(cert.violation->output == "()", "fiber is " + cert.violation->output);
  }
  return c.done("257 seeds, 2 witnesses on ()");
}

void check_family(Checker& c, const PermStepTrace& tr, std::size_t n) {
  AtomSet cset;
  for (std::size_t l = 0; l < tr.family.members.size(); ++l) {
    const FinPerm& t = tr.family.members[l].t;
    c.expect(!t.is_identity(), "trivial family member");
    c.expect(t.mov_size() <= 2 * n, "family member too large");
    c.expect(!mov(t).intersects(cset), "overlapping family supports");
    c.expect(cset.size() <= 2 * n * l, "|C| > 2nl");
    cset = set_union(cset, mov(t));
  }
}

Outcome opportunistic_perm() {
  Checker c;
  std::vector<PermStepTrace> traces;
  const Certificate cert = run_perm(2, 1, truncate_oracle(2), 200, PermMode::Opportunistic, 64, &traces);
  std::set<std::string> distinct(cert.outputs.begin(), cert.outputs.end());
  c.expect(distinct.size() == cert.outputs.size(), "outputs repeat");
  c.expect(cert.all_distinct, "certificate reports repeats");
  const bool full = cert.kind == CertificateKind::PermDiag && cert.steps == 200;
  const bool violated = cert.kind == CertificateKind::LedgerViolation && cert.violation.has_value();
  c.expect(full || violated, "outcome " + to_string(cert.kind));
  for (const auto& tr : traces) check_family(c, tr, 2);
  return c.done(to_string(cert.kind) + " after " + std::to_string(cert.steps) + " constructed steps, " +
                std::to_string(traces.size()) + " traces checked");
}

Outcome part_min_block() {
  Checker c;
  std::vector<PartStepTrace> traces;
  const Certificate cert = run_part(1, min_block_oracle(), 100, &traces);
  c.expect(seed_partitions(1, Atom(1000)).size() == 73, "seed count");
  std::set<std::string> distinct(cert.outputs.begin(), cert.outputs.end());
  c.expect(distinct.size() == cert.outputs.size(), "outputs repeat");
  const bool full = cert.kind == CertificateKind::PartDiag && cert.steps == 100;
  const bool violated = cert.kind == CertificateKind::LedgerViolation && cert.violation.has_value();
  c.expect(full || violated, "outcome " + to_string(cert.kind));
  for (const auto& tr : traces) {
    const std::size_t l = tr.l();
    c.expect(tr.m <= 1 * tr.c.size(), "m > k|C|");
    c.expect(cpp_int(tr.c.size()) <= (cpp_int(1) << l), "|C| > 2^l");
    if (tr.m > 72) c.expect(cpp_int(72) < (cpp_int(1) << l), "72k >= 2^l");
  }
  return c.done(to_string(cert.kind) + " after " + std::to_string(cert.steps) + " constructed steps, " +
                std::to_string(traces.size()) + " traces checked");
}

Outcome quotient_machinery() {
  Checker c;
  const QuotientFrame f = build_frame(std::vector<AtomSet>{AtomSet{1, 2}, AtomSet{2, 3}});
  c.expect(f.l() == 3, "worked example l");
  if (f.l() == 3) {
    c.expect(f.classes[0].atoms == AtomSet{3} && f.classes[1].atoms == AtomSet{1} &&
                 f.classes[2].atoms == AtomSet{2},
             "worked example order");
  }
  std::mt19937_64 rng(2024);
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<AtomSet> values;
    std::set<AtomSet> seen;
    const auto count = 1 + rng() % 6;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<Atom> atoms;
      for (std::uint64_t a = 0; a < 10; ++a) {
        if (rng() % 3 == 0) atoms.emplace_back(a);
      }
      AtomSet v(atoms);
      if (seen.insert(v).second) values.push_back(v);
    }
    const QuotientFrame fr = build_frame(values);
    AtomSet all, covered;
    for (const auto& v : values) all = set_union(all, v);
    for (const auto& cls : fr.classes) {
      c.expect(!cls.atoms.empty() && !covered.intersects(cls.atoms), "classes overlap");
      covered = set_union(covered, cls.atoms);
    }
    c.expect(covered == all, "classes do not cover the union");
    auto less_d = [&](const QuotientClass& u, const QuotientClass& v) {
      for (const auto& val : values) {
        const bool uc = u.atoms.is_subset_of(val), vc = v.atoms.is_subset_of(val);
        if (uc != vc) return vc;
      }
      return false;
    };
    for (std::size_t i = 0; i < fr.l(); ++i) {
      for (std::size_t j = i + 1; j < fr.l(); ++j) {
        c.expect(less_d(fr.classes[i], fr.classes[j]) && !less_d(fr.classes[j], fr.classes[i]),
                 "<_D not total or not ascending");
      }
    }
    std::set<std::vector<std::size_t>> images;
    for (const auto& v : values) {
      std::vector<std::size_t> inside;
      for (std::size_t i = 0; i < fr.l(); ++i) {
        if (fr.classes[i].atoms.is_subset_of(v)) inside.push_back(i);
      }
      images.insert(inside);
    }
    c.expect(images.size() == values.size(), "classes-in-c map not injective");
  }
  return c.done("worked frame exact, " + std::to_string(trials) + " random C lists");
}

Outcome fraenkel_scans() {
  Checker c;
  std::string summary;
  std::size_t branch3_checked = 0;
  for (auto [carrier, n] : {std::pair<std::size_t, std::size_t>{6, 2}, {7, 3}}) {
    const SupportConfig cfg{AtomSet{0}, n, carrier};
    const ScanReport r = scan(cfg);
    c.expect(r.escapes == 0 && r.unverified == 0, "escapes or unverified verdicts");
    c.expect(r.missing_moved + r.extra_outside + r.forced_fixed_point == r.pairs, "branch counts do not sum");
    if (carrier == 6) c.expect(r.pairs == 400, "expected 400 pairs, got " + std::to_string(r.pairs));
    summary += (summary.empty() ? "" : "; ") + std::string("carrier ") + std::to_string(carrier) + " n " +
               std::to_string(n) + ": " + std::to_string(r.pairs) + " pairs";

    const AtomSet all = range_atoms(0, carrier);
    const auto ts = permutations_moving_exactly(all, n + 1);
    for (const auto& s : permutations_moving_exactly(set_difference(all, cfg.e), n)) {
      for (const auto& t : ts) {
        const ProbeVerdict v = classify(s, t, cfg);
        if (!std::holds_alternative<ForcedFixedPoint>(v)) continue;
        const auto& ff = std::get<ForcedFixedPoint>(v);
        ++branch3_checked;
        bool differs = false;
        for (Atom x : all) {
          const Atom expected = s(t(inverse(s)(x)));
          c.expect(ff.conjugated(x) == expected, "conjugation witness wrong");
          differs = differs || expected != t(x);
        }
        c.expect(differs, "conjugation by s fixes t");
        c.expect(cfg.e.contains(ff.e) && t(ff.e) == ff.d && mov(s).contains(ff.d), "branch-3 conjuncts");
      }
    }
  }
  return c.done(summary + "; " + std::to_string(branch3_checked) + " conjugation witnesses checked");
}

Outcome deflate_operator() {
  Checker c;
  c.expect(deflate(cycle({1, 2, 3}), SetSpec::finite(AtomSet{1, 3})) == cycle({1, 3}), "example 1");
  c.expect(deflate(cycle({1, 2}), SetSpec::cofinite_complement(AtomSet{})) == cycle({1, 2}), "example 2");
  c.expect(deflate(cycle({1, 2, 3, 4}), SetSpec::cofinite_complement(AtomSet{2})) == cycle({1, 3, 4}), "example 3");
  std::mt19937_64 rng(99);
  const std::uint64_t span = 16;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Atom> pts;
    for (std::uint64_t a = 0; a < span; ++a) pts.emplace_back(a);
    std::shuffle(pts.begin(), pts.end(), rng);
    pts.resize(rng() % 9);
    std::vector<Atom> images = pts;
    std::shuffle(images.begin(), images.end(), rng);
    std::vector<FinPerm::Entry> entries;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i] != images[i]) entries.emplace_back(pts[i], images[i]);
    }
    const FinPerm s = FinPerm::from_pairs(entries);
    std::vector<Atom> xs;
    for (std::uint64_t a = 0; a < span; ++a) {
      if (rng() % 2) xs.emplace_back(a);
    }
    const AtomSet xset(xs);
    const SetSpec spec = rng() % 2 ? SetSpec::finite(xset) : SetSpec::cofinite_complement(xset);
    const FinPerm d = deflate(s, spec);
    std::set<Atom> image_of_x;
    for (std::uint64_t a = 0; a < span + 4; ++a) {
      const Atom x(a);
      if (!spec.contains(x)) {
        c.expect(d(x) == x, "moves a point outside X");
        continue;
      }
      c.expect(spec.contains(d(x)), "leaves X");
      image_of_x.insert(d(x));
      // Orbit walk: first point after x that lands back in X.
      Atom y = s(x);
      while (!spec.contains(y)) y = s(y);
      c.expect(d(x) == y, "orbit walk mismatch");
    }
    std::size_t in_x = 0;
    for (std::uint64_t a = 0; a < span + 4; ++a) in_x += spec.contains(Atom(a)) ? 1 : 0;
    c.expect(image_of_x.size() == in_x, "not a bijection of X");
    c.expect(deflate(s, SetSpec::universe()) == s, "deflate onto A changes s");
  }
  return c.done("3 worked examples, 1000 random cases");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_determinism() {
  Checker c;
  const fs::path dir = fs::temp_directory_path() / "bfto_acceptance";
  fs::create_directories(dir);
  const std::vector<std::string> commands{
      "inject --n 2 --m 4 --perm \"(0;1)\"",
      "decode --n 2 --m 4 --perm \"(2;3)(4;5)\"",
      "diag-perm --n 1 --k 1 --oracle truncate --mode strict --steps 1",
      "diag-perm --n 2 --k 1 --oracle truncate --mode opportunistic --steps 200",
      "diag-part --k 1 --oracle min-block --steps 100",
      "fraenkel --atoms 6 --support \"{0}\" --n 2",
      "bell --upto 12",
      "bounds --n 2 --k 1",
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string texts[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = dir / ("run_" + std::to_string(i) + "_" + std::to_string(rep) + ".json");
      fs::remove(out);
      const std::string cmd = std::string("\"") + BFTO_CLI_PATH + "\" " + commands[i] + " --json \"" +
                              out.string() + "\" > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      c.expect(status == 0, "exit status of: " + commands[i]);
      texts[rep] = slurp(out);
    }
    c.expect(!texts[0].empty(), "no JSON from: " + commands[i]);
    c.expect(texts[0] == texts[1], "JSON differs for: " + commands[i]);
  }
  return c.done(std::to_string(commands.size()) + " commands, byte-identical JSON");
}

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"encode/decode round-trip", 5, encode_decode_round_trip},
      {"bound computation", 1, bound_computation},
      {"Bell numbers and the 4^l/72 bound", 1, bell_bound},
      {"h is injective on admissible pairs", 60, h_injectivity},
      {"diag-perm strict n=1 k=1", 1, strict_perm_n1},
      {"diag-perm opportunistic truncate", 60, opportunistic_perm},
      {"diag-part min-block", 60, part_min_block},
      {"quotient machinery", 5, quotient_machinery},
      {"fraenkel scans", 10, fraenkel_scans},
      {"restriction operator", 1, deflate_operator},
      {"CLI determinism", 5, cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& cr = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > cr.limit_seconds) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(cr.limit_seconds)) + " s limit)";
    }
    if (!o.ok) ++failed;
    std::ostringstream time;
    time << std::fixed << std::setprecision(3) << secs;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << cr.name << " (" << time.str()
              << " s): " << o.detail << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
