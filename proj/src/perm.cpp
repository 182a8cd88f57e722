#include "bfto/perm.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <sstream>

#include "bfto/error.hpp"

namespace bfto {

namespace {

bool entry_less(const FinPerm::Entry& e, Atom a) { return e.first < a; }

}  // namespace

FinPerm::FinPerm(std::vector<Entry> sorted_moved) : moved_(std::move(sorted_moved)) {
  assert(moved_.size() != 1 && "a permutation cannot move exactly one point");
}

FinPerm FinPerm::from_pairs(std::vector<Entry> pairs) {
  std::erase_if(pairs, [](const Entry& e) { return e.first == e.second; });
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].first == pairs[i - 1].first) {
      throw Error(ErrorCode::DuplicatePoint, "atom " + std::to_string(pairs[i].first.index) +
                                                 " has two images");
    }
  }
  std::vector<Atom> images;
  images.reserve(pairs.size());
  for (const auto& e : pairs) images.push_back(e.second);
  std::sort(images.begin(), images.end());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (images[i] != pairs[i].first) {
      throw Error(ErrorCode::NotABijection, "images do not match the moved set");
    }
  }
  return FinPerm(std::move(pairs));
}

Atom FinPerm::operator()(Atom a) const {
  auto it = std::lower_bound(moved_.begin(), moved_.end(), a, entry_less);
  return (it != moved_.end() && it->first == a) ? it->second : a;
}

FinPerm cycle(std::span<const Atom> points) {
  if (points.size() == 1) throw Error(ErrorCode::SinglePoint, "a cycle needs 0 or at least 2 points");
  std::vector<FinPerm::Entry> pairs;
  pairs.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    pairs.emplace_back(points[i], points[(i + 1) % points.size()]);
  }
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].first == pairs[i - 1].first) {
      throw Error(ErrorCode::DuplicatePoint,
                  "atom " + std::to_string(pairs[i].first.index) + " repeats in cycle");
    }
  }
  return FinPerm::from_pairs(std::move(pairs));
}

FinPerm cycle(std::initializer_list<std::uint64_t> points) {
  std::vector<Atom> atoms;
  for (auto p : points) atoms.emplace_back(p);
  return cycle(std::span<const Atom>(atoms));
}

FinPerm compose(const FinPerm& g, const FinPerm& f) {
  const AtomSet support = set_union(mov(g), mov(f));
  std::vector<FinPerm::Entry> pairs;
  pairs.reserve(support.size());
  for (Atom x : support) pairs.emplace_back(x, g(f(x)));
  return FinPerm::from_pairs(std::move(pairs));
}

FinPerm inverse(const FinPerm& s) {
  std::vector<FinPerm::Entry> pairs;
  pairs.reserve(s.mov_size());
  for (const auto& [x, y] : s.entries()) pairs.emplace_back(y, x);
  return FinPerm::from_pairs(std::move(pairs));
}

FinPerm conjugate(const FinPerm& pi, const FinPerm& s) {
  return compose(compose(pi, s), inverse(pi));
}

FinPerm deflate(const FinPerm& s, const SetSpec& x) {
  std::vector<FinPerm::Entry> pairs;
  for (const auto& [start, image] : s.entries()) {
    if (!x.contains(start)) continue;
    // The orbit is finite and passes through `start`, so the walk terminates.
    Atom y = image;
    while (!x.contains(y)) y = s(y);
    pairs.emplace_back(start, y);
  }
  return FinPerm::from_pairs(std::move(pairs));
}

AtomSet mov(const FinPerm& s) {
  std::vector<Atom> keys;
  keys.reserve(s.mov_size());
  for (const auto& e : s.entries()) keys.push_back(e.first);
  return AtomSet(std::move(keys));
}

std::string to_cycles(const FinPerm& s) {
  if (s.is_identity()) return "()";
  std::ostringstream os;
  AtomSet seen;
  for (const auto& e : s.entries()) {
    if (seen.contains(e.first)) continue;
    os << '(' << e.first;
    seen.insert(e.first);
    for (Atom y = s(e.first); y != e.first; y = s(y)) {
      os << ';' << y;
      seen.insert(y);
    }
    os << ')';
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FinPerm& s) { return os << to_cycles(s); }

FinPerm parse_cycles(const std::string& text) {
  if (text == "()") return FinPerm::identity();
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty permutation text");
  std::vector<FinPerm::Entry> pairs;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '(') throw Error(ErrorCode::ParseError, "expected '(' in \"" + text + "\"");
    ++pos;
    std::vector<Atom> points;
    points.emplace_back(detail::parse_decimal(text, pos));
    while (pos < text.size() && text[pos] == ';') {
      ++pos;
      points.emplace_back(detail::parse_decimal(text, pos));
    }
    std::vector<FinPerm::Entry> cycle_pairs;
    for (std::size_t i = 0; i < points.size(); ++i) {
      cycle_pairs.emplace_back(points[i], points[(i + 1) % points.size()]);
    }
    if (pos >= text.size() || text[pos] != ')') {
      throw Error(ErrorCode::ParseError, "expected ';' or ')' in \"" + text + "\"");
    }
    ++pos;
    if (points.size() < 2) throw Error(ErrorCode::ParseError, "cycle with one atom in \"" + text + "\"");
    std::sort(points.begin(), points.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
      throw Error(ErrorCode::ParseError, "repeated atom in a cycle of \"" + text + "\"");
    }
    for (const auto& e : cycle_pairs) pairs.push_back(e);
  }
  try {
    return FinPerm::from_pairs(std::move(pairs));
  } catch (const Error&) {
    throw Error(ErrorCode::ParseError, "cycles overlap in \"" + text + "\"");
  }
}

namespace {

// Every fixed-point-free arrangement of `support`.
void derangements_of(const std::vector<Atom>& support, std::vector<FinPerm>& out) {
  std::vector<std::size_t> image(support.size());
  std::vector<bool> used(support.size(), false);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == support.size()) {
      std::vector<FinPerm::Entry> pairs;
      pairs.reserve(support.size());
      for (std::size_t i = 0; i < support.size(); ++i) pairs.emplace_back(support[i], support[image[i]]);
      out.push_back(FinPerm::from_pairs(std::move(pairs)));
      return;
    }
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (used[j] || j == pos) continue;
      used[j] = true;
      image[pos] = j;
      self(self, pos + 1);
      used[j] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<FinPerm> permutations_moving_exactly(const AtomSet& atoms, std::size_t n) {
  std::vector<FinPerm> out;
  if (n == 1 || n > atoms.size()) return out;
  const auto& all = atoms.atoms();
  std::vector<Atom> chosen;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (chosen.size() == n) {
      derangements_of(chosen, out);
      return;
    }
    for (std::size_t i = from; i + (n - chosen.size()) <= all.size(); ++i) {
      chosen.push_back(all[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace bfto
