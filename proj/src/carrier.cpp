#include "bfto/carrier.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

#include "bfto/error.hpp"

namespace bfto {

std::ostream& operator<<(std::ostream& os, Atom a) { return os << a.index; }

AtomSet::AtomSet(std::initializer_list<std::uint64_t> indices) {
  atoms_.reserve(indices.size());
  for (auto i : indices) atoms_.emplace_back(i);
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

AtomSet::AtomSet(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool AtomSet::contains(Atom a) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

void AtomSet::insert(Atom a) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || *it != a) atoms_.insert(it, a);
}

bool AtomSet::erase(Atom a) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || *it != a) return false;
  atoms_.erase(it);
  return true;
}

bool AtomSet::is_subset_of(const AtomSet& other) const {
  return std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(),
                       atoms_.end());
}

bool AtomSet::intersects(const AtomSet& other) const {
  auto a = atoms_.begin();
  auto b = other.atoms_.begin();
  while (a != atoms_.end() && b != other.atoms_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      return true;
    }
  }
  return false;
}

AtomSet set_union(const AtomSet& a, const AtomSet& b) {
  AtomSet out;
  out.atoms_.reserve(a.size() + b.size());
  std::set_union(a.atoms_.begin(), a.atoms_.end(), b.atoms_.begin(), b.atoms_.end(),
                 std::back_inserter(out.atoms_));
  return out;
}

AtomSet set_intersection(const AtomSet& a, const AtomSet& b) {
  AtomSet out;
  std::set_intersection(a.atoms_.begin(), a.atoms_.end(), b.atoms_.begin(),
                        b.atoms_.end(), std::back_inserter(out.atoms_));
  return out;
}

AtomSet set_difference(const AtomSet& a, const AtomSet& b) {
  AtomSet out;
  std::set_difference(a.atoms_.begin(), a.atoms_.end(), b.atoms_.begin(),
                      b.atoms_.end(), std::back_inserter(out.atoms_));
  return out;
}

std::string to_string(const AtomSet& s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const AtomSet& s) {
  os << '{';
  bool first = true;
  for (Atom a : s) {
    if (!first) os << ',';
    os << a;
    first = false;
  }
  return os << '}';
}

AtomSet parse_atom_set(const std::string& text) {
  std::size_t pos = 0;
  if (text.empty() || text[pos] != '{') throw Error(ErrorCode::ParseError, "expected '{' in \"" + text + "\"");
  ++pos;
  std::vector<Atom> atoms;
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
  } else {
    for (;;) {
      atoms.emplace_back(detail::parse_decimal(text, pos));
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == '}') {
        ++pos;
        break;
      }
      throw Error(ErrorCode::ParseError, "expected ',' or '}' in \"" + text + "\"");
    }
  }
  if (pos != text.size()) throw Error(ErrorCode::ParseError, "trailing input in \"" + text + "\"");
  return AtomSet(std::move(atoms));
}

AtomSet fresh_atoms(std::size_t count, const AtomSet& avoid) {
  std::vector<Atom> out;
  out.reserve(count);
  auto blocked = avoid.begin();
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    while (blocked != avoid.end() && blocked->index < i) ++blocked;
    if (blocked != avoid.end() && blocked->index == i) continue;
    out.emplace_back(i);
  }
  return AtomSet(std::move(out));
}

namespace detail {

std::uint64_t parse_decimal(const std::string& text, std::size_t& pos) {
  const std::size_t start = pos;
  std::uint64_t value = 0;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    const auto digit = static_cast<std::uint64_t>(text[pos] - '0');
    if (value > (kMax - digit) / 10) throw Error(ErrorCode::ParseError, "atom index overflows");
    value = value * 10 + digit;
    ++pos;
  }
  if (pos == start) {
    throw Error(ErrorCode::ParseError,
                "expected a decimal atom at offset " + std::to_string(start) + " in \"" + text + "\"");
  }
  return value;
}

}  // namespace detail
}  // namespace bfto
