#include "sumrace/intset.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <sstream>

namespace sumrace {

Elem checked_add(Elem a, Elem b) {
  Elem out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " + " +
                        std::to_string(b));
  }
  return out;
}

Elem checked_mul(Elem a, Elem b) {
  Elem out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " * " +
                        std::to_string(b));
  }
  return out;
}

IntSet IntSet::from_elements(std::vector<Elem> values) {
  if (values.empty()) throw EmptySetError("set requires at least one element");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return IntSet(std::move(values));
}

IntSet IntSet::from_sorted(std::vector<Elem> sorted) {
  if (sorted.empty()) throw EmptySetError("set requires at least one element");
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1] >= sorted[i]) {
      throw PreconditionError("from_sorted: elements not strictly increasing");
    }
  }
  return IntSet(std::move(sorted));
}

Elem IntSet::difference_gcd() const {
  Elem g = 0;
  const Elem lo = elems_.front();
  for (Elem x : elems_) g = std::gcd(g, x - lo);
  return g;
}

bool IntSet::contains(Elem x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

IntSet IntSet::translated(Elem t) const {
  std::vector<Elem> out;
  out.reserve(elems_.size());
  // Monotone map: checking the extremes covers every element.
  checked_add(elems_.front(), t);
  checked_add(elems_.back(), t);
  for (Elem x : elems_) out.push_back(x + t);
  return IntSet(std::move(out));
}

IntSet IntSet::scaled(Elem c) const {
  if (c == 0) throw PreconditionError("scaled: factor must be nonzero");
  std::vector<Elem> out;
  out.reserve(elems_.size());
  for (Elem x : elems_) out.push_back(checked_mul(x, c));
  if (c < 0) std::reverse(out.begin(), out.end());
  return IntSet(std::move(out));
}

Normalized normalize(const IntSet& a) {
  const Elem shift = a.min();
  if (a.size() == 1) {
    return Normalized{IntSet::from_sorted({0}), shift, 1};
  }
  const Elem g = a.difference_gcd();
  std::vector<Elem> out;
  out.reserve(a.size());
  for (Elem x : a.elements()) out.push_back((x - shift) / g);
  return Normalized{IntSet::from_sorted(std::move(out)), shift, g};
}

IntSet reflect(const IntSet& a) {
  std::vector<Elem> out;
  out.reserve(a.size());
  const Elem top = a.max();
  const auto& el = a.elements();
  for (auto it = el.rbegin(); it != el.rend(); ++it) out.push_back(top - *it);
  return IntSet::from_sorted(std::move(out));
}

IntSet parse_set_literal(const std::string& text) {
  std::vector<Elem> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::size_t lo = pos, hi = comma;
    while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1]))) --hi;
    if (lo == hi) {
      throw ParseError("empty entry in set literal \"" + text + "\"");
    }
    Elem value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + lo, text.data() + hi, value);
    if (ec != std::errc() || ptr != text.data() + hi) {
      throw ParseError("bad integer \"" + text.substr(lo, hi - lo) +
                       "\" in set literal");
    }
    values.push_back(value);
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  if (values.empty()) throw ParseError("empty set literal");
  return IntSet::from_elements(std::move(values));
}

std::string to_literal(const IntSet& a) {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out << ",";
    out << a.elements()[i];
  }
  return out.str();
}

std::vector<IntSet> read_set_lines(std::istream& in) {
  std::vector<IntSet> out;
  std::string line;
  while (std::getline(in, line)) {
    bool blank = true;
    for (char ch : line) {
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    }
    if (blank) continue;
    out.push_back(parse_set_literal(line));
  }
  return out;
}

}  // namespace sumrace
