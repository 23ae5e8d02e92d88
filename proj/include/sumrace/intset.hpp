#ifndef SUMRACE_INTSET_HPP
#define SUMRACE_INTSET_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sumrace/errors.hpp"

namespace sumrace {

/// Set elements are checked 64-bit integers; every arithmetic step that could
/// leave the range throws OverflowError instead of wrapping.
using Elem = std::int64_t;

Elem checked_add(Elem a, Elem b);
Elem checked_mul(Elem a, Elem b);

/// A nonempty finite set of integers, stored as a strictly increasing vector.
class IntSet {
 public:
  /// Sorts and deduplicates; throws EmptySetError on empty input.
  static IntSet from_elements(std::vector<Elem> values);

  /// Wraps a vector that must already be strictly increasing.
  static IntSet from_sorted(std::vector<Elem> sorted);

  const std::vector<Elem>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  Elem min() const { return elems_.front(); }
  Elem max() const { return elems_.back(); }
  Elem diameter() const { return elems_.back() - elems_.front(); }

  /// gcd of the differences a - min(A); 0 for a singleton.
  Elem difference_gcd() const;

  bool contains(Elem x) const;

  IntSet translated(Elem t) const;
  /// Element-wise multiplication by c != 0.
  IntSet scaled(Elem c) const;

  friend bool operator==(const IntSet&, const IntSet&) = default;
  friend auto operator<=>(const IntSet&, const IntSet&) = default;

 private:
  explicit IntSet(std::vector<Elem> elems) : elems_(std::move(elems)) {}
  std::vector<Elem> elems_;
};

struct Normalized {
  IntSet set;
  Elem shift;
  Elem scale;
};

/// Translate and rescale so that min = 0 and the gcd of the elements is 1:
/// input = scale * set + shift element-wise. A singleton maps to {0} with
/// scale 1.
Normalized normalize(const IntSet& a);

/// {max(A) - a : a in A}; an involution.
IntSet reflect(const IntSet& a);

/// Parses "0, 1, 3" (comma-separated integers, optional whitespace).
IntSet parse_set_literal(const std::string& text);

std::string to_literal(const IntSet& a);

/// One set literal per line; blank lines are skipped.
std::vector<IntSet> read_set_lines(std::istream& in);

}  // namespace sumrace

#endif  // SUMRACE_INTSET_HPP
