#include "sumrace/structure.hpp"

#include <algorithm>
#include <sstream>

namespace sumrace {

namespace {

struct Decomposition {
  Elem b = 0;
  Elem c = 0;
  std::vector<Elem> low;
  std::vector<Elem> high;

  bool operator==(const Decomposition&) const = default;
};

// Longest maximal run of consecutive integers becomes the middle part
// (leftmost on ties); everything below it is A1, everything above maps to A2.
Decomposition decompose(const IntSet& fold, Elem hn) {
  const auto& el = fold.elements();
  std::size_t best_lo = 0, best_hi = 0;
  Elem best_len = 1;
  std::size_t run_lo = 0;
  for (std::size_t i = 1; i <= el.size(); ++i) {
    if (i == el.size() || el[i] != el[i - 1] + 1) {
      const Elem len = el[i - 1] - el[run_lo] + 1;
      if (len > best_len) {
        best_len = len;
        best_lo = run_lo;
        best_hi = i - 1;
      }
      run_lo = i;
    }
  }
  Decomposition d;
  d.b = el[best_lo];
  d.c = hn - el[best_hi];
  d.low.assign(el.begin(), el.begin() + static_cast<std::ptrdiff_t>(best_lo));
  for (std::size_t i = el.size(); i-- > best_hi + 1;) d.high.push_back(hn - el[i]);
  return d;
}

}  // namespace

EventualStructure eventual_structure(const IntSet& a, const Budget& budget) {
  if (a.size() < 2) {
    throw PreconditionError("eventual_structure: |A| >= 2 required");
  }
  if (a.min() != 0 || a.difference_gcd() != 1) {
    throw PreconditionError(
        "eventual_structure: set must be normalized (min 0, gcd 1), got " +
        to_literal(a));
  }
  const Elem n = a.max();
  const Elem cap = std::max<Elem>(8, checked_mul(n, n - 1));

  FoldCache cache(budget);
  std::vector<std::uint64_t> sizes;
  Decomposition cur = decompose(cache.fold(a, 1), n);
  sizes.push_back(a.size());
  for (Elem h = 1; h <= cap; ++h) {
    const IntSet& next_fold = cache.fold(a, h + 1);
    Decomposition next = decompose(next_fold, checked_mul(h + 1, n));
    sizes.push_back(next_fold.size());
    const bool middle_wide_enough = cur.b + n <= checked_mul(h, n) - cur.c + 1;
    if (middle_wide_enough && cur == next) {
      EventualStructure es{a,
                           n,
                           h,
                           cur.b,
                           cur.c,
                           cur.low,
                           cur.high,
                           cur.b - static_cast<Elem>(cur.low.size()) + cur.c -
                               static_cast<Elem>(cur.high.size()),
                           cur.b + cur.c};
      if (es.delta < 0 || es.delta > n + 1) {
        // Lemma range; a violation here means the detection is broken.
        throw Error("eventual_structure: delta " + std::to_string(es.delta) +
                    " outside [0, N+1] for " + to_literal(a));
      }
      return es;
    }
    cur = std::move(next);
  }

  std::ostringstream diag;
  diag << "no stable decomposition for " << to_literal(a) << " within h <= "
       << cap << "; size profile:";
  for (std::size_t i = 0; i < sizes.size() && i < 12; ++i) diag << " " << sizes[i];
  if (sizes.size() > 12) diag << " ... " << sizes.back();
  throw StabilizationNotFoundError(diag.str());
}

mpz_class predicted_size(const EventualStructure& es, Elem h) {
  if (h < es.h0) {
    throw PreconditionError("predicted_size: h " + std::to_string(h) +
                            " below onset h0 " + std::to_string(es.h0));
  }
  return mpz_class(h) * es.n + 1 - es.delta;
}

bool verify_structure(const IntSet& a, const EventualStructure& es, Elem h,
                      const Budget& budget) {
  if (h < es.h0) {
    throw PreconditionError("verify_structure: h below onset h0");
  }
  const Elem hn = checked_mul(h, es.n);
  std::vector<Elem> expected = es.low_fringe;
  for (Elem v = es.b; v <= hn - es.c; ++v) expected.push_back(v);
  for (std::size_t i = es.high_fringe.size(); i-- > 0;) {
    expected.push_back(hn - es.high_fringe[i]);
  }
  for (std::size_t i = 1; i < expected.size(); ++i) {
    if (expected[i - 1] >= expected[i]) return false;  // inconsistent es
  }
  const IntSet actual = hfold(a, h, budget);
  if (actual.elements() != expected) return false;
  return predicted_size(es, h) == static_cast<unsigned long>(actual.size());
}

}  // namespace sumrace
