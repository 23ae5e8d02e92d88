#ifndef SUMRACE_STRUCTURE_HPP
#define SUMRACE_STRUCTURE_HPP

#include <gmpxx.h>

#include <vector>

#include "sumrace/fold.hpp"
#include "sumrace/intset.hpp"

namespace sumrace {

/// Eventual decomposition of the h-folds of a normalized set A with max N:
/// for every h >= h0,
///   hA = A1 u [b, hN - c] u (hN - A2)
/// with fixed fringes A1 in [0, b-2] and A2 in [0, c-2], so that
/// |hA| = hN + 1 - delta with delta = b - |A1| + c - |A2| and gamma = b + c.
struct EventualStructure {
  IntSet base;
  Elem n;   // max(base)
  Elem h0;
  Elem b;
  Elem c;
  std::vector<Elem> low_fringe;   // A1, possibly empty
  std::vector<Elem> high_fringe;  // A2, possibly empty
  Elem delta;
  Elem gamma;
};

/// Detects the decomposition by scanning h upward: at each h the longest
/// gap-free interval of hA is taken as the middle part; the scan accepts the
/// first h whose middle spans at least N+1 values (b + N <= hN - c + 1) and
/// whose fringe data repeats identically at h+1.
///
/// Requires min(A) = 0, gcd(A) = 1, |A| >= 2. Throws
/// StabilizationNotFoundError past the scan cap max(8, N(N-1)).
EventualStructure eventual_structure(const IntSet& a, const Budget& budget = {});

/// h*N + 1 - delta for h >= h0.
mpz_class predicted_size(const EventualStructure& es, Elem h);

/// True iff hA equals the predicted three-part decomposition set-exactly and
/// |hA| matches the linear size law.
bool verify_structure(const IntSet& a, const EventualStructure& es, Elem h,
                      const Budget& budget = {});

}  // namespace sumrace

#endif  // SUMRACE_STRUCTURE_HPP
