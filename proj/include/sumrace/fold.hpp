#ifndef SUMRACE_FOLD_HPP
#define SUMRACE_FOLD_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <vector>

#include "sumrace/intset.hpp"

namespace sumrace {

/// Resource caps for sumset computation. The dense bit-vector engine is used
/// whenever the result span fits in dense_bits; otherwise the sorted-merge
/// engine runs as long as no intermediate set exceeds sparse_max_elems.
struct Budget {
  std::int64_t dense_bits = std::int64_t{1} << 27;
  std::int64_t sparse_max_elems = std::int64_t{1} << 22;
};

/// {a + b : a in A, b in B}.
IntSet sumset(const IntSet& a, const IntSet& b, const Budget& budget = {});

/// All sums of exactly h elements of A (repetition allowed), h >= 1.
IntSet hfold(const IntSet& a, Elem h, const Budget& budget = {});

/// |hA| for h = 1..h_max, computed in one incremental pass.
std::vector<std::uint64_t> hfold_sizes(const IntSet& a, Elem h_max,
                                       const Budget& budget = {});

/// Like hfold_sizes but stops quietly at the first fold the budget cannot
/// cover; the result may be shorter than h_max.
std::vector<std::uint64_t> hfold_sizes_upto(const IntSet& a, Elem h_max,
                                            const Budget& budget = {});

struct GrowthProfile {
  IntSet base;
  std::vector<std::uint64_t> sizes;  // sizes[h-1] = |hA|
};

GrowthProfile growth_profile(const IntSet& a, Elem h_max,
                             const Budget& budget = {});

/// Incremental per-base fold store: fold(base, h) materializes 1A..hA once and
/// keeps them for later calls. Not synchronized; use one instance per thread.
class FoldCache {
 public:
  explicit FoldCache(Budget budget = {}) : budget_(budget) {}

  /// Reference stays valid for the cache's lifetime.
  const IntSet& fold(const IntSet& base, Elem h);

  const Budget& budget() const { return budget_; }

 private:
  Budget budget_;
  std::map<IntSet, std::deque<IntSet>> folds_;
};

}  // namespace sumrace

#endif  // SUMRACE_FOLD_HPP
