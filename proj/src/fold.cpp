#include "sumrace/fold.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <utility>

namespace sumrace {

namespace {

// Bit vector over [0, bits); one padding word keeps or_shifted branch-free.
class DenseBits {
 public:
  explicit DenseBits(std::int64_t bits)
      : bits_(bits), words_(static_cast<std::size_t>((bits + 63) / 64 + 1), 0) {}

  void set(std::int64_t i) {
    words_[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
  }

  // this |= src << shift
  void or_shifted(const DenseBits& src, std::int64_t shift) {
    const std::size_t word_shift = static_cast<std::size_t>(shift >> 6);
    const int bit_shift = static_cast<int>(shift & 63);
    const std::size_t n = static_cast<std::size_t>((src.bits_ + 63) / 64);
    if (bit_shift == 0) {
      for (std::size_t i = 0; i < n; ++i) words_[i + word_shift] |= src.words_[i];
    } else {
      std::uint64_t carry = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t v = src.words_[i];
        words_[i + word_shift] |= (v << bit_shift) | carry;
        carry = v >> (64 - bit_shift);
      }
      words_[n + word_shift] |= carry;
    }
  }

  std::uint64_t popcount() const {
    std::uint64_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
  }

  // Appends base + position of every set bit.
  void extract(std::vector<Elem>& out, Elem base) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const int b = std::countr_zero(w);
        out.push_back(base + static_cast<Elem>(i * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
  }

 private:
  std::int64_t bits_;
  std::vector<std::uint64_t> words_;
};

DenseBits to_bits(const IntSet& a) {
  DenseBits bits(a.diameter() + 1);
  const Elem lo = a.min();
  for (Elem x : a.elements()) bits.set(x - lo);
  return bits;
}

IntSet extract_set(const DenseBits& bits, Elem base) {
  std::vector<Elem> out;
  bits.extract(out, base);
  return IntSet::from_sorted(std::move(out));
}

// Sorted merge of (small + x) for every x in big_offsets, capped.
std::vector<Elem> sparse_accumulate(const std::vector<Elem>& shifts,
                                    const std::vector<Elem>& base,
                                    std::int64_t cap) {
  std::vector<Elem> acc;
  std::vector<Elem> next;
  for (Elem s : shifts) {
    next.clear();
    next.reserve(acc.size() + base.size());
    std::size_t i = 0, j = 0;
    while (i < acc.size() || j < base.size()) {
      Elem candidate;
      if (j == base.size() || (i < acc.size() && acc[i] <= base[j] + s)) {
        candidate = acc[i++];
        if (j < base.size() && candidate == base[j] + s) ++j;
      } else {
        candidate = base[j++] + s;
      }
      next.push_back(candidate);
    }
    if (static_cast<std::int64_t>(next.size()) > cap) {
      throw BudgetExceededError(
          "sparse sumset exceeds element cap " + std::to_string(cap));
    }
    acc.swap(next);
  }
  return acc;
}

void check_sum_range(const IntSet& a, const IntSet& b) {
  // Sums are monotone in both arguments; the extremes cover everything.
  checked_add(a.min(), b.min());
  checked_add(a.max(), b.max());
}

IntSet sumset_dense(const IntSet& a, const IntSet& b) {
  const IntSet& few = a.size() <= b.size() ? a : b;
  const IntSet& many = a.size() <= b.size() ? b : a;
  const DenseBits src = to_bits(many);
  DenseBits acc(a.diameter() + b.diameter() + 1);
  const Elem few_lo = few.min();
  for (Elem x : few.elements()) acc.or_shifted(src, x - few_lo);
  return extract_set(acc, a.min() + b.min());
}

IntSet sumset_sparse(const IntSet& a, const IntSet& b, std::int64_t cap) {
  const IntSet& few = a.size() <= b.size() ? a : b;
  const IntSet& many = a.size() <= b.size() ? b : a;
  std::vector<Elem> shifts = few.elements();
  return IntSet::from_sorted(sparse_accumulate(shifts, many.elements(), cap));
}

// Shared driver: runs the fold chain, reporting each fold's size and, when
// `materialize` is set, the final fold's elements.
struct FoldRun {
  std::vector<std::uint64_t> sizes;
  std::vector<Elem> final_elements;
  bool complete = false;
};

FoldRun run_folds(const IntSet& a, Elem h_max, const Budget& budget,
                  bool materialize, bool throw_on_budget) {
  if (h_max < 1) throw PreconditionError("fold count must be >= 1");
  FoldRun run;

  const bool dense_ok = [&] {
    // Bits needed at the largest fold, plus the value-range check.
    if (a.diameter() > 0 &&
        a.diameter() > (budget.dense_bits - 1) / h_max) {
      return false;
    }
    return true;
  }();

  try {
    checked_mul(a.min(), h_max);
    checked_mul(a.max(), h_max);

    if (dense_ok) {
      const Elem lo = a.min();
      std::vector<Elem> offsets;
      offsets.reserve(a.size());
      for (Elem x : a.elements()) offsets.push_back(x - lo);

      DenseBits cur = to_bits(a);
      run.sizes.push_back(static_cast<std::uint64_t>(a.size()));
      for (Elem k = 2; k <= h_max; ++k) {
        DenseBits next(a.diameter() * k + 1);
        for (Elem off : offsets) next.or_shifted(cur, off);
        cur = std::move(next);
        run.sizes.push_back(cur.popcount());
      }
      if (materialize) cur.extract(run.final_elements, a.min() * h_max);
      run.complete = true;
      return run;
    }

    // Sparse: merge |A| translated copies per fold, capped per intermediate.
    if (static_cast<std::int64_t>(a.size()) > budget.sparse_max_elems) {
      throw BudgetExceededError("base set exceeds sparse element cap");
    }
    std::vector<Elem> cur = a.elements();
    run.sizes.push_back(static_cast<std::uint64_t>(cur.size()));
    for (Elem k = 2; k <= h_max; ++k) {
      cur = sparse_accumulate(a.elements(), cur, budget.sparse_max_elems);
      run.sizes.push_back(static_cast<std::uint64_t>(cur.size()));
    }
    if (materialize) run.final_elements = std::move(cur);
    run.complete = true;
    return run;
  } catch (const BudgetExceededError&) {
    if (throw_on_budget) {
      throw BudgetExceededError(
          "fold of span " + std::to_string(a.diameter()) + " x h " +
          std::to_string(h_max) + " exceeds budget (dense " +
          std::to_string(budget.dense_bits) + " bits, sparse " +
          std::to_string(budget.sparse_max_elems) + " elements)");
    }
    return run;
  }
}

}  // namespace

IntSet sumset(const IntSet& a, const IntSet& b, const Budget& budget) {
  check_sum_range(a, b);
  const Elem bits = a.diameter() + b.diameter() + 1;  // spans already fit
  if (bits <= budget.dense_bits) return sumset_dense(a, b);
  return sumset_sparse(a, b, budget.sparse_max_elems);
}

IntSet hfold(const IntSet& a, Elem h, const Budget& budget) {
  if (h == 1) return a;
  FoldRun run = run_folds(a, h, budget, /*materialize=*/true,
                          /*throw_on_budget=*/true);
  return IntSet::from_sorted(std::move(run.final_elements));
}

std::vector<std::uint64_t> hfold_sizes(const IntSet& a, Elem h_max,
                                       const Budget& budget) {
  return run_folds(a, h_max, budget, false, true).sizes;
}

std::vector<std::uint64_t> hfold_sizes_upto(const IntSet& a, Elem h_max,
                                            const Budget& budget) {
  return run_folds(a, h_max, budget, false, false).sizes;
}

GrowthProfile growth_profile(const IntSet& a, Elem h_max, const Budget& budget) {
  return GrowthProfile{a, hfold_sizes(a, h_max, budget)};
}

const IntSet& FoldCache::fold(const IntSet& base, Elem h) {
  if (h < 1) throw PreconditionError("fold count must be >= 1");
  auto [it, inserted] = folds_.try_emplace(base);
  std::deque<IntSet>& chain = it->second;
  if (chain.empty()) chain.push_back(base);
  while (static_cast<Elem>(chain.size()) < h) {
    chain.push_back(sumset(chain.back(), base, budget_));
  }
  return chain[static_cast<std::size_t>(h - 1)];
}

}  // namespace sumrace
