#ifndef SUMRACE_BOXING_HPP
#define SUMRACE_BOXING_HPP

#include <gmpxx.h>

#include "sumrace/fold.hpp"
#include "sumrace/intset.hpp"
#include "sumrace/structure.hpp"

namespace sumrace {

/// Symbolic translate union U_{j in index} (j*tau + base). Keeping the triple
/// instead of the materialized set lets certificates record deep constructions
/// compactly.
struct BoxedSet {
  IntSet base;
  IntSet index;
  Elem tau;

  /// Requires tau > max(base) (translates stay disjoint) and min(index) = 0.
  BoxedSet(IntSet base_set, IntSet index_set, Elem spacing);
};

/// The exact union; |result| = |index| * |base|.
IntSet materialize(const BoxedSet& bs, const Budget& budget = {});

/// Product law |hA'| = |hI| * |hA|, valid for h * max(base) < tau.
/// Throws ValidityError outside that hypothesis.
mpz_class small_h_size(const BoxedSet& bs, Elem h, const Budget& budget = {});

struct LinearLaw {
  mpz_class size;             // |hA'| = h((r-1)tau + N) + 1 - delta
  mpz_class interval_length;  // a run of at least this length is guaranteed
};

/// Eventual linear law for interval-indexed unions U_{j=0}^{r-1}(j*tau + A).
/// Valid for tau >= gamma and h >= max(h0, ceil((gamma + tau - 1)/N));
/// throws ValidityError otherwise.
LinearLaw large_h_size(const EventualStructure& es, Elem r, Elem tau, Elem h);

/// {0, 1, 2, 2S} for S >= 3.
IntSet index_set_I(Elem s);

/// {0, 1, 2S-1, 2S} for S >= 3.
IntSet index_set_J(Elem s);

/// |h I(S)|: (h+1)^2 for h < S, else S^2 + 2S(h - S + 1).
mpz_class card_hI(Elem s, Elem h);

/// |h J(S)| = (h+1)^2, proven only for h <= 2S-2; ValidityError beyond.
mpz_class card_hJ(Elem s, Elem h);

}  // namespace sumrace

#endif  // SUMRACE_BOXING_HPP
