#include "sumrace/boxing.hpp"

#include <string>
#include <utility>

namespace sumrace {

BoxedSet::BoxedSet(IntSet base_set, IntSet index_set, Elem spacing)
    : base(std::move(base_set)), index(std::move(index_set)), tau(spacing) {
  if (tau <= base.max()) {
    throw ValidityError("boxed set requires tau > max(base); tau " +
                        std::to_string(tau) + ", max " +
                        std::to_string(base.max()));
  }
  if (index.min() != 0) {
    throw ValidityError("boxed set requires min(index) = 0");
  }
}

IntSet materialize(const BoxedSet& bs, const Budget& budget) {
  const auto count = static_cast<std::int64_t>(bs.index.size() * bs.base.size());
  if (count > budget.sparse_max_elems) {
    throw BudgetExceededError("materialized box would have " +
                              std::to_string(count) + " elements");
  }
  std::vector<Elem> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Elem j : bs.index.elements()) {
    const Elem offset = checked_mul(j, bs.tau);
    checked_add(offset, bs.base.max());
    for (Elem x : bs.base.elements()) out.push_back(offset + x);
  }
  return IntSet::from_sorted(std::move(out));
}

mpz_class small_h_size(const BoxedSet& bs, Elem h, const Budget& budget) {
  if (h < 1) throw PreconditionError("small_h_size: h >= 1 required");
  if (bs.base.max() > 0 && checked_mul(h, bs.base.max()) >= bs.tau) {
    throw ValidityError("product law requires h*max(base) < tau; h " +
                        std::to_string(h) + ", max " +
                        std::to_string(bs.base.max()) + ", tau " +
                        std::to_string(bs.tau));
  }
  const mpz_class index_size(hfold_sizes(bs.index, h, budget).back());
  const mpz_class base_size(hfold_sizes(bs.base, h, budget).back());
  return index_size * base_size;
}

LinearLaw large_h_size(const EventualStructure& es, Elem r, Elem tau, Elem h) {
  if (r < 2) throw ValidityError("large_h_size: r >= 2 required");
  if (tau < 1) throw ValidityError("large_h_size: tau >= 1 required");
  if (tau < es.gamma) {
    throw ValidityError("large_h_size: tau " + std::to_string(tau) +
                        " below gamma " + std::to_string(es.gamma));
  }
  // ceil((gamma + tau - 1) / N); all quantities nonnegative.
  const Elem num = checked_add(es.gamma, tau - 1);
  const Elem onset = std::max(es.h0, (num + es.n - 1) / es.n);
  if (h < onset) {
    throw ValidityError("large_h_size: h " + std::to_string(h) +
                        " below onset " + std::to_string(onset));
  }
  const mpz_class slope = mpz_class(r - 1) * tau + es.n;
  LinearLaw law;
  law.size = slope * h + 1 - es.delta;
  law.interval_length = slope * h - es.gamma + 1;
  return law;
}

IntSet index_set_I(Elem s) {
  if (s < 3) throw PreconditionError("index_set_I: parameter must be >= 3");
  return IntSet::from_sorted({0, 1, 2, checked_mul(2, s)});
}

IntSet index_set_J(Elem s) {
  if (s < 3) throw PreconditionError("index_set_J: parameter must be >= 3");
  const Elem top = checked_mul(2, s);
  return IntSet::from_sorted({0, 1, top - 1, top});
}

mpz_class card_hI(Elem s, Elem h) {
  if (s < 3 || h < 1) throw PreconditionError("card_hI: need s >= 3, h >= 1");
  if (h < s) {
    const mpz_class v(h + 1);
    return v * v;
  }
  const mpz_class ss(s);
  return ss * ss + 2 * ss * (h - s + 1);
}

mpz_class card_hJ(Elem s, Elem h) {
  if (s < 3 || h < 1) throw PreconditionError("card_hJ: need s >= 3, h >= 1");
  if (h >= 2 * s - 1) {
    throw ValidityError("card_hJ proven only for h <= 2s-2; got h " +
                        std::to_string(h));
  }
  const mpz_class v(h + 1);
  return v * v;
}

}  // namespace sumrace
