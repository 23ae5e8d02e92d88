#include "sumrace/race.hpp"

#include <algorithm>
#include <utility>

#include "sumrace/structure.hpp"

namespace sumrace {

namespace {

constexpr std::int64_t kExplicitElementCap = std::int64_t{1} << 16;

int sign_of(const mpz_class& diff) {
  return diff > 0 ? 1 : (diff < 0 ? -1 : 0);
}

void validate_state(const RaceState& st) {
  if (st.a.min() != 0 || st.b.min() != 0) {
    throw InvalidStateError("race state: sets must contain 0 as minimum");
  }
  if (st.a.size() != st.b.size()) {
    throw InvalidStateError("race state: |A| != |B|");
  }
  if (st.a.difference_gcd() != 1 || st.b.difference_gcd() != 1) {
    throw InvalidStateError("race state: sets must have gcd 1");
  }
  if (st.mode == Mode::equal_diameter && st.a.max() != st.b.max()) {
    throw InvalidStateError("race state: diameters differ in equal-diameter mode");
  }
  const std::size_t m = st.checkpoints.size();
  if (m == 0 || st.size_a.size() != m || st.size_b.size() != m) {
    throw InvalidStateError("race state: checkpoint bookkeeping out of sync");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0 && st.checkpoints[i - 1] >= st.checkpoints[i]) {
      throw InvalidStateError("race state: checkpoints not increasing");
    }
    const int want = (i % 2 == 0) ? 1 : -1;  // 1-based odd index leads
    if (sign_of(st.size_a[i] - st.size_b[i]) != want) {
      throw InvalidStateError("race state: sign pattern broken at checkpoint " +
                              std::to_string(i + 1));
    }
  }
}

// k-element subsets of pool in lexicographic order, merged with `required`.
std::vector<IntSet> candidate_sets(Elem n, Elem k, bool equal_diameter) {
  std::vector<Elem> required{0};
  std::vector<Elem> pool;
  if (equal_diameter) {
    required.push_back(n);
    for (Elem v = 1; v < n; ++v) pool.push_back(v);
  } else {
    for (Elem v = 1; v <= n; ++v) pool.push_back(v);
  }
  const auto t = static_cast<std::size_t>(k) - required.size();
  std::vector<IntSet> out;
  if (t > pool.size()) return out;

  std::vector<std::size_t> idx(t);
  for (std::size_t i = 0; i < t; ++i) idx[i] = i;
  while (true) {
    std::vector<Elem> elems = required;
    for (std::size_t i : idx) elems.push_back(pool[i]);
    IntSet set = IntSet::from_elements(std::move(elems));
    if (set.difference_gcd() == 1) out.push_back(std::move(set));

    // advance the combination
    std::size_t i = t;
    while (i-- > 0) {
      if (idx[i] != i + pool.size() - t) {
        ++idx[i];
        for (std::size_t j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
    if (t == 0) return out;
  }
}

}  // namespace

std::string to_string(Mode mode) {
  return mode == Mode::equal_diameter ? "equal-diam" : "free-diam";
}

Mode mode_from_string(const std::string& text) {
  if (text == "equal-diam") return Mode::equal_diameter;
  if (text == "free-diam") return Mode::free_diameter;
  throw ParseError("unknown mode \"" + text + "\"");
}

SignProfile sign_profile(const IntSet& a, const IntSet& b, Elem h_max,
                         const Budget& budget) {
  if (h_max < 1) throw PreconditionError("sign_profile: h_max >= 1 required");
  const auto sizes_a = hfold_sizes(a, h_max, budget);
  const auto sizes_b = hfold_sizes(b, h_max, budget);
  SignProfile profile;
  profile.alternations = 0;
  int prev_nonzero = 0;
  for (Elem h = 1; h <= h_max; ++h) {
    const std::uint64_t sa = sizes_a[static_cast<std::size_t>(h - 1)];
    const std::uint64_t sb = sizes_b[static_cast<std::size_t>(h - 1)];
    const int sign = sa > sb ? 1 : (sa < sb ? -1 : 0);
    profile.rows.push_back(SignRow{h, sa, sb, sign});
    if (sign != 0) {
      if (prev_nonzero != 0 && sign != prev_nonzero) ++profile.alternations;
      prev_nonzero = sign;
    }
  }
  return profile;
}

BasePair base_pair_search(bool equal_diameter, Elem n_max, Elem h_max) {
  if (n_max < 3) throw PreconditionError("base_pair_search: n_max >= 3 required");
  if (h_max < 1) throw PreconditionError("base_pair_search: h_max >= 1 required");
  for (Elem n = 3; n <= n_max; ++n) {
    const Elem h_cap = std::min(h_max, 3 * n);
    for (Elem k = 3; k <= n + 1; ++k) {
      const std::vector<IntSet> cands = candidate_sets(n, k, equal_diameter);
      std::vector<std::vector<std::uint64_t>> profiles(cands.size());
      auto profile = [&](std::size_t i) -> const std::vector<std::uint64_t>& {
        if (profiles[i].empty()) profiles[i] = hfold_sizes(cands[i], h_cap);
        return profiles[i];
      };
      for (std::size_t ia = 0; ia < cands.size(); ++ia) {
        for (std::size_t ib = 0; ib < cands.size(); ++ib) {
          if (ia == ib) continue;
          const auto& pa = profile(ia);
          const auto& pb = profile(ib);
          for (Elem h = 1; h <= h_cap; ++h) {
            if (pa[static_cast<std::size_t>(h - 1)] >
                pb[static_cast<std::size_t>(h - 1)]) {
              return BasePair{cands[ia], cands[ib], h};
            }
          }
        }
      }
    }
  }
  throw NoBasePairError("no base pair up to diameter " + std::to_string(n_max));
}

BoxExpr leaf_expr(IntSet elements) {
  BoxExpr e;
  e.elements = std::move(elements);
  return e;
}

BoxExpr box_expr(BoxExpr base, IntSet index, Elem tau) {
  BoxExpr e;
  e.base = std::make_shared<const BoxExpr>(std::move(base));
  e.index = std::move(index);
  e.tau = tau;
  return e;
}

mpz_class box_count(const BoxExpr& e) {
  if (e.is_leaf()) {
    if (!e.elements) throw Error("box leaf without elements");
    return mpz_class(static_cast<unsigned long>(e.elements->size()));
  }
  return box_count(*e.base) * static_cast<unsigned long>(e.index->size());
}

mpz_class box_min(const BoxExpr& e) {
  if (e.is_leaf()) {
    if (!e.elements) throw Error("box leaf without elements");
    return mpz_class(static_cast<long>(e.elements->min()));
  }
  return box_min(*e.base) + mpz_class(static_cast<long>(e.index->min())) * e.tau;
}

mpz_class box_max(const BoxExpr& e) {
  if (e.is_leaf()) {
    if (!e.elements) throw Error("box leaf without elements");
    return mpz_class(static_cast<long>(e.elements->max()));
  }
  return box_max(*e.base) + mpz_class(static_cast<long>(e.index->max())) * e.tau;
}

std::optional<IntSet> box_materialize(const BoxExpr& e, std::int64_t cap) {
  if (box_count(e) > cap) return std::nullopt;
  if (e.is_leaf()) return e.elements;
  const auto inner = box_materialize(*e.base, cap);
  if (!inner) return std::nullopt;
  try {
    std::vector<Elem> out;
    for (Elem j : e.index->elements()) {
      const Elem offset = checked_mul(j, e.tau);
      for (Elem x : inner->elements()) out.push_back(checked_add(offset, x));
    }
    return IntSet::from_elements(std::move(out));
  } catch (const OverflowError&) {
    return std::nullopt;
  }
}

RaceState base_state(Mode mode, Elem n_max, const Budget& budget) {
  BasePair bp =
      base_pair_search(mode == Mode::equal_diameter, n_max, 3 * n_max);
  StepRecord rec;
  rec.kind = StepRecord::Kind::base;
  rec.h_new = bp.h1;
  rec.n = std::max(bp.a.max(), bp.b.max());
  const mpz_class sa(hfold_sizes(bp.a, bp.h1, budget).back());
  const mpz_class sb(hfold_sizes(bp.b, bp.h1, budget).back());
  RaceState st{mode,
               bp.a,
               bp.b,
               leaf_expr(bp.a),
               leaf_expr(bp.b),
               {bp.h1},
               {sa},
               {sb},
               {rec}};
  validate_state(st);
  return st;
}

RaceState extend_equal_diameter(const RaceState& state, const Budget& budget) {
  validate_state(state);
  if (state.mode != Mode::equal_diameter) {
    throw InvalidStateError("extend_equal_diameter: state is free-diameter");
  }
  const Elem m = static_cast<Elem>(state.checkpoints.size());
  const Elem h_m = state.checkpoints.back();
  const bool odd = (m % 2 == 1);

  const EventualStructure es_a = eventual_structure(state.a, budget);
  const EventualStructure es_b = eventual_structure(state.b, budget);
  const Elem n = state.a.max();
  // Sizes obey |hA| = hN - (delta - 1); these constants drive the crossing.
  const mpz_class coef_i = odd ? es_a.delta - 1 : es_b.delta - 1;
  const mpz_class coef_j = odd ? es_b.delta - 1 : es_a.delta - 1;

  const Elem h_floor = std::max({h_m, es_a.h0, es_b.h0, Elem{2}});
  Elem scale = h_floor + 1;
  while (true) {
    const mpz_class hm1(scale - 1);
    const mpz_class cubic = 2 * mpz_class(n) * hm1 * hm1 * hm1 -
                            coef_j * (mpz_class(scale) * (4 * scale - 4) + 1) +
                            coef_i * (mpz_class(scale) * (3 * scale - 2));
    if (cubic > 0) break;
    if (++scale > h_floor + 1000000) {
      throw SearchExhaustedError("no admissible H found; cubic never positive");
    }
  }

  const Elem tau = checked_add(checked_mul(checked_mul(2, scale), n), 1);
  const IntSet idx_i = index_set_I(scale);
  const IntSet idx_j = index_set_J(scale);
  const IntSet& idx_a = odd ? idx_i : idx_j;
  const IntSet& idx_b = odd ? idx_j : idx_i;

  const IntSet new_a = materialize(BoxedSet(state.a, idx_a, tau), budget);
  const IntSet new_b = materialize(BoxedSet(state.b, idx_b, tau), budget);
  const Elem h_new = 2 * scale - 2;

  RaceState next{state.mode,
                 new_a,
                 new_b,
                 box_expr(state.recipe_a, idx_a, tau),
                 box_expr(state.recipe_b, idx_b, tau),
                 state.checkpoints,
                 state.size_a,
                 state.size_b,
                 state.trace};

  // Existing checkpoints sit below H, where |h I| = |h J| = (h+1)^2.
  for (std::size_t i = 0; i < next.checkpoints.size(); ++i) {
    const mpz_class mult = mpz_class(next.checkpoints[i] + 1) *
                           mpz_class(next.checkpoints[i] + 1);
    next.size_a[i] *= mult;
    next.size_b[i] *= mult;
  }

  const mpz_class size_new_a =
      (odd ? card_hI(scale, h_new) : card_hJ(scale, h_new)) *
      predicted_size(es_a, h_new);
  const mpz_class size_new_b =
      (odd ? card_hJ(scale, h_new) : card_hI(scale, h_new)) *
      predicted_size(es_b, h_new);
  const int want = odd ? -1 : 1;
  if (sign_of(size_new_a - size_new_b) != want) {
    throw SearchExhaustedError(
        "equal-diameter step did not flip the sign at 2H-2; bug");
  }
  next.checkpoints.push_back(h_new);
  next.size_a.push_back(size_new_a);
  next.size_b.push_back(size_new_b);

  StepRecord rec;
  rec.kind = StepRecord::Kind::equal_diameter_extend;
  rec.h_new = h_new;
  rec.n = n;
  rec.scale_h = scale;
  rec.tau = tau;
  rec.index_i_to_a = odd;
  rec.delta_a = es_a.delta;
  rec.delta_b = es_b.delta;
  rec.gamma_a = es_a.gamma;
  rec.gamma_b = es_b.gamma;
  rec.h0_a = es_a.h0;
  rec.h0_b = es_b.h0;
  next.trace.push_back(rec);

  validate_state(next);
  return next;
}

RaceState extend_free_diameter(const RaceState& state, const Budget& budget) {
  validate_state(state);
  if (state.mode != Mode::free_diameter) {
    throw InvalidStateError("extend_free_diameter: state is equal-diameter");
  }
  const Elem m = static_cast<Elem>(state.checkpoints.size());
  const Elem h_m = state.checkpoints.back();
  const bool odd = (m % 2 == 1);

  const EventualStructure es_a = eventual_structure(state.a, budget);
  const EventualStructure es_b = eventual_structure(state.b, budget);
  const Elem n = std::max(state.a.max(), state.b.max());

  const Elem lo = checked_add(
      std::max({checked_mul(h_m, n), es_a.gamma, es_b.gamma, n}), 1);
  const Elem hi = checked_add(lo, n);
  const Elem alpha = odd ? lo : hi;  // the loser-to-be keeps the smaller spacing
  const Elem beta = odd ? hi : lo;
  const IntSet pair_index = IntSet::from_sorted({0, 1});

  const IntSet new_a = materialize(BoxedSet(state.a, pair_index, alpha), budget);
  const IntSet new_b = materialize(BoxedSet(state.b, pair_index, beta), budget);

  // Scan for the first flip past h_m; the linear law bounds how far it can be.
  auto onset = [](const EventualStructure& es, Elem tau) {
    const Elem num = checked_add(es.gamma, tau - 1);
    return std::max(es.h0, (num + es.n - 1) / es.n);
  };
  const Elem scan_cap =
      checked_add(std::max({checked_add(h_m, 1), onset(es_a, alpha),
                            onset(es_b, beta)}),
                  n + 16);
  const auto brute_a = hfold_sizes_upto(new_a, scan_cap, budget);
  const auto brute_b = hfold_sizes_upto(new_b, scan_cap, budget);

  auto evaluate = [&](Elem h, const std::vector<std::uint64_t>& brute,
                      const EventualStructure& es,
                      Elem tau) -> std::optional<mpz_class> {
    std::optional<mpz_class> analytic;
    try {
      analytic = large_h_size(es, 2, tau, h).size;
    } catch (const ValidityError&) {
    }
    if (h <= static_cast<Elem>(brute.size())) {
      const mpz_class v(brute[static_cast<std::size_t>(h - 1)]);
      if (analytic && *analytic != v) {
        throw Error("linear law disagrees with brute force at h " +
                    std::to_string(h) + "; bug");
      }
      return v;
    }
    return analytic;
  };

  const int want = odd ? -1 : 1;
  Elem h_new = 0;
  mpz_class size_new_a, size_new_b;
  for (Elem h = h_m + 1; h <= scan_cap; ++h) {
    const auto sa = evaluate(h, brute_a, es_a, alpha);
    const auto sb = evaluate(h, brute_b, es_b, beta);
    if (!sa || !sb) continue;
    if (sign_of(*sa - *sb) == want) {
      h_new = h;
      size_new_a = *sa;
      size_new_b = *sb;
      break;
    }
  }
  if (h_new == 0) {
    throw SearchExhaustedError(
        "free-diameter step found no sign flip below h " +
        std::to_string(scan_cap) + "; bug");
  }

  RaceState next{state.mode,
                 new_a,
                 new_b,
                 box_expr(state.recipe_a, pair_index, alpha),
                 box_expr(state.recipe_b, pair_index, beta),
                 state.checkpoints,
                 state.size_a,
                 state.size_b,
                 state.trace};

  // |h [0,1]| = h + 1 multiplies every existing checkpoint (r = 2).
  for (std::size_t i = 0; i < next.checkpoints.size(); ++i) {
    const mpz_class mult(next.checkpoints[i] + 1);
    next.size_a[i] *= mult;
    next.size_b[i] *= mult;
  }
  next.checkpoints.push_back(h_new);
  next.size_a.push_back(size_new_a);
  next.size_b.push_back(size_new_b);

  StepRecord rec;
  rec.kind = StepRecord::Kind::free_diameter_extend;
  rec.h_new = h_new;
  rec.n = n;
  rec.alpha = alpha;
  rec.beta = beta;
  rec.r = 2;
  rec.delta_a = es_a.delta;
  rec.delta_b = es_b.delta;
  rec.gamma_a = es_a.gamma;
  rec.gamma_b = es_b.gamma;
  rec.h0_a = es_a.h0;
  rec.h0_b = es_b.h0;
  next.trace.push_back(rec);

  validate_state(next);
  return next;
}

RaceCertificate make_certificate(const RaceState& state) {
  RaceCertificate cert;
  cert.version = 1;
  cert.mode = state.mode;
  cert.m = static_cast<Elem>(state.checkpoints.size());
  cert.a = state.recipe_a;
  cert.b = state.recipe_b;
  if (!cert.a.is_leaf() &&
      static_cast<std::int64_t>(state.a.size()) <= kExplicitElementCap) {
    cert.a.elements = state.a;
    cert.b.elements = state.b;
  }
  for (std::size_t i = 0; i < state.checkpoints.size(); ++i) {
    cert.checkpoints.push_back(CheckpointClaim{
        state.checkpoints[i], state.size_a[i], state.size_b[i],
        sign_of(state.size_a[i] - state.size_b[i])});
  }
  cert.trace = state.trace;
  return cert;
}

RaceCertificate build_race(Elem m, Mode mode, const Budget& budget) {
  if (m < 1) throw PreconditionError("build_race: m >= 1 required");
  RaceState state = base_state(mode, 12, budget);
  std::optional<RaceFailure> failure;
  while (static_cast<Elem>(state.checkpoints.size()) < m) {
    try {
      state = mode == Mode::equal_diameter
                  ? extend_equal_diameter(state, budget)
                  : extend_free_diameter(state, budget);
    } catch (const Error& err) {
      failure = RaceFailure{static_cast<Elem>(state.checkpoints.size()) + 1,
                            err.what()};
      break;
    }
  }
  RaceCertificate cert = make_certificate(state);
  cert.failure = failure;
  return cert;
}

}  // namespace sumrace
