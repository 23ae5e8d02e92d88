#include "sumrace/verify.hpp"

#include <algorithm>
#include <map>

#include "sumrace/structure.hpp"

namespace sumrace {

namespace {

int sign_of(const mpz_class& diff) { return diff > 0 ? 1 : (diff < 0 ? -1 : 0); }

std::vector<const BoxExpr*> level_chain(const BoxExpr& e) {
  std::vector<const BoxExpr*> out;
  for (const BoxExpr* p = &e; p != nullptr; p = p->base.get()) out.push_back(p);
  std::reverse(out.begin(), out.end());  // leaf first
  return out;
}

bool is_interval_index(const IntSet& index) {
  return index.min() == 0 &&
         index.max() == static_cast<Elem>(index.size()) - 1;
}

// Memoizing context for the analytic descent.
struct Descent {
  const Budget& budget;
  ResourceUsage& usage;
  std::map<const BoxExpr*, std::optional<IntSet>> materialized;
  std::map<const BoxExpr*, std::optional<EventualStructure>> structures;

  const std::optional<IntSet>& set_of(const BoxExpr& e) {
    auto it = materialized.find(&e);
    if (it == materialized.end()) {
      it = materialized.emplace(&e, box_materialize(e, budget.sparse_max_elems))
               .first;
    }
    return it->second;
  }

  std::optional<mpz_class> brute(const IntSet& s, Elem h) {
    const auto sizes = hfold_sizes_upto(s, h, budget);
    usage.brute_folds += sizes.size();
    if (static_cast<Elem>(sizes.size()) < h) return std::nullopt;
    usage.peak_dense_bits = std::max<std::uint64_t>(
        usage.peak_dense_bits,
        static_cast<std::uint64_t>(s.diameter()) * static_cast<std::uint64_t>(h));
    return mpz_class(sizes.back());
  }

  const std::optional<EventualStructure>& structure_of(const BoxExpr& e) {
    auto it = structures.find(&e);
    if (it != structures.end()) return it->second;
    std::optional<EventualStructure> es;
    const auto& s = set_of(e);
    if (s && s->size() >= 2 && s->min() == 0 && s->difference_gcd() == 1) {
      try {
        es = eventual_structure(*s, budget);
      } catch (const Error&) {
      }
    }
    return structures.emplace(&e, std::move(es)).first->second;
  }

  // |h . expr|, by brute force on small nodes, the product law, the interval
  // linear law, or the node's own eventual structure; nullopt when no route
  // has its hypotheses within budget.
  std::optional<mpz_class> size_at(const BoxExpr& e, Elem h) {
    if (const auto& s = set_of(e)) {
      if (auto v = brute(*s, h)) return v;
    }
    if (!e.is_leaf()) {
      const mpz_class base_max = box_max(*e.base);
      if (base_max < e.tau && mpz_class(h) * base_max < e.tau) {
        if (auto inner = size_at(*e.base, h)) {
          if (auto idx = brute(*e.index, h)) return *inner * *idx;
        }
      }
      if (is_interval_index(*e.index) && e.index->size() >= 2) {
        if (const auto& es = structure_of(*e.base)) {
          try {
            return large_h_size(*es, static_cast<Elem>(e.index->size()), e.tau,
                                h)
                .size;
          } catch (const ValidityError&) {
          }
        }
      }
    }
    if (const auto& es = structure_of(e)) {
      if (h >= es->h0) return predicted_size(*es, h);
    }
    return std::nullopt;
  }
};

}  // namespace

VerificationReport verify_certificate(const RaceCertificate& cert,
                                      const Budget& budget) {
  VerificationReport rep;
  auto violate = [&rep](const std::string& msg) {
    rep.violations.push_back(msg);
  };

  // ---- claim-internal consistency ----
  const std::size_t m = cert.checkpoints.size();
  if (cert.m != static_cast<Elem>(m)) violate("m does not match checkpoint count");
  if (m == 0) violate("certificate has no checkpoints");
  for (std::size_t i = 0; i < m; ++i) {
    const auto& cp = cert.checkpoints[i];
    if (cp.h < 1) violate("checkpoint h < 1");
    if (i > 0 && cert.checkpoints[i - 1].h >= cp.h) {
      violate("checkpoints not strictly increasing");
    }
    if (cp.sign != 1 && cp.sign != -1) violate("checkpoint sign must be +-1");
    if (sign_of(cp.size_a - cp.size_b) != cp.sign) {
      violate("claimed sizes do not reproduce claimed sign at h " +
              std::to_string(cp.h));
    }
    const int want = (i % 2 == 0) ? 1 : -1;
    if (cp.sign != want) {
      violate("sign pattern is not alternating at checkpoint " +
              std::to_string(i + 1));
    }
  }

  // ---- trace / recipe congruence and step hypotheses ----
  const auto levels_a = level_chain(cert.a);
  const auto levels_b = level_chain(cert.b);
  bool shape_ok = true;
  if (cert.trace.size() != m) {
    violate("trace length does not match checkpoint count");
    shape_ok = false;
  }
  if (levels_a.size() != cert.trace.size() ||
      levels_b.size() != cert.trace.size()) {
    violate("recipe depth does not match trace");
    shape_ok = false;
  }
  if (shape_ok && !cert.trace.empty()) {
    if (cert.trace[0].kind != StepRecord::Kind::base) {
      violate("trace must start with a base record");
      shape_ok = false;
    }
    if (!levels_a[0]->is_leaf() || !levels_b[0]->is_leaf()) {
      violate("recipe must start with explicit leaf sets");
      shape_ok = false;
    }
  }
  if (shape_ok && !cert.trace.empty()) {
    for (std::size_t i = 0; i < cert.trace.size(); ++i) {
      if (cert.trace[i].h_new != cert.checkpoints[i].h) {
        violate("trace h_new disagrees with checkpoint " + std::to_string(i + 1));
      }
    }
    const IntSet& leaf_a = *levels_a[0]->elements;
    const IntSet& leaf_b = *levels_b[0]->elements;
    if (leaf_a.min() != 0 || leaf_b.min() != 0) violate("leaf sets must contain 0");
    if (leaf_a.difference_gcd() != 1 || leaf_b.difference_gcd() != 1) {
      violate("leaf sets must have gcd 1");
    }
    if (cert.trace[0].n != std::max(leaf_a.max(), leaf_b.max())) {
      violate("base record n mismatch");
    }

    for (std::size_t i = 1; i < cert.trace.size(); ++i) {
      const StepRecord& step = cert.trace[i];
      const BoxExpr& ea = *levels_a[i];
      const BoxExpr& eb = *levels_b[i];
      const std::string at = " at step " + std::to_string(i);
      const Elem h_prev = cert.checkpoints[i - 1].h;
      const mpz_class max_a_below = box_max(*levels_a[i - 1]);
      const mpz_class max_b_below = box_max(*levels_b[i - 1]);
      const mpz_class n_below =
          max_a_below > max_b_below ? max_a_below : max_b_below;
      if (n_below != step.n) violate("recorded n mismatch" + at);
      if (!ea.index || !eb.index) {
        violate("missing box index" + at);
        continue;
      }
      if (ea.index->min() != 0 || eb.index->min() != 0) {
        violate("box index must start at 0" + at);
      }
      if (mpz_class(ea.tau) <= max_a_below || mpz_class(eb.tau) <= max_b_below) {
        violate("box spacing must exceed max of its base" + at);
      }
      if (step.kind == StepRecord::Kind::equal_diameter_extend) {
        if (cert.mode != Mode::equal_diameter) violate("step kind vs mode" + at);
        const Elem scale = step.scale_h;
        if (scale < 3) {
          violate("H must be >= 3" + at);
          continue;
        }
        const IntSet want_a = step.index_i_to_a ? index_set_I(scale)
                                                : index_set_J(scale);
        const IntSet want_b = step.index_i_to_a ? index_set_J(scale)
                                                : index_set_I(scale);
        if (*ea.index != want_a || *eb.index != want_b) {
          violate("index sets do not match the recorded step" + at);
        }
        if (ea.tau != step.tau || eb.tau != step.tau) {
          violate("box spacing disagrees with recorded tau" + at);
        }
        if (mpz_class(step.tau) <= 2 * mpz_class(scale) * n_below) {
          violate("hypothesis tau > 2HN fails" + at);
        }
        if (scale <= std::max({h_prev, step.h0_a, step.h0_b, Elem{2}})) {
          violate("hypothesis H > max(h_m, h0, 2) fails" + at);
        }
        if (step.h_new != 2 * scale - 2) violate("h_new must be 2H-2" + at);
        if (max_a_below != max_b_below) {
          violate("equal-diameter step on unequal diameters" + at);
        }
      } else if (step.kind == StepRecord::Kind::free_diameter_extend) {
        if (cert.mode != Mode::free_diameter) violate("step kind vs mode" + at);
        if (step.r < 2) violate("r must be >= 2" + at);
        if (!is_interval_index(*ea.index) ||
            static_cast<Elem>(ea.index->size()) != step.r ||
            *ea.index != *eb.index) {
          violate("free step index must be the interval [0, r-1]" + at);
        }
        if (ea.tau != step.alpha || eb.tau != step.beta) {
          violate("box spacings disagree with recorded alpha/beta" + at);
        }
        const mpz_class hn = mpz_class(h_prev) * n_below;
        if (mpz_class(step.alpha) <= hn || mpz_class(step.beta) <= hn) {
          violate("hypothesis alpha,beta > h_m*N fails" + at);
        }
        const mpz_class gap = abs(mpz_class(step.beta) - mpz_class(step.alpha));
        if (gap == 0 || mpz_class(step.r - 1) * gap < n_below - 1) {
          violate("hypothesis r >= 1 + (N-1)/|beta-alpha| fails" + at);
        }
        if (step.h_new <= h_prev) violate("h_new must exceed h_m" + at);
      } else {
        violate("unexpected base record mid-trace" + at);
      }
    }

    if (box_count(cert.a) != box_count(cert.b)) {
      violate("final cardinalities differ");
    }
    if (box_min(cert.a) != 0 || box_min(cert.b) != 0) {
      violate("final sets must have min 0");
    }
    if (cert.mode == Mode::equal_diameter &&
        box_max(cert.a) != box_max(cert.b)) {
      violate("final diameters differ in equal-diameter mode");
    }
  }

  Descent descent{budget, rep.usage, {}, {}};

  // Explicit elements attached to a recipe must agree with the recipe.
  for (const auto* levels : {&levels_a, &levels_b}) {
    for (const BoxExpr* e : *levels) {
      if (!e->is_leaf() && e->elements) {
        const auto& mat = descent.set_of(*e);
        if (mat && *mat != *e->elements) {
          violate("attached elements disagree with the box recipe");
        }
      }
    }
  }

  // ---- recompute every checkpoint ----
  const auto& final_a = descent.set_of(cert.a);
  const auto& final_b = descent.set_of(cert.b);
  std::vector<std::uint64_t> brute_a, brute_b;
  if (final_a && final_b && m > 0) {
    const Elem h_top = cert.checkpoints.back().h;
    brute_a = hfold_sizes_upto(*final_a, h_top, budget);
    brute_b = hfold_sizes_upto(*final_b, h_top, budget);
    rep.usage.brute_folds += brute_a.size() + brute_b.size();
    const std::uint64_t bits =
        static_cast<std::uint64_t>(final_a->diameter()) *
        std::min<std::uint64_t>(brute_a.size(), brute_b.size());
    rep.usage.peak_dense_bits = std::max(rep.usage.peak_dense_bits, bits);
  }

  bool any_mismatch = false;
  bool any_unchecked = false;
  for (const auto& cp : cert.checkpoints) {
    CheckpointReport cr;
    cr.h = cp.h;
    const auto feasible = static_cast<Elem>(std::min(brute_a.size(), brute_b.size()));
    if (cp.h <= feasible) {
      cr.method = CheckMethod::brute_force;
      cr.size_a = mpz_class(brute_a[static_cast<std::size_t>(cp.h - 1)]);
      cr.size_b = mpz_class(brute_b[static_cast<std::size_t>(cp.h - 1)]);
    } else {
      cr.size_a = descent.size_at(cert.a, cp.h);
      cr.size_b = descent.size_at(cert.b, cp.h);
      if (cr.size_a && cr.size_b) {
        cr.method = CheckMethod::analytic;
      } else {
        cr.method = CheckMethod::unchecked;
        cr.note = "no verification route within budget";
        any_unchecked = true;
      }
    }
    if (cr.size_a && cr.size_b) {
      cr.match = (*cr.size_a == cp.size_a) && (*cr.size_b == cp.size_b);
      cr.sign_ok = sign_of(*cr.size_a - *cr.size_b) == cp.sign;
      if (!cr.match || !cr.sign_ok) {
        any_mismatch = true;
        cr.note = "recomputed sizes disagree with the claim";
      }
    }
    rep.checkpoints.push_back(std::move(cr));
  }

  if (any_mismatch || !rep.violations.empty()) {
    rep.verdict = Verdict::fail;
  } else if (any_unchecked) {
    rep.verdict = Verdict::inconclusive;
  } else {
    rep.verdict = Verdict::pass;
  }
  return rep;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string to_string(CheckMethod m) {
  switch (m) {
    case CheckMethod::brute_force:
      return "brute-force";
    case CheckMethod::analytic:
      return "analytic-with-validated-hypotheses";
    case CheckMethod::unchecked:
      return "unchecked";
  }
  return "?";
}

nlohmann::json report_to_json(const VerificationReport& report) {
  nlohmann::json o = nlohmann::json::object();
  o["verdict"] = to_string(report.verdict);
  nlohmann::json cps = nlohmann::json::array();
  for (const auto& cp : report.checkpoints) {
    nlohmann::json c = nlohmann::json::object();
    c["h"] = cp.h;
    c["method"] = to_string(cp.method);
    c["size_a"] = cp.size_a ? nlohmann::json(cp.size_a->get_str())
                            : nlohmann::json(nullptr);
    c["size_b"] = cp.size_b ? nlohmann::json(cp.size_b->get_str())
                            : nlohmann::json(nullptr);
    c["match"] = cp.match;
    c["sign_ok"] = cp.sign_ok;
    if (!cp.note.empty()) c["note"] = cp.note;
    cps.push_back(std::move(c));
  }
  o["checkpoints"] = std::move(cps);
  o["violations"] = report.violations;
  nlohmann::json usage = nlohmann::json::object();
  usage["brute_folds"] = report.usage.brute_folds;
  usage["peak_dense_bits"] = report.usage.peak_dense_bits;
  o["usage"] = std::move(usage);
  return o;
}

}  // namespace sumrace
