#ifndef SUMRACE_RACE_HPP
#define SUMRACE_RACE_HPP

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sumrace/boxing.hpp"
#include "sumrace/fold.hpp"
#include "sumrace/intset.hpp"

namespace sumrace {

enum class Mode { equal_diameter, free_diameter };

std::string to_string(Mode mode);                  // "equal-diam" / "free-diam"
Mode mode_from_string(const std::string& text);    // throws ParseError

struct SignRow {
  Elem h;
  std::uint64_t size_a;
  std::uint64_t size_b;
  int sign;  // sgn(|hA| - |hB|)
};

struct SignProfile {
  std::vector<SignRow> rows;
  int alternations;  // strict sign changes over the nonzero subsequence
};

SignProfile sign_profile(const IntSet& a, const IntSet& b, Elem h_max,
                         const Budget& budget = {});

struct BasePair {
  IntSet a;
  IntSet b;
  Elem h1;
};

/// Deterministic exhaustive search for the first pair with |h1 A| > |h1 B|:
/// diameter bound ascending from 3, cardinality ascending from 3, candidate
/// subsets of [0, N] containing 0 (and N in equal-diameter mode) with gcd 1,
/// ordered pairs lexicographically, h scanned up to min(3N, h_max).
BasePair base_pair_search(bool equal_diameter, Elem n_max, Elem h_max);

/// One level of a race construction.
struct StepRecord {
  enum class Kind { base, free_diameter_extend, equal_diameter_extend };

  Kind kind = Kind::base;
  Elem h_new = 0;  // h1 for the base, h_{m+1} for extension steps
  Elem n = 0;      // diameter bound of the level the step extended

  // free-diameter step
  Elem alpha = 0;
  Elem beta = 0;
  Elem r = 0;

  // equal-diameter step
  Elem scale_h = 0;  // the parameter H of the index pair I/J
  Elem tau = 0;
  bool index_i_to_a = false;  // whether A received I (else J)

  // structure constants of the step's inputs
  Elem delta_a = 0, delta_b = 0;
  Elem gamma_a = 0, gamma_b = 0;
  Elem h0_a = 0, h0_b = 0;

  bool operator==(const StepRecord&) const = default;
};

/// Recursive construction recipe: a leaf holds explicit elements; a node is
/// the translate union of its base along index with spacing tau. A node may
/// additionally carry its materialized elements.
struct BoxExpr {
  std::shared_ptr<const BoxExpr> base;  // null for a leaf
  std::optional<IntSet> index;
  Elem tau = 0;
  std::optional<IntSet> elements;

  bool is_leaf() const { return base == nullptr; }
};

BoxExpr leaf_expr(IntSet elements);
BoxExpr box_expr(BoxExpr base, IntSet index, Elem tau);

/// Count and extremes of the set a recipe denotes, without materializing.
mpz_class box_count(const BoxExpr& e);
mpz_class box_min(const BoxExpr& e);
mpz_class box_max(const BoxExpr& e);

/// Explicit elements, if the count stays within cap and values fit in Elem.
std::optional<IntSet> box_materialize(const BoxExpr& e, std::int64_t cap);

struct RaceState {
  Mode mode;
  IntSet a;
  IntSet b;
  BoxExpr recipe_a;
  BoxExpr recipe_b;
  std::vector<Elem> checkpoints;
  std::vector<mpz_class> size_a;  // |h_i A| for the current sets
  std::vector<mpz_class> size_b;
  std::vector<StepRecord> trace;
};

RaceState base_state(Mode mode, Elem n_max = 12, const Budget& budget = {});

/// Theorem-2-style extension: r = 2 translate unions with spacings alpha and
/// beta chosen per checkpoint parity; appends the first h past h_m where the
/// sign flips.
RaceState extend_free_diameter(const RaceState& state, const Budget& budget = {});

/// Equal-diameter extension via the index pair I/J: picks the minimal
/// admissible H, tau = 2HN + 1, appends checkpoint 2H - 2.
RaceState extend_equal_diameter(const RaceState& state, const Budget& budget = {});

struct CheckpointClaim {
  Elem h;
  mpz_class size_a;
  mpz_class size_b;
  int sign;
};

struct RaceFailure {
  Elem failed_m;  // the checkpoint count the failed step was building
  std::string error;
};

struct RaceCertificate {
  int version = 1;
  Mode mode = Mode::equal_diameter;
  Elem m = 0;  // number of certified checkpoints
  BoxExpr a;
  BoxExpr b;
  std::vector<CheckpointClaim> checkpoints;
  std::vector<StepRecord> trace;
  std::optional<RaceFailure> failure;
};

/// Builds a certificate with m alternating checkpoints. If a step fails, the
/// certificate covers the checkpoints reached and carries an explicit failure
/// marker instead of pretending success.
RaceCertificate build_race(Elem m, Mode mode, const Budget& budget = {});

RaceCertificate make_certificate(const RaceState& state);

}  // namespace sumrace

#endif  // SUMRACE_RACE_HPP
