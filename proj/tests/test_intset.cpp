#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <gmpxx.h>

#include <limits>
#include <random>

#include "oracle.hpp"
#include "sumrace/fold.hpp"
#include "sumrace/intset.hpp"

using namespace sumrace;

namespace {

IntSet make(std::vector<Elem> v) { return IntSet::from_elements(std::move(v)); }

IntSet random_set(std::mt19937_64& rng, Elem max_value, int max_card) {
  std::uniform_int_distribution<Elem> value(0, max_value);
  std::uniform_int_distribution<int> card(1, max_card);
  std::vector<Elem> v;
  const int k = card(rng);
  for (int i = 0; i < k; ++i) v.push_back(value(rng));
  return IntSet::from_elements(std::move(v));
}

oracle::Elems to_oracle(const IntSet& s) {
  return oracle::Elems(s.elements().begin(), s.elements().end());
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace

TEST_CASE("construction sorts and deduplicates") {
  CHECK(make({3, 0, 3, 1}).elements() == std::vector<Elem>{0, 1, 3});
  CHECK(make({5}).elements() == std::vector<Elem>{5});
  CHECK(make({0, 2, 3}).elements() == std::vector<Elem>{0, 2, 3});
  CHECK_THROWS_AS(IntSet::from_elements({}), EmptySetError);
  CHECK_THROWS_AS(IntSet::from_sorted({1, 1, 2}), PreconditionError);
}

TEST_CASE("accessors") {
  const IntSet s = make({-3, 1, 9});
  CHECK(s.min() == -3);
  CHECK(s.max() == 9);
  CHECK(s.diameter() == 12);
  CHECK(s.size() == 3);
  CHECK(s.difference_gcd() == 4);
  CHECK(make({7}).difference_gcd() == 0);
  CHECK(s.contains(1));
  CHECK(!s.contains(2));
}

TEST_CASE("normalize") {
  const auto n1 = normalize(make({4, 10, 16}));
  CHECK(n1.set.elements() == std::vector<Elem>{0, 1, 2});
  CHECK(n1.shift == 4);
  CHECK(n1.scale == 6);

  const auto n2 = normalize(make({0, 2, 3}));
  CHECK(n2.set.elements() == std::vector<Elem>{0, 2, 3});
  CHECK(n2.shift == 0);
  CHECK(n2.scale == 1);

  const auto n3 = normalize(make({-3, 1}));
  CHECK(n3.set.elements() == std::vector<Elem>{0, 1});
  CHECK(n3.shift == -3);
  CHECK(n3.scale == 4);

  const auto n4 = normalize(make({5}));
  CHECK(n4.set.elements() == std::vector<Elem>{0});
  CHECK(n4.shift == 5);
  CHECK(n4.scale == 1);
}

TEST_CASE("reflect is an involution") {
  CHECK(reflect(make({0, 1, 3})).elements() == std::vector<Elem>{0, 2, 3});
  CHECK(reflect(make({0, 2, 3})).elements() == std::vector<Elem>{0, 1, 3});

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    IntSet s = random_set(rng, 50, 8);
    s = s.translated(-s.min());
    CHECK(reflect(reflect(s)) == s);
  }
  // intervals are fixed points
  CHECK(reflect(make({0, 1, 2, 3})) == make({0, 1, 2, 3}));
}

TEST_CASE("sumset examples") {
  CHECK(sumset(make({0, 1}), make({0, 1})).elements() ==
        std::vector<Elem>{0, 1, 2});
  CHECK(sumset(make({0, 1, 3}), make({0, 1, 3})).elements() ==
        std::vector<Elem>{0, 1, 2, 3, 4, 6});
  const IntSet b = make({2, 5, 11});
  CHECK(sumset(make({0}), b) == b);
}

TEST_CASE("sumset overflow is detected") {
  const Elem top = std::numeric_limits<Elem>::max();
  CHECK_THROWS_AS(sumset(make({0, top - 1}), make({0, 2})), OverflowError);
  CHECK_THROWS_AS(make({top}).translated(1), OverflowError);
  CHECK_THROWS_AS(make({top / 2}).scaled(3), OverflowError);
}

TEST_CASE("hfold examples") {
  const IntSet a = make({0, 1, 3});
  CHECK(hfold(a, 1) == a);
  CHECK(hfold(a, 2).elements() == std::vector<Elem>{0, 1, 2, 3, 4, 6});
  CHECK(hfold(a, 2).size() == 6);

  // h{0,1} = [0,h]
  for (Elem h = 1; h <= 6; ++h) {
    CHECK(hfold(make({0, 1}), h).size() == static_cast<std::size_t>(h) + 1);
  }

  // {0,2,3} cubed = {0} u [2,9]
  const IntSet cube = hfold(make({0, 2, 3}), 3);
  CHECK(cube.elements() == std::vector<Elem>{0, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(cube.size() == 9);
}

TEST_CASE("growth profile") {
  const auto p = growth_profile(make({0, 1, 3}), 3);
  CHECK(p.sizes == std::vector<std::uint64_t>{3, 6, 9});
  CHECK(growth_profile(make({0, 1}), 4).sizes ==
        std::vector<std::uint64_t>{2, 3, 4, 5});
  CHECK(growth_profile(make({0, 5}), 3).sizes ==
        std::vector<std::uint64_t>{2, 3, 4});
}

TEST_CASE("fold budget errors") {
  Budget tiny;
  tiny.dense_bits = 64;
  tiny.sparse_max_elems = 4;
  CHECK_THROWS_AS(hfold(make({0, 1, 100}), 8, tiny), BudgetExceededError);
  CHECK_THROWS_AS(hfold_sizes(make({0, 1, 100}), 8, tiny), BudgetExceededError);
  // the partial variant stops quietly instead
  const auto partial = hfold_sizes_upto(make({0, 1, 100}), 8, tiny);
  CHECK(partial.size() < 8);
}

TEST_CASE("engine equivalence: dense and sparse agree") {
  std::mt19937_64 rng(42);
  Budget dense_only;
  dense_only.dense_bits = std::int64_t{1} << 27;
  Budget sparse_only;
  sparse_only.dense_bits = 0;  // force the merge engine
  for (int i = 0; i < 300; ++i) {
    const IntSet a = random_set(rng, 60, 8);
    const IntSet b = random_set(rng, 60, 8);
    CHECK(sumset(a, b, dense_only) == sumset(a, b, sparse_only));
    const Elem h = 1 + static_cast<Elem>(rng() % 5);
    CHECK(hfold(a, h, dense_only) == hfold(a, h, sparse_only));
  }
}

TEST_CASE("hfold matches the enumeration oracle") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 150; ++i) {
    const IntSet a = random_set(rng, 25, 6);
    const int h = 1 + static_cast<int>(rng() % 4);
    const auto expected = oracle::to_vec(oracle::hfold(to_oracle(a), h));
    const IntSet fold = hfold(a, h);
    const auto& got = fold.elements();
    REQUIRE(got.size() == expected.size());
    for (std::size_t j = 0; j < got.size(); ++j) {
      CHECK(got[j] == expected[j]);
    }
  }
}

TEST_CASE("containment chain when 0 is an element") {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 200; ++i) {
    IntSet a = random_set(rng, 40, 7);
    a = a.translated(-a.min());  // ensure 0
    const IntSet lo = hfold(a, 3);
    const IntSet hi = hfold(a, 4);
    for (Elem x : lo.elements()) CHECK(hi.contains(x));
  }
}

TEST_CASE("reflection and affine invariance of fold sizes") {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 200; ++i) {
    const IntSet a = random_set(rng, 40, 7);
    const Elem h = 1 + static_cast<Elem>(rng() % 5);
    CHECK(hfold(reflect(a), h).size() == hfold(a, h).size());
    const Elem c = 1 + static_cast<Elem>(rng() % 5);
    const Elem t = static_cast<Elem>(rng() % 100) - 50;
    CHECK(hfold(a.scaled(c).translated(t), h).size() == hfold(a, h).size());
    CHECK(hfold(a.scaled(-c), h).size() == hfold(a, h).size());
  }
}

TEST_CASE("size bounds for normalized sets") {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 200; ++i) {
    IntSet a = random_set(rng, 30, 7);
    a = a.translated(-a.min());
    const Elem h = 1 + static_cast<Elem>(rng() % 6);
    const mpz_class size(static_cast<unsigned long>(hfold(a, h).size()));
    CHECK(size >= static_cast<unsigned long>(a.size()));
    const mpz_class interval_bound = mpz_class(a.diameter()) * h + 1;
    const mpz_class multiset_bound = binomial(
        static_cast<unsigned long>(h + static_cast<Elem>(a.size()) - 1),
        static_cast<unsigned long>(h));
    CHECK(size <= interval_bound);
    CHECK(size <= multiset_bound);
  }
}

TEST_CASE("fold associativity: (i+j)A = iA + jA") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 100; ++t) {
    const IntSet a = random_set(rng, 30, 6);
    const Elem i = 1 + static_cast<Elem>(rng() % 4);
    const Elem j = 1 + static_cast<Elem>(rng() % 4);
    CHECK(hfold(a, i + j) == sumset(hfold(a, i), hfold(a, j)));
  }
}

TEST_CASE("fold cache returns the same folds as hfold") {
  FoldCache cache;
  const IntSet a = make({0, 2, 3});
  for (Elem h = 1; h <= 6; ++h) {
    CHECK(cache.fold(a, h) == hfold(a, h));
  }
  // cached references remain valid after growing
  const IntSet& two = cache.fold(a, 2);
  cache.fold(a, 9);
  CHECK(two == hfold(a, 2));
}

TEST_CASE("set literals") {
  CHECK(parse_set_literal("0,1,3").elements() == std::vector<Elem>{0, 1, 3});
  CHECK(parse_set_literal(" 4 , -2 ").elements() == std::vector<Elem>{-2, 4});
  CHECK(to_literal(make({0, 1, 3})) == "0,1,3");
  CHECK_THROWS_AS(parse_set_literal(""), ParseError);
  CHECK_THROWS_AS(parse_set_literal("1,,2"), ParseError);
  CHECK_THROWS_AS(parse_set_literal("1,x"), ParseError);
  CHECK_THROWS_AS(parse_set_literal("1.5"), ParseError);
}
