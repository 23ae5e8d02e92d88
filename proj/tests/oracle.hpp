// Test-side brute-force oracle, deliberately independent of the library's
// engines: plain std::set enumeration of pairwise sums.
#ifndef SUMRACE_TESTS_ORACLE_HPP
#define SUMRACE_TESTS_ORACLE_HPP

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Elems = std::set<long long>;

inline Elems sum(const Elems& a, const Elems& b) {
  Elems out;
  for (long long x : a) {
    for (long long y : b) out.insert(x + y);
  }
  return out;
}

inline Elems hfold(const Elems& a, int h) {
  Elems cur = a;
  for (int k = 1; k < h; ++k) cur = sum(cur, a);
  return cur;
}

inline long long hsize(const Elems& a, int h) {
  return static_cast<long long>(hfold(a, h).size());
}

inline Elems from(const std::vector<long long>& v) {
  return Elems(v.begin(), v.end());
}

inline std::vector<long long> to_vec(const Elems& a) {
  return std::vector<long long>(a.begin(), a.end());
}

// Longest run of consecutive integers.
inline long long longest_run(const Elems& a) {
  long long best = 0, cur = 0, prev = 0;
  bool first = true;
  for (long long x : a) {
    cur = (!first && x == prev + 1) ? cur + 1 : 1;
    if (cur > best) best = cur;
    prev = x;
    first = false;
  }
  return best;
}

}  // namespace oracle

#endif  // SUMRACE_TESTS_ORACLE_HPP
