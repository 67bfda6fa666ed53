#pragma once

// The canonical well-ordering on index pairs and tree addresses used by the
// completeness construction, packaged as a small pure utility.

#include <compare>
#include <cstdint>
#include <vector>

namespace sfq {

using Nat = std::uint64_t;

enum class Cmp { Lt, Eq, Gt };

struct IndexPair {
  Nat m = 0, n = 0;
  bool operator==(const IndexPair&) const = default;
};

struct TreeAddress {
  Nat i = 0;
  std::vector<Nat> path;
  bool operator==(const TreeAddress&) const = default;
};

namespace detail {
inline Cmp cmp_nat(Nat a, Nat b) { return a < b ? Cmp::Lt : a > b ? Cmp::Gt : Cmp::Eq; }
}

// (m,n) <= (p,q) iff max(m,n) < max(p,q), or maxima equal and m < p,
// or maxima equal and m = p and n <= q.
inline Cmp cmp_n2(const IndexPair& a, const IndexPair& b) {
  Nat ma = a.m > a.n ? a.m : a.n;
  Nat mb = b.m > b.n ? b.m : b.n;
  if (auto c = detail::cmp_nat(ma, mb); c != Cmp::Eq) return c;
  if (auto c = detail::cmp_nat(a.m, b.m); c != Cmp::Eq) return c;
  return detail::cmp_nat(a.n, b.n);
}

// (i,m) compared to (j,n): compare (i,|m|) and (j,|n|) by <=_{N^2}; on a tie
// break lexicographically on the paths.
inline Cmp cmp_preceq(const TreeAddress& a, const TreeAddress& b) {
  IndexPair pa{a.i, static_cast<Nat>(a.path.size())};
  IndexPair pb{b.i, static_cast<Nat>(b.path.size())};
  if (auto c = cmp_n2(pa, pb); c != Cmp::Eq) return c;
  // Same i and same length: lexicographic.
  for (std::size_t k = 0; k < a.path.size(); ++k)
    if (auto c = detail::cmp_nat(a.path[k], b.path[k]); c != Cmp::Eq) return c;
  return Cmp::Eq;
}

// Least pair strictly above a in <=_{N^2}. Walking the order: within a fixed
// maximum M the pairs ascend as (0,M),(1,M),...,(M-1,M),(M,0),(M,1),...,(M,M);
// after (M,M) comes (0,M+1).
inline IndexPair succ_n2(const IndexPair& a) {
  Nat M = a.m > a.n ? a.m : a.n;
  if (a.m < M) {
    // a = (m, M) with m < M: next is (m+1, M) unless that reaches (M, M)'s
    // column start, i.e. m+1 == M, where the order moves to (M, 0).
    return a.m + 1 == M ? IndexPair{M, 0} : IndexPair{a.m + 1, M};
  }
  // a = (M, n) with n <= M: next is (M, n+1), or (0, M+1) after (M, M).
  return a.n == M ? IndexPair{0, M + 1} : IndexPair{M, a.n + 1};
}

// Initial segment relation on paths.
inline bool path_initial_segment(const std::vector<Nat>& m, const std::vector<Nat>& n) {
  if (m.size() > n.size()) return false;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (m[k] != n[k]) return false;
  return true;
}

}  // namespace sfq
