#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "d2dcache/rational.hpp"

namespace d2dcache {

// Binomial coefficient under the convention binom(x,y) = 0 if x < y or
// x <= 0 (and for negative y). binom(x,0) = 1 for x > 0. Inputs are
// capped at x <= 64; validated parameters never exceed that.
std::uint64_t binom(long long x, long long y);

// Standard-convention binomial (binom_std(0,0) = 1), used for subset
// ranking arithmetic only.
std::uint64_t binom_std(long long x, long long y);

// Lexicographic enumeration of size-k subsets of a sorted ground set.
// Enumerates exactly C(|ground|, k) subsets, each sorted ascending.
class SubsetIter {
 public:
  SubsetIter(std::vector<int> ground_set, int size);

  bool done() const { return done_; }
  // Current subset as sorted element values.
  std::vector<int> current() const;
  void next();

 private:
  std::vector<int> ground_;
  std::vector<int> idx_;  // positions into ground_
  int k_;
  bool done_;
};

// Calls fn for every size-k subset of ground_set, in lexicographic order.
void for_each_subset(const std::vector<int>& ground_set, int size,
                     const std::function<void(const std::vector<int>&)>& fn);

// Rank of sorted subset V (values in [1..n]) among all |V|-subsets of
// [1..n] in lexicographic order; inverse of subset_unrank.
std::uint64_t subset_lex_rank(const std::vector<int>& v, int n);
std::vector<int> subset_unrank(std::uint64_t rank, int n, int k);

// All length-N nonincreasing vectors of non-negative integers summing
// to K (partitions of K into at most N parts, zero-padded).
std::vector<std::vector<int>> compositions_of_demands(int N, int K);

struct EnvelopePoint {
  Rational x;
  Rational y;
};

// Piecewise-linear function given by an ordered vertex list; evaluation
// interpolates between adjacent vertices. Out-of-range x throws.
class PiecewiseLinear {
 public:
  explicit PiecewiseLinear(std::vector<EnvelopePoint> vertices);

  const std::vector<EnvelopePoint>& vertices() const { return vertices_; }
  Rational eval(const Rational& x) const;

 private:
  std::vector<EnvelopePoint> vertices_;
};

// Lower convex envelope of points with strictly increasing x. Retains
// only the vertices of the lower hull; interior collinear points are
// dropped. Throws on empty input or duplicate x.
PiecewiseLinear lower_convex_envelope(std::vector<EnvelopePoint> points);

}  // namespace d2dcache
