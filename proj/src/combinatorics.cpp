#include "d2dcache/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace d2dcache {

namespace {

std::uint64_t binom_multiplicative(long long x, long long y) {
  if (y > x - y) y = x - y;
  unsigned __int128 r = 1;
  for (long long j = 1; j <= y; ++j) {
    r = r * static_cast<unsigned __int128>(x - y + j);
    r /= static_cast<unsigned __int128>(j);
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t binom(long long x, long long y) {
  if (x > 64) throw std::invalid_argument("binom: x exceeds the cap of 64");
  if (x <= 0 || y < 0 || x < y) return 0;
  return binom_multiplicative(x, y);
}

std::uint64_t binom_std(long long x, long long y) {
  if (x > 64) throw std::invalid_argument("binom_std: x exceeds the cap of 64");
  if (y < 0 || x < y) return 0;
  return binom_multiplicative(x, y);
}

SubsetIter::SubsetIter(std::vector<int> ground_set, int size)
    : ground_(std::move(ground_set)), k_(size), done_(false) {
  if (k_ < 0 || k_ > static_cast<int>(ground_.size()))
    done_ = true;
  else {
    std::sort(ground_.begin(), ground_.end());
    idx_.resize(k_);
    for (int j = 0; j < k_; ++j) idx_[j] = j;
  }
}

std::vector<int> SubsetIter::current() const {
  std::vector<int> out(k_);
  for (int j = 0; j < k_; ++j) out[j] = ground_[idx_[j]];
  return out;
}

void SubsetIter::next() {
  if (done_) return;
  int n = static_cast<int>(ground_.size());
  int j = k_ - 1;
  while (j >= 0 && idx_[j] == n - k_ + j) --j;
  if (j < 0) {
    done_ = true;
    return;
  }
  ++idx_[j];
  for (int l = j + 1; l < k_; ++l) idx_[l] = idx_[l - 1] + 1;
}

void for_each_subset(const std::vector<int>& ground_set, int size,
                     const std::function<void(const std::vector<int>&)>& fn) {
  for (SubsetIter it(ground_set, size); !it.done(); it.next()) {
    auto cur = it.current();
    fn(cur);
  }
}

std::uint64_t subset_lex_rank(const std::vector<int>& v, int n) {
  int k = static_cast<int>(v.size());
  std::uint64_t rank = 0;
  int prev = 0;
  for (int j = 0; j < k; ++j) {
    for (int c = prev + 1; c < v[j]; ++c)
      rank += binom_std(n - c, k - 1 - j);
    prev = v[j];
  }
  return rank;
}

std::vector<int> subset_unrank(std::uint64_t rank, int n, int k) {
  std::vector<int> v;
  v.reserve(k);
  int c = 1;
  for (int j = 0; j < k; ++j) {
    while (true) {
      std::uint64_t block = binom_std(n - c, k - 1 - j);
      if (rank < block) break;
      rank -= block;
      ++c;
    }
    v.push_back(c);
    ++c;
  }
  return v;
}

namespace {

void partitions_rec(int remaining, int parts_left, int max_part,
                    std::vector<int>& cur,
                    std::vector<std::vector<int>>& out, int N) {
  if (parts_left == 0) {
    if (remaining == 0) {
      auto s = cur;
      s.resize(N, 0);
      out.push_back(std::move(s));
    }
    return;
  }
  if (remaining == 0) {
    auto s = cur;
    s.resize(N, 0);
    out.push_back(std::move(s));
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, parts_left - 1, p, cur, out, N);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> compositions_of_demands(int N, int K) {
  if (N < 1 || K < 1)
    throw std::invalid_argument("compositions_of_demands: N, K must be >= 1");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_rec(K, N, K, cur, out, N);
  return out;
}

PiecewiseLinear::PiecewiseLinear(std::vector<EnvelopePoint> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty())
    throw std::invalid_argument("PiecewiseLinear: no vertices");
}

Rational PiecewiseLinear::eval(const Rational& x) const {
  if (x < vertices_.front().x || x > vertices_.back().x)
    throw std::out_of_range("PiecewiseLinear: x outside vertex range");
  for (std::size_t j = 1; j < vertices_.size(); ++j) {
    if (x <= vertices_[j].x) {
      const auto& a = vertices_[j - 1];
      const auto& b = vertices_[j];
      Rational lam = (x - a.x) / (b.x - a.x);
      return a.y + lam * (b.y - a.y);
    }
  }
  return vertices_.back().y;
}

PiecewiseLinear lower_convex_envelope(std::vector<EnvelopePoint> points) {
  if (points.empty())
    throw std::invalid_argument("lower_convex_envelope: empty input");
  for (std::size_t j = 1; j < points.size(); ++j)
    if (!(points[j - 1].x < points[j].x))
      throw std::invalid_argument(
          "lower_convex_envelope: x coordinates must strictly increase");
  std::vector<EnvelopePoint> hull;
  for (const auto& p : points) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // Drop b unless it lies strictly below segment a-p.
      Rational cross = (b.y - a.y) * (p.x - a.x) - (p.y - a.y) * (b.x - a.x);
      if (cross < Rational(0)) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return PiecewiseLinear(std::move(hull));
}

}  // namespace d2dcache
