#include "d2dcache/demand.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace d2dcache {

void validate_demand(const DemandVector& d, int N, int K) {
  if (static_cast<int>(d.size()) != K)
    throw std::invalid_argument("demand: length must equal K");
  for (int e : d)
    if (e < 1 || e > N)
      throw std::invalid_argument("demand: entries must lie in [1..N]");
}

int n_distinct(const DemandVector& d) {
  std::set<int> s(d.begin(), d.end());
  return static_cast<int>(s.size());
}

int n_distinct_excluding(const DemandVector& d, int k) {
  if (k < 1 || k > static_cast<int>(d.size()))
    throw std::out_of_range("n_distinct_excluding: user id out of range");
  std::set<int> s;
  for (int j = 0; j < static_cast<int>(d.size()); ++j)
    if (j != k - 1) s.insert(d[j]);
  return static_cast<int>(s.size());
}

std::vector<int> composition_of(const DemandVector& d, int N) {
  std::map<int, int> counts;
  for (int e : d) ++counts[e];
  std::vector<int> s;
  s.reserve(N);
  for (const auto& [file, c] : counts) {
    (void)file;
    s.push_back(c);
  }
  s.resize(N, 0);
  std::sort(s.begin(), s.end(), std::greater<int>());
  return s;
}

namespace {

int128 factorial(int n) {
  int128 r = 1;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

}  // namespace

int128 type_cardinality(const std::vector<int>& s, int N, int K) {
  if (static_cast<int>(s.size()) != N)
    throw std::invalid_argument("type_cardinality: composition length != N");
  int sum = 0;
  for (std::size_t j = 0; j + 1 < s.size(); ++j)
    if (s[j] < s[j + 1])
      throw std::invalid_argument("type_cardinality: not nonincreasing");
  std::map<int, int> value_mult;  // m_c, zeros included
  for (int e : s) {
    if (e < 0) throw std::invalid_argument("type_cardinality: negative entry");
    sum += e;
    ++value_mult[e];
  }
  if (sum != K)
    throw std::invalid_argument("type_cardinality: entries must sum to K");
  int128 assignments = factorial(N);  // ways to map files to counts
  for (const auto& [v, m] : value_mult) {
    (void)v;
    assignments /= factorial(m);
  }
  int128 orderings = factorial(K);  // ways to order requests among users
  for (int e : s) orderings /= factorial(e);
  return assignments * orderings;
}

LeaderSet select_leaders(const DemandVector& d, int i) {
  int K = static_cast<int>(d.size());
  if (i < 1 || i > K)
    throw std::out_of_range("select_leaders: user id out of range");
  LeaderSet ls;
  ls.transmitter = i;
  std::set<int> seen;
  for (int k = 1; k <= K; ++k) {
    if (k == i) continue;
    if (seen.insert(d[k - 1]).second) ls.leaders.push_back(k);
  }
  return ls;
}

DemandVector worst_case_demand(int N, int K) {
  if (N < 1 || K < 2)
    throw std::invalid_argument("worst_case_demand: need N >= 1, K >= 2");
  DemandVector d;
  d.reserve(K);
  for (int f = 1; f <= std::min(N, K); ++f) {
    int mult = K / N + (f <= K % N ? 1 : 0);
    if (K <= N) mult = 1;
    for (int r = 0; r < mult; ++r) d.push_back(f);
  }
  return d;
}

DemandVector canonical_demand(const std::vector<int>& s) {
  DemandVector d;
  for (std::size_t n = 0; n < s.size(); ++n)
    for (int r = 0; r < s[n]; ++r) d.push_back(static_cast<int>(n) + 1);
  return d;
}

void for_each_demand(int N, int K,
                     const std::function<void(const DemandVector&)>& fn) {
  DemandVector d(K, 1);
  while (true) {
    fn(d);
    int j = K - 1;
    while (j >= 0 && d[j] == N) {
      d[j] = 1;
      --j;
    }
    if (j < 0) break;
    ++d[j];
  }
}

DemandVector parse_demand(const std::string& text, int N, int K) {
  DemandVector d;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size())
      throw std::invalid_argument("parse_demand: bad token '" + tok + "'");
    d.push_back(v);
  }
  validate_demand(d, N, K);
  return d;
}

}  // namespace d2dcache
