#include "d2dcache/converse.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "d2dcache/analysis.hpp"
#include "d2dcache/combinatorics.hpp"

namespace d2dcache {

std::vector<int> prune_permutation(const std::vector<int>& u,
                                   const DemandVector& d) {
  std::set<int> seen_users(u.begin(), u.end());
  if (seen_users.size() != u.size())
    throw std::invalid_argument("prune_permutation: repeated user in u");
  for (int user : u)
    if (user < 1 || user > static_cast<int>(d.size()))
      throw std::invalid_argument("prune_permutation: user id out of range");
  std::set<int> seen_files;
  std::vector<int> out;
  for (int user : u)
    if (seen_files.insert(d[user - 1]).second) out.push_back(user);
  return out;
}

void PieceSizeProfile::set(int k, int i, std::uint32_t v_mask,
                           const Rational& size) {
  sizes_[{k, i, v_mask}] = size;
}

Rational PieceSizeProfile::at(int k, int i, std::uint32_t v_mask) const {
  auto it = sizes_.find({k, i, v_mask});
  return it == sizes_.end() ? Rational(0) : it->second;
}

PieceSizeProfile man_scheme_profile(int N, int K, int t,
                                    const DemandVector& d) {
  validate_demand(d, N, K);
  Rational piece(1, static_cast<int128>(t) * binom(K, t));
  PieceSizeProfile profile;
  std::vector<int> users(K);
  for (int u = 1; u <= K; ++u) users[u - 1] = u;
  for (SubsetIter it(users, t); !it.done(); it.next()) {
    std::vector<int> V = it.current();
    std::uint32_t mask = 0;
    for (int u : V) mask |= 1u << (u - 1);
    for (int k = 1; k <= K; ++k) {
      if (mask & (1u << (k - 1))) continue;
      for (int i : V) profile.set(k, i, mask, piece);
    }
  }
  return profile;
}

Rational acyclic_bound(int i, const std::vector<int>& u,
                       const DemandVector& d,
                       const PieceSizeProfile& profile) {
  int K = static_cast<int>(d.size());
  std::vector<int> f = prune_permutation(u, d);
  Rational total(0);
  std::uint32_t removed = 0;
  for (int j = 0; j < static_cast<int>(f.size()); ++j) {
    removed |= 1u << (f[j] - 1);
    // All V_j in [K] \ {f_1..f_j} with i in V_j.
    std::uint32_t allowed = (K == 32 ? ~0u : ((1u << K) - 1)) & ~removed;
    std::uint32_t i_bit = 1u << (i - 1);
    if (!(allowed & i_bit)) continue;
    std::uint32_t rest = allowed & ~i_bit;
    // Iterate subsets of rest, each joined with {i}.
    std::uint32_t sub = 0;
    while (true) {
      total += profile.at(f[j], i, sub | i_bit);
      if (sub == rest) break;
      sub = (sub - rest) & rest;
    }
  }
  return total;
}

void CoefficientTable::add(int k, int i, std::uint32_t v_mask, long long inc) {
  a_[{k, i, v_mask}] += inc;
}

long long CoefficientTable::at(int k, int i, std::uint32_t v_mask) const {
  auto it = a_.find({k, i, v_mask});
  return it == a_.end() ? 0 : it->second;
}

CoefficientTable accumulate_coefficients(const DemandVector& d, int K) {
  if (K > 8)
    throw std::invalid_argument(
        "accumulate_coefficients: K > 8 (factorial enumeration guard)");
  if (static_cast<int>(d.size()) != K)
    throw std::invalid_argument("accumulate_coefficients: |d| != K");
  CoefficientTable table;
  for (int i = 1; i <= K; ++i) {
    std::vector<int> u;
    for (int k = 1; k <= K; ++k)
      if (k != i) u.push_back(k);
    do {
      std::vector<int> f = prune_permutation(u, d);
      std::uint32_t removed = 0;
      std::uint32_t all = (1u << K) - 1;
      std::uint32_t i_bit = 1u << (i - 1);
      for (int j = 0; j < static_cast<int>(f.size()); ++j) {
        removed |= 1u << (f[j] - 1);
        std::uint32_t rest = all & ~removed & ~i_bit;
        std::uint32_t sub = 0;
        while (true) {
          table.add(f[j], i, sub | i_bit);
          if (sub == rest) break;
          sub = (sub - rest) & rest;
        }
      }
    } while (std::next_permutation(u.begin(), u.end()));
  }
  return table;
}

bool coefficients_symmetric(const CoefficientTable& table, int K) {
  // Every transmitter i in V must carry the same count for a given (k, V).
  std::set<std::pair<int, std::uint32_t>> groups;
  for (const auto& [key, count] : table.entries()) {
    (void)count;
    groups.insert({std::get<0>(key), std::get<2>(key)});
  }
  for (const auto& [k, v_mask] : groups) {
    long long ref = 0;
    bool have_ref = false;
    for (int i = 1; i <= K; ++i) {
      if (!(v_mask & (1u << (i - 1)))) continue;
      long long c = table.at(k, i, v_mask);
      if (!have_ref) {
        ref = c;
        have_ref = true;
      } else if (c != ref) {
        return false;
      }
    }
  }
  return true;
}

Rational b_t_coefficient(const std::vector<int>& s, int N, int K, int t) {
  if (t < 1 || t > K)
    throw std::invalid_argument("b_t_coefficient: t must lie in [1..K]");
  DemandVector d = canonical_demand(s);
  validate_demand(d, N, K);
  int128 card = type_cardinality(s, N, K);
  Rational sum(0);
  for (int i = 1; i <= K; ++i)
    sum += Rational(binom(K - 1, t)) -
           Rational(binom(K - n_distinct_excluding(d, i) - 1, t));
  return Rational(card) * sum /
         Rational(static_cast<int128>(t) * N * binom(K, t));
}

Rational r_t_s(const std::vector<int>& s, int N, int K, int t,
               const Rational& F) {
  if (t < 1 || t > K)
    throw std::invalid_argument("r_t_s: t must lie in [1..K]");
  DemandVector d = canonical_demand(s);
  validate_demand(d, N, K);
  Rational corrections(0);
  for (int i = 1; i <= K; ++i)
    corrections += Rational(binom(K - n_distinct_excluding(d, i) - 1, t));
  Rational num = Rational(binom(K - 1, t)) - corrections / Rational(K);
  return num / (Rational(binom(K - 1, t - 1)) * Rational(N) * F);
}

namespace {

PiecewiseLinear type_load_envelope(const std::vector<int>& s, int N, int K) {
  std::vector<EnvelopePoint> pts;
  for (int t = 1; t <= K; ++t)
    pts.push_back({Rational(t), r_t_s(s, N, K, t) * Rational(N)});
  return lower_convex_envelope(std::move(pts));
}

int128 ipow(int base, int exp) {
  int128 r = 1;
  for (int j = 0; j < exp; ++j) r *= base;
  return r;
}

Rational effective_t(int N, int K, const Rational& M) {
  Rational t = Rational(K) * M / Rational(N);
  if (t < Rational(1) || t > Rational(K))
    throw std::invalid_argument("converse: M outside [N/K, N]");
  return t;
}

}  // namespace

Rational average_converse(int N, int K, const Rational& M) {
  Rational t = effective_t(N, K, M);
  Rational sum(0);
  for (const auto& s : compositions_of_demands(N, K)) {
    Rational weight(type_cardinality(s, N, K), ipow(N, K));
    sum += weight * type_load_envelope(s, N, K).eval(t);
  }
  return sum;
}

Rational worst_case_converse(int N, int K, const Rational& M) {
  Rational t = effective_t(N, K, M);
  Rational best(0);
  bool first = true;
  for (const auto& s : compositions_of_demands(N, K)) {
    Rational v = type_load_envelope(s, N, K).eval(t);
    if (first || best < v) best = v;
    first = false;
  }
  return best;
}

Rational PlacementStats::total_bits() const {
  Rational sum(0);
  for (const auto& v : x) sum += v;
  return sum;
}

Rational PlacementStats::weighted_bits() const {
  Rational sum(0);
  for (std::size_t t = 0; t < x.size(); ++t) sum += Rational(int128(t)) * x[t];
  return sum;
}

PlacementStats man_placement_stats(int N, int K, int t) {
  if (t < 1 || t > K)
    throw std::invalid_argument("man_placement_stats: t must lie in [1..K]");
  PlacementStats stats;
  stats.x.assign(K + 1, Rational(0));
  stats.x[t] = Rational(N);  // all N files live at level t, unit file size
  return stats;
}

}  // namespace d2dcache
