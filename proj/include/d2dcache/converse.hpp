#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "d2dcache/demand.hpp"
#include "d2dcache/rational.hpp"

namespace d2dcache {

// Keeps, per distinct demanded file, only the earliest-positioned user
// of the permutation u. Length of the result is Ne(d restricted to u).
std::vector<int> prune_permutation(const std::vector<int>& u,
                                   const DemandVector& d);

// Sizes |W^{k,i}_{d_k,V}| keyed by (receiver k, transmitter i, cacher
// set V as bitmask over users 1..K -> bits 0..K-1). Missing keys are 0.
class PieceSizeProfile {
 public:
  void set(int k, int i, std::uint32_t v_mask, const Rational& size);
  Rational at(int k, int i, std::uint32_t v_mask) const;

 private:
  std::map<std::tuple<int, int, std::uint32_t>, Rational> sizes_;
};

// Profile induced by the concrete scheme at MAN parameter t and unit
// file size: size 1/(t*C(K,t)) for every (k, i, V) with |V| = t, i in V,
// k not in V; 0 elsewhere.
PieceSizeProfile man_scheme_profile(int N, int K, int t,
                                    const DemandVector& d);

// Acyclic-permutation lower bound on |X_i|: with f = prune(u, d),
// sum over j and over V_j subset of [K]\{f_1..f_j} containing i of
// sizes(f_j, i, V_j).
Rational acyclic_bound(int i, const std::vector<int>& u,
                       const DemandVector& d,
                       const PieceSizeProfile& profile);

// Accumulated coefficients a^{k,i}_V over all transmitters and all
// (K-1)! permutations each. Guarded at K <= 8.
class CoefficientTable {
 public:
  void add(int k, int i, std::uint32_t v_mask, long long inc = 1);
  long long at(int k, int i, std::uint32_t v_mask) const;
  const std::map<std::tuple<int, int, std::uint32_t>, long long>& entries()
      const {
    return a_;
  }

 private:
  std::map<std::tuple<int, int, std::uint32_t>, long long> a_;
};

CoefficientTable accumulate_coefficients(const DemandVector& d, int K);

// True iff a(k,i1,V) = a(k,i2,V) for every entry and all i1,i2 in V.
bool coefficients_symmetric(const CoefficientTable& table, int K);

// Closed-form b_t for demand type s:
// |D_s| * sum_i [C(K-1,t) - C(K-Ne(d\{i})-1,t)] / (t*N*C(K,t)),
// on the canonical representative. t in [1..K].
Rational b_t_coefficient(const std::vector<int>& s, int N, int K, int t);

// r_{t,s} for t in [1..K]:
// [C(K-1,t) - (1/K) sum_i C(K-Ne(d\{i})-1,t)] / (C(K-1,t-1)*N*F).
// r_{t,s} * N * F equals the per-demand load at integer t. t = 0 has a
// vanishing denominator and is outside the M >= N/K operating range.
Rational r_t_s(const std::vector<int>& s, int N, int K, int t,
               const Rational& F = Rational(1));

// E_s[Conv_t(r_{t,s} * N F)] evaluated at t = KM/N; the one-shot average
// converse. Equals average_load at integer t.
Rational average_converse(int N, int K, const Rational& M);

// max_s Conv_t(r_{t,s} * N F) at t = KM/N; equals worst_case_load at
// integer t.
Rational worst_case_converse(int N, int K, const Rational& M);

// x_t: total bits of subfiles cached by exactly t users, all files.
struct PlacementStats {
  std::vector<Rational> x;  // length K+1

  Rational total_bits() const;
  Rational weighted_bits() const;  // sum t*x_t
};

// Stats of the MAN placement at unit file size: x concentrated at level t.
PlacementStats man_placement_stats(int N, int K, int t);

}  // namespace d2dcache
