#pragma once

#include <functional>
#include <string>
#include <vector>

#include "d2dcache/rational.hpp"

namespace d2dcache {

// User requests, 1-indexed: entry k is the file in [1..N] demanded by
// user k+1... entries[k-1] = d_k.
using DemandVector = std::vector<int>;

struct LeaderSet {
  int transmitter = 0;                // user i
  std::vector<int> leaders;           // U^i, sorted ascending
};

void validate_demand(const DemandVector& d, int N, int K);

// Number of distinct file indices in d.
int n_distinct(const DemandVector& d);

// Number of distinct file indices among all users but user k.
int n_distinct_excluding(const DemandVector& d, int k);

// Sorted (nonincreasing) multiplicity vector of length N.
std::vector<int> composition_of(const DemandVector& d, int N);

// |D_s|: number of demand vectors with composition s. Equals
// [N!/prod m_c!] * [K!/prod s_n!] with m_c the multiplicity of value c
// within s (zeros included).
int128 type_cardinality(const std::vector<int>& s, int N, int K);

// Deterministic leader choice: for each distinct file requested by
// [K]\{i}, the lowest-index such user. Result sorted ascending.
LeaderSet select_leaders(const DemandVector& d, int i);

// A demand maximizing the per-demand load: file f requested
// floor(K/N) + (f <= K mod N) times, listed in file order.
DemandVector worst_case_demand(int N, int K);

// Representative demand of a composition: file n repeated s_n times.
DemandVector canonical_demand(const std::vector<int>& s);

// Applies fn to every demand in [N]^K (lexicographic order).
void for_each_demand(int N, int K,
                     const std::function<void(const DemandVector&)>& fn);

// Parses "1,2,1,1"; validates length K and range [1..N].
DemandVector parse_demand(const std::string& text, int N, int K);

}  // namespace d2dcache
