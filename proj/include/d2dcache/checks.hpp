#pragma once

#include <optional>

#include <json.hpp>

#include "d2dcache/analysis.hpp"
#include "d2dcache/demand.hpp"

// Exhaustive small-instance checks. Each returns nullopt on success or a
// witness object describing the first counterexample found. Shared by
// the verify command and the acceptance suite.
namespace d2dcache::checks {

using json = nlohmann::ordered_json;

// Bit-exact round trip for every demand in [N]^K at parameter t, and
// equality of the measured load with the closed-form per-demand load.
std::optional<json> round_trip_all(int N, int K, int t, int threads = 1);

// average_load == brute-force mean over [N]^K == average converse at
// M = tN/K.
std::optional<json> average_consistency(int N, int K, int t);

// worst_case_load == brute-force max; worst_case_demand attains it;
// worst-case converse agrees at M = tN/K.
std::optional<json> worst_consistency(int N, int K, int t);

// Accumulated permutation coefficients are transmitter-symmetric for
// every demand in [N]^K. Requires K <= 8.
std::optional<json> coefficient_symmetry(int N, int K);

// For every demand, the best acyclic-permutation bound on the scheme's
// piece-size profile equals the actual codeword count of every
// transmitter (in file-size units).
std::optional<json> acyclic_tightness(int N, int K, int t);

// Closed-form level coefficients equal the brute-force accumulation over
// every demand of every type.
std::optional<json> level_coefficient_closed_form(int N, int K);

// (1/K) sum_i shared_link_load(N, K-1, t-1, Ne(d\{i})) equals the
// per-demand load, for every demand.
std::optional<json> decomposition_identity(int N, int K, int t);

// Every pruned codeword lies in the GF(2) span of the transmitted
// codewords of its transmitter, for every demand.
std::optional<json> span_property(int N, int K, int t);

// XOR over the t+1 size-t subsets of an equal-demand set is zero, on
// concrete payloads.
std::optional<json> zero_sum_identity(int N, int K, int t);

// x_t concentration and cache-size equality of the MAN placement.
std::optional<json> placement_stats_check(int N, int K, int t);

// Curve series on the default grid: nonincreasing, convex, oneshot <=
// ji_d2d pointwise.
std::optional<json> curve_properties(int N, int K, DemandMode mode);

}  // namespace d2dcache::checks
