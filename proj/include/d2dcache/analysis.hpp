#pragma once

#include <string>
#include <vector>

#include "d2dcache/combinatorics.hpp"
#include "d2dcache/demand.hpp"
#include "d2dcache/rational.hpp"

namespace d2dcache {

enum class SchemeTag { oneshot, ji_d2d, shared_link };
enum class DemandMode { average, worst };

std::string to_string(SchemeTag tag);
std::string to_string(DemandMode mode);

// Load of the one-shot scheme for a specific demand at integer t:
// [C(K-1,t) - (1/K) sum_i C(K-1-Ne(d\{i}),t)] / C(K-1,t-1).
Rational per_demand_load(int N, int K, int t, const DemandVector& d);

// Expected load over uniform demands, summed by demand type (load
// depends on a demand only through its composition).
Rational average_load(int N, int K, int t);

// Peak load over all demands (three-case closed form).
Rational worst_case_load(int N, int K, int t);

// Leaderless D2D comparator: (K-t)/t.
Rational ji_d2d_load(int N, int K, int t);

// Shared-link optimum with n_e distinct demands:
// [C(K,t+1) - C(K-n_e,t+1)] / C(K,t). Valid for t in [0..K].
Rational shared_link_load(int N, int K, int t, int n_e);

struct LoadPoint {
  Rational M;
  Rational t;  // effective parameter KM/N
  Rational load;
  SchemeTag tag = SchemeTag::oneshot;
};

// Memory-load trade-off as the lower convex envelope over the scheme's
// integer-t corner points, in the M domain.
PiecewiseLinear load_envelope(int N, int K, SchemeTag tag, DemandMode mode);

// Envelope sampled at the given memory grid (each M in [N/K, N]).
std::vector<LoadPoint> memory_load_curve(int N, int K, SchemeTag tag,
                                         DemandMode mode,
                                         const std::vector<Rational>& m_grid);

// Default grid: count evenly spaced points on [N/K, N].
std::vector<Rational> default_memory_grid(int N, int K, int count);

// CSV rows in the schema
// scheme,demand_mode,N,K,M_num,M_den,t_effective,load_num,load_den,load_float
std::string curve_csv(int N, int K, DemandMode mode,
                      const std::vector<Rational>& m_grid);

// Float rendering used in every export: 12 significant digits.
std::string format_float(double v);

}  // namespace d2dcache
