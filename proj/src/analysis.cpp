#include "d2dcache/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace d2dcache {

std::string to_string(SchemeTag tag) {
  switch (tag) {
    case SchemeTag::oneshot: return "oneshot";
    case SchemeTag::ji_d2d: return "ji_d2d";
    case SchemeTag::shared_link: return "shared_link";
  }
  return "?";
}

std::string to_string(DemandMode mode) {
  return mode == DemandMode::average ? "average" : "worst";
}

namespace {

void check_t(int K, int t) {
  if (t < 1 || t > K)
    throw std::invalid_argument("load: t must lie in [1..K]");
}

int128 ipow(int base, int exp) {
  int128 r = 1;
  for (int j = 0; j < exp; ++j) r *= base;
  return r;
}

}  // namespace

Rational per_demand_load(int N, int K, int t, const DemandVector& d) {
  check_t(K, t);
  validate_demand(d, N, K);
  Rational corrections(0);
  for (int i = 1; i <= K; ++i)
    corrections += Rational(binom(K - 1 - n_distinct_excluding(d, i), t));
  Rational num = Rational(binom(K - 1, t)) - corrections / Rational(K);
  return num / Rational(binom(K - 1, t - 1));
}

Rational average_load(int N, int K, int t) {
  check_t(K, t);
  Rational sum(0);
  for (const auto& s : compositions_of_demands(N, K)) {
    Rational weight(type_cardinality(s, N, K), ipow(N, K));
    sum += weight * per_demand_load(N, K, t, canonical_demand(s));
  }
  return sum;
}

Rational worst_case_load(int N, int K, int t) {
  check_t(K, t);
  Rational den(binom(K - 1, t - 1));
  if (K <= N) return Rational(binom(K - 1, t)) / den;
  if (K >= 2 * N)
    return (Rational(binom(K - 1, t)) - Rational(binom(K - 1 - N, t))) / den;
  Rational num = Rational(binom(K - 1, t)) -
                 Rational(2 * N - K, K) * Rational(binom(K - N, t)) -
                 Rational(2 * (K - N), K) * Rational(binom(K - 1 - N, t));
  return num / den;
}

Rational ji_d2d_load(int N, int K, int t) {
  (void)N;
  check_t(K, t);
  return Rational(K - t, t);
}

Rational shared_link_load(int N, int K, int t, int n_e) {
  if (t < 0 || t > K)
    throw std::invalid_argument("shared_link_load: t must lie in [0..K]");
  if (n_e < 1 || n_e > std::min(N, K))
    throw std::invalid_argument("shared_link_load: n_e out of range");
  if (t == K) return Rational(0);
  return (Rational(binom(K, t + 1)) - Rational(binom(K - n_e, t + 1))) /
         Rational(binom(K, t));
}

namespace {

// Expected shared-link load over uniform demands, by demand type.
Rational shared_link_average(int N, int K, int t) {
  Rational sum(0);
  for (const auto& s : compositions_of_demands(N, K)) {
    int n_e = 0;
    for (int e : s)
      if (e > 0) ++n_e;
    Rational weight(type_cardinality(s, N, K), ipow(N, K));
    sum += weight * shared_link_load(N, K, t, n_e);
  }
  return sum;
}

}  // namespace

PiecewiseLinear load_envelope(int N, int K, SchemeTag tag, DemandMode mode) {
  std::vector<EnvelopePoint> pts;
  Rational mem_unit(N, K);  // M = t*N/K
  if (tag == SchemeTag::shared_link) {
    // The shared-link comparator is defined down to M = 0.
    int n_e = std::min(N, K);
    pts.push_back({Rational(0), mode == DemandMode::worst
                                    ? shared_link_load(N, K, 0, n_e)
                                    : shared_link_average(N, K, 0)});
  }
  for (int t = 1; t <= K; ++t) {
    Rational load;
    switch (tag) {
      case SchemeTag::oneshot:
        load = mode == DemandMode::worst ? worst_case_load(N, K, t)
                                         : average_load(N, K, t);
        break;
      case SchemeTag::ji_d2d:
        load = ji_d2d_load(N, K, t);
        break;
      case SchemeTag::shared_link:
        load = mode == DemandMode::worst
                   ? shared_link_load(N, K, t, std::min(N, K))
                   : shared_link_average(N, K, t);
        break;
    }
    pts.push_back({Rational(t) * mem_unit, load});
  }
  return lower_convex_envelope(std::move(pts));
}

std::vector<LoadPoint> memory_load_curve(int N, int K, SchemeTag tag,
                                         DemandMode mode,
                                         const std::vector<Rational>& m_grid) {
  PiecewiseLinear env = load_envelope(N, K, tag, mode);
  std::vector<LoadPoint> out;
  out.reserve(m_grid.size());
  for (const Rational& m : m_grid) {
    LoadPoint p;
    p.M = m;
    p.t = Rational(K) * m / Rational(N);
    p.load = env.eval(m);
    p.tag = tag;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Rational> default_memory_grid(int N, int K, int count) {
  if (count < 2) throw std::invalid_argument("grid: need at least 2 points");
  Rational lo(N, K), hi(N);
  std::vector<Rational> grid;
  grid.reserve(count);
  for (int j = 0; j < count; ++j)
    grid.push_back(lo + (hi - lo) * Rational(j, count - 1));
  return grid;
}

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string curve_csv(int N, int K, DemandMode mode,
                      const std::vector<Rational>& m_grid) {
  std::ostringstream os;
  os << "scheme,demand_mode,N,K,M_num,M_den,t_effective,load_num,load_den,"
        "load_float\n";
  for (SchemeTag tag :
       {SchemeTag::oneshot, SchemeTag::ji_d2d, SchemeTag::shared_link}) {
    for (const LoadPoint& p : memory_load_curve(N, K, tag, mode, m_grid)) {
      os << to_string(tag) << ',' << to_string(mode) << ',' << N << ',' << K
         << ',' << int128_to_string(p.M.num()) << ','
         << int128_to_string(p.M.den()) << ',' << p.t.to_string() << ','
         << int128_to_string(p.load.num()) << ','
         << int128_to_string(p.load.den()) << ','
         << format_float(p.load.to_double()) << '\n';
    }
  }
  return os.str();
}

}  // namespace d2dcache
