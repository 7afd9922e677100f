#include "d2dcache/checks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "d2dcache/combinatorics.hpp"
#include "d2dcache/converse.hpp"
#include "d2dcache/scheme.hpp"

namespace d2dcache::checks {

namespace {

constexpr std::uint64_t kCheckSeed = 42;

json demand_json(const DemandVector& d) { return json(d); }

std::vector<DemandVector> all_demands(int N, int K) {
  std::vector<DemandVector> out;
  out.reserve(static_cast<std::size_t>(std::pow(double(N), K)));
  for_each_demand(N, K, [&](const DemandVector& d) { out.push_back(d); });
  return out;
}

SystemParams unit_params(int N, int K, int t) {
  SystemParams p;
  p.N = N;
  p.K = K;
  p.t = t;
  p.file_bytes = SystemParams::aligned_file_bytes(K, t, 0);
  return p;
}

std::vector<int> complement_of(int K, int skip) {
  std::vector<int> out;
  for (int u = 1; u <= K; ++u)
    if (u != skip) out.push_back(u);
  return out;
}

}  // namespace

std::optional<json> round_trip_all(int N, int K, int t, int threads) {
  SystemParams params = unit_params(N, K, t);
  FileLibrary lib = random_library(params, kCheckSeed);
  std::vector<CacheContents> caches = man_placement(params, lib);
  std::vector<DemandVector> demands = all_demands(N, K);

  if (threads < 1) threads = 1;
  threads = std::min<int>(threads, static_cast<int>(demands.size()));
  std::vector<std::optional<json>> failures(demands.size());
  std::atomic<std::size_t> cursor{0};

  auto worker = [&]() {
    while (true) {
      std::size_t j = cursor.fetch_add(1);
      if (j >= demands.size()) return;
      const DemandVector& d = demands[j];
      try {
        std::vector<Transmission> txs;
        txs.reserve(K);
        for (int i = 1; i <= K; ++i)
          txs.push_back(encode_user(params, i, d, select_leaders(d, i),
                                    caches[i - 1]));
        Rational measured = measure_load(txs, params.file_bytes);
        Rational predicted = per_demand_load(N, K, t, d);
        if (measured != predicted) {
          failures[j] = json{{"demand", demand_json(d)},
                             {"reason", "load mismatch"},
                             {"measured", measured.to_string()},
                             {"predicted", predicted.to_string()}};
          continue;
        }
        for (int k = 1; k <= K; ++k) {
          Bytes got = decode_user(params, k, d, txs, caches[k - 1]);
          if (got != lib.files[d[k - 1] - 1]) {
            failures[j] = json{{"demand", demand_json(d)},
                               {"reason", "decode mismatch"},
                               {"user", k}};
            break;
          }
        }
      } catch (const std::exception& e) {
        failures[j] =
            json{{"demand", demand_json(d)}, {"reason", e.what()}};
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& f : failures)
    if (f) {
      (*f)["N"] = N;
      (*f)["K"] = K;
      (*f)["t"] = t;
      return f;
    }
  return std::nullopt;
}

std::optional<json> average_consistency(int N, int K, int t) {
  Rational brute(0);
  int128 count = 0;
  for_each_demand(N, K, [&](const DemandVector& d) {
    brute += per_demand_load(N, K, t, d);
    ++count;
  });
  brute = brute / Rational(count);
  Rational shortcut = average_load(N, K, t);
  Rational conv = average_converse(N, K, Rational(int128(t) * N, K));
  if (brute != shortcut || shortcut != conv)
    return json{{"N", N},
                {"K", K},
                {"t", t},
                {"brute_mean", brute.to_string()},
                {"average_load", shortcut.to_string()},
                {"average_converse", conv.to_string()}};
  return std::nullopt;
}

std::optional<json> worst_consistency(int N, int K, int t) {
  Rational brute(0);
  DemandVector argmax;
  for_each_demand(N, K, [&](const DemandVector& d) {
    Rational v = per_demand_load(N, K, t, d);
    if (argmax.empty() || brute < v) {
      brute = v;
      argmax = d;
    }
  });
  Rational closed = worst_case_load(N, K, t);
  Rational at_named = per_demand_load(N, K, t, worst_case_demand(N, K));
  Rational conv = worst_case_converse(N, K, Rational(int128(t) * N, K));
  if (closed != brute || at_named != brute || conv != brute)
    return json{{"N", N},
                {"K", K},
                {"t", t},
                {"brute_max", brute.to_string()},
                {"brute_argmax", demand_json(argmax)},
                {"closed_form", closed.to_string()},
                {"worst_case_demand_load", at_named.to_string()},
                {"worst_case_converse", conv.to_string()}};
  return std::nullopt;
}

std::optional<json> coefficient_symmetry(int N, int K) {
  std::optional<json> witness;
  for_each_demand(N, K, [&](const DemandVector& d) {
    if (witness) return;
    CoefficientTable table = accumulate_coefficients(d, K);
    if (!coefficients_symmetric(table, K))
      witness = json{{"N", N}, {"K", K}, {"demand", demand_json(d)}};
  });
  return witness;
}

std::optional<json> acyclic_tightness(int N, int K, int t) {
  std::optional<json> witness;
  for_each_demand(N, K, [&](const DemandVector& d) {
    if (witness) return;
    PieceSizeProfile profile = man_scheme_profile(N, K, t, d);
    for (int i = 1; i <= K && !witness; ++i) {
      // Actual |X_i|/F: transmitted codewords times the sub-piece size.
      LeaderSet leaders = select_leaders(d, i);
      int128 sent = 0;
      for_each_subset(complement_of(K, i), t, [&](const std::vector<int>& A) {
        for (int a : A)
          if (std::find(leaders.leaders.begin(), leaders.leaders.end(), a) !=
              leaders.leaders.end()) {
            ++sent;
            return;
          }
      });
      Rational actual(sent, static_cast<int128>(t) * binom(K, t));
      Rational best(0);
      std::vector<int> u = complement_of(K, i);
      std::sort(u.begin(), u.end());
      do {
        Rational b = acyclic_bound(i, u, d, profile);
        if (best < b) best = b;
      } while (std::next_permutation(u.begin(), u.end()));
      if (best != actual)
        witness = json{{"N", N},
                       {"K", K},
                       {"t", t},
                       {"demand", demand_json(d)},
                       {"transmitter", i},
                       {"best_bound", best.to_string()},
                       {"actual", actual.to_string()}};
    }
  });
  return witness;
}

std::optional<json> level_coefficient_closed_form(int N, int K) {
  int128 perms = 1;
  for (int j = 2; j <= K - 1; ++j) perms *= j;
  for (const auto& s : compositions_of_demands(N, K)) {
    // Brute force: sum the per-demand accumulations over the whole type,
    // then attach each (k,V) coefficient to subfile W_{d_k,V}.
    std::map<std::pair<int, std::uint32_t>, Rational> subfile_coeff;
    for_each_demand(N, K, [&](const DemandVector& d) {
      if (composition_of(d, N) != s) return;
      CoefficientTable table = accumulate_coefficients(d, K);
      for (const auto& [key, count] : table.entries()) {
        auto [k, i, v_mask] = key;
        // One representative transmitter per (k,V); symmetry is checked
        // separately.
        int lowest = __builtin_ctz(v_mask) + 1;
        if (i != lowest) continue;
        subfile_coeff[{d[k - 1], v_mask}] += Rational(count, perms);
      }
    });
    for (int t = 1; t <= K; ++t) {
      Rational closed = b_t_coefficient(s, N, K, t);
      // Every subfile at level t must carry the same coefficient.
      bool any = false;
      for (int q = 1; q <= N; ++q) {
        for (std::uint32_t v_mask = 1; v_mask < (1u << K); ++v_mask) {
          if (__builtin_popcount(v_mask) != t) continue;
          if (__builtin_popcount(v_mask) == K) continue;
          auto it = subfile_coeff.find({q, v_mask});
          Rational got = it == subfile_coeff.end() ? Rational(0) : it->second;
          any = true;
          if (got != closed)
            return json{{"N", N},
                        {"K", K},
                        {"t", t},
                        {"type", json(s)},
                        {"file", q},
                        {"v_mask", v_mask},
                        {"brute", got.to_string()},
                        {"closed_form", closed.to_string()}};
        }
      }
      (void)any;
    }
  }
  return std::nullopt;
}

std::optional<json> decomposition_identity(int N, int K, int t) {
  std::optional<json> witness;
  for_each_demand(N, K, [&](const DemandVector& d) {
    if (witness) return;
    Rational sum(0);
    for (int i = 1; i <= K; ++i)
      sum += shared_link_load(N, K - 1, t - 1, n_distinct_excluding(d, i));
    sum = sum / Rational(K);
    Rational direct = per_demand_load(N, K, t, d);
    if (sum != direct)
      witness = json{{"N", N},
                     {"K", K},
                     {"t", t},
                     {"demand", demand_json(d)},
                     {"decomposed", sum.to_string()},
                     {"direct", direct.to_string()}};
  });
  return witness;
}

std::optional<json> span_property(int N, int K, int t) {
  std::optional<json> witness;
  for_each_demand(N, K, [&](const DemandVector& d) {
    if (witness) return;
    for (int i = 1; i <= K && !witness; ++i) {
      LeaderSet leaders = select_leaders(d, i);
      // Incidence vectors over sub-piece unknowns (file, cacher set).
      std::map<std::pair<int, std::uint32_t>, int> var_ids;
      auto var_of = [&](int q, std::uint32_t m) {
        auto [it, fresh] =
            var_ids.emplace(std::make_pair(q, m), int(var_ids.size()));
        (void)fresh;
        return it->second;
      };
      auto incidence = [&](const std::vector<int>& A) {
        std::vector<int> cols;
        for (int x : A) {
          std::uint32_t m = 1u << (i - 1);
          for (int y : A)
            if (y != x) m |= 1u << (y - 1);
          cols.push_back(var_of(d[x - 1], m));
        }
        return cols;
      };
      std::vector<std::vector<int>> sent, pruned;
      for_each_subset(complement_of(K, i), t, [&](const std::vector<int>& A) {
        bool useful = false;
        for (int a : A)
          useful |= std::find(leaders.leaders.begin(), leaders.leaders.end(),
                              a) != leaders.leaders.end();
        (useful ? sent : pruned).push_back(incidence(A));
      });
      if (pruned.empty()) continue;
      std::size_t words = (var_ids.size() + 63) / 64;
      auto to_mask = [&](const std::vector<int>& cols) {
        std::vector<std::uint64_t> m(words, 0);
        for (int c : cols) m[c >> 6] ^= std::uint64_t(1) << (c & 63);
        return m;
      };
      std::vector<std::vector<std::uint64_t>> rows;
      for (const auto& cols : sent) rows.push_back(to_mask(cols));
      for (const auto& cols : pruned)
        if (!in_gf2_span(to_mask(cols), rows)) {
          witness = json{{"N", N},
                         {"K", K},
                         {"t", t},
                         {"demand", demand_json(d)},
                         {"transmitter", i}};
          break;
        }
    }
  });
  return witness;
}

std::optional<json> zero_sum_identity(int N, int K, int t) {
  if (t + 1 > K - 1) return std::nullopt;  // no size-(t+1) subset exists
  SystemParams params = unit_params(N, K, t);
  FileLibrary lib = random_library(params, kCheckSeed);
  std::vector<CacheContents> caches = man_placement(params, lib);
  std::optional<json> witness;
  for_each_demand(N, K, [&](const DemandVector& d) {
    if (witness) return;
    for (int i = 1; i <= K && !witness; ++i) {
      for_each_subset(
          complement_of(K, i), t + 1, [&](const std::vector<int>& C) {
            if (witness) return;
            for (std::size_t j = 1; j < C.size(); ++j)
              if (d[C[j] - 1] != d[C[0] - 1]) return;
            Bytes acc(params.subpiece_bytes(), 0);
            for_each_subset(C, t, [&](const std::vector<int>& A) {
              Codeword cw = make_codeword(params, i, A, d, caches[i - 1]);
              for (std::size_t b = 0; b < acc.size(); ++b)
                acc[b] ^= cw.payload[b];
            });
            for (std::uint8_t b : acc)
              if (b != 0) {
                witness = json{{"N", N},
                               {"K", K},
                               {"t", t},
                               {"demand", demand_json(d)},
                               {"transmitter", i},
                               {"set", json(C)}};
                return;
              }
          });
    }
  });
  return witness;
}

std::optional<json> placement_stats_check(int N, int K, int t) {
  PlacementStats stats = man_placement_stats(N, K, t);
  Rational M(int128(t) * N, K);
  bool concentrated = true;
  for (int l = 0; l <= K; ++l)
    if (l != t && !stats.x[l].is_zero()) concentrated = false;
  if (!concentrated || stats.x[t] != Rational(N) ||
      stats.total_bits() != Rational(N) ||
      stats.weighted_bits() != Rational(K) * M)
    return json{{"N", N}, {"K", K}, {"t", t}};
  return std::nullopt;
}

std::optional<json> curve_properties(int N, int K, DemandMode mode) {
  std::vector<Rational> grid = default_memory_grid(N, K, 4 * K + 1);
  auto oneshot = memory_load_curve(N, K, SchemeTag::oneshot, mode, grid);
  auto ji = memory_load_curve(N, K, SchemeTag::ji_d2d, mode, grid);
  auto shared = memory_load_curve(N, K, SchemeTag::shared_link, mode, grid);
  auto bad_series = [&](const std::vector<LoadPoint>& pts,
                        const char* name) -> std::optional<json> {
    for (std::size_t j = 1; j < pts.size(); ++j)
      if (pts[j - 1].load < pts[j].load)
        return json{{"series", name}, {"reason", "not nonincreasing"},
                    {"index", j}};
    for (std::size_t j = 2; j < pts.size(); ++j) {
      // Uniform grid: discrete convexity is y[j-1] <= (y[j-2]+y[j])/2.
      Rational mid = (pts[j - 2].load + pts[j].load) / Rational(2);
      if (mid < pts[j - 1].load)
        return json{{"series", name}, {"reason", "not convex"}, {"index", j}};
    }
    return std::nullopt;
  };
  const std::pair<const std::vector<LoadPoint>*, const char*> series[] = {
      {&oneshot, "oneshot"}, {&ji, "ji_d2d"}, {&shared, "shared_link"}};
  for (const auto& [pts, name] : series) {
    if (auto w = bad_series(*pts, name)) {
      (*w)["N"] = N;
      (*w)["K"] = K;
      return w;
    }
  }
  for (std::size_t j = 0; j < grid.size(); ++j)
    if (ji[j].load < oneshot[j].load)
      return json{{"N", N},
                  {"K", K},
                  {"reason", "oneshot above ji_d2d"},
                  {"M", grid[j].to_string()}};
  return std::nullopt;
}

}  // namespace d2dcache::checks
