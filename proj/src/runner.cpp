#include "d2dcache/runner.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <thread>

#include "d2dcache/analysis.hpp"
#include "d2dcache/checks.hpp"
#include "d2dcache/combinatorics.hpp"
#include "d2dcache/scheme.hpp"

namespace d2dcache {

namespace {

double rendered_float(const Rational& r) {
  // Round-trips through the 12-significant-digit rendering so the JSON
  // number prints exactly those digits.
  return std::stod(format_float(r.to_double()));
}

json load_json(const Rational& r) {
  return json{{"exact", r.to_string()}, {"float", rendered_float(r)}};
}

}  // namespace

json run_simulate(const SimulateConfig& cfg) {
  SystemParams params;
  params.N = cfg.N;
  params.K = cfg.K;
  params.t = cfg.t;
  if (cfg.subpiece_bytes == 0)
    throw std::invalid_argument("simulate: subpiece_bytes must be positive");
  params.file_bytes = SystemParams::aligned_file_bytes(
      cfg.K, cfg.t, cfg.subpiece_bytes * cfg.t * binom_std(cfg.K, cfg.t));
  params.validate();
  validate_demand(cfg.demand, cfg.N, cfg.K);

  FileLibrary lib = random_library(params, cfg.seed);
  std::vector<CacheContents> caches = man_placement(params, lib);
  if (cfg.corrupt_placement) caches[0].pieces.begin()->second[0] ^= 0xff;

  json leaders_json = json::array();
  std::vector<Transmission> txs;
  txs.reserve(cfg.K);
  for (int i = 1; i <= cfg.K; ++i) {
    LeaderSet leaders = select_leaders(cfg.demand, i);
    leaders_json.push_back(
        {{"transmitter", i}, {"leaders", json(leaders.leaders)}});
    txs.push_back(
        encode_user(params, i, cfg.demand, leaders, caches[i - 1]));
  }

  std::vector<int> counts;
  int128 total_bytes = 0;
  for (const auto& tx : txs) {
    counts.push_back(static_cast<int>(tx.codewords.size()));
    for (const auto& cw : tx.codewords) total_bytes += cw.payload.size();
  }

  for (int k = 1; k <= cfg.K; ++k) {
    Bytes got = decode_user(params, k, cfg.demand, txs, caches[k - 1]);
    if (got != lib.files[cfg.demand[k - 1] - 1])
      throw DecodeError("simulate: user " + std::to_string(k) +
                        " decoded the wrong bytes");
  }

  Rational load = measure_load(txs, params.file_bytes);
  json transcript;
  transcript["params"] = {{"N", cfg.N},
                          {"K", cfg.K},
                          {"t", cfg.t},
                          {"M", params.memory().to_string()},
                          {"F_bits", params.file_bytes * 8},
                          {"subpiece_bytes", params.subpiece_bytes()},
                          {"seed", cfg.seed}};
  transcript["demand"] = json(cfg.demand);
  transcript["leaders"] = leaders_json;
  transcript["per_user_codewords"] = json(counts);
  transcript["total_bits"] = static_cast<std::uint64_t>(total_bytes) * 8;
  transcript["load_exact"] = load.to_string();
  transcript["load_float"] = rendered_float(load);
  transcript["decode_ok"] = true;
  return transcript;
}

json run_analyze(int N, int K, int t,
                 const std::optional<DemandVector>& demand) {
  json out;
  out["params"] = {{"N", N},
                   {"K", K},
                   {"t", t},
                   {"M", Rational(int128(t) * N, K).to_string()}};
  if (demand) {
    out["demand"] = json(*demand);
    out["per_demand_load"] = load_json(per_demand_load(N, K, t, *demand));
  }
  out["average_load"] = load_json(average_load(N, K, t));
  out["worst_case_load"] = load_json(worst_case_load(N, K, t));
  out["ji_d2d_load"] = load_json(ji_d2d_load(N, K, t));
  out["shared_link_load"] =
      load_json(shared_link_load(N, K, t, std::min(N, K)));
  return out;
}

json run_verify(int max_n, int max_k, int threads) {
  if (max_n < 1 || max_k < 2 || max_n > 5 || max_k > 6)
    throw std::invalid_argument("verify: caps must satisfy N in [1..5], K in [2..6]");
  if (threads <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    threads = std::clamp<int>(static_cast<int>(hw), 1, 8);
  }

  json checks_json = json::array();
  auto record = [&](const std::string& name, const std::string& scope,
                    std::optional<json> witness) {
    checks_json.push_back({{"name", name},
                           {"scope", scope},
                           {"pass", !witness.has_value()},
                           {"witness", witness ? *witness : json()}});
  };
  auto scope_str = [&](int cap_n, int cap_k) {
    return "N<=" + std::to_string(cap_n) + ",K<=" + std::to_string(cap_k) +
           ",all t,all demands";
  };

  int perm_n = std::min(max_n, 4), perm_k = std::min(max_k, 4);

  std::optional<json> w;

  w.reset();
  for (int N = 1; N <= max_n && !w; ++N)
    for (int K = 2; K <= max_k && !w; ++K)
      for (int t = 1; t <= K && !w; ++t)
        w = checks::round_trip_all(N, K, t, threads);
  record("simulation_round_trip_and_load_formula", scope_str(max_n, max_k), w);

  w.reset();
  for (int N = 1; N <= max_n && !w; ++N)
    for (int K = 2; K <= max_k && !w; ++K)
      for (int t = 1; t <= K && !w; ++t)
        w = checks::average_consistency(N, K, t);
  record("average_load_shortcut_and_converse", scope_str(max_n, max_k), w);

  w.reset();
  for (int N = 1; N <= max_n && !w; ++N)
    for (int K = 2; K <= max_k && !w; ++K)
      for (int t = 1; t <= K && !w; ++t)
        w = checks::worst_consistency(N, K, t);
  record("worst_case_load_and_converse", scope_str(max_n, max_k), w);

  w.reset();
  for (int N = 1; N <= perm_n && !w; ++N)
    for (int K = 2; K <= perm_k && !w; ++K)
      w = checks::coefficient_symmetry(N, K);
  record("permutation_coefficient_symmetry", scope_str(perm_n, perm_k), w);

  w.reset();
  for (int N = 1; N <= perm_n && !w; ++N)
    for (int K = 2; K <= perm_k && !w; ++K)
      for (int t = 1; t <= K && !w; ++t)
        w = checks::acyclic_tightness(N, K, t);
  record("acyclic_bound_tightness", scope_str(perm_n, perm_k), w);

  w.reset();
  for (int N = 1; N <= perm_n && !w; ++N)
    for (int K = 2; K <= perm_k && !w; ++K)
      w = checks::level_coefficient_closed_form(N, K);
  record("level_coefficient_closed_form", scope_str(perm_n, perm_k), w);

  w.reset();
  for (int N = 1; N <= max_n && !w; ++N)
    for (int K = 2; K <= max_k && !w; ++K)
      for (int t = 1; t <= K && !w; ++t)
        w = checks::decomposition_identity(N, K, t);
  record("shared_link_decomposition", scope_str(max_n, max_k), w);

  w.reset();
  for (int N = 1; N <= max_n && !w; ++N)
    for (int K = 2; K <= max_k && !w; ++K)
      for (int t = 1; t <= K && !w; ++t) {
        w = checks::span_property(N, K, t);
        if (!w) w = checks::zero_sum_identity(N, K, t);
      }
  record("pruned_codeword_span_and_zero_sum", scope_str(max_n, max_k), w);

  w.reset();
  for (int N = 1; N <= max_n && !w; ++N)
    for (int K = 2; K <= max_k && !w; ++K)
      for (int t = 1; t <= K && !w; ++t)
        w = checks::placement_stats_check(N, K, t);
  record("placement_level_stats", scope_str(max_n, max_k), w);

  w.reset();
  for (DemandMode mode : {DemandMode::worst, DemandMode::average}) {
    if (w) break;
    w = checks::curve_properties(max_n, max_k, mode);
  }
  if (!w) w = checks::curve_properties(10, 20, DemandMode::worst);
  record("curve_monotonicity_and_convexity", "grid on [N/K,N]", w);

  json report;
  report["params"] = {{"max_N", max_n}, {"max_K", max_k}, {"threads", threads}};
  report["checks"] = checks_json;
  bool all = true;
  for (const auto& c : checks_json) all = all && c["pass"].get<bool>();
  report["pass"] = all;
  return report;
}

bool verify_passed(const json& report) {
  return report.at("pass").get<bool>();
}

}  // namespace d2dcache
