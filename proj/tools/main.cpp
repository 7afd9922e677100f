#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "d2dcache/analysis.hpp"
#include "d2dcache/runner.hpp"
#include "d2dcache/scheme.hpp"

namespace {

// Exit codes: 0 ok, 1 bad config, 2 decode failure, 3 verification
// failure, 4 I/O error.
enum ExitCode {
  kOk = 0,
  kBadConfig = 1,
  kDecodeFailure = 2,
  kVerifyFailure = 3,
  kIoError = 4,
};

int env_threads() {
  const char* v = std::getenv("D2D_CACHE_THREADS");
  if (!v) return 0;
  try {
    return std::max(1, std::stoi(v));
  } catch (...) {
    return 0;
  }
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + path);
  out << content;
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

// Either an explicit vector, "worst", or empty (caller decides).
d2dcache::DemandVector resolve_demand(const std::string& spec, int N, int K) {
  if (spec == "worst") return d2dcache::worst_case_demand(N, K);
  return d2dcache::parse_demand(spec, N, K);
}

int resolve_t(int N, int K, std::optional<int> t, std::optional<double> m,
              bool need_integral) {
  if (t.has_value() == m.has_value())
    throw CLI::ValidationError("exactly one of --t or --m must be given");
  if (t) return *t;
  double raw = *m * K / N;
  int rounded = static_cast<int>(raw + 0.5);
  if (need_integral && std::abs(raw - rounded) > 1e-9)
    throw CLI::ValidationError("--m must correspond to integer t = KM/N");
  return rounded;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-shot D2D coded caching: simulation, analysis, converse "
               "verification and trade-off curves"};
  app.require_subcommand(1);

  int N = 2, K = 4;
  std::optional<int> t_flag;
  std::optional<double> m_flag;
  std::string demand_spec = "worst";
  int samples = 1;
  std::uint64_t seed = 0;
  std::size_t subpiece_bytes = 1;
  std::string out_path;
  std::string format = "json";
  int grid_points = 0;
  std::string caps = "3,4";
  std::string mode_str = "worst";
  bool inject_corruption = false;

  auto add_common = [&](CLI::App* cmd, bool with_t) {
    cmd->add_option("--n", N, "Number of files N")->required();
    cmd->add_option("--k", K, "Number of users K")->required();
    if (with_t) {
      cmd->add_option("--t", t_flag, "Integer cache parameter t = KM/N");
      cmd->add_option("--m", m_flag, "Memory per user in file units")
          ->excludes(cmd->get_option("--t"));
    }
    cmd->add_option("--out", out_path, "Output path ('-' for stdout)");
    cmd->add_option("--format", format, "Output format: json or csv");
  };

  auto* sim = app.add_subcommand("simulate", "Bit-exact end-to-end run");
  add_common(sim, true);
  sim->add_option("--demand", demand_spec,
                  "Comma-separated demand vector, or 'worst'");
  sim->add_option("--samples", samples, "Number of random demands to run");
  sim->add_option("--seed", seed, "RNG seed (mt19937_64)");
  sim->add_option("--subpiece-bytes", subpiece_bytes, "Sub-piece size");
  sim->add_flag("--inject-corruption", inject_corruption,
                "Corrupt one placement byte (negative test)")
      ->group("");

  auto* ana = app.add_subcommand("analyze", "Closed-form loads at one point");
  add_common(ana, true);
  ana->add_option("--demand", demand_spec,
                  "Comma-separated demand vector, or 'worst'");

  auto* cur = app.add_subcommand("curve", "Memory-load trade-off CSV");
  add_common(cur, false);
  cur->add_option("--demand", mode_str, "Demand mode: worst or average");
  cur->add_option("--grid-points", grid_points,
                  "Grid size on [N/K, N] (default 4K+1)");

  auto* ver = app.add_subcommand("verify", "Exhaustive invariant suite");
  ver->add_option("--caps", caps, "Bounds 'maxN,maxK' (default 3,4)");
  ver->add_option("--out", out_path, "Output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kBadConfig;
  }

  try {
    if (sim->parsed()) {
      d2dcache::SimulateConfig cfg;
      cfg.N = N;
      cfg.K = K;
      cfg.t = resolve_t(N, K, t_flag, m_flag, true);
      cfg.seed = seed;
      cfg.subpiece_bytes = subpiece_bytes;
      cfg.corrupt_placement = inject_corruption;
      d2dcache::json out;
      if (samples > 1) {
        std::mt19937_64 rng(seed);
        out = d2dcache::json::array();
        for (int r = 0; r < samples; ++r) {
          cfg.demand.clear();
          for (int k = 0; k < K; ++k)
            cfg.demand.push_back(1 + static_cast<int>(rng() % N));
          cfg.seed = rng();
          out.push_back(d2dcache::run_simulate(cfg));
        }
      } else {
        cfg.demand = resolve_demand(demand_spec, N, K);
        out = d2dcache::run_simulate(cfg);
      }
      write_output(out_path, out.dump(2) + "\n");
    } else if (ana->parsed()) {
      int t = resolve_t(N, K, t_flag, m_flag, true);
      std::optional<d2dcache::DemandVector> d;
      if (!demand_spec.empty()) d = resolve_demand(demand_spec, N, K);
      write_output(out_path, d2dcache::run_analyze(N, K, t, d).dump(2) + "\n");
    } else if (cur->parsed()) {
      d2dcache::DemandMode mode = mode_str == "average"
                                      ? d2dcache::DemandMode::average
                                      : d2dcache::DemandMode::worst;
      if (mode_str != "average" && mode_str != "worst")
        throw CLI::ValidationError("--demand must be 'worst' or 'average'");
      int points = grid_points > 0 ? grid_points : 4 * K + 1;
      auto grid = d2dcache::default_memory_grid(N, K, points);
      write_output(out_path, d2dcache::curve_csv(N, K, mode, grid));
    } else if (ver->parsed()) {
      int max_n = 3, max_k = 4;
      if (std::sscanf(caps.c_str(), "%d,%d", &max_n, &max_k) != 2)
        throw CLI::ValidationError("--caps must be 'maxN,maxK'");
      d2dcache::json report =
          d2dcache::run_verify(max_n, max_k, env_threads());
      write_output(out_path, report.dump(2) + "\n");
      if (!d2dcache::verify_passed(report)) return kVerifyFailure;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const d2dcache::DecodeError& e) {
    std::cerr << "decode failure: " << e.what() << "\n";
    return kDecodeFailure;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  }
  return kOk;
}
