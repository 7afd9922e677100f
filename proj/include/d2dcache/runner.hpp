#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "d2dcache/demand.hpp"

namespace d2dcache {

using json = nlohmann::ordered_json;

struct SimulateConfig {
  int N = 0;
  int K = 0;
  int t = 0;
  DemandVector demand;
  std::uint64_t seed = 0;
  std::size_t subpiece_bytes = 1;
  bool corrupt_placement = false;  // negative-test hook
};

// Full end-to-end run: random library from seed, placement, encode,
// decode with bit-exact assertion, transcript with the exact load.
// Throws DecodeError on a recovery mismatch.
json run_simulate(const SimulateConfig& cfg);

// Closed-form loads at one parameter point.
json run_analyze(int N, int K, int t,
                 const std::optional<DemandVector>& demand);

// Exhaustive invariant/oracle suite at bounded N, K. threads <= 0 means
// use the hardware default.
json run_verify(int max_n, int max_k, int threads);

bool verify_passed(const json& report);

}  // namespace d2dcache
