#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>

#include "d2dcache/analysis.hpp"
#include "d2dcache/combinatorics.hpp"
#include "d2dcache/converse.hpp"
#include "d2dcache/demand.hpp"
#include "d2dcache/runner.hpp"

namespace py = pybind11;
using namespace d2dcache;

namespace {

// Rationals cross the boundary as (numerator, denominator) pairs; the
// Python wrapper turns them into fractions.Fraction.
std::pair<long long, long long> as_pair(const Rational& r) {
  auto narrow = [](int128 v) {
    long long out = static_cast<long long>(v);
    if (static_cast<int128>(out) != v)
      throw std::overflow_error("rational does not fit in 64 bits");
    return out;
  };
  return {narrow(r.num()), narrow(r.den())};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "One-shot D2D coded caching: exact loads, bit-exact simulation, "
            "converse checks";

  m.def("binom", &binom, py::arg("x"), py::arg("y"),
        "Binomial with the zero convention for x < y or x <= 0");

  m.def(
      "per_demand_load",
      [](int N, int K, int t, const DemandVector& d) {
        return as_pair(per_demand_load(N, K, t, d));
      },
      py::arg("N"), py::arg("K"), py::arg("t"), py::arg("demand"));
  m.def(
      "average_load",
      [](int N, int K, int t) { return as_pair(average_load(N, K, t)); },
      py::arg("N"), py::arg("K"), py::arg("t"));
  m.def(
      "worst_case_load",
      [](int N, int K, int t) { return as_pair(worst_case_load(N, K, t)); },
      py::arg("N"), py::arg("K"), py::arg("t"));
  m.def(
      "ji_d2d_load",
      [](int N, int K, int t) { return as_pair(ji_d2d_load(N, K, t)); },
      py::arg("N"), py::arg("K"), py::arg("t"));
  m.def(
      "shared_link_load",
      [](int N, int K, int t, int n_e) {
        return as_pair(shared_link_load(N, K, t, n_e));
      },
      py::arg("N"), py::arg("K"), py::arg("t"), py::arg("n_e"));
  m.def(
      "average_converse",
      [](int N, int K, long long m_num, long long m_den) {
        return as_pair(average_converse(N, K, Rational(m_num, m_den)));
      },
      py::arg("N"), py::arg("K"), py::arg("m_num"), py::arg("m_den"));

  m.def("n_distinct", &n_distinct, py::arg("demand"));
  m.def("n_distinct_excluding", &n_distinct_excluding, py::arg("demand"),
        py::arg("k"));
  m.def("worst_case_demand", &worst_case_demand, py::arg("N"), py::arg("K"));
  m.def(
      "select_leaders",
      [](const DemandVector& d, int i) { return select_leaders(d, i).leaders; },
      py::arg("demand"), py::arg("i"));

  m.def(
      "simulate_json",
      [](int N, int K, int t, const DemandVector& d, std::uint64_t seed,
         std::size_t subpiece_bytes) {
        SimulateConfig cfg;
        cfg.N = N;
        cfg.K = K;
        cfg.t = t;
        cfg.demand = d;
        cfg.seed = seed;
        cfg.subpiece_bytes = subpiece_bytes;
        return run_simulate(cfg).dump(2);
      },
      py::arg("N"), py::arg("K"), py::arg("t"), py::arg("demand"),
      py::arg("seed") = 0, py::arg("subpiece_bytes") = 1);

  m.def(
      "curve_csv",
      [](int N, int K, const std::string& mode, int grid_points) {
        DemandMode m_ = mode == "average" ? DemandMode::average
                                          : DemandMode::worst;
        if (mode != "average" && mode != "worst")
          throw std::invalid_argument("mode must be 'worst' or 'average'");
        int points = grid_points > 0 ? grid_points : 4 * K + 1;
        return curve_csv(N, K, m_, default_memory_grid(N, K, points));
      },
      py::arg("N"), py::arg("K"), py::arg("mode") = "worst",
      py::arg("grid_points") = 0);

  m.def(
      "verify_json",
      [](int max_n, int max_k) { return run_verify(max_n, max_k, 0).dump(2); },
      py::arg("max_n") = 3, py::arg("max_k") = 4);
}
