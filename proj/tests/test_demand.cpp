#include <doctest.h>

#include <algorithm>
#include <set>

#include "d2dcache/analysis.hpp"
#include "d2dcache/demand.hpp"

using namespace d2dcache;

TEST_CASE("distinct request counts") {
  CHECK(n_distinct({1, 2, 1, 1}) == 2);
  CHECK(n_distinct({1, 1, 1, 1}) == 1);
  CHECK(n_distinct({1, 2, 3}) == 3);

  CHECK(n_distinct_excluding({1, 2, 1, 1}, 2) == 1);
  CHECK(n_distinct_excluding({1, 2, 1, 1}, 1) == 2);
  CHECK(n_distinct_excluding({1, 2, 1, 1}, 3) == 2);
  CHECK(n_distinct_excluding({1, 2, 1, 1}, 4) == 2);
  CHECK(n_distinct_excluding({1, 1}, 1) == 1);
  CHECK_THROWS(n_distinct_excluding({1, 1}, 3));
}

TEST_CASE("excluding one user changes the count iff its file is unique") {
  for_each_demand(3, 4, [](const DemandVector& d) {
    int full = n_distinct(d);
    for (int k = 1; k <= 4; ++k) {
      int excl = n_distinct_excluding(d, k);
      int multiplicity =
          static_cast<int>(std::count(d.begin(), d.end(), d[k - 1]));
      CHECK(excl == (multiplicity == 1 ? full - 1 : full));
    }
  });
}

TEST_CASE("composition of a demand") {
  CHECK(composition_of({1, 2, 1, 1}, 2) == std::vector<int>{3, 1});
  CHECK(composition_of({1, 2}, 2) == std::vector<int>{1, 1});
  CHECK(composition_of({2, 2, 2}, 3) == std::vector<int>{3, 0, 0});
}

TEST_CASE("type cardinality against exhaustive enumeration") {
  CHECK(type_cardinality({1, 1}, 2, 2) == 2);
  CHECK(type_cardinality({2, 0}, 2, 2) == 2);
  CHECK(type_cardinality({3, 1}, 2, 4) == 8);
  for (int N = 1; N <= 4; ++N)
    for (int K = 1; K <= 5; ++K)
      for (const auto& s : compositions_of_demands(N, K)) {
        int128 count = 0;
        for_each_demand(N, K, [&](const DemandVector& d) {
          if (composition_of(d, N) == s) ++count;
        });
        CHECK(type_cardinality(s, N, K) == count);
      }
}

TEST_CASE("leader selection picks lowest-index users of distinct files") {
  CHECK(select_leaders({1, 2, 1, 1}, 2).leaders == std::vector<int>{1});
  CHECK(select_leaders({1, 2, 1, 1}, 1).leaders == std::vector<int>{2, 3});
  CHECK(select_leaders({1, 2, 3}, 3).leaders == std::vector<int>{1, 2});
}

TEST_CASE("leader sets are sorted, sized Ne, and demand-distinct") {
  for_each_demand(3, 5, [](const DemandVector& d) {
    for (int i = 1; i <= 5; ++i) {
      LeaderSet ls = select_leaders(d, i);
      CHECK(static_cast<int>(ls.leaders.size()) ==
            n_distinct_excluding(d, i));
      CHECK(std::is_sorted(ls.leaders.begin(), ls.leaders.end()));
      std::set<int> files;
      for (int u : ls.leaders) {
        CHECK(u != i);
        CHECK(files.insert(d[u - 1]).second);
      }
    }
  });
}

TEST_CASE("worst-case demand examples") {
  CHECK(worst_case_demand(10, 5) == DemandVector{1, 2, 3, 4, 5});
  CHECK(worst_case_demand(2, 4) == DemandVector{1, 1, 2, 2});
  CHECK(worst_case_demand(3, 4) == DemandVector{1, 1, 2, 3});
}

TEST_CASE("worst-case demand maximizes the per-demand load") {
  for (int N = 1; N <= 4; ++N)
    for (int K = 2; K <= 4; ++K)
      for (int t = 1; t <= K; ++t) {
        Rational best(0);
        for_each_demand(N, K, [&](const DemandVector& d) {
          Rational v = per_demand_load(N, K, t, d);
          if (best < v) best = v;
        });
        CHECK(per_demand_load(N, K, t, worst_case_demand(N, K)) == best);
      }
}

TEST_CASE("every all-multiplicity>=2 composition attains the peak at K>=2N") {
  int N = 2, K = 5, t = 2;
  Rational peak = per_demand_load(N, K, t, worst_case_demand(N, K));
  for_each_demand(N, K, [&](const DemandVector& d) {
    auto s = composition_of(d, N);
    bool all_twice = std::all_of(s.begin(), s.end(),
                                 [](int c) { return c >= 2; });
    if (all_twice) CHECK(per_demand_load(N, K, t, d) == peak);
  });
}

TEST_CASE("demand parsing") {
  CHECK(parse_demand("1,2,1,1", 2, 4) == DemandVector{1, 2, 1, 1});
  CHECK_THROWS(parse_demand("1,2,1", 2, 4));
  CHECK_THROWS(parse_demand("1,2,1,3", 2, 4));
  CHECK_THROWS(parse_demand("1,x,1,1", 2, 4));
}
