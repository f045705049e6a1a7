#include <random>

#include "cpds/fort.hpp"
#include "cpds/instance.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace cpds;
using namespace cpds::testing;

TEST_CASE("fort definition checks on g7") {
  Instance inst = g7();
  CHECK(is_fort(inst, {gid('b'), gid('d'), gid('e'), gid('f'), gid('g')}));
  CHECK_FALSE(is_fort(inst, {}));
  CHECK_FALSE(is_fort(inst, {gid('e')}));
  std::vector<int> everything;
  for (int v = 0; v < inst.vertex_count(); ++v) everything.push_back(v);
  CHECK(is_fort(inst, everything));  // N(F) empty: trivially a fort
}

TEST_CASE("fort record carries boundary and capacity data") {
  Instance inst = g7(1);
  Fort fort = make_fort(inst, {gid('b'), gid('c'), gid('d'), gid('f'), gid('g')});
  CHECK(fort.boundary == std::vector<int>{gid('a')});
  REQUIRE(fort.capacitated_boundary.size() == 1);  // deg(a)=3 > k=1
  CHECK(fort.capacitated_boundary[0].first == gid('a'));
  CHECK(fort.capacitated_boundary[0].second == std::vector<int>{gid('b'), gid('d')});
}

TEST_CASE("unmonitored sets are forts") {
  Instance inst = g7(1);
  CapFunction rho;
  rho.add(gid('e'), {gid('a')});
  CalcTrace trace = monitored_set(inst, rho);
  Fort fort = fort_from_infeasible(inst, trace);
  CHECK(fort.members ==
        std::vector<int>{gid('b'), gid('c'), gid('d'), gid('f'), gid('g')});
  CHECK(is_fort(inst, fort.members));

  SUBCASE("empty rho gives the whole vertex set with empty boundary") {
    Fort whole = fort_from_infeasible(inst, monitored_set(inst, {}));
    CHECK(whole.members.size() == 7);
    CHECK(whole.boundary.empty());
  }
  SUBCASE("feasible traces are rejected") {
    Instance inst2 = g7(2);
    CapFunction fig1;
    fig1.add(gid('a'), {gid('b'), gid('d')});
    CHECK_THROWS_AS(fort_from_infeasible(inst2, monitored_set(inst2, fig1)), std::logic_error);
  }
}

TEST_CASE("minimize_fort reaches removal-stable forts") {
  Instance inst = g7();
  std::vector<int> everything;
  for (int v = 0; v < inst.vertex_count(); ++v) everything.push_back(v);
  Fort minimal = minimize_fort(inst, make_fort(inst, everything));
  CHECK(is_fort(inst, minimal.members));
  CHECK(minimal.minimal);
  // no single vertex can be removed
  for (int v : minimal.members) {
    std::vector<int> sub;
    for (int w : minimal.members)
      if (w != v) sub.push_back(w);
    CHECK_FALSE(is_fort(inst, sub));
  }

  SUBCASE("an already minimal fort is unchanged") {
    auto minimal_forts = enumerate_minimal_forts(inst);
    REQUIRE_FALSE(minimal_forts.empty());
    for (const auto& members : minimal_forts) {
      Fort out = minimize_fort(inst, make_fort(inst, members));
      CHECK(out.members == members);
    }
  }
}

TEST_CASE("minimize_fort on random graphs") {
  std::mt19937_64 rng(2029);
  for (int trial = 0; trial < 120; ++trial) {
    int n = 3 + static_cast<int>(rng() % 8);
    Instance inst = generate_random_connected(n, static_cast<int>(rng() % n), "half", rng(),
                                              static_cast<int>(rng() % 3));
    CapFunction rho = random_rho(inst, rng, 0.25);
    CalcTrace trace = monitored_set(inst, rho);
    if (trace.all_monitored()) continue;
    Fort fort = minimize_fort(inst, fort_from_infeasible(inst, trace));
    CHECK(is_fort(inst, fort.members));
    for (int v : fort.members) {
      std::vector<int> sub;
      for (int w : fort.members)
        if (w != v) sub.push_back(w);
      if (!sub.empty()) CHECK_FALSE(is_fort(inst, sub));
    }
  }
}

TEST_CASE("brute-force minimal forts are minimal and complete") {
  Instance inst = g7();
  auto family = enumerate_minimal_forts(inst);
  for (const auto& members : family) {
    CHECK(is_fort(inst, members));
    for (int v : members) {
      std::vector<int> sub;
      for (int w : members)
        if (w != v) sub.push_back(w);
      if (!sub.empty()) CHECK_FALSE(is_fort(inst, sub));
    }
  }
  // every fort contains a member of the family
  const int n = inst.vertex_count();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) members.push_back(v);
    if (!is_fort(inst, members)) continue;
    bool contains_minimal = false;
    for (const auto& small : family) {
      bool inside = true;
      for (int v : small)
        if (!(mask & (1u << v))) inside = false;
      if (inside) contains_minimal = true;
    }
    CHECK(contains_minimal);
  }
}
