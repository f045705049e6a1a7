#include <random>

#include "cpds/report.hpp"
#include "cpds/separation.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace cpds;
using namespace cpds::testing;

namespace {

milp::Assignment zero_assignment(const FormulationModel& model) {
  milp::Assignment x;
  x.value.assign(model.spec.vars.size(), 0.0);
  return x;
}

void set_var(const FormulationModel& model, milp::Assignment& x, const std::string& name,
             double value) {
  for (std::size_t j = 0; j < model.spec.vars.size(); ++j)
    if (model.spec.vars[j].name == name) {
      x.value[j] = value;
      return;
    }
  FAIL("no variable named ", name);
}

}  // namespace

TEST_CASE("decode_rho reconstructs the figure-1 solution") {
  Instance inst = g7(2);
  FormulationModel model = build_fps_ip(inst);
  milp::Assignment x = zero_assignment(model);
  set_var(model, x, "s_a", 1.0);
  set_var(model, x, "w_a_b", 1.0);
  set_var(model, x, "w_a_d", 1.0);
  CapFunction rho = decode_rho(inst, model.layout, x);
  REQUIRE(rho.placed == std::vector<int>{gid('a')});
  CHECK(*rho.monitored_neighbors(gid('a')) == std::vector<int>{gid('b'), gid('d')});

  SUBCASE("all-zero assignment decodes to the empty function") {
    CapFunction empty = decode_rho(inst, model.layout, zero_assignment(model));
    CHECK(empty.placed.empty());
  }
  SUBCASE("low-degree placements take the whole neighborhood") {
    Instance loose = g7(3);
    FormulationModel m3 = build_fps_ip(loose);
    milp::Assignment y = zero_assignment(m3);
    set_var(m3, y, "s_a", 1.0);
    CapFunction rho3 = decode_rho(loose, m3.layout, y);
    CHECK(*rho3.monitored_neighbors(gid('a')) ==
          std::vector<int>{gid('b'), gid('d'), gid('e')});
  }
}

TEST_CASE("FPS separation rejects the cyclic propagation point") {
  Instance inst = g7(2);
  FormulationModel model = build_fps_ip(inst);
  Separator separator(inst, model, 7);
  milp::Assignment x = zero_assignment(model);
  set_var(model, x, "y_a_b", 1.0);
  set_var(model, x, "y_b_c", 1.0);
  set_var(model, x, "y_c_d", 1.0);
  milp::LazyVerdict verdict = separator(x);
  REQUIRE_FALSE(verdict.feasible);
  REQUIRE_FALSE(verdict.rows.empty());
  for (const auto& row : verdict.rows) {
    CHECK(row.violation(x.value) > milp::kViolationTol);
    CHECK(row.rhs == doctest::Approx(static_cast<double>(row.terms.size()) - 1.0));
  }
}

TEST_CASE("EFPS separation emits the phi(C) row on the 2-cycle") {
  Instance inst = g7(2);
  FormulationModel model = build_efps_ip(inst);
  Separator separator(inst, model, 3);
  milp::Assignment x = zero_assignment(model);
  set_var(model, x, "y_a_b", 1.0);
  set_var(model, x, "y_b_c", 1.0);
  set_var(model, x, "y_c_d", 1.0);
  milp::LazyVerdict verdict = separator(x);
  REQUIRE_FALSE(verdict.feasible);
  bool has_two_cycle_row = false;
  for (const auto& row : verdict.rows) {
    CHECK(row.violation(x.value) > milp::kViolationTol);
    if (row.rhs == 1.0 && row.terms.size() == 4) has_two_cycle_row = true;
  }
  // the chordless trim of any found cycle here is the (b,d) 2-cycle
  CHECK(has_two_cycle_row);
}

TEST_CASE("feasible assignments pass separation") {
  Instance inst = g7(2);
  for (FormulationKind kind :
       {FormulationKind::fps_ip, FormulationKind::efps_ip, FormulationKind::fort_ip}) {
    FormulationModel model = build_model(inst, kind, {});
    CapFunction fig1;
    fig1.add(gid('a'), {gid('b'), gid('d')});
    auto encoded = encode_solution(inst, model, fig1);
    REQUIRE(encoded.has_value());
    Separator separator(inst, model, 1);
    milp::LazyVerdict verdict = separator(milp::Assignment{*encoded});
    CHECK(verdict.feasible);
  }
}

TEST_CASE("fort separation cuts the zero assignment") {
  Instance inst = g7(2);
  FormulationModel model = build_fort_ip(inst);
  Separator separator(inst, model, 5);
  milp::LazyVerdict verdict = separator(zero_assignment(model));
  REQUIRE_FALSE(verdict.feasible);
  REQUIRE(verdict.rows.size() == 1);
  CHECK(verdict.rows[0].sense == milp::Row::Sense::ge);
  CHECK(verdict.rows[0].violation(zero_assignment(model).value) > milp::kViolationTol);
}

TEST_CASE("fort separation on a capacitated stuck point") {
  Instance inst = g7(1);
  FormulationModel model = build_fort_ip(inst);
  Separator separator(inst, model, 5);
  milp::Assignment x = zero_assignment(model);
  set_var(model, x, "s_e", 1.0);
  // deg(e)=1 <= k: rho(e) = {a}; monitored = {e,a}; fort from {b,c,d,f,g}
  milp::LazyVerdict verdict = separator(x);
  REQUIRE_FALSE(verdict.feasible);
  CHECK(verdict.rows[0].violation(x.value) > milp::kViolationTol);
}

TEST_CASE("solve_cpds reaches the figure-1 optimum on every formulation") {
  Instance inst = g7(2);
  auto backend = milp::make_bnb_backend();
  for (FormulationKind kind :
       {FormulationKind::fps_ip, FormulationKind::efps_ip, FormulationKind::bri_ip,
        FormulationKind::jov_ip, FormulationKind::fort_ip}) {
    SolveReport report = solve_cpds(inst, kind, {}, {}, *backend);
    CHECK(report.status == "optimal");
    CHECK(report.objective == doctest::Approx(1.0));
    CHECK(report.verified);
    CHECK(is_power_dominating(inst, report.rho));
  }
}

TEST_CASE("callback and iterative modes agree across seeds and kinds") {
  std::mt19937_64 rng(606);
  auto backend = milp::make_bnb_backend();
  for (int trial = 0; trial < 12; ++trial) {
    int n = 4 + static_cast<int>(rng() % 5);
    Instance inst = generate_random_connected(n, static_cast<int>(rng() % n),
                                              trial % 2 ? "all" : "half", rng(),
                                              static_cast<int>(rng() % 3));
    for (FormulationKind kind :
         {FormulationKind::fps_ip, FormulationKind::efps_ip, FormulationKind::fort_ip}) {
      milp::SolveLimits limits;
      limits.seed = rng();
      SolveReport callback_mode = solve_cpds(inst, kind, {}, limits, *backend, false);
      SolveReport loop_mode = solve_cpds(inst, kind, {}, limits, *backend, true);
      CHECK(callback_mode.status == "optimal");
      CHECK(loop_mode.status == "optimal");
      CHECK(callback_mode.objective == doctest::Approx(loop_mode.objective));
    }
  }
}

TEST_CASE("fort modes agree on a 20-vertex random graph") {
  Instance inst = generate_random_connected(20, 12, "half", 99, 1);
  auto backend = milp::make_bnb_backend();
  milp::SolveLimits limits;
  limits.time_limit_s = 120.0;
  SolveReport callback_mode = solve_cpds(inst, FormulationKind::fort_ip, {}, limits, *backend);
  SolveReport loop_mode = solve_cpds(inst, FormulationKind::fort_ip, {}, limits, *backend, true);
  CHECK(callback_mode.status == "optimal");
  CHECK(loop_mode.status == "optimal");
  CHECK(callback_mode.objective == doctest::Approx(loop_mode.objective));
}

TEST_CASE("disconnected instances decompose and sum") {
  // g7 plus a far-away edge with a zero-injection endpoint
  std::string text =
      "p cpds 9 8\nz a b c d x\ne a b\ne b c\ne c d\ne d a\ne a e\ne b f\ne c g\ne x y\n";
  Instance inst = parse_instance(text, 2);
  auto backend = milp::make_bnb_backend();
  SolveReport report = solve_cpds(inst, FormulationKind::efps_ip, {}, {}, *backend);
  CHECK(report.components == 2);
  CHECK(report.status == "optimal");
  CHECK(report.objective == doctest::Approx(2.0));  // 1 for g7, 1 for the edge
  CHECK(report.verified);
  CHECK(is_power_dominating(inst, report.rho));
}

TEST_CASE("warm start does not change optima") {
  Instance inst = g7(2);
  auto backend = milp::make_bnb_backend();
  SolveReport with = solve_cpds(inst, FormulationKind::efps_ip, {}, {}, *backend, false, true);
  SolveReport without = solve_cpds(inst, FormulationKind::efps_ip, {}, {}, *backend, false, false);
  CHECK(with.objective == doctest::Approx(without.objective));
}
