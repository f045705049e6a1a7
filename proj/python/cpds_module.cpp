#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpds/bench.hpp"
#include "cpds/fps.hpp"
#include "cpds/oracle.hpp"
#include "cpds/report.hpp"
#include "cpds/separation.hpp"

namespace py = pybind11;

namespace {

cpds::SolveReport solve_helper(const cpds::Instance& inst, const std::string& model,
                               double time_limit, std::uint64_t seed, bool iterative) {
  auto [kind, options] = cpds::parse_formulation(model);
  cpds::milp::SolveLimits limits;
  limits.time_limit_s = time_limit;
  limits.seed = seed;
  auto backend = cpds::milp::make_bnb_backend();
  return cpds::solve_cpds(inst, kind, options, limits, *backend, iterative);
}

py::dict report_to_dict(const cpds::SolveReport& report) {
  py::dict out;
  out["instance"] = report.instance_name;
  out["n"] = report.n;
  out["m"] = report.m;
  out["k"] = report.k;
  out["model"] = report.model;
  out["status"] = report.status;
  out["objective"] = report.objective;
  out["bound"] = report.bound;
  out["gap"] = report.gap;
  out["time_s"] = report.wall_s;
  out["sep_time_s"] = report.sep_s;
  out["lazy_rows"] = report.lazy_rows;
  out["init_rows"] = report.init_rows;
  out["vars"] = report.vars;
  out["verified"] = report.verified;
  py::dict placement;
  for (std::size_t i = 0; i < report.rho.placed.size(); ++i)
    placement[py::int_(report.rho.placed[i])] = report.rho.assignment[i];
  out["placement"] = placement;
  return out;
}

}  // namespace

PYBIND11_MODULE(cpds_py, m) {
  m.doc() = "Capacitated power dominating set solvers";

  py::class_<cpds::Instance>(m, "Instance")
      .def_property_readonly("n", &cpds::Instance::vertex_count)
      .def_property_readonly("m", &cpds::Instance::edge_count)
      .def_property_readonly("k", &cpds::Instance::capacity)
      .def("degree", &cpds::Instance::degree)
      .def("neighbors", &cpds::Instance::neighbors)
      .def("label", &cpds::Instance::label)
      .def("is_zero_injection", &cpds::Instance::is_zero_injection)
      .def("with_capacity", &cpds::Instance::with_capacity)
      .def("__repr__", [](const cpds::Instance& inst) {
        return "<Instance n=" + std::to_string(inst.vertex_count()) +
               " m=" + std::to_string(inst.edge_count()) +
               " k=" + std::to_string(inst.capacity()) + ">";
      });

  m.def("parse_instance", &cpds::parse_instance, py::arg("text"), py::arg("capacity") = 0);
  m.def("write_instance", &cpds::write_instance);
  m.def(
      "generate_grid",
      [](int rows, int cols, double diag, const std::string& zi, std::uint64_t seed, int k) {
        return cpds::generate_grid(rows, cols, diag, zi, seed, k);
      },
      py::arg("rows"), py::arg("cols"), py::arg("diagonal_probability") = 0.0,
      py::arg("zi_mode") = "all", py::arg("seed") = 1, py::arg("capacity") = 0);

  m.def(
      "monitored_set",
      [](const cpds::Instance& inst, const std::map<int, std::vector<int>>& rho_map) {
        cpds::CapFunction rho;
        for (const auto& [u, neighbors] : rho_map) rho.add(u, neighbors);
        cpds::CalcTrace trace = cpds::monitored_set(inst, rho);
        std::vector<int> monitored;
        for (int v = 0; v < inst.vertex_count(); ++v)
          if (trace.is_monitored(v)) monitored.push_back(v);
        return monitored;
      },
      py::arg("instance"), py::arg("rho"));

  m.def(
      "is_power_dominating",
      [](const cpds::Instance& inst, const std::map<int, std::vector<int>>& rho_map) {
        cpds::CapFunction rho;
        for (const auto& [u, neighbors] : rho_map) rho.add(u, neighbors);
        return cpds::is_power_dominating(inst, rho);
      },
      py::arg("instance"), py::arg("rho"));

  m.def(
      "brute_force",
      [](const cpds::Instance& inst, int bound) {
        cpds::OracleResult result = cpds::brute_force_cpds(inst, bound);
        py::dict out;
        out["optimum"] = result.optimum;
        out["nodes"] = result.nodes_enumerated;
        py::dict placement;
        for (std::size_t i = 0; i < result.witness.placed.size(); ++i)
          placement[py::int_(result.witness.placed[i])] = result.witness.assignment[i];
        out["placement"] = placement;
        return out;
      },
      py::arg("instance"), py::arg("bound") = 12);

  m.def(
      "solve",
      [](const cpds::Instance& inst, const std::string& model, double time_limit,
         std::uint64_t seed, bool iterative) {
        return report_to_dict(solve_helper(inst, model, time_limit, seed, iterative));
      },
      py::arg("instance"), py::arg("model") = "EFPS-IP-OutP-Init",
      py::arg("time_limit") = 900.0, py::arg("seed") = 1, py::arg("iterative") = false);

  m.def(
      "k_star",
      [](const cpds::Instance& inst, const std::string& model, double time_limit) {
        auto [kind, options] = cpds::parse_formulation(model);
        cpds::milp::SolveLimits limits;
        limits.time_limit_s = time_limit;
        auto backend = cpds::milp::make_bnb_backend();
        return cpds::k_star(inst, [&](const cpds::Instance& capped) {
          return cpds::milp_optimum(capped, kind, options, limits, *backend);
        });
      },
      py::arg("instance"), py::arg("model") = "EFPS-IP-OutP-Init", py::arg("time_limit") = 900.0);
}
