#ifndef CPDS_ORACLE_HPP
#define CPDS_ORACLE_HPP

#include <functional>

#include "cpds/instance.hpp"
#include "cpds/propagation.hpp"

namespace cpds {

struct OracleResult {
  int optimum = 0;
  CapFunction witness;
  long nodes_enumerated = 0;
};

/// Exhaustive search by increasing |S|; for each placed vertex only maximal
/// useful assignments (size min(k, deg)) are tried, which preserves
/// optimality by monotonicity. Throws std::logic_error above `size_bound`.
OracleResult brute_force_cpds(const Instance& inst, int size_bound = 12);

/// The uncapacitated problem: k = max degree, rho(u) = N(u) forced.
OracleResult brute_force_pds(const Instance& inst, int size_bound = 12);

/// Smallest k with opt_CPDS(k) = opt_PDS; `cpds_optimum` supplies opt_CPDS(k)
/// given the instance re-capacitated to k.
int k_star(const Instance& inst, const std::function<int(const Instance&)>& cpds_optimum);

}  // namespace cpds

#endif
