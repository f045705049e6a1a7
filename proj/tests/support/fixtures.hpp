#ifndef CPDS_TESTS_FIXTURES_HPP
#define CPDS_TESTS_FIXTURES_HPP

#include <random>
#include <string>
#include <vector>

#include "cpds/instance.hpp"
#include "cpds/propagation.hpp"

namespace cpds::testing {

/// The 7-vertex running example: square a-b-c-d with pendants e,f,g on a,b,c
/// and zero-injection set {a,b,c,d}. Ids: a=0 b=1 c=2 d=3 e=4 f=5 g=6.
inline Instance g7(int k = 2) {
  const std::string text =
      "c running example\n"
      "p cpds 7 7\n"
      "z a b c d\n"
      "e a b\n"
      "e b c\n"
      "e c d\n"
      "e d a\n"
      "e a e\n"
      "e b f\n"
      "e c g\n";
  Instance inst = parse_instance(text, k);
  inst.set_name("g7");
  return inst;
}

inline int gid(char label) {
  switch (label) {
    case 'a': return 0;
    case 'b': return 1;
    case 'c': return 2;
    case 'd': return 3;
    case 'e': return 4;
    case 'f': return 5;
    case 'g': return 6;
  }
  return -1;
}

/// Hexagon a-b-c-d-e-f-a with zero-injection {a,c,e}. Ids a=0..f=5 (labels
/// appear in edge order before the z line).
inline Instance h6(int k = 0) {
  const std::string text =
      "p cpds 6 6\n"
      "e a b\ne b c\ne c d\ne d e\ne e f\ne f a\n"
      "z a c e\n";
  Instance inst = parse_instance(text, k);
  inst.set_name("h6");
  return inst;
}

/// Random capacitated function over a random placed set; respects |rho(u)|<=k.
inline CapFunction random_rho(const Instance& inst, std::mt19937_64& rng,
                              double place_probability = 0.3) {
  CapFunction rho;
  const int k = inst.capacity();
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int v = 0; v < inst.vertex_count(); ++v) {
    if (coin(rng) >= place_probability) continue;
    std::vector<int> pool = inst.neighbors(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    int take = static_cast<int>(rng() % (std::min<std::size_t>(pool.size(), k) + 1));
    pool.resize(take);
    rho.add(v, pool);
  }
  return rho;
}

}  // namespace cpds::testing

#endif
