#pragma once

// Hand-built reference frameworks and a seeded random generator shared by the
// unit and acceptance suites.

#include <cstdint>
#include <random>
#include <string>

#include "argverify/baba/framework.hpp"

namespace argverify::testing {

// G1: b attacks a.
inline baba::BipolarFramework g1() {
  return baba::FrameworkBuilder().assumption("a").assumption("b").attack("b", "a").build();
}

// G2: c supports a, b attacks a.
inline baba::BipolarFramework g2() {
  return baba::FrameworkBuilder()
      .assumption("a")
      .assumption("b")
      .assumption("c")
      .support("c", "a")
      .attack("b", "a")
      .build();
}

// G3: c attacks b, b attacks a.
inline baba::BipolarFramework g3() {
  return baba::FrameworkBuilder()
      .assumption("a")
      .assumption("b")
      .assumption("c")
      .attack("c", "b")
      .attack("b", "a")
      .build();
}

struct RandomFrameworkOptions {
  int min_assumptions = 0;
  int max_assumptions = 10;
  int max_facts = 0;
};

// Densities are drawn per framework so the suite covers sparse support-heavy
// and dense attack-heavy shapes.
inline baba::BipolarFramework random_framework(std::mt19937_64& rng, const RandomFrameworkOptions& opt = {}) {
  std::uniform_int_distribution<int> size(opt.min_assumptions, opt.max_assumptions);
  std::uniform_int_distribution<int> facts(0, opt.max_facts);
  std::uniform_real_distribution<double> density(0.0, 0.35);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  const int n = size(rng);
  const int m = facts(rng);
  const double p_support = density(rng);
  const double p_attack = density(rng);

  auto aid = [](int i) { return "a" + std::to_string(i); };
  baba::FrameworkBuilder b;
  for (int i = 0; i < n; ++i) b.assumption(aid(i), "assumption " + std::to_string(i));
  for (int i = 0; i < m; ++i) b.fact("f" + std::to_string(i), "fact " + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (coin(rng) < p_support) b.support(aid(i), aid(j));
      if (coin(rng) < p_attack) b.attack(aid(i), aid(j));
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (coin(rng) < 0.15) b.attack("f" + std::to_string(i), aid(j));
  return b.build();
}

}  // namespace argverify::testing
