#pragma once

#include <random>

#include "teamlab/model.hpp"

namespace testing {

// Random valid configuration; team size in [lo_n, hi_n].
inline teamlab::TeamConfig random_config(std::mt19937_64& rng, int lo_n = 2, int hi_n = 8) {
  std::uniform_real_distribution<double> omega(5.0, 40.0), beta(0.2, 0.85), cost(0.5, 4.0), cap(2.0, 20.0);
  std::uniform_int_distribution<int> n(lo_n, hi_n);
  return teamlab::TeamConfig{omega(rng), beta(rng), cost(rng), n(rng), cap(rng)};
}

inline teamlab::MechanismStrengths random_mech(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> b(0.0, 1.0), c(0.0, 0.9);
  return teamlab::MechanismStrengths{b(rng), c(rng)};
}

inline teamlab::LoyaltyProfile random_loyalty(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  teamlab::LoyaltyProfile p;
  for (int i = 0; i < n; ++i) p.values.push_back(u(rng));
  return p;
}

inline teamlab::ActionProfile random_actions(std::mt19937_64& rng, const teamlab::TeamConfig& config,
                                             double lo = 0.0) {
  std::uniform_real_distribution<double> u(lo, config.effort_cap);
  teamlab::ActionProfile a;
  for (int i = 0; i < config.team_size; ++i) a.efforts.push_back(u(rng));
  return a;
}

}  // namespace testing
