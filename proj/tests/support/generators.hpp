// Seeded random problem instances shared by the unit and acceptance suites.
#pragma once

#include <random>
#include <vector>

#include "gencol/problem.hpp"

namespace gencol::testing {

inline DiscreteMarginal random_marginal(int size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  std::vector<double> weights(size);
  double total = 0.0;
  for (double& w : weights) {
    w = weight(rng);
    total += w;
  }
  for (double& w : weights) w /= total;
  return DiscreteMarginal(std::move(weights));
}

/// Two-marginal instance with strictly positive random cost and marginals.
inline Problem random_two_marginal(int l1, int l2, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> cost(0.01, 1.0);
  std::vector<double> table(static_cast<std::size_t>(l1) * l2);
  for (double& v : table) v = cost(rng);
  std::vector<DiscreteMarginal> marginals{random_marginal(l1, rng),
                                          random_marginal(l2, rng)};
  return Problem(std::move(marginals),
                 CostSpec::from_table({l1, l2}, std::move(table)));
}

/// N-marginal instance with a dense random cost table.
inline Problem random_mmot(const std::vector<int>& sizes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> cost(0.01, 1.0);
  std::size_t cells = 1;
  for (int s : sizes) cells *= static_cast<std::size_t>(s);
  std::vector<double> table(cells);
  for (double& v : table) v = cost(rng);
  std::vector<DiscreteMarginal> marginals;
  for (int s : sizes) marginals.push_back(random_marginal(s, rng));
  return Problem(std::move(marginals),
                 CostSpec::from_table(sizes, std::move(table)));
}

}  // namespace gencol::testing
