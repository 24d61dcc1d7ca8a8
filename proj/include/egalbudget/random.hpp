// Seeded random instances and distributions for property tests. All
// randomness flows through an explicit engine; there is no wall-clock or
// global RNG anywhere in the library.
#pragma once

#include <random>
#include <vector>

#include "egalbudget/core.hpp"

namespace egb {

inline Instance random_instance(std::mt19937& rng, int max_agents, int max_projects) {
  std::uniform_int_distribution<int> n_dist(1, max_agents);
  std::uniform_int_distribution<int> m_dist(1, max_projects);
  const int n = n_dist(rng);
  const int m = m_dist(rng);
  std::bernoulli_distribution approve(0.5);
  std::uniform_int_distribution<int> pick(0, m - 1);
  std::vector<std::vector<int>> a(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j)
      if (approve(rng)) a[i].push_back(j);
    if (a[i].empty()) a[i].push_back(pick(rng));
  }
  return Instance(m, std::move(a));
}

/// A random point of the m-simplex (normalized exponentials, i.e. uniform
/// Dirichlet).
inline Distribution random_distribution(std::mt19937& rng, int m) {
  std::exponential_distribution<double> exp_dist(1.0);
  std::vector<double> x(m);
  double sum = 0.0;
  for (double& v : x) {
    v = exp_dist(rng);
    sum += v;
  }
  for (double& v : x) v /= sum;
  return Distribution(std::move(x));
}

}  // namespace egb
