#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "prn/digraph.hpp"
#include "prn/matrix.hpp"

namespace prn {

struct Distribution {
  StateSpace space;
  std::vector<double> mass;
};

// The stationary distribution of a chain with a single recurrent class,
// found by iterating the half-lazy chain (I+T)/2, which shares T's
// stationary vector and converges geometrically even when T is periodic.
// Stopping when successive iterates differ by less than tol in L1 leaves a
// residual max_u |(pi T)(u) - pi(u)| below 2 tol.
inline Distribution steady_state(const StochasticMatrix& t, double tol = 1e-12,
                                 std::size_t max_iter = 100000) {
  std::size_t n = t.order();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (t.at(i, j) != 0) adj[i].push_back(j);
  auto recurrent = terminal_components(adj);
  if (recurrent.size() != 1) {
    std::string classes;
    for (const auto& c : recurrent) {
      if (!classes.empty()) classes += ", ";
      classes += "{" + t.space()[c.front()].str();
      if (c.size() > 1) classes += ", ...";
      classes += "}";
    }
    throw MultipleRecurrentClasses("chain has " + std::to_string(recurrent.size()) +
                                   " recurrent classes: " + classes);
  }

  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i][j] = static_cast<double>(t.at(i, j));

  std::vector<double> v(n, 1.0 / static_cast<double>(n)), w(n);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    for (std::size_t j = 0; j < n; ++j) w[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) w[j] += v[i] * d[i][j];
    }
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double next = 0.5 * (v[j] + w[j]);
      diff += std::fabs(next - v[j]);
      v[j] = next;
    }
    if (diff < tol) {
      double total = 0.0;
      for (double x : v) total += x;
      for (double& x : v) x /= total;
      return Distribution{t.space(), std::move(v)};
    }
  }
  throw NoConvergence("no convergence within " + std::to_string(max_iter) + " iterations");
}

}  // namespace prn
