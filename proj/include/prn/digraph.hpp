#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "prn/network.hpp"

namespace prn {

// The labeled transition digraph of a network: one arc (u, f_k(u)) per state
// per function, weighted by the selection probability. Arcs are ordered
// state-major, then by function.
struct WeightedDigraph {
  struct Arc {
    std::size_t from;
    std::size_t to;
    Rational weight;
    std::string label;
  };

  StateSpace space;
  std::vector<Arc> arcs;
};

inline WeightedDigraph state_digraph(const Prn& net) {
  WeightedDigraph g{net.space(), {}};
  g.arcs.reserve(net.space().size() * net.function_count());
  for (std::size_t u = 0; u < net.space().size(); ++u)
    for (std::size_t k = 0; k < net.function_count(); ++k)
      g.arcs.push_back({u, net.apply(k, u), net.probability(k), net.function(k).name});
  return g;
}

// Adjacency of the union digraph: u -> v iff some function sends u to v.
inline std::vector<std::vector<std::size_t>> union_adjacency(const Prn& net) {
  std::vector<std::vector<std::size_t>> adj(net.space().size());
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (std::size_t k = 0; k < net.function_count(); ++k) adj[u].push_back(net.apply(k, u));
    std::sort(adj[u].begin(), adj[u].end());
    adj[u].erase(std::unique(adj[u].begin(), adj[u].end()), adj[u].end());
  }
  return adj;
}

// Tarjan. Components are returned with vertices ascending and the component
// list ordered by smallest vertex, so results are reproducible.
inline std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& adj) {
  std::size_t n = adj.size();
  std::vector<std::size_t> index(n, 0), low(n, 0);
  std::vector<bool> visited(n, false), on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    visited[v] = true;
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (!visited[w]) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      components.push_back(std::move(comp));
    }
  };

  for (std::size_t v = 0; v < n; ++v)
    if (!visited[v]) visit(v);
  std::sort(components.begin(), components.end());
  return components;
}

// Components with no arc leaving them: the recurrent classes of any chain
// whose positive support is adj.
inline std::vector<std::vector<std::size_t>> terminal_components(
    const std::vector<std::vector<std::size_t>>& adj) {
  auto components = strongly_connected_components(adj);
  std::vector<std::size_t> member(adj.size());
  for (std::size_t c = 0; c < components.size(); ++c)
    for (std::size_t v : components[c]) member[v] = c;
  std::vector<std::vector<std::size_t>> terminal;
  for (std::size_t c = 0; c < components.size(); ++c) {
    bool leaves = false;
    for (std::size_t v : components[c])
      for (std::size_t w : adj[v])
        if (member[w] != c) leaves = true;
    if (!leaves) terminal.push_back(components[c]);
  }
  return terminal;
}

}  // namespace prn
