#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "prn/algebra.hpp"
#include "prn/digraph.hpp"
#include "prn/matrix.hpp"
#include "prn/morphism.hpp"
#include "prn/network.hpp"

namespace prn {

struct SubnetworkReport {
  struct Escape {
    std::size_t function;
    std::size_t state;
    std::size_t image;
  };

  std::vector<std::size_t> subset;  // sorted, deduplicated
  bool invariant = false;
  std::vector<Escape> escapes;
};

namespace detail {

inline std::vector<std::size_t> clean_subset(const Prn& net,
                                             const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t u : sorted)
    if (u >= net.space().size())
      throw IndexOutOfRange("subset index " + std::to_string(u) + " out of range");
  return sorted;
}

}  // namespace detail

// A subset is invariant when every function maps it into itself.
inline SubnetworkReport is_invariant(const Prn& net, const std::vector<std::size_t>& subset) {
  SubnetworkReport report;
  report.subset = detail::clean_subset(net, subset);
  if (report.subset.empty()) throw ValidationError("subnetworks are nonempty");
  std::vector<char> inside(net.space().size(), 0);
  for (std::size_t u : report.subset) inside[u] = 1;
  for (std::size_t k = 0; k < net.function_count(); ++k)
    for (std::size_t u : report.subset) {
      std::size_t v = net.apply(k, u);
      if (!inside[v]) report.escapes.push_back({k, u, v});
    }
  report.invariant = report.escapes.empty();
  return report;
}

inline SubnetworkReport is_invariant(const Prn& net, const std::vector<State>& subset) {
  std::vector<std::size_t> indices;
  indices.reserve(subset.size());
  for (const State& s : subset) indices.push_back(net.space().index_of(s));
  return is_invariant(net, indices);
}

// Smallest invariant superset of the seed: forward closure under every
// function.
inline std::vector<std::size_t> closure(const Prn& net, const std::vector<std::size_t>& seed) {
  std::vector<std::size_t> frontier = detail::clean_subset(net, seed);
  std::vector<char> inside(net.space().size(), 0);
  for (std::size_t u : frontier) inside[u] = 1;
  while (!frontier.empty()) {
    std::size_t u = frontier.back();
    frontier.pop_back();
    for (std::size_t k = 0; k < net.function_count(); ++k) {
      std::size_t v = net.apply(k, u);
      if (!inside[v]) {
        inside[v] = 1;
        frontier.push_back(v);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < inside.size(); ++u)
    if (inside[u]) out.push_back(u);
  return out;
}

// The minimal invariant subsets: terminal strongly connected components of
// the union digraph. Every trajectory is eventually absorbed by one of them.
inline std::vector<std::vector<std::size_t>> irreducible_subnetworks(const Prn& net) {
  return terminal_components(union_adjacency(net));
}

struct InvariantLattice {
  // Every nonempty invariant subset, ordered by size then lexicographically.
  std::vector<std::vector<std::size_t>> sets;
  // The minimal ones, i.e. the irreducible subnetworks.
  std::vector<std::vector<std::size_t>> minimal;
};

// Invariant subsets are exactly the unions of single-state closures, so the
// lattice is generated by closing the principal closures under union. Throws
// CapExceeded once more than cap distinct sets appear.
inline InvariantLattice all_invariant_subnetworks(const Prn& net, std::uint64_t cap = 4096) {
  std::set<std::vector<std::size_t>> principals;
  for (std::size_t u = 0; u < net.space().size(); ++u)
    principals.insert(closure(net, {u}));

  std::set<std::vector<std::size_t>> sets(principals);
  std::vector<std::vector<std::size_t>> queue(sets.begin(), sets.end());
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& p : principals) {
      std::vector<std::size_t> merged;
      std::set_union(queue[qi].begin(), queue[qi].end(), p.begin(), p.end(),
                     std::back_inserter(merged));
      if (sets.insert(merged).second) {
        if (sets.size() > cap)
          throw CapExceeded("more than " + std::to_string(cap) + " invariant subsets");
        queue.push_back(std::move(merged));
      }
    }
  }

  InvariantLattice lattice;
  lattice.sets.assign(sets.begin(), sets.end());
  std::sort(lattice.sets.begin(), lattice.sets.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  lattice.minimal = irreducible_subnetworks(net);
  return lattice;
}

// Matrix-level counterpart of is_invariant: no row of the subset carries
// probability mass outside the subset.
inline bool matrix_invariance(const StochasticMatrix& t, const std::vector<std::size_t>& subset) {
  std::vector<char> inside(t.order(), 0);
  for (std::size_t u : subset) {
    if (u >= t.order())
      throw IndexOutOfRange("subset index " + std::to_string(u) + " out of range");
    inside[u] = 1;
  }
  for (std::size_t u : subset) {
    Rational mass = 0;
    for (std::size_t v = 0; v < t.order(); ++v)
      if (inside[v]) mass += t.at(u, v);
    if (mass != 1) return false;
  }
  return true;
}

struct ProjectionsReport {
  bool target_invariant = false;
  // Homomorphic idempotent self-maps fixing the target pointwise and
  // sending everything else into it, with their deviations, in lexicographic
  // map order.
  std::vector<std::pair<Morphism, Rational>> projections;
};

inline ProjectionsReport projections_onto(const Prn& net, const std::vector<std::size_t>& target,
                                          std::uint64_t cap = 1000000) {
  std::vector<std::size_t> y = detail::clean_subset(net, target);
  if (y.empty()) throw ValidationError("projection target is empty");

  ProjectionsReport report;
  report.target_invariant = is_invariant(net, y).invariant;

  std::size_t n = net.space().size();
  std::vector<std::size_t> outside;
  std::vector<char> in_y(n, 0);
  for (std::size_t u : y) in_y[u] = 1;
  for (std::size_t u = 0; u < n; ++u)
    if (!in_y[u]) outside.push_back(u);

  BigInt count = pow(BigInt(y.size()), static_cast<unsigned>(outside.size()));
  if (count > cap)
    throw CapExceeded("would try " + count.str() + " candidate maps, cap is " +
                      std::to_string(cap));

  StochasticMatrix t = transition_matrix(net);
  std::vector<std::size_t> map(n);
  for (std::size_t u : y) map[u] = u;
  std::vector<std::size_t> choice(outside.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < outside.size(); ++k) map[outside[k]] = y[choice[k]];
    Morphism m(net, net, map);
    if (check_homomorphism(m).is_homomorphism)
      report.projections.emplace_back(m, epsilon_of_matrices(t, t, map));
    if (outside.empty()) break;
    std::size_t k = outside.size();
    while (k > 0 && ++choice[k - 1] == y.size()) choice[--k] = 0;
    if (k == 0) break;
  }
  return report;
}

inline ProjectionsReport projections_onto(const Prn& net, const std::vector<State>& target,
                                          std::uint64_t cap = 1000000) {
  std::vector<std::size_t> indices;
  indices.reserve(target.size());
  for (const State& s : target) indices.push_back(net.space().index_of(s));
  return projections_onto(net, indices, cap);
}

struct DecompositionReport {
  bool irreducible = false;  // the whole space is its only invariant subset
  bool found = false;
  std::optional<Morphism> embedding;  // iso onto a subnetwork of the product
  std::optional<Rational> epsilon;
  std::vector<std::size_t> image;  // product-space indices of that subnetwork
  std::optional<Prn> product_net;
};

// Does the network decompose through the product of its two restrictions?
// Restricts to y1 and y2 (both must be invariant), forms the product, and
// searches for an isomorphism from the network onto the product itself or
// onto one of the product's invariant subnetworks of matching size. The
// first isomorphism in lexicographic map order wins; its deviation measures
// how far the decomposition is from exact.
inline DecompositionReport check_product_decomposition(const Prn& net,
                                                       const std::vector<std::size_t>& y1,
                                                       const std::vector<std::size_t>& y2,
                                                       std::uint64_t cap = 4096,
                                                       std::uint64_t budget = 1000000) {
  DecompositionReport report;

  Prn r1 = restrict_to(net, y1);
  Prn r2 = restrict_to(net, y2);

  report.irreducible = true;
  for (std::size_t u = 0; u < net.space().size() && report.irreducible; ++u)
    if (closure(net, {u}).size() != net.space().size()) report.irreducible = false;
  if (report.irreducible) return report;

  if (BigInt(r1.space().size()) * r2.space().size() > cap)
    throw CapExceeded("product would have " +
                      (BigInt(r1.space().size()) * r2.space().size()).str() +
                      " states, cap is " + std::to_string(cap));

  Prn p = product(r1, r2);
  std::size_t n = net.space().size();

  auto try_target = [&](const Prn& target, std::vector<std::size_t> image) {
    auto isos = enumerate_isomorphisms(net, target, budget);
    if (isos.empty()) return false;
    report.found = true;
    report.embedding = std::move(isos.front().first);
    report.epsilon = std::move(isos.front().second);
    report.image = std::move(image);
    return true;
  };

  if (n == p.space().size()) {
    std::vector<std::size_t> all(n);
    for (std::size_t u = 0; u < n; ++u) all[u] = u;
    try_target(p, std::move(all));
  } else if (n < p.space().size()) {
    for (const auto& s : all_invariant_subnetworks(p, cap).sets) {
      if (s.size() != n) continue;
      if (try_target(restrict_to(p, s), s)) break;
    }
  }
  report.product_net = std::move(p);
  return report;
}

inline DecompositionReport check_product_decomposition(const Prn& net,
                                                       const std::vector<State>& y1,
                                                       const std::vector<State>& y2,
                                                       std::uint64_t cap = 4096,
                                                       std::uint64_t budget = 1000000) {
  auto to_indices = [&](const std::vector<State>& states) {
    std::vector<std::size_t> out;
    out.reserve(states.size());
    for (const State& s : states) out.push_back(net.space().index_of(s));
    return out;
  };
  return check_product_decomposition(net, to_indices(y1), to_indices(y2), cap, budget);
}

}  // namespace prn
