#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prn/morphism.hpp"
#include "prn/network.hpp"

namespace prn {

// How the product combines the two selection probabilities of a function
// pair. The rule must make the combined probabilities sum to 1 over all
// pairs; independent selection (multiplication) always does.
struct ProbabilityCombiner {
  std::string name;
  std::function<Rational(const Rational&, const Rational&)> rule;

  static ProbabilityCombiner multiply() {
    return {"multiply", [](const Rational& c, const Rational& d) { return c * d; }};
  }

  // Included because it is the obvious wrong choice: (c+d)/2 is stochastic
  // only when both networks have the same number of functions.
  static ProbabilityCombiner mean() {
    return {"mean", [](const Rational& c, const Rational& d) { return (c + d) / 2; }};
  }
};

// Disjoint union: states of both networks side by side (first summand
// first), each function pair (f_i, g_j) acting blockwise, selected with
// probability c_i * d_j. The transition matrix is block diagonal.
inline Prn sum(const Prn& a, const Prn& b) {
  StateSpace space = sum_space(a.space(), b.space());
  std::size_t na = a.space().size();
  std::vector<Prn::Entry> entries;
  entries.reserve(a.function_count() * b.function_count());
  for (std::size_t i = 0; i < a.function_count(); ++i)
    for (std::size_t j = 0; j < b.function_count(); ++j) {
      StateFunction h{a.function(i).name + "_" + b.function(j).name, {}};
      h.table.reserve(space.size());
      for (std::size_t u = 0; u < na; ++u) h.table.push_back(a.apply(i, u));
      for (std::size_t u = 0; u < b.space().size(); ++u) h.table.push_back(na + b.apply(j, u));
      entries.push_back({std::move(h), Probability(a.probability(i) * b.probability(j))});
    }
  return Prn(std::move(space), std::move(entries));
}

// Cartesian product: pair states, function pairs acting coordinatewise.
// Pairs that induce the same vector function are merged onto the first
// occurrence. Throws CombinerNotStochastic when the combined probabilities
// do not sum to 1.
inline Prn product(const Prn& a, const Prn& b,
                   const ProbabilityCombiner& combiner = ProbabilityCombiner::multiply()) {
  StateSpace space = product_space(a.space(), b.space());
  std::size_t nb = b.space().size();

  Rational total = 0;
  for (std::size_t i = 0; i < a.function_count(); ++i)
    for (std::size_t j = 0; j < b.function_count(); ++j)
      total += combiner.rule(a.probability(i), b.probability(j));
  if (total != 1)
    throw CombinerNotStochastic("combiner " + combiner.name +
                                " yields total probability " + format_fraction(total));

  std::vector<Prn::Entry> entries;
  std::map<std::vector<std::size_t>, std::size_t> seen;
  for (std::size_t i = 0; i < a.function_count(); ++i)
    for (std::size_t j = 0; j < b.function_count(); ++j) {
      std::vector<std::size_t> table(space.size());
      for (std::size_t u = 0; u < a.space().size(); ++u)
        for (std::size_t v = 0; v < nb; ++v)
          table[u * nb + v] = a.apply(i, u) * nb + b.apply(j, v);
      Rational p = combiner.rule(a.probability(i), b.probability(j));
      auto [it, fresh] = seen.emplace(std::move(table), entries.size());
      if (fresh) {
        StateFunction h{a.function(i).name + "_" + b.function(j).name,
                        std::vector<std::size_t>(it->first)};
        entries.push_back({std::move(h), Probability(std::move(p))});
      } else {
        entries[it->second].probability =
            Probability(entries[it->second].probability.value() + p);
      }
    }
  return Prn(std::move(space), std::move(entries));
}

// The subnetwork on an invariant subset: same functions, same probabilities,
// states renumbered in their original order. Throws NotInvariant (listing
// every escaping function/state pair) when some function leaves the subset.
inline Prn restrict_to(const Prn& net, const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty()) throw ValidationError("cannot restrict to an empty subset");
  for (std::size_t u : sorted)
    if (u >= net.space().size())
      throw IndexOutOfRange("subset index " + std::to_string(u) + " out of range");

  std::vector<std::size_t> position(net.space().size(), Morphism::npos);
  for (std::size_t k = 0; k < sorted.size(); ++k) position[sorted[k]] = k;

  std::string escapes;
  for (std::size_t k = 0; k < net.function_count(); ++k)
    for (std::size_t u : sorted)
      if (position[net.apply(k, u)] == Morphism::npos) {
        if (!escapes.empty()) escapes += ", ";
        escapes += "(" + net.function(k).name + ", " + net.space()[u].str() + ")";
      }
  if (!escapes.empty())
    throw NotInvariant("subset is not invariant; escaping (function, state) pairs: " + escapes);

  std::vector<State> states;
  states.reserve(sorted.size());
  for (std::size_t u : sorted) states.push_back(net.space()[u]);
  StateSpace space = StateSpace::of_states(std::move(states));

  std::vector<Prn::Entry> entries;
  entries.reserve(net.function_count());
  for (std::size_t k = 0; k < net.function_count(); ++k) {
    StateFunction f{net.function(k).name, {}};
    f.table.reserve(sorted.size());
    for (std::size_t u : sorted) f.table.push_back(position[net.apply(k, u)]);
    entries.push_back({std::move(f), Probability(net.probability(k))});
  }
  return Prn(std::move(space), std::move(entries));
}

inline Prn restrict_to(const Prn& net, const std::vector<State>& subset) {
  std::vector<std::size_t> indices;
  indices.reserve(subset.size());
  for (const State& s : subset) indices.push_back(net.space().index_of(s));
  return restrict_to(net, indices);
}

// The coordinate maps out of a product built by product(a, b). These are
// plain maps; whether they are homomorphisms depends on the networks.
inline std::pair<Morphism, Morphism> product_projections(const Prn& a, const Prn& b,
                                                         const Prn& product_net) {
  if (product_net.space() != product_space(a.space(), b.space()))
    throw SpaceMismatch("the given network is not the product of the two factors");
  std::size_t nb = b.space().size();
  std::vector<std::size_t> left(product_net.space().size()), right(product_net.space().size());
  for (std::size_t u = 0; u < product_net.space().size(); ++u) {
    left[u] = u / nb;
    right[u] = u % nb;
  }
  return {Morphism(product_net, a, std::move(left)), Morphism(product_net, b, std::move(right))};
}

// The two injections into a sum built by sum(a, b).
inline std::pair<Morphism, Morphism> sum_inclusions(const Prn& a, const Prn& b,
                                                    const Prn& sum_net) {
  if (sum_net.space() != sum_space(a.space(), b.space()))
    throw SpaceMismatch("the given network is not the sum of the two summands");
  std::vector<std::size_t> left(a.space().size()), right(b.space().size());
  for (std::size_t u = 0; u < left.size(); ++u) left[u] = u;
  for (std::size_t u = 0; u < right.size(); ++u) right[u] = a.space().size() + u;
  return {Morphism(a, sum_net, std::move(left)), Morphism(b, sum_net, std::move(right))};
}

}  // namespace prn
