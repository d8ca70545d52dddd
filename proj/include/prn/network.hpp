#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prn/rational.hpp"
#include "prn/state.hpp"

namespace prn {

// A total function on a state space, tabulated by state index.
struct StateFunction {
  std::string name;
  std::vector<std::size_t> table;

  std::size_t operator()(std::size_t u) const { return table[u]; }
  friend bool operator==(const StateFunction& a, const StateFunction& b) {
    return a.name == b.name && a.table == b.table;
  }
};

inline void validate_function(const StateSpace& space, const StateFunction& f) {
  if (f.table.size() != space.size())
    throw PartialFunctionError("function " + f.name + " defines " +
                               std::to_string(f.table.size()) + " of " +
                               std::to_string(space.size()) + " states");
  for (std::size_t u = 0; u < f.table.size(); ++u)
    if (f.table[u] >= space.size())
      throw IndexOutOfRange("function " + f.name + " maps " + space[u].str() +
                            " to index " + std::to_string(f.table[u]) + ", space has " +
                            std::to_string(space.size()) + " states");
}

inline StateFunction identity_function(const StateSpace& space, std::string name = "id") {
  StateFunction f{std::move(name), {}};
  f.table.resize(space.size());
  for (std::size_t u = 0; u < space.size(); ++u) f.table[u] = u;
  return f;
}

inline StateFunction constant_function(const StateSpace& space, std::size_t target,
                                       std::string name) {
  if (target >= space.size()) throw IndexOutOfRange("constant target out of range");
  return StateFunction{std::move(name), std::vector<std::size_t>(space.size(), target)};
}

// Tabulates fn over the space. fn must land inside the space; a stray image
// is reported rather than silently extending the space.
template <typename Fn>
StateFunction function_of(const StateSpace& space, std::string name, Fn&& fn) {
  StateFunction f{std::move(name), {}};
  f.table.reserve(space.size());
  for (std::size_t u = 0; u < space.size(); ++u) {
    State image = fn(space[u]);
    auto v = space.find(image);
    if (!v)
      throw PartialFunctionError("function " + f.name + " maps " + space[u].str() + " to " +
                                 image.str() + ", which is outside the space");
    f.table.push_back(*v);
  }
  return f;
}

// A probabilistic regulatory network: at every step one of the functions is
// applied, function k with probability entries[k]. Probabilities are exact,
// positive, and sum to exactly 1.
class Prn {
 public:
  struct Entry {
    StateFunction function;
    Probability probability;

    friend bool operator==(const Entry& a, const Entry& b) {
      return a.function == b.function && a.probability == b.probability;
    }
  };

  Prn(StateSpace space, std::vector<Entry> entries)
      : space_(std::move(space)), entries_(std::move(entries)) {
    Rational sum = 0;
    for (const auto& e : entries_) {
      validate_function(space_, e.function);
      if (e.probability.is_zero())
        throw ZeroProbabilityError("function " + e.function.name +
                                   " has selection probability 0");
      sum += e.probability.value();
    }
    if (sum != 1)
      throw ProbabilitySumError("selection probabilities sum to " + format_fraction(sum) +
                                ", expected 1");
  }

  const StateSpace& space() const { return space_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t function_count() const { return entries_.size(); }
  const StateFunction& function(std::size_t k) const { return entries_[k].function; }
  const Rational& probability(std::size_t k) const { return entries_[k].probability.value(); }
  std::size_t apply(std::size_t k, std::size_t u) const { return entries_[k].function.table[u]; }

  friend bool operator==(const Prn& a, const Prn& b) {
    return a.space_ == b.space_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const Prn& a, const Prn& b) { return !(a == b); }

 private:
  StateSpace space_;
  std::vector<Entry> entries_;
};

// A deterministic dynamical system is the one-function network.
inline Prn fds_to_prn(StateSpace space, StateFunction f) {
  std::vector<Prn::Entry> entries;
  entries.push_back({std::move(f), Probability(Rational(1))});
  return Prn(std::move(space), std::move(entries));
}

inline Prn superpose(StateSpace space, std::vector<StateFunction> functions,
                     const std::vector<Probability>& probabilities) {
  if (functions.size() != probabilities.size())
    throw ValidationError("superpose: " + std::to_string(functions.size()) + " functions but " +
                          std::to_string(probabilities.size()) + " probabilities");
  std::vector<Prn::Entry> entries;
  entries.reserve(functions.size());
  for (std::size_t k = 0; k < functions.size(); ++k)
    entries.push_back({std::move(functions[k]), probabilities[k]});
  return Prn(std::move(space), std::move(entries));
}

// A probabilistic boolean network over n binary genes. Each gene carries its
// own predictor list; predictor tables are indexed by the global state index
// on {0,1}^n and yield that gene's next value.
struct Predictor {
  std::string name;
  std::vector<int> outputs;
};

class Pbn {
 public:
  using GenePredictors = std::vector<std::pair<Predictor, Probability>>;

  Pbn(std::size_t genes, std::vector<GenePredictors> predictors)
      : space_(StateSpace::tuples(std::vector<int>(genes, 2))),
        predictors_(std::move(predictors)) {
    if (genes == 0) throw ValidationError("a network needs at least one gene");
    if (predictors_.size() != genes)
      throw ValidationError("got predictor lists for " + std::to_string(predictors_.size()) +
                            " of " + std::to_string(genes) + " genes");
    for (std::size_t i = 0; i < predictors_.size(); ++i) {
      const auto& list = predictors_[i];
      std::string gene = "gene " + std::to_string(i + 1);
      if (list.empty()) throw ValidationError(gene + " has no predictors");
      Rational sum = 0;
      for (const auto& [p, prob] : list) {
        if (p.outputs.size() != space_.size())
          throw PartialFunctionError("predictor " + p.name + " of " + gene + " defines " +
                                     std::to_string(p.outputs.size()) + " of " +
                                     std::to_string(space_.size()) + " states");
        for (int bit : p.outputs)
          if (bit != 0 && bit != 1)
            throw ValidationError("predictor " + p.name + " of " + gene +
                                  " yields a non-binary value");
        if (prob.is_zero())
          throw ZeroProbabilityError("predictor " + p.name + " of " + gene +
                                     " has selection probability 0");
        sum += prob.value();
      }
      if (sum != 1)
        throw ProbabilitySumError(gene + " predictor probabilities sum to " +
                                  format_fraction(sum) + ", expected 1");
    }
  }

  std::size_t gene_count() const { return predictors_.size(); }
  const StateSpace& space() const { return space_; }
  const GenePredictors& predictors(std::size_t gene) const { return predictors_[gene]; }

 private:
  StateSpace space_;
  std::vector<GenePredictors> predictors_;
};

// Expands a PBN to its PRN: one vector function per choice of predictor per
// gene, selected with the product of the per-gene probabilities. Choices are
// enumerated with gene 1 varying fastest. Distinct choices that induce the
// same vector function are merged onto the first occurrence, probabilities
// summed.
inline Prn expand_pbn(const Pbn& net) {
  const StateSpace& space = net.space();
  std::size_t genes = net.gene_count();
  std::vector<std::size_t> choice(genes, 0);
  std::vector<Prn::Entry> entries;
  std::map<std::vector<std::size_t>, std::size_t> seen;

  while (true) {
    std::vector<std::size_t> table(space.size());
    Rational prob = 1;
    std::string name;
    for (std::size_t i = 0; i < genes; ++i) {
      const auto& [p, c] = net.predictors(i)[choice[i]];
      prob *= c.value();
      if (i) name += '_';
      name += p.name;
    }
    for (std::size_t u = 0; u < space.size(); ++u) {
      std::vector<int> coords(genes);
      for (std::size_t i = 0; i < genes; ++i)
        coords[i] = net.predictors(i)[choice[i]].first.outputs[u];
      table[u] = space.index_of(State(std::move(coords)));
    }

    auto [it, fresh] = seen.emplace(table, entries.size());
    if (fresh)
      entries.push_back({StateFunction{std::move(name), std::move(table)},
                         Probability(std::move(prob))});
    else
      entries[it->second].probability =
          Probability(entries[it->second].probability.value() + prob);

    std::size_t i = 0;
    while (i < genes && ++choice[i] == net.predictors(i).size()) choice[i++] = 0;
    if (i == genes) break;
  }
  return Prn(space, std::move(entries));
}

}  // namespace prn
