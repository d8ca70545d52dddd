#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "prn/matrix.hpp"
#include "prn/network.hpp"

namespace prn {

// A map between the state spaces of two networks, by index. Whether it is a
// homomorphism is a question (check_homomorphism), not an invariant.
class Morphism {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Morphism(Prn source, Prn target, std::vector<std::size_t> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    if (map_.size() != source_.space().size())
      throw ValidationError("map covers " + std::to_string(map_.size()) + " of " +
                            std::to_string(source_.space().size()) + " source states");
    for (std::size_t v : map_)
      if (v >= target_.space().size())
        throw IndexOutOfRange("map image " + std::to_string(v) + " out of range");
  }

  static Morphism from_pairs(const Prn& source, const Prn& target,
                             const std::vector<std::pair<State, State>>& pairs) {
    std::vector<std::size_t> map(source.space().size(), npos);
    for (const auto& [from, to] : pairs) {
      std::size_t u = source.space().index_of(from);
      if (map[u] != npos)
        throw ValidationError("state " + from.str() + " is mapped twice");
      map[u] = target.space().index_of(to);
    }
    for (std::size_t u = 0; u < map.size(); ++u)
      if (map[u] == npos)
        throw PartialFunctionError("state " + source.space()[u].str() + " has no image");
    return Morphism(source, target, std::move(map));
  }

  const Prn& source() const { return source_; }
  const Prn& target() const { return target_; }
  const std::vector<std::size_t>& map() const { return map_; }
  std::size_t operator()(std::size_t u) const { return map_[u]; }

  bool is_bijective() const {
    if (source_.space().size() != target_.space().size()) return false;
    std::vector<char> hit(target_.space().size(), 0);
    for (std::size_t v : map_) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
    return true;
  }

 private:
  Prn source_, target_;
  std::vector<std::size_t> map_;
};

inline Morphism identity_morphism(const Prn& net) {
  std::vector<std::size_t> map(net.space().size());
  for (std::size_t u = 0; u < map.size(); ++u) map[u] = u;
  return Morphism(net, net, std::move(map));
}

// compose(first, then) applies first, then then: x -> then(first(x)).
inline Morphism compose(const Morphism& first, const Morphism& then) {
  if (first.target() != then.source())
    throw SpaceMismatch("compose: first map's target is not the second map's source");
  std::vector<std::size_t> map(first.map().size());
  for (std::size_t u = 0; u < map.size(); ++u) map[u] = then(first(u));
  return Morphism(first.source(), then.target(), std::move(map));
}

struct HomReport {
  struct Failure {
    std::size_t function;  // source function with no witness
    std::size_t state;     // first state at which every candidate broke
    std::size_t image;     // that function's image of the state
  };

  bool is_homomorphism = false;
  // witnesses[i] is the least target function index j with
  // g_j(phi(u)) == phi(f_i(u)) for all u; npos when none exists.
  std::vector<std::size_t> witnesses;
  std::vector<Failure> failures;
  std::optional<Rational> epsilon;
};

// Deviation of the map: the largest difference between a source transition
// probability and the image transition probability, over all ordered source
// state pairs. Zero for nothing-lost maps like isomorphisms.
inline Rational epsilon_of_matrices(const StochasticMatrix& src, const StochasticMatrix& dst,
                                    const std::vector<std::size_t>& map) {
  Rational best = 0;
  for (std::size_t u = 0; u < src.order(); ++u)
    for (std::size_t v = 0; v < src.order(); ++v) {
      Rational d = abs(src.at(u, v) - dst.at(map[u], map[v]));
      if (d > best) best = d;
    }
  return best;
}

inline HomReport check_homomorphism(const Morphism& m) {
  const Prn& src = m.source();
  const Prn& dst = m.target();
  HomReport report;
  report.is_homomorphism = true;
  report.witnesses.assign(src.function_count(), Morphism::npos);

  for (std::size_t i = 0; i < src.function_count(); ++i) {
    std::vector<char> cand(dst.function_count(), 1);
    std::size_t alive = dst.function_count();
    for (std::size_t u = 0; u < src.space().size() && alive > 0; ++u) {
      std::size_t w = src.apply(i, u);
      for (std::size_t j = 0; j < dst.function_count(); ++j) {
        if (cand[j] && dst.apply(j, m(u)) != m(w)) {
          cand[j] = 0;
          --alive;
        }
      }
      if (alive == 0) report.failures.push_back({i, u, w});
    }
    if (alive == 0) {
      report.is_homomorphism = false;
    } else {
      for (std::size_t j = 0; j < cand.size(); ++j)
        if (cand[j]) {
          report.witnesses[i] = j;
          break;
        }
    }
  }

  if (report.is_homomorphism) {
    report.epsilon = epsilon_of_matrices(transition_matrix(src), transition_matrix(dst), m.map());
  }
  return report;
}

inline Rational epsilon_of(const Morphism& m) {
  HomReport r = check_homomorphism(m);
  if (!r.is_homomorphism) {
    const auto& f = r.failures.front();
    throw NotHomomorphism("no target function matches " + m.source().function(f.function).name +
                          " at state " + m.source().space()[f.state].str());
  }
  return *r.epsilon;
}

namespace detail {

// Depth-first search over assignments phi(0), phi(1), ... with incremental
// elimination of witness candidates. Each (state, image) attempt counts one
// node against the budget.
class HomSearch {
 public:
  HomSearch(const Prn& src, const Prn& dst, bool bijective, std::uint64_t budget)
      : src_(src),
        dst_(dst),
        bijective_(bijective),
        budget_(budget),
        n_(src.space().size()),
        m_(dst.space().size()),
        map_(n_, Morphism::npos),
        used_(m_, 0),
        cand_(src.function_count(), std::vector<char>(dst.function_count(), 1)),
        src_matrix_(transition_matrix(src)),
        dst_matrix_(transition_matrix(dst)) {}

  std::vector<std::pair<Morphism, Rational>> run() {
    results_.clear();
    if (!bijective_ || n_ == m_) extend(0);
    return std::move(results_);
  }

 private:
  void extend(std::size_t u) {
    if (u == n_) {
      Morphism m(src_, dst_, map_);
      results_.emplace_back(m, epsilon_of_matrices(src_matrix_, dst_matrix_, map_));
      return;
    }
    for (std::size_t t = 0; t < m_; ++t) {
      if (bijective_ && used_[t]) continue;
      if (++nodes_ > budget_)
        throw BudgetExceeded("search exceeded " + std::to_string(budget_) +
                             " node expansions");
      map_[u] = t;
      auto saved = cand_;
      if (prune(u)) {
        used_[t] = 1;
        extend(u + 1);
        used_[t] = 0;
      }
      cand_ = std::move(saved);
    }
    map_[u] = Morphism::npos;
  }

  // Re-checks every witness constraint both of whose endpoints are now
  // assigned and involves state u. False when some function loses all
  // candidates.
  bool prune(std::size_t u) {
    for (std::size_t i = 0; i < cand_.size(); ++i) {
      for (std::size_t v = 0; v <= u; ++v) {
        std::size_t w = src_.apply(i, v);
        if (w > u) continue;
        if (v != u && w != u) continue;
        bool any = false;
        for (std::size_t j = 0; j < cand_[i].size(); ++j) {
          if (!cand_[i][j]) continue;
          if (dst_.apply(j, map_[v]) != map_[w])
            cand_[i][j] = 0;
          else
            any = true;
        }
        if (!any) return false;
      }
    }
    return true;
  }

  const Prn& src_;
  const Prn& dst_;
  bool bijective_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::size_t n_, m_;
  std::vector<std::size_t> map_;
  std::vector<char> used_;
  std::vector<std::vector<char>> cand_;
  StochasticMatrix src_matrix_, dst_matrix_;
  std::vector<std::pair<Morphism, Rational>> results_;
};

}  // namespace detail

// All homomorphisms source -> target with their deviations, in lexicographic
// order of the underlying map. Throws BudgetExceeded when the backtracking
// search expands more nodes than allowed.
inline std::vector<std::pair<Morphism, Rational>> enumerate_homomorphisms(
    const Prn& source, const Prn& target, std::uint64_t budget = 1000000) {
  return detail::HomSearch(source, target, false, budget).run();
}

// Bijective homomorphisms only. Empty when the spaces differ in size.
inline std::vector<std::pair<Morphism, Rational>> enumerate_isomorphisms(
    const Prn& source, const Prn& target, std::uint64_t budget = 1000000) {
  return detail::HomSearch(source, target, true, budget).run();
}

struct ProjectionReport {
  bool is_projection = false;
  bool idempotent = false;
  bool homomorphism = false;
  std::vector<std::size_t> image;  // sorted indices hit by the map
  std::optional<Rational> epsilon;
};

// A projection is an idempotent endo-homomorphism. Requires the morphism to
// be an endomorphism up front; the rest is reported, not thrown.
inline ProjectionReport is_projection(const Morphism& m) {
  if (m.source() != m.target())
    throw NotEndomorphism("projection candidate must map a network to itself");
  ProjectionReport report;
  report.idempotent = true;
  for (std::size_t u = 0; u < m.map().size(); ++u)
    if (m(m(u)) != m(u)) report.idempotent = false;
  HomReport hom = check_homomorphism(m);
  report.homomorphism = hom.is_homomorphism;
  report.epsilon = hom.epsilon;
  report.is_projection = report.idempotent && report.homomorphism;
  std::vector<char> in_image(m.target().space().size(), 0);
  for (std::size_t v : m.map()) in_image[v] = 1;
  for (std::size_t v = 0; v < in_image.size(); ++v)
    if (in_image[v]) report.image.push_back(v);
  return report;
}

// x -> (m1(x), m2(x)) into the given product network. The caller checks
// homomorphism separately; this only builds the map.
inline Morphism pairing(const Morphism& m1, const Morphism& m2, const Prn& product_net) {
  if (m1.source() != m2.source())
    throw SpaceMismatch("pairing: the two maps have different sources");
  std::vector<std::size_t> map(m1.source().space().size());
  for (std::size_t u = 0; u < map.size(); ++u) {
    State p(m1.target().space()[m1(u)], m2.target().space()[m2(u)]);
    auto idx = product_net.space().find(p);
    if (!idx)
      throw SpaceMismatch("pairing: " + p.str() + " is not a state of the given product");
    map[u] = *idx;
  }
  return Morphism(m1.source(), product_net, std::move(map));
}

// The map out of a sum that restricts to m1 on the first summand and m2 on
// the second. The sum network must have been built from the two sources.
inline Morphism copairing(const Morphism& m1, const Morphism& m2, const Prn& sum_net) {
  if (m1.target() != m2.target())
    throw SpaceMismatch("copairing: the two maps have different targets");
  if (sum_net.space() != sum_space(m1.source().space(), m2.source().space()))
    throw SpaceMismatch("copairing: the given network is not the sum of the two sources");
  std::vector<std::size_t> map;
  map.reserve(sum_net.space().size());
  for (std::size_t u : m1.map()) map.push_back(u);
  for (std::size_t u : m2.map()) map.push_back(u);
  return Morphism(sum_net, m1.target(), std::move(map));
}

}  // namespace prn
