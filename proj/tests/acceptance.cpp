// Acceptance gate: one criterion per invocation, selected by argv[1].
// Prints a single PASS/FAIL line and exits 0/1. Expected values are exact
// rationals throughout; the only tolerances are the steady-state iteration
// bounds in criterion 5.

#include <cstdlib>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace {

using prn::Morphism;
using prn::Prn;
using prn::Probability;
using prn::Rational;
using prn::StateFunction;
using prn::StateSpace;
using prn::StochasticMatrix;

using Problems = std::vector<std::string>;

void check(bool ok, const std::string& what, Problems& problems) {
  if (!ok) problems.push_back(what);
}

std::string frac(const Rational& r) { return prn::format_annotated(r); }

void expect_matrix(const StochasticMatrix& got,
                   const std::vector<std::vector<std::string>>& rows, const std::string& label,
                   Problems& problems) {
  StochasticMatrix expected = oracle::matrix_of(got.space(), rows);
  for (std::size_t i = 0; i < got.order(); ++i)
    for (std::size_t j = 0; j < got.order(); ++j)
      if (got.at(i, j) != expected.at(i, j)) {
        problems.push_back(label + " entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") = " + prn::format_fraction(got.at(i, j)) + ", expected " +
                           prn::format_fraction(expected.at(i, j)));
        return;
      }
}

// Deviation restricted to transitions the source chain actually takes.
Rational positive_arc_deviation(const StochasticMatrix& t, const std::vector<std::size_t>& map) {
  Rational best = 0;
  for (std::size_t u = 0; u < t.order(); ++u)
    for (std::size_t v = 0; v < t.order(); ++v) {
      if (t.at(u, v) == 0) continue;
      Rational d = t.at(u, v) - t.at(map[u], map[v]);
      if (d < 0) d = -d;
      if (d > best) best = d;
    }
  return best;
}

void criterion_1(Problems& problems) {
  StochasticMatrix t = prn::transition_matrix(oracle::load_network("ex21.prn"));
  expect_matrix(t,
                {{"0.67", "0", "0.33", "0"},
                 {"0.21", "0.46", "0.11", "0.22"},
                 {"0", "0", "1", "0"},
                 {"0", "0", "0.32", "0.68"}},
                "chain matrix", problems);
}

void criterion_2(Problems& problems) {
  Prn perturbed = oracle::load_network("ex32_x1.prn");
  Prn base = oracle::load_network("ex21.prn");
  StochasticMatrix t1 = prn::transition_matrix(perturbed);
  StochasticMatrix tbar = prn::transition_matrix(base);

  expect_matrix(t1,
                {{"0.75", "0", "0.25", "0"},
                 {"0.28", "0.47", "0", "0.25"},
                 {"0", "0", "1", "0"},
                 {"0", "0", "0.28", "0.72"}},
                "perturbed matrix", problems);

  const int diff[4][4] = {{8, 0, -8, 0}, {7, 1, -11, 3}, {0, 0, 0, 0}, {0, 0, -4, 4}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      check(t1.at(i, j) - tbar.at(i, j) == Rational(diff[i][j], 100),
            "difference entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                prn::format_fraction(t1.at(i, j) - tbar.at(i, j)),
            problems);

  Rational eps = prn::epsilon_of(Morphism(perturbed, base, {0, 1, 2, 3}));
  check(eps == Rational(11, 100),
        "identity-map deviation = " + frac(eps) + ", expected 11/100", problems);
}

void criterion_3(Problems& problems) {
  Prn net = oracle::load_network("ex21.prn");
  StochasticMatrix t = prn::transition_matrix(net);
  Morphism pi1(net, net, {0, 0, 2, 2});
  Morphism pi2(net, net, {2, 3, 2, 3});

  for (const auto& [name, m] : {std::pair<const char*, const Morphism&>{"pi1", pi1},
                                {"pi2", pi2}}) {
    prn::ProjectionReport r = prn::is_projection(m);
    check(r.is_projection, std::string(name) + " is not a projection", problems);
    check(prn::is_invariant(net, r.image).invariant,
          std::string(name) + " image is not invariant", problems);
  }

  // The deviation measures the worst disagreement over all ordered state
  // pairs. Both maps collapse a zero-probability pair onto a certain
  // transition, so the measured value is 1; the expected values are met only
  // by transitions the source chain actually takes.
  Rational e1 = prn::epsilon_of(pi1);
  Rational e2 = prn::epsilon_of(pi2);
  check(e1 == Rational(68, 100),
        "epsilon(pi1) = " + frac(e1) + ", expected 68/100; over positive-probability arcs " +
            frac(positive_arc_deviation(t, pi1.map())),
        problems);
  check(e2 == Rational(67, 100),
        "epsilon(pi2) = " + frac(e2) + ", expected 67/100; over positive-probability arcs " +
            frac(positive_arc_deviation(t, pi2.map())),
        problems);
}

void criterion_4(Problems& problems) {
  Prn net = oracle::load_network("ex21.prn");
  prn::DecompositionReport r = prn::check_product_decomposition(
      net, std::vector<std::size_t>{0, 2}, std::vector<std::size_t>{2, 3});
  check(r.found, "no isomorphism onto the product of the two restrictions", problems);
  if (!r.found) return;
  check(r.embedding->map() == std::vector<std::size_t>{0, 1, 2, 3},
        "embedding differs from (x,y) -> ((x,0),(1,y))", problems);
  check(r.image == std::vector<std::size_t>{0, 1, 2, 3},
        "image is a proper subnetwork, expected the whole product", problems);
  check(*r.epsilon == Rational(44, 10000),
        "decomposition deviation = " + frac(*r.epsilon) + ", expected 44/10000", problems);
}

void criterion_5(Problems& problems) {
  StochasticMatrix t1 = prn::transition_matrix(oracle::load_network("ex32_x1.prn"));
  StochasticMatrix tbar = prn::transition_matrix(oracle::load_network("ex21.prn"));
  Rational eps(11, 100);

  auto profile = prn::power_deviation_profile(t1, tbar, 2);
  check(profile[0] == eps, "d_1 = " + frac(profile[0]) + ", expected 11/100", problems);
  check(profile[1] == Rational(16030, 100000),
        "d_2 = " + frac(profile[1]) + ", expected 16030/100000", problems);
  // The power deviation grows past the one-step value; no uniform bound.
  check(profile[1] > eps, "d_2 unexpectedly within the one-step deviation", problems);

  prn::Distribution s1 = prn::steady_state(t1);
  prn::Distribution s2 = prn::steady_state(tbar);
  check(s1.mass[2] > 1.0 - 1e-9, "perturbed steady state is not the unit mass on (1,0)",
        problems);
  check(s2.mass[2] > 1.0 - 1e-9, "base steady state is not the unit mass on (1,0)", problems);
  double distance = 0;
  for (std::size_t u = 0; u < 4; ++u) {
    double d = s1.mass[u] - s2.mass[u];
    if (d < 0) d = -d;
    if (d > distance) distance = d;
  }
  check(distance <= 0.11, "steady states differ by " + std::to_string(distance), problems);
}

void criterion_6(Problems& problems) {
  Prn net = oracle::load_network("ex21.prn");
  Prn both = prn::sum(net, net);
  check(both.space().size() == 8,
        "sum has " + std::to_string(both.space().size()) + " states, expected 8", problems);
  StochasticMatrix ts = prn::transition_matrix(both);
  StochasticMatrix t = prn::transition_matrix(net);
  for (std::size_t i = 0; i < 4 && problems.empty(); ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      check(ts.at(i, j) == t.at(i, j) && ts.at(i + 4, j + 4) == t.at(i, j),
            "diagonal block entry (" + std::to_string(i) + "," + std::to_string(j) +
                ") differs from the summand",
            problems);
      check(ts.at(i, j + 4) == 0 && ts.at(i + 4, j) == 0,
            "off-diagonal block entry (" + std::to_string(i) + "," + std::to_string(j) +
                ") is nonzero",
            problems);
    }
}

void criterion_7(Problems& problems) {
  Prn a = oracle::load_network("ex42_a.prn");
  Prn b = oracle::load_network("ex42_b.prn");
  Prn p = prn::product(a, b);

  const char* names[] = {"g1_h1", "g1_h3", "g2_h1", "g2_h3"};
  const Rational probs[] = {Rational(42, 100), Rational(18, 100), Rational(28, 100),
                            Rational(12, 100)};
  check(p.function_count() == 4, "product has " + std::to_string(p.function_count()) +
            " functions, expected 4", problems);
  for (std::size_t k = 0; k < 4 && k < p.function_count(); ++k) {
    check(p.function(k).name == names[k], "function " + std::to_string(k) + " is named " +
              p.function(k).name, problems);
    check(p.probability(k) == probs[k],
          "probability of " + p.function(k).name + " = " +
              prn::format_fraction(p.probability(k)) + ", expected p_i*q_j",
          problems);
  }

  expect_matrix(prn::transition_matrix(p),
                {{"0.6", "0", "0.4", "0"},
                 {"0.18", "0.42", "0.12", "0.28"},
                 {"0", "0", "1", "0"},
                 {"0", "0", "0.3", "0.7"}},
                "product matrix", problems);

  bool rejected = false;
  try {
    prn::product(a, b, prn::ProbabilityCombiner::mean());
  } catch (const prn::CombinerNotStochastic&) {
    rejected = true;
  }
  check(rejected, "mean combiner was not rejected for two-function factors", problems);
}

void criterion_8(Problems& problems) {
  StochasticMatrix lower =
      prn::matrix_from_text(oracle::read_file(oracle::fixture_path("ex53_tx1.mat")));

  std::vector<prn::State> states;
  for (int tag : {0, 1})
    for (const auto& s : lower.space().states()) states.emplace_back(tag, s);
  StateSpace space = StateSpace::of_states(std::move(states));

  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < 4; ++i) rows.emplace_back(8, Rational(1, 8));
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Rational> row(8, Rational(0));
    for (std::size_t j = 0; j < 4; ++j) row[4 + j] = lower.at(i, j);
    rows.push_back(std::move(row));
  }
  StochasticMatrix block(space, std::move(rows));

  check(prn::matrix_invariance(block, {4, 5, 6, 7}), "lower block is not invariant", problems);

  // Every mixed index set inherits upper-block rows whose mass leaks out of
  // any proper subset.
  for (std::uint32_t mask = 1; mask < 255 && problems.empty(); ++mask) {
    if (!(mask & 15) || !(mask >> 4)) continue;
    std::vector<std::size_t> subset;
    for (std::size_t u = 0; u < 8; ++u)
      if (mask >> u & 1) subset.push_back(u);
    check(!prn::matrix_invariance(block, subset),
          "mixed index set with escaping mass reported invariant", problems);
  }
}

void criterion_9(Problems& problems) {
  StateSpace space = StateSpace::tuples({2});
  std::vector<StateFunction> functions = {
      prn::identity_function(space, "f1"), prn::constant_function(space, 1, "f2"),
      prn::constant_function(space, 0, "f3"), StateFunction{"f4", {1, 0}}};

  oracle::Rng rng(20240820);
  for (int round = 0; round < 200 && problems.empty(); ++round) {
    auto probs = oracle::random_probabilities(rng, 4);
    Prn net = prn::superpose(space, functions, probs);
    StochasticMatrix t = prn::transition_matrix(net);
    const Rational& p1 = probs[0].value();
    const Rational& p2 = probs[1].value();
    const Rational& p3 = probs[2].value();
    const Rational& p4 = probs[3].value();
    check(t.at(0, 0) == p1 + p3 && t.at(0, 1) == p2 + p4 && t.at(1, 0) == p3 + p4 &&
              t.at(1, 1) == p1 + p2,
          "superposed matrix differs from [[p1+p3, p2+p4],[p3+p4, p1+p2]] in round " +
              std::to_string(round),
          problems);
  }
}

std::size_t suite_row_stochastic(Problems& problems) {
  oracle::Rng rng(20240821);
  std::size_t cases = 0;
  for (int round = 0; round < 500 && problems.empty(); ++round, ++cases) {
    Prn r1 = oracle::random_prn(rng, 6, 3);
    Prn r2 = oracle::random_prn(rng, 6, 3);
    for (const StochasticMatrix& t :
         {prn::transition_matrix(r1),
          prn::matrix_power(prn::transition_matrix(r1), rng.pick(1, 3)),
          prn::transition_matrix(prn::sum(r1, r2)),
          prn::transition_matrix(prn::product(r1, r2))}) {
      for (std::size_t i = 0; i < t.order(); ++i) {
        Rational sum = 0;
        for (std::size_t j = 0; j < t.order(); ++j) {
          check(t.at(i, j) >= 0 && t.at(i, j) <= 1, "entry outside [0, 1]", problems);
          sum += t.at(i, j);
        }
        check(sum == 1, "row mass " + prn::format_fraction(sum), problems);
      }
    }
  }
  return cases;
}

std::size_t suite_epsilon_composition(Problems& problems) {
  oracle::Rng rng(20240822);
  std::size_t cases = 0;
  while (cases < 500 && problems.empty()) {
    Prn a = oracle::random_prn(rng, 4, 2);
    Prn b = oracle::random_prn(rng, 4, 2);
    Prn c = oracle::random_prn(rng, 4, 2);
    auto ab = prn::enumerate_homomorphisms(a, b);
    auto bc = prn::enumerate_homomorphisms(b, c);
    if (ab.empty() || bc.empty()) continue;
    for (int sample = 0; sample < 3; ++sample, ++cases) {
      const auto& [m1, e1] = ab[rng.pick(0, ab.size() - 1)];
      const auto& [m2, e2] = bc[rng.pick(0, bc.size() - 1)];
      Rational lhs = prn::epsilon_of(prn::compose(m1, m2));
      check(lhs <= e1 + e2,
            "composed deviation " + prn::format_fraction(lhs) + " exceeds " +
                prn::format_fraction(e1) + " + " + prn::format_fraction(e2),
            problems);
    }
  }
  return cases;
}

std::size_t suite_pairing_diagrams(Problems& problems) {
  oracle::Rng rng(20240823);
  std::size_t cases = 0;
  for (int round = 0; round < 250 && problems.empty(); ++round) {
    Prn a = oracle::random_prn(rng, 4, 2);
    Prn b = oracle::random_prn(rng, 4, 2);
    Prn c = oracle::random_prn(rng, 4, 2);

    Prn p = prn::product(a, b);
    auto [pa, pb] = prn::product_projections(a, b, p);
    std::vector<std::size_t> into(c.space().size());
    for (auto& v : into) v = rng.pick(0, p.space().size() - 1);
    Morphism h(c, p, into);
    Morphism rebuilt = prn::pairing(prn::compose(h, pa), prn::compose(h, pb), p);
    check(rebuilt.map() == h.map(), "pairing failed to rebuild the map into the product",
          problems);
    ++cases;

    Prn s = prn::sum(a, b);
    auto [ia, ib] = prn::sum_inclusions(a, b, s);
    std::vector<std::size_t> from(s.space().size());
    for (auto& v : from) v = rng.pick(0, c.space().size() - 1);
    Morphism g(s, c, from);
    Morphism folded = prn::copairing(prn::compose(ia, g), prn::compose(ib, g), s);
    check(folded.map() == g.map(), "copairing failed to rebuild the map off the sum", problems);
    ++cases;
  }
  return cases;
}

std::size_t suite_hom_search(Problems& problems) {
  oracle::Rng rng(20240824);
  std::size_t cases = 0;
  for (int round = 0; round < 250 && problems.empty(); ++round) {
    Prn src = oracle::random_prn(rng, 4, 2);
    Prn dst = oracle::random_prn(rng, 4, 2);

    auto found = prn::enumerate_homomorphisms(src, dst);
    std::vector<std::vector<std::size_t>> maps;
    maps.reserve(found.size());
    for (const auto& [m, eps] : found) maps.push_back(m.map());
    check(maps == oracle::brute_force_homs(src, dst), "homomorphism lists differ", problems);
    ++cases;

    auto isos = prn::enumerate_isomorphisms(src, dst);
    std::vector<std::vector<std::size_t>> iso_maps;
    iso_maps.reserve(isos.size());
    for (const auto& [m, eps] : isos) iso_maps.push_back(m.map());
    check(iso_maps == oracle::brute_force_homs(src, dst, true), "isomorphism lists differ",
          problems);
    ++cases;
  }
  return cases;
}

std::size_t suite_matrix_invariance(Problems& problems) {
  oracle::Rng rng(20240825);
  std::size_t cases = 0;
  while (cases < 500 && problems.empty()) {
    Prn net = oracle::random_prn(rng, 5, 3);
    StochasticMatrix t = prn::transition_matrix(net);
    std::size_t n = net.space().size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask, ++cases) {
      std::vector<std::size_t> subset;
      for (std::size_t u = 0; u < n; ++u)
        if (mask >> u & 1) subset.push_back(u);
      check(prn::matrix_invariance(t, subset) == prn::is_invariant(net, subset).invariant,
            "matrix and functional invariance disagree", problems);
    }
  }
  return cases;
}

std::size_t suite_pbn_expansion(Problems& problems) {
  oracle::Rng rng(20240826);
  std::size_t cases = 0;
  for (int round = 0; round < 500 && problems.empty(); ++round, ++cases) {
    std::size_t genes = rng.pick(1, 3);
    StateSpace space = StateSpace::tuples(std::vector<int>(genes, 2));
    std::vector<prn::Pbn::GenePredictors> per_gene;
    for (std::size_t g = 0; g < genes; ++g) {
      std::size_t count = rng.pick(1, 3);
      auto probs = oracle::random_probabilities(rng, count);
      prn::Pbn::GenePredictors list;
      for (std::size_t k = 0; k < count; ++k) {
        std::vector<int> outputs(space.size());
        for (auto& bit : outputs) bit = static_cast<int>(rng.pick(0, 1));
        list.emplace_back(
            prn::Predictor{"g" + std::to_string(g + 1) + "p" + std::to_string(k + 1),
                           std::move(outputs)},
            probs[k]);
      }
      per_gene.push_back(std::move(list));
    }
    prn::Pbn pbn(genes, per_gene);

    // Index-tuple enumeration, gene 1 fastest, duplicates merged onto the
    // first occurrence.
    std::vector<prn::Prn::Entry> entries;
    std::map<std::vector<std::size_t>, std::size_t> seen;
    std::vector<std::size_t> choice(genes, 0);
    while (true) {
      std::vector<std::size_t> table(space.size());
      Rational prob = 1;
      std::string name;
      for (std::size_t g = 0; g < genes; ++g) {
        if (g) name += "_";
        name += per_gene[g][choice[g]].first.name;
        prob *= per_gene[g][choice[g]].second.value();
      }
      for (std::size_t u = 0; u < space.size(); ++u) {
        std::size_t v = 0;
        for (std::size_t g = 0; g < genes; ++g)
          v = v | (static_cast<std::size_t>(per_gene[g][choice[g]].first.outputs[u])
                   << (genes - 1 - g));
        table[u] = v;
      }
      if (auto it = seen.find(table); it != seen.end()) {
        entries[it->second].probability =
            Probability(entries[it->second].probability.value() + prob);
      } else {
        seen.emplace(table, entries.size());
        entries.push_back({StateFunction{std::move(name), std::move(table)},
                           Probability(prob)});
      }
      std::size_t g = 0;
      while (g < genes && ++choice[g] == per_gene[g].size()) choice[g++] = 0;
      if (g == genes) break;
    }

    check(prn::expand_pbn(pbn) == Prn(space, std::move(entries)),
          "expansion differs from the index-tuple enumeration", problems);
  }
  return cases;
}

void criterion_10(Problems& problems) {
  struct Suite {
    const char* name;
    std::size_t (*run)(Problems&);
  };
  const Suite suites[] = {{"row stochasticity", suite_row_stochastic},
                          {"deviation composition", suite_epsilon_composition},
                          {"pairing/copairing diagrams", suite_pairing_diagrams},
                          {"homomorphism search", suite_hom_search},
                          {"matrix invariance", suite_matrix_invariance},
                          {"pbn expansion", suite_pbn_expansion}};
  for (const Suite& suite : suites) {
    Problems local;
    std::size_t cases = suite.run(local);
    check(cases >= 500,
          std::string(suite.name) + " ran only " + std::to_string(cases) + " cases", problems);
    for (const std::string& p : local)
      problems.push_back(std::string(suite.name) + ": " + p);
  }
}

void criterion_11(Problems& problems) {
  auto matrices = prn::enumerate_linear_matrices(2, 2);
  check(matrices.size() == 16,
        std::to_string(matrices.size()) + " linear maps enumerated, expected 16", problems);

  std::vector<Prn> nets;
  nets.reserve(matrices.size());
  StateSpace space = prn::vector_space(2, 2);
  for (const auto& m : matrices) nets.push_back(prn::fds_to_prn(space, prn::linear_map_fds(m)));

  std::vector<std::size_t> leader(nets.size());
  std::iota(leader.begin(), leader.end(), 0);
  for (std::size_t i = 0; i < nets.size(); ++i) {
    if (leader[i] != i) continue;
    for (std::size_t j = i + 1; j < nets.size(); ++j)
      if (leader[j] == j && !prn::enumerate_isomorphisms(nets[i], nets[j]).empty()) leader[j] = i;
  }
  std::map<std::size_t, std::size_t> sizes;
  for (std::size_t l : leader) ++sizes[l];

  if (sizes.size() != 4) {
    std::string detail = std::to_string(sizes.size()) + " isomorphism classes of sizes";
    std::vector<std::size_t> counts;
    for (const auto& [l, count] : sizes) counts.push_back(count);
    std::sort(counts.begin(), counts.end());
    for (std::size_t c : counts) detail += " " + std::to_string(c);
    problems.push_back(detail + ", expected 4 classes");
  }

  prn::FieldMatrix companion = prn::companion_matrix(prn::MonicPolynomial::parse("x^2+x+1 mod 2"));
  check(companion.str() == "[[0,1],[1,1]]",
        "companion of x^2+x+1 is " + companion.str() + ", expected [[0,1],[1,1]]", problems);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <criterion 1..11>\n";
    return 2;
  }
  int which = std::atoi(argv[1]);

  struct Criterion {
    const char* title;
    void (*run)(Problems&);
  };
  const Criterion criteria[] = {
      {"two-gene fixture reproduces its chain matrix exactly", criterion_1},
      {"perturbed fixture matches its matrix, difference, and deviation 11/100", criterion_2},
      {"slice maps are projections with invariant images and deviations 68/100, 67/100",
       criterion_3},
      {"network decomposes onto the product of its two slices with deviation 44/10000",
       criterion_4},
      {"power deviation profile is 11/100, 16030/100000 and steady states agree", criterion_5},
      {"self-sum has 8 states and a block-diagonal chain matrix", criterion_6},
      {"product combines probabilities multiplicatively and rejects the mean rule", criterion_7},
      {"block matrix keeps exactly its lower block invariant", criterion_8},
      {"two-state superposition matrix follows the closed form on 200 random draws",
       criterion_9},
      {"randomized property suites hold on 500+ cases each", criterion_10},
      {"the 16 linear maps on Z_2^2 fall into 4 isomorphism classes", criterion_11},
  };

  if (which < 1 || which > 11) {
    std::cerr << "criterion number out of range\n";
    return 2;
  }

  Problems problems;
  try {
    criteria[which - 1].run(problems);
  } catch (const std::exception& e) {
    problems.push_back(std::string("unexpected exception: ") + e.what());
  }

  if (problems.empty()) {
    std::cout << "PASS " << which << ": " << criteria[which - 1].title << "\n";
    return 0;
  }
  std::string joined;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    if (i) joined += "; ";
    joined += problems[i];
  }
  std::cout << "FAIL " << which << ": " << criteria[which - 1].title << " (" << joined << ")\n";
  return 1;
}
