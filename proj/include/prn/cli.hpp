#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prn/algebra.hpp"
#include "prn/document.hpp"
#include "prn/dot.hpp"
#include "prn/linear.hpp"
#include "prn/matrix.hpp"
#include "prn/morphism.hpp"
#include "prn/steady.hpp"
#include "prn/structure.hpp"

namespace prn {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::string set_string(const StateSpace& space, const std::vector<std::size_t>& subset) {
  std::string out = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ',';
    out += space[subset[i]].str();
  }
  return out + "}";
}

inline std::string map_string(const Morphism& m) {
  std::string out;
  for (std::size_t u = 0; u < m.map().size(); ++u) {
    if (u) out += ' ';
    out += m.source().space()[u].str() + "->" + m.target().space()[m(u)].str();
  }
  return out;
}

inline std::string mass_string(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace detail

// Dispatches one command line (without the program name). Writes results to
// out and diagnostics to err. Returns 0 on success, 1 when an analysis came
// back negative under --fail-on-negative, 2 on any error.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"exact analysis of probabilistic regulatory networks"};
  app.require_subcommand(1);

  struct Options {
    std::string file, file2, map_file, subset, subset2, out_path;
    std::string combiner = "multiply";
    double tol = 1e-12;
    std::size_t max_iter = 100000;
    std::uint64_t budget = 1000000;
    std::uint64_t cap = 4096;
    std::uint64_t enum_cap = 100000;
    unsigned long steps = 1;
    int p = 2;
    std::size_t dim = 1;
    bool fail_on_negative = false;
  } o;
  bool negative = false;

  auto load_net = [&](const std::string& path) { return parse_network(detail::read_file(path)); };
  auto load_morphism = [&](const Prn& src, const Prn& dst) {
    return Morphism::from_pairs(src, dst, parse_map(detail::read_file(o.map_file)));
  };
  auto subset_of = [&](const Prn& net, const std::string& text) {
    std::vector<std::size_t> indices;
    for (const State& s : parse_state_set(text)) indices.push_back(net.space().index_of(s));
    return indices;
  };
  auto emit = [&](const std::string& text) {
    if (o.out_path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw Error("cannot write file '" + o.out_path + "'");
    f << text;
  };
  auto print_found = [&](const std::vector<std::pair<Morphism, Rational>>& found,
                         const char* what) {
    out << found.size() << " " << what << (found.size() == 1 ? "" : "s") << "\n";
    for (const auto& [m, eps] : found)
      out << detail::map_string(m) << "  epsilon = " << format_annotated(eps) << "\n";
    negative = found.empty();
  };

  auto* matrix_cmd = app.add_subcommand("matrix", "print the exact transition matrix");
  matrix_cmd->add_option("net", o.file, "network file")->required();
  matrix_cmd->add_option("--out", o.out_path, "write to a file instead of stdout");
  matrix_cmd->callback([&] { emit(to_text(transition_matrix(load_net(o.file)))); });

  auto* steady_cmd = app.add_subcommand("steady", "stationary distribution of the chain");
  steady_cmd->add_option("net", o.file, "network file")->required();
  steady_cmd->add_option("--tol", o.tol, "iteration tolerance");
  steady_cmd->add_option("--max-iter", o.max_iter, "iteration limit");
  steady_cmd->callback([&] {
    Distribution d = steady_state(transition_matrix(load_net(o.file)), o.tol, o.max_iter);
    for (std::size_t u = 0; u < d.space.size(); ++u)
      out << d.space[u].str() << " " << detail::mass_string(d.mass[u]) << "\n";
  });

  auto* check_cmd = app.add_subcommand("check-hom", "check a map for the homomorphism property");
  check_cmd->add_option("src", o.file, "source network file")->required();
  check_cmd->add_option("dst", o.file2, "target network file")->required();
  check_cmd->add_option("map", o.map_file, "state map file")->required();
  check_cmd->add_flag("--fail-on-negative", o.fail_on_negative, "exit 1 when not a homomorphism");
  check_cmd->callback([&] {
    Prn src = load_net(o.file), dst = load_net(o.file2);
    Morphism m = load_morphism(src, dst);
    HomReport r = check_homomorphism(m);
    if (r.is_homomorphism) {
      out << "homomorphism\n";
      for (std::size_t i = 0; i < r.witnesses.size(); ++i)
        out << "  " << src.function(i).name << " -> " << dst.function(r.witnesses[i]).name
            << "\n";
      out << "epsilon = " << format_annotated(*r.epsilon) << "\n";
    } else {
      out << "not a homomorphism\n";
      for (const auto& f : r.failures)
        out << "  " << src.function(f.function).name << ": no witness at "
            << src.space()[f.state].str() << " -> " << src.space()[f.image].str() << "\n";
      negative = true;
    }
  });

  auto* shom_cmd = app.add_subcommand("search-hom", "enumerate all homomorphisms");
  shom_cmd->add_option("src", o.file, "source network file")->required();
  shom_cmd->add_option("dst", o.file2, "target network file")->required();
  shom_cmd->add_option("--budget", o.budget, "search node budget");
  shom_cmd->add_flag("--fail-on-negative", o.fail_on_negative, "exit 1 when none exist");
  shom_cmd->callback([&] {
    print_found(enumerate_homomorphisms(load_net(o.file), load_net(o.file2), o.budget),
                "homomorphism");
  });

  auto* siso_cmd = app.add_subcommand("search-iso", "enumerate all isomorphisms");
  siso_cmd->add_option("src", o.file, "source network file")->required();
  siso_cmd->add_option("dst", o.file2, "target network file")->required();
  siso_cmd->add_option("--budget", o.budget, "search node budget");
  siso_cmd->add_flag("--fail-on-negative", o.fail_on_negative, "exit 1 when none exist");
  siso_cmd->callback([&] {
    print_found(enumerate_isomorphisms(load_net(o.file), load_net(o.file2), o.budget),
                "isomorphism");
  });

  auto* eps_cmd = app.add_subcommand("epsilon", "deviation of a homomorphism");
  eps_cmd->add_option("src", o.file, "source network file")->required();
  eps_cmd->add_option("dst", o.file2, "target network file")->required();
  eps_cmd->add_option("map", o.map_file, "state map file")->required();
  eps_cmd->callback([&] {
    Prn src = load_net(o.file), dst = load_net(o.file2);
    out << format_annotated(epsilon_of(load_morphism(src, dst))) << "\n";
  });

  auto* profile_cmd =
      app.add_subcommand("power-profile", "matrix-power deviation of two networks");
  profile_cmd->add_option("a", o.file, "first network file")->required();
  profile_cmd->add_option("b", o.file2, "second network file")->required();
  profile_cmd->add_option("steps", o.steps, "number of powers")->required();
  profile_cmd->callback([&] {
    auto profile = power_deviation_profile(transition_matrix(load_net(o.file)),
                                           transition_matrix(load_net(o.file2)), o.steps);
    for (std::size_t n = 0; n < profile.size(); ++n)
      out << n + 1 << " " << format_rational(profile[n]) << "\n";
  });

  auto* sum_cmd = app.add_subcommand("sum", "disjoint sum of two networks");
  sum_cmd->add_option("a", o.file, "first network file")->required();
  sum_cmd->add_option("b", o.file2, "second network file")->required();
  sum_cmd->add_option("--out", o.out_path, "write to a file instead of stdout");
  sum_cmd->callback([&] { emit(serialize_network(sum(load_net(o.file), load_net(o.file2)))); });

  auto* product_cmd = app.add_subcommand("product", "product of two networks");
  product_cmd->add_option("a", o.file, "first network file")->required();
  product_cmd->add_option("b", o.file2, "second network file")->required();
  product_cmd->add_option("--combiner", o.combiner, "probability rule: multiply or mean");
  product_cmd->add_option("--out", o.out_path, "write to a file instead of stdout");
  product_cmd->callback([&] {
    ProbabilityCombiner c = ProbabilityCombiner::multiply();
    if (o.combiner == "mean")
      c = ProbabilityCombiner::mean();
    else if (o.combiner != "multiply")
      throw ValidationError("unknown combiner '" + o.combiner + "'");
    emit(serialize_network(product(load_net(o.file), load_net(o.file2), c)));
  });

  auto* restrict_cmd = app.add_subcommand("restrict", "restrict to an invariant subset");
  restrict_cmd->add_option("net", o.file, "network file")->required();
  restrict_cmd->add_option("subset", o.subset, "state set, e.g. '{(0,0),(1,0)}'")->required();
  restrict_cmd->add_option("--out", o.out_path, "write to a file instead of stdout");
  restrict_cmd->callback([&] {
    Prn net = load_net(o.file);
    emit(serialize_network(restrict_to(net, subset_of(net, o.subset))));
  });

  auto* inv_cmd = app.add_subcommand("invariants", "all invariant subnetworks");
  inv_cmd->add_option("net", o.file, "network file")->required();
  inv_cmd->add_option("--cap", o.cap, "largest number of subsets to build");
  inv_cmd->callback([&] {
    Prn net = load_net(o.file);
    InvariantLattice lattice = all_invariant_subnetworks(net, o.cap);
    out << lattice.sets.size() << " invariant subnetworks\n";
    for (const auto& s : lattice.sets) {
      out << detail::set_string(net.space(), s);
      for (const auto& m : lattice.minimal)
        if (m == s) out << " (minimal)";
      out << "\n";
    }
  });

  auto* irr_cmd = app.add_subcommand("irreducible", "the irreducible subnetworks");
  irr_cmd->add_option("net", o.file, "network file")->required();
  irr_cmd->callback([&] {
    Prn net = load_net(o.file);
    for (const auto& s : irreducible_subnetworks(net))
      out << detail::set_string(net.space(), s) << "\n";
  });

  auto* proj_cmd = app.add_subcommand("projections", "projections onto a subnetwork");
  proj_cmd->add_option("net", o.file, "network file")->required();
  proj_cmd->add_option("subset", o.subset, "target state set")->required();
  proj_cmd->add_option("--cap", o.budget, "largest number of candidate maps to try");
  proj_cmd->add_flag("--fail-on-negative", o.fail_on_negative, "exit 1 when none exist");
  proj_cmd->callback([&] {
    Prn net = load_net(o.file);
    ProjectionsReport r = projections_onto(net, subset_of(net, o.subset), o.budget);
    out << "target invariant: " << (r.target_invariant ? "yes" : "no") << "\n";
    print_found(r.projections, "projection");
  });

  auto* dec_cmd = app.add_subcommand("decompose", "decompose through a product of restrictions");
  dec_cmd->add_option("net", o.file, "network file")->required();
  dec_cmd->add_option("y1", o.subset, "first invariant state set")->required();
  dec_cmd->add_option("y2", o.subset2, "second invariant state set")->required();
  dec_cmd->add_option("--cap", o.cap, "largest product size");
  dec_cmd->add_option("--budget", o.budget, "search node budget");
  dec_cmd->add_flag("--fail-on-negative", o.fail_on_negative, "exit 1 when no decomposition");
  dec_cmd->callback([&] {
    Prn net = load_net(o.file);
    DecompositionReport r = check_product_decomposition(
        net, subset_of(net, o.subset), subset_of(net, o.subset2), o.cap, o.budget);
    if (r.irreducible) {
      out << "irreducible, no proper invariant subnetworks\n";
      negative = true;
    } else if (r.found) {
      out << "decomposition found\n";
      out << "epsilon = " << format_annotated(*r.epsilon) << "\n";
      out << "image: " << detail::set_string(r.product_net->space(), r.image) << "\n";
      out << serialize_map(*r.embedding);
    } else {
      out << "no decomposition found\n";
      negative = true;
    }
  });

  auto* expand_cmd = app.add_subcommand("expand-pbn", "expand a PBN to its network");
  expand_cmd->add_option("pbn", o.file, "pbn file")->required();
  expand_cmd->add_option("--out", o.out_path, "write to a file instead of stdout");
  expand_cmd->callback(
      [&] { emit(serialize_network(expand_pbn(parse_pbn(detail::read_file(o.file))))); });

  auto* lin_cmd = app.add_subcommand("linear-enum", "enumerate all linear maps on Z_p^n");
  lin_cmd->add_option("p", o.p, "field order (prime)")->required();
  lin_cmd->add_option("n", o.dim, "dimension")->required();
  lin_cmd->add_option("--cap", o.enum_cap, "largest number of maps to enumerate");
  lin_cmd->callback([&] {
    auto matrices = enumerate_linear_matrices(o.p, o.dim, o.enum_cap);
    out << matrices.size() << " linear maps on Z_" << o.p << "^" << o.dim << "\n";
    for (const auto& m : matrices) out << m.str() << "\n";
  });

  auto* dot_cmd = app.add_subcommand("export-dot", "state digraph in DOT form");
  dot_cmd->add_option("net", o.file, "network file")->required();
  dot_cmd->add_option("--out", o.out_path, "write to a file instead of stdout");
  dot_cmd->callback([&] { emit(export_dot(load_net(o.file))); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return negative && o.fail_on_negative ? 1 : 0;
}

}  // namespace prn
