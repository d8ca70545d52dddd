#pragma once

#include <string>

#include "prn/digraph.hpp"

namespace prn {

// Graphviz form of the state digraph. Output is deterministic: nodes in
// space order, one edge per (state, function) in digraph order.
inline std::string export_dot(const Prn& net, const std::string& graph_name = "prn") {
  WeightedDigraph g = state_digraph(net);
  std::string out = "digraph " + graph_name + " {\n";
  for (const auto& s : g.space.states()) out += "  \"" + s.str() + "\";\n";
  for (const auto& arc : g.arcs) {
    out += "  \"" + g.space[arc.from].str() + "\" -> \"" + g.space[arc.to].str() +
           "\" [label=\"" + arc.label + ": " + format_rational(arc.weight) + "\"];\n";
  }
  return out + "}\n";
}

}  // namespace prn
