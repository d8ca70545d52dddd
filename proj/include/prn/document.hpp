#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prn/linear.hpp"
#include "prn/morphism.hpp"
#include "prn/network.hpp"

namespace prn {

// Text formats.
//
// Network ("prn/1"):
//   prn/1
//   space coords 2 2
//   function f1 prob 0.46
//     (0,0) -> (0,0)
//     ...
// The space may also be written as "space states s1 s2 ..." (explicit order)
// or "space labels a b ...". A linear function over Z_p^n can be given in
// one line: "function g prob 0.5 linear mod 2 [[0,1],[1,1]]".
//
// PBN ("pbn/1"):
//   pbn/1
//   genes 2
//   gene 1
//   predictor p11 prob 0.6
//     (0,0) -> 0
//     ...
//
// Morphism map files are bare "state -> state" lines. '#' starts a comment
// anywhere; blank lines are ignored.

struct NetworkDocument {
  std::optional<Prn> network;
  std::optional<Pbn> pbn;
};

namespace detail {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize_lines(std::string_view text) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls{raw};
    Line line{number, {}};
    std::string token;
    while (ls >> token) line.tokens.push_back(std::move(token));
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

inline int parse_count(const std::string& token, const Line& line, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(token, &used);
    if (used != token.size() || v < 0) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw SyntaxError(std::string("bad ") + what + " '" + token + "'", line.number);
  }
}

inline State parse_state_at(const std::string& token, std::size_t lineno) {
  try {
    return State::parse(token);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.what(), lineno);
  }
}

inline Rational parse_rational_at(const std::string& token, std::size_t lineno) {
  try {
    return parse_rational(token);
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.what(), lineno);
  }
}

inline StateSpace parse_space_line(const Line& line) {
  if (line.tokens.size() < 2)
    throw SyntaxError("space line needs a kind: coords, states, or labels", line.number);
  const std::string& kind = line.tokens[1];
  if (line.tokens.size() < 3)
    throw SyntaxError("space " + kind + " needs at least one argument", line.number);
  try {
    if (kind == "coords") {
      std::vector<int> sizes;
      for (std::size_t i = 2; i < line.tokens.size(); ++i)
        sizes.push_back(parse_count(line.tokens[i], line, "alphabet size"));
      return StateSpace::tuples(sizes);
    }
    if (kind == "states") {
      std::vector<State> states;
      for (std::size_t i = 2; i < line.tokens.size(); ++i)
        states.push_back(parse_state_at(line.tokens[i], line.number));
      return StateSpace::of_states(std::move(states));
    }
    if (kind == "labels") {
      std::vector<std::string> labels(line.tokens.begin() + 2, line.tokens.end());
      return StateSpace::of_labels(labels);
    }
  } catch (const SyntaxError&) {
    throw;
  } catch (const Error& e) {
    throw SyntaxError(e.what(), line.number);
  }
  throw SyntaxError("unknown space kind '" + kind + "'", line.number);
}

}  // namespace detail

inline Prn parse_network_lines(const std::vector<detail::Line>& lines, std::size_t at) {
  using detail::Line;
  if (at >= lines.size()) throw SyntaxError("missing space declaration");
  if (lines[at].tokens[0] != "space")
    throw SyntaxError("expected 'space ...'", lines[at].number);
  StateSpace space = detail::parse_space_line(lines[at]);
  ++at;

  std::vector<Prn::Entry> entries;
  while (at < lines.size()) {
    const Line& head = lines[at];
    if (head.tokens[0] != "function")
      throw SyntaxError("expected 'function <name> prob <p>'", head.number);
    if (head.tokens.size() < 4 || head.tokens[2] != "prob")
      throw SyntaxError("function line is 'function <name> prob <p>'", head.number);
    std::string name = head.tokens[1];
    Probability prob = [&] {
      try {
        return Probability(detail::parse_rational_at(head.tokens[3], head.number));
      } catch (const SyntaxError&) {
        throw;
      } catch (const Error& e) {
        throw SyntaxError(e.what(), head.number);
      }
    }();

    std::vector<std::size_t> table(space.size(), Morphism::npos);
    if (head.tokens.size() > 4) {
      // linear shorthand: ... linear mod <p> [[..],[..]]
      if (head.tokens.size() != 8 || head.tokens[4] != "linear" || head.tokens[5] != "mod")
        throw SyntaxError("trailing tokens; expected 'linear mod <p> <matrix>'", head.number);
      int p = detail::parse_count(head.tokens[6], head, "field order");
      try {
        FieldMatrix m = FieldMatrix::parse(head.tokens[7], p);
        if (space != vector_space(m.p(), m.dimension()))
          throw SyntaxError("linear function needs the space coords " +
                            std::to_string(p) + " ... (" + std::to_string(m.dimension()) +
                            " times)");
        table = linear_map_fds(m).table;
      } catch (const Error& e) {
        throw SyntaxError(e.what(), head.number);
      }
      ++at;
    } else {
      ++at;
      while (at < lines.size() && lines[at].tokens[0] != "function") {
        const Line& row = lines[at];
        if (row.tokens.size() != 3 || row.tokens[1] != "->")
          throw SyntaxError("expected '<state> -> <state>'", row.number);
        State from = detail::parse_state_at(row.tokens[0], row.number);
        State to = detail::parse_state_at(row.tokens[2], row.number);
        auto u = space.find(from);
        if (!u) throw SyntaxError("state " + from.str() + " is not in the space", row.number);
        auto v = space.find(to);
        if (!v) throw SyntaxError("state " + to.str() + " is not in the space", row.number);
        if (table[*u] != Morphism::npos)
          throw SyntaxError("state " + from.str() + " is mapped twice in function " + name,
                            row.number);
        table[*u] = *v;
        ++at;
      }
    }
    for (std::size_t u = 0; u < table.size(); ++u)
      if (table[u] == Morphism::npos)
        throw PartialFunctionError("function " + name + " does not map state " +
                                   space[u].str());
    entries.push_back({StateFunction{std::move(name), std::move(table)}, prob});
  }
  if (entries.empty()) throw SyntaxError("network has no functions");
  return Prn(std::move(space), std::move(entries));
}

inline Pbn parse_pbn_lines(const std::vector<detail::Line>& lines, std::size_t at) {
  using detail::Line;
  if (at >= lines.size() || lines[at].tokens[0] != "genes" || lines[at].tokens.size() != 2)
    throw SyntaxError("expected 'genes <n>'", at < lines.size() ? lines[at].number : 0);
  int genes = detail::parse_count(lines[at].tokens[1], lines[at], "gene count");
  if (genes < 1) throw SyntaxError("gene count must be positive", lines[at].number);
  StateSpace space = StateSpace::tuples(std::vector<int>(genes, 2));
  ++at;

  std::vector<Pbn::GenePredictors> per_gene;
  for (int g = 1; g <= genes; ++g) {
    if (at >= lines.size() || lines[at].tokens[0] != "gene" || lines[at].tokens.size() != 2 ||
        detail::parse_count(lines[at].tokens[1], lines[at], "gene index") != g)
      throw SyntaxError("expected 'gene " + std::to_string(g) + "'",
                        at < lines.size() ? lines[at].number : 0);
    ++at;
    Pbn::GenePredictors predictors;
    while (at < lines.size() && lines[at].tokens[0] == "predictor") {
      const Line& head = lines[at];
      if (head.tokens.size() != 4 || head.tokens[2] != "prob")
        throw SyntaxError("predictor line is 'predictor <name> prob <p>'", head.number);
      std::string name = head.tokens[1];
      Probability prob = [&] {
        try {
          return Probability(detail::parse_rational_at(head.tokens[3], head.number));
        } catch (const SyntaxError&) {
          throw;
        } catch (const Error& e) {
          throw SyntaxError(e.what(), head.number);
        }
      }();
      ++at;
      std::vector<int> outputs(space.size(), -1);
      while (at < lines.size() && lines[at].tokens.size() == 3 && lines[at].tokens[1] == "->") {
        const Line& row = lines[at];
        State from = detail::parse_state_at(row.tokens[0], row.number);
        auto u = space.find(from);
        if (!u) throw SyntaxError("state " + from.str() + " is not in the space", row.number);
        int bit = detail::parse_count(row.tokens[2], row, "predictor output");
        if (bit > 1) throw SyntaxError("predictor output must be 0 or 1", row.number);
        if (outputs[*u] != -1)
          throw SyntaxError("state " + from.str() + " is listed twice in predictor " + name,
                            row.number);
        outputs[*u] = bit;
        ++at;
      }
      for (std::size_t u = 0; u < outputs.size(); ++u)
        if (outputs[u] == -1)
          throw PartialFunctionError("predictor " + name + " does not cover state " +
                                     space[u].str());
      predictors.push_back({Predictor{std::move(name), std::move(outputs)}, prob});
    }
    per_gene.push_back(std::move(predictors));
  }
  if (at < lines.size())
    throw SyntaxError("unexpected content after last gene", lines[at].number);
  return Pbn(static_cast<std::size_t>(genes), std::move(per_gene));
}

inline NetworkDocument parse_document(std::string_view text) {
  auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw SyntaxError("empty document");
  const auto& header = lines[0];
  NetworkDocument doc;
  if (header.tokens[0] == "prn/1") {
    doc.network = parse_network_lines(lines, 1);
  } else if (header.tokens[0] == "pbn/1") {
    doc.pbn = parse_pbn_lines(lines, 1);
  } else {
    throw SyntaxError("unknown header '" + header.tokens[0] + "', expected prn/1 or pbn/1",
                      header.number);
  }
  return doc;
}

// Loads a network; a PBN document is expanded on the spot.
inline Prn parse_network(std::string_view text) {
  NetworkDocument doc = parse_document(text);
  if (doc.network) return *doc.network;
  return expand_pbn(*doc.pbn);
}

inline Pbn parse_pbn(std::string_view text) {
  NetworkDocument doc = parse_document(text);
  if (!doc.pbn) throw SyntaxError("expected a pbn/1 document");
  return *doc.pbn;
}

// "src -> dst" lines for building morphisms.
inline std::vector<std::pair<State, State>> parse_map(std::string_view text) {
  std::vector<std::pair<State, State>> pairs;
  for (const auto& line : detail::tokenize_lines(text)) {
    if (line.tokens.size() != 3 || line.tokens[1] != "->")
      throw SyntaxError("expected '<state> -> <state>'", line.number);
    pairs.emplace_back(detail::parse_state_at(line.tokens[0], line.number),
                       detail::parse_state_at(line.tokens[2], line.number));
  }
  if (pairs.empty()) throw SyntaxError("empty map");
  return pairs;
}

// "{(0,0),(1,0)}" or "(0,0),(1,0)": a comma-separated state list, split at
// paren depth zero, with optional braces.
inline std::vector<State> parse_state_set(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && (body.front() == ' ' || body.front() == '\t')) body.remove_prefix(1);
  while (!body.empty() && (body.back() == ' ' || body.back() == '\t')) body.remove_suffix(1);
  if (!body.empty() && body.front() == '{') {
    if (body.back() != '}') throw SyntaxError("unbalanced braces in '" + std::string(text) + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<State> states;
  std::size_t start = 0;
  int depth = 0;
  auto flush = [&](std::size_t end) {
    std::string_view piece = body.substr(start, end - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    if (piece.empty()) throw SyntaxError("empty entry in state set '" + std::string(text) + "'");
    states.push_back(State::parse(piece));
  };
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '(') ++depth;
    if (body[i] == ')') --depth;
    if (body[i] == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  if (body.empty()) throw SyntaxError("empty state set");
  flush(body.size());
  return states;
}

namespace detail {

inline std::optional<std::vector<int>> tuple_shape(const StateSpace& space) {
  std::size_t arity = 0;
  if (!space.uniform_coords(arity) || arity == 0) return std::nullopt;
  std::vector<int> sizes(arity, 0);
  for (const auto& s : space.states())
    for (std::size_t i = 0; i < arity; ++i)
      if (s.coords()[i] >= sizes[i]) sizes[i] = s.coords()[i] + 1;
  if (StateSpace::tuples(sizes) != space) return std::nullopt;
  return sizes;
}

}  // namespace detail

// Canonical form: shape-detected space line, functions in order, mapping
// lines in state order. parse_network(serialize_network(n)) == n.
inline std::string serialize_network(const Prn& net) {
  std::string out = "prn/1\n";
  if (auto sizes = detail::tuple_shape(net.space())) {
    out += "space coords";
    for (int k : *sizes) out += " " + std::to_string(k);
  } else {
    bool labels = true;
    for (const auto& s : net.space().states())
      if (s.kind() != State::Kind::label) labels = false;
    out += labels ? "space labels" : "space states";
    for (const auto& s : net.space().states()) out += " " + s.str();
  }
  out += '\n';
  for (const auto& e : net.entries()) {
    out += "function " + e.function.name + " prob " + e.probability.str() + "\n";
    for (std::size_t u = 0; u < net.space().size(); ++u)
      out += "  " + net.space()[u].str() + " -> " + net.space()[e.function.table[u]].str() + "\n";
  }
  return out;
}

inline std::string serialize_map(const Morphism& m) {
  std::string out;
  for (std::size_t u = 0; u < m.map().size(); ++u)
    out += m.source().space()[u].str() + " -> " + m.target().space()[m(u)].str() + "\n";
  return out;
}

}  // namespace prn
