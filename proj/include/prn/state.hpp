#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prn/errors.hpp"

namespace prn {

// A network state. Four shapes cover everything the library builds:
//   coordinates  (0,1)          tuples over finite alphabets
//   label        ready          named states of an explicitly listed space
//   pair         ((0,1),(1,0))  states of a product network
//   tagged       1:(0,1)        states of a disjoint sum, when the summands
//                               do not share a coordinate shape
// States are immutable and totally ordered (kind first, then content), so
// they can key maps and give every constructed space a stable order.
class State {
 public:
  enum class Kind { coords, label, pair, tagged };

  explicit State(std::vector<int> coords) : kind_(Kind::coords), coords_(std::move(coords)) {}
  explicit State(std::string label) : kind_(Kind::label), label_(std::move(label)) {}
  State(const State& first, const State& second)
      : kind_(Kind::pair),
        first_(std::make_shared<State>(first)),
        second_(std::make_shared<State>(second)) {}
  State(int tag, const State& inner)
      : kind_(Kind::tagged), tag_(tag), first_(std::make_shared<State>(inner)) {}

  Kind kind() const { return kind_; }
  const std::vector<int>& coords() const { return coords_; }
  const std::string& label() const { return label_; }
  const State& first() const { return *first_; }
  const State& second() const { return *second_; }
  int tag() const { return tag_; }
  const State& inner() const { return *first_; }

  int compare(const State& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_ ? -1 : 1;
    switch (kind_) {
      case Kind::coords:
        return three_way(coords_, o.coords_);
      case Kind::label:
        return label_ < o.label_ ? -1 : (o.label_ < label_ ? 1 : 0);
      case Kind::pair: {
        int c = first_->compare(*o.first_);
        return c != 0 ? c : second_->compare(*o.second_);
      }
      case Kind::tagged:
        if (tag_ != o.tag_) return tag_ < o.tag_ ? -1 : 1;
        return first_->compare(*o.first_);
    }
    return 0;
  }

  friend bool operator==(const State& a, const State& b) { return a.compare(b) == 0; }
  friend bool operator!=(const State& a, const State& b) { return a.compare(b) != 0; }
  friend bool operator<(const State& a, const State& b) { return a.compare(b) < 0; }

  std::string str() const {
    switch (kind_) {
      case Kind::coords: {
        std::string out = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
          if (i) out += ',';
          out += std::to_string(coords_[i]);
        }
        return out + ")";
      }
      case Kind::label:
        return label_;
      case Kind::pair:
        return "(" + first_->str() + "," + second_->str() + ")";
      case Kind::tagged:
        return std::to_string(tag_) + ":" + first_->str();
    }
    return {};
  }

  static State parse(std::string_view text);

 private:
  static int three_way(const std::vector<int>& a, const std::vector<int>& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
  }

  Kind kind_;
  std::vector<int> coords_;
  std::string label_;
  int tag_ = 0;
  std::shared_ptr<const State> first_, second_;
};

namespace detail {

struct StateParser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what + " in state '" + std::string(text) + "'", 0, pos + 1);
  }

  bool at_end() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void expect(char c) {
    if (at_end() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  int parse_int() {
    std::size_t start = pos;
    long long value = 0;
    while (!at_end() && text[pos] >= '0' && text[pos] <= '9') {
      value = value * 10 + (text[pos] - '0');
      if (value > 1000000000) fail("coordinate too large");
      ++pos;
    }
    if (pos == start) fail("expected digits");
    return static_cast<int>(value);
  }

  static bool label_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool label_char(char c) { return label_start(c) || (c >= '0' && c <= '9'); }

  // A parenthesized item is either a bare coordinate value or a full state.
  struct Item {
    std::optional<State> state;
    int number = 0;
  };

  Item parse_item() {
    if (at_end()) fail("unexpected end");
    char c = peek();
    if (c >= '0' && c <= '9') {
      int n = parse_int();
      if (!at_end() && peek() == ':') {
        ++pos;
        return {State(n, parse_state()), 0};
      }
      return {std::nullopt, n};
    }
    return {parse_state(), 0};
  }

  State parse_state() {
    if (at_end()) fail("unexpected end");
    char c = peek();
    if (c == '(') {
      ++pos;
      std::vector<Item> items;
      if (!at_end() && peek() == ')') {
        ++pos;
        return State(std::vector<int>{});
      }
      items.push_back(parse_item());
      while (!at_end() && peek() == ',') {
        ++pos;
        items.push_back(parse_item());
      }
      expect(')');
      bool all_numbers = true;
      for (const auto& it : items)
        if (it.state) all_numbers = false;
      if (all_numbers) {
        std::vector<int> cs;
        cs.reserve(items.size());
        for (const auto& it : items) cs.push_back(it.number);
        return State(std::move(cs));
      }
      if (items.size() == 2 && items[0].state && items[1].state)
        return State(*items[0].state, *items[1].state);
      fail("expected a coordinate tuple or a pair of states");
    }
    if (c >= '0' && c <= '9') {
      int tag = parse_int();
      expect(':');
      return State(tag, parse_state());
    }
    if (label_start(c)) {
      std::size_t start = pos;
      while (!at_end() && label_char(peek())) ++pos;
      return State(std::string(text.substr(start, pos - start)));
    }
    fail("unexpected character");
  }
};

}  // namespace detail

inline State State::parse(std::string_view text) {
  detail::StateParser p{text};
  State s = p.parse_state();
  if (!p.at_end()) p.fail("trailing characters");
  return s;
}

// An ordered finite state set. The order is part of the value: it fixes
// matrix row/column indexing, serialization, and enumeration order.
class StateSpace {
 public:
  StateSpace() = default;

  // All tuples over the given per-coordinate alphabet sizes, in
  // lexicographic order with the last coordinate varying fastest.
  static StateSpace tuples(const std::vector<int>& sizes) {
    for (int k : sizes)
      if (k < 1) throw ValidationError("alphabet size must be positive");
    std::vector<State> states;
    std::vector<int> current(sizes.size(), 0);
    while (true) {
      states.emplace_back(current);
      std::size_t i = sizes.size();
      while (i > 0 && ++current[i - 1] == sizes[i - 1]) current[--i] = 0;
      if (i == 0) break;
    }
    return StateSpace(std::move(states));
  }

  static StateSpace of_states(std::vector<State> states) { return StateSpace(std::move(states)); }

  static StateSpace of_labels(const std::vector<std::string>& labels) {
    std::vector<State> states;
    states.reserve(labels.size());
    for (const auto& l : labels) states.emplace_back(l);
    return StateSpace(std::move(states));
  }

  std::size_t size() const { return states_.size(); }
  const State& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<State>& states() const { return states_; }

  std::optional<std::size_t> find(const State& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const State& s) const {
    auto i = find(s);
    if (!i) throw UnknownState("state " + s.str() + " is not in the space");
    return *i;
  }

  bool contains(const State& s) const { return index_.count(s) > 0; }

  // True when every state is a coordinate tuple of one common arity.
  bool uniform_coords(std::size_t& arity) const {
    if (states_.empty()) return false;
    for (const auto& s : states_)
      if (s.kind() != State::Kind::coords) return false;
    arity = states_[0].coords().size();
    for (const auto& s : states_)
      if (s.coords().size() != arity) return false;
    return true;
  }

  friend bool operator==(const StateSpace& a, const StateSpace& b) {
    return a.states_ == b.states_;
  }
  friend bool operator!=(const StateSpace& a, const StateSpace& b) { return !(a == b); }

 private:
  explicit StateSpace(std::vector<State> states) : states_(std::move(states)) {
    for (std::size_t i = 0; i < states_.size(); ++i) {
      if (!index_.emplace(states_[i], i).second)
        throw ValidationError("duplicate state " + states_[i].str());
    }
    if (states_.empty()) throw ValidationError("state space is empty");
  }

  std::vector<State> states_;
  std::map<State, std::size_t> index_;
};

// Product order is left-major: (a_i, b_j) sits at index i*|B| + j.
inline StateSpace product_space(const StateSpace& a, const StateSpace& b) {
  std::vector<State> states;
  states.reserve(a.size() * b.size());
  for (const auto& x : a.states())
    for (const auto& y : b.states()) states.emplace_back(x, y);
  return StateSpace::of_states(std::move(states));
}

// Disjoint union, first summand's states first. When both spaces consist of
// coordinate tuples of one shared arity the tag becomes an appended
// coordinate (so {0,1}^2 + {0,1}^2 lives on triples); otherwise states are
// wrapped as 0:x and 1:y.
inline StateSpace sum_space(const StateSpace& a, const StateSpace& b) {
  std::size_t na = 0, nb = 0;
  std::vector<State> states;
  states.reserve(a.size() + b.size());
  if (a.uniform_coords(na) && b.uniform_coords(nb) && na == nb) {
    for (const auto& x : a.states()) {
      std::vector<int> cs = x.coords();
      cs.push_back(0);
      states.emplace_back(std::move(cs));
    }
    for (const auto& y : b.states()) {
      std::vector<int> cs = y.coords();
      cs.push_back(1);
      states.emplace_back(std::move(cs));
    }
  } else {
    for (const auto& x : a.states()) states.emplace_back(0, x);
    for (const auto& y : b.states()) states.emplace_back(1, y);
  }
  return StateSpace::of_states(std::move(states));
}

}  // namespace prn
