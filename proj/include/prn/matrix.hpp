#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "prn/network.hpp"

namespace prn {

// A row-stochastic matrix with exact rational entries, indexed by a state
// space. Row u gives the one-step distribution out of state u.
class StochasticMatrix {
 public:
  StochasticMatrix(StateSpace space, std::vector<std::vector<Rational>> rows)
      : space_(std::move(space)), rows_(std::move(rows)) {
    if (rows_.size() != space_.size())
      throw ValidationError("matrix has " + std::to_string(rows_.size()) + " rows for " +
                            std::to_string(space_.size()) + " states");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].size() != space_.size())
        throw ValidationError("row " + std::to_string(i + 1) + " has " +
                              std::to_string(rows_[i].size()) + " entries, expected " +
                              std::to_string(space_.size()));
      Rational sum = 0;
      for (const Rational& x : rows_[i]) {
        if (x < 0 || x > 1)
          throw ValidationError("entry " + format_fraction(x) + " in row " +
                                std::to_string(i + 1) + " outside [0, 1]");
        sum += x;
      }
      if (sum != 1)
        throw ValidationError("row " + std::to_string(i + 1) + " sums to " +
                              format_fraction(sum) + ", expected 1");
    }
  }

  static StochasticMatrix identity(StateSpace space) {
    std::size_t n = space.size();
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
    return StochasticMatrix(std::move(space), std::move(rows));
  }

  std::size_t order() const { return rows_.size(); }
  const StateSpace& space() const { return space_; }
  const Rational& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  StochasticMatrix multiply(const StochasticMatrix& o) const {
    require_compatible(o);
    std::size_t n = order();
    std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (rows_[i][k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) out[i][j] += rows_[i][k] * o.rows_[k][j];
      }
    return StochasticMatrix(space_, std::move(out));
  }

  friend bool operator==(const StochasticMatrix& a, const StochasticMatrix& b) {
    return a.space_ == b.space_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const StochasticMatrix& a, const StochasticMatrix& b) {
    return !(a == b);
  }

  void require_compatible(const StochasticMatrix& o) const {
    if (order() != o.order())
      throw OrderMismatch("matrices have orders " + std::to_string(order()) + " and " +
                          std::to_string(o.order()));
    if (space_ != o.space_)
      throw OrderMismatch("matrices index different state spaces");
  }

 private:
  StateSpace space_;
  std::vector<std::vector<Rational>> rows_;
};

// p(u, v) = sum of the probabilities of the functions sending u to v.
inline StochasticMatrix transition_matrix(const Prn& net) {
  std::size_t n = net.space().size();
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t k = 0; k < net.function_count(); ++k)
      rows[u][net.apply(k, u)] += net.probability(k);
  return StochasticMatrix(net.space(), std::move(rows));
}

inline StochasticMatrix matrix_power(StochasticMatrix base, unsigned long n) {
  if (n == 0) throw ValidationError("matrix power wants an exponent of at least 1");
  StochasticMatrix acc = StochasticMatrix::identity(base.space());
  while (n) {
    if (n & 1) acc = acc.multiply(base);
    n >>= 1;
    if (n) base = base.multiply(base);
  }
  return acc;
}

// Sup-norm distance max |a(u,v) - b(u,v)|, exact.
inline Rational max_entry_distance(const StochasticMatrix& a, const StochasticMatrix& b) {
  a.require_compatible(b);
  Rational best = 0;
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) {
      Rational d = abs(a.at(i, j) - b.at(i, j));
      if (d > best) best = d;
    }
  return best;
}

// d_n = max entry distance of the n-th powers, for n = 1..steps. Reports how
// the two chains drift apart over time; no bound on the growth is implied.
inline std::vector<Rational> power_deviation_profile(const StochasticMatrix& a,
                                                     const StochasticMatrix& b,
                                                     std::size_t steps) {
  a.require_compatible(b);
  std::vector<Rational> profile;
  profile.reserve(steps);
  StochasticMatrix pa = a, pb = b;
  for (std::size_t n = 1; n <= steps; ++n) {
    if (n > 1) {
      pa = pa.multiply(a);
      pb = pb.multiply(b);
    }
    profile.push_back(max_entry_distance(pa, pb));
  }
  return profile;
}

// Text form:
//   order=4
//   (0,0) (0,1) (1,0) (1,1)
//   0.67 0 0.33 0
//   ...
inline std::string to_text(const StochasticMatrix& m) {
  std::string out = "order=" + std::to_string(m.order()) + "\n";
  for (std::size_t i = 0; i < m.order(); ++i) {
    if (i) out += ' ';
    out += m.space()[i].str();
  }
  out += '\n';
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) {
      if (j) out += ' ';
      out += format_rational(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

inline StochasticMatrix matrix_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos) continue;
      if (line[start] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next_line()) throw SyntaxError("empty matrix text");
  std::size_t eq = line.find('=');
  if (line.substr(0, eq) != "order" || eq == std::string::npos)
    throw SyntaxError("expected order=<n>", lineno);
  std::size_t n = 0;
  try {
    n = std::stoul(line.substr(eq + 1));
  } catch (const std::exception&) {
    throw SyntaxError("bad order value", lineno);
  }
  if (n == 0) throw SyntaxError("order must be positive", lineno);

  if (!next_line()) throw SyntaxError("missing state list", lineno);
  std::istringstream states_in{line};
  std::vector<State> states;
  std::string token;
  while (states_in >> token) states.push_back(State::parse(token));
  if (states.size() != n)
    throw SyntaxError("expected " + std::to_string(n) + " states, got " +
                      std::to_string(states.size()), lineno);

  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_line()) throw SyntaxError("missing matrix row " + std::to_string(i + 1), lineno);
    std::istringstream row_in{line};
    std::vector<Rational> row;
    while (row_in >> token) row.push_back(parse_rational(token));
    if (row.size() != n)
      throw SyntaxError("row has " + std::to_string(row.size()) + " entries, expected " +
                        std::to_string(n), lineno);
    rows.push_back(std::move(row));
  }
  return StochasticMatrix(StateSpace::of_states(std::move(states)), std::move(rows));
}

}  // namespace prn
