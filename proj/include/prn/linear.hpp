#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "prn/network.hpp"

namespace prn {

class PrimeField {
 public:
  explicit PrimeField(int p) : p_(p) {
    if (p < 2) throw ValidationError("field order must be at least 2");
    if (p > 46340) throw ValidationError("field order too large");
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) throw ValidationError(std::to_string(p) + " is not prime");
  }

  int order() const { return p_; }
  int reduce(long long x) const {
    long long r = x % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }

 private:
  int p_;
};

// A square matrix over Z_p, acting on column vectors: (Mx)_i = sum_j M[i][j] x_j.
class FieldMatrix {
 public:
  FieldMatrix(int p, std::vector<std::vector<int>> rows) : field_(p), rows_(std::move(rows)) {
    if (rows_.empty()) throw ValidationError("matrix has no rows");
    for (auto& row : rows_) {
      if (row.size() != rows_.size())
        throw ValidationError("matrix is not square");
      for (int& x : row) x = field_.reduce(x);
    }
  }

  static FieldMatrix zero(int p, std::size_t n) {
    return FieldMatrix(p, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
  }

  static FieldMatrix identity(int p, std::size_t n) {
    auto rows = std::vector<std::vector<int>>(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
    return FieldMatrix(p, std::move(rows));
  }

  int p() const { return field_.order(); }
  std::size_t dimension() const { return rows_.size(); }
  int at(std::size_t i, std::size_t j) const { return rows_[i][j]; }

  std::vector<int> apply(const std::vector<int>& x) const {
    std::vector<int> y(dimension(), 0);
    for (std::size_t i = 0; i < dimension(); ++i) {
      long long acc = 0;
      for (std::size_t j = 0; j < dimension(); ++j)
        acc += static_cast<long long>(rows_[i][j]) * x[j];
      y[i] = field_.reduce(acc);
    }
    return y;
  }

  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < dimension(); ++i) {
      if (i) out += ',';
      out += '[';
      for (std::size_t j = 0; j < dimension(); ++j) {
        if (j) out += ',';
        out += std::to_string(rows_[i][j]);
      }
      out += ']';
    }
    return out + "]";
  }

  // "[[0,1],[1,1]]"
  static FieldMatrix parse(std::string_view text, int p) {
    std::size_t pos = 0;
    auto fail = [&]() -> void {
      throw SyntaxError("bad matrix '" + std::string(text) + "'", 0, pos + 1);
    };
    auto expect = [&](char c) {
      if (pos >= text.size() || text[pos] != c) fail();
      ++pos;
    };
    auto parse_int = [&]() {
      bool neg = pos < text.size() && text[pos] == '-';
      if (neg) ++pos;
      std::size_t start = pos;
      long long v = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
        v = v * 10 + (text[pos++] - '0');
      if (pos == start || v > 1000000000) fail();
      return static_cast<int>(neg ? -v : v);
    };
    expect('[');
    std::vector<std::vector<int>> rows;
    while (true) {
      expect('[');
      std::vector<int> row;
      row.push_back(parse_int());
      while (pos < text.size() && text[pos] == ',') {
        ++pos;
        row.push_back(parse_int());
      }
      expect(']');
      rows.push_back(std::move(row));
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    expect(']');
    if (pos != text.size()) fail();
    return FieldMatrix(p, std::move(rows));
  }

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.p() == b.p() && a.rows_ == b.rows_;
  }

 private:
  PrimeField field_;
  std::vector<std::vector<int>> rows_;
};

// x^n + a_{n-1} x^{n-1} + ... + a_0 over Z_p, stored by its low coefficients.
struct MonicPolynomial {
  int p;
  std::vector<int> coeffs;  // a_0 .. a_{n-1}

  std::size_t degree() const { return coeffs.size(); }

  std::string str() const {
    std::string out;
    auto term = [&](int coef, std::size_t power) {
      if (coef == 0) return;
      if (!out.empty()) out += '+';
      if (power == 0) {
        out += std::to_string(coef);
        return;
      }
      if (coef != 1) out += std::to_string(coef);
      out += 'x';
      if (power > 1) out += "^" + std::to_string(power);
    };
    term(1, degree());
    for (std::size_t i = degree(); i-- > 0;) term(coeffs[i], i);
    return out + " mod " + std::to_string(p);
  }

  // "x^2+x+1 mod 2", "x^2+2x mod 3", "x+1 mod 5"
  static MonicPolynomial parse(std::string_view text) {
    auto mod_at = text.rfind(" mod ");
    if (mod_at == std::string_view::npos)
      throw SyntaxError("polynomial '" + std::string(text) + "' is missing 'mod p'");
    int p = 0;
    try {
      p = std::stoi(std::string(text.substr(mod_at + 5)));
    } catch (const std::exception&) {
      throw SyntaxError("bad field order in '" + std::string(text) + "'");
    }
    PrimeField field(p);

    std::string_view body = text.substr(0, mod_at);
    std::vector<std::pair<std::size_t, int>> terms;  // (power, coefficient)
    std::size_t pos = 0;
    auto fail = [&]() -> void {
      throw SyntaxError("bad polynomial '" + std::string(text) + "'", 0, pos + 1);
    };
    while (pos < body.size()) {
      if (body[pos] == '+' || body[pos] == ' ') {
        ++pos;
        continue;
      }
      long long coef = -1;
      if (body[pos] >= '0' && body[pos] <= '9') {
        coef = 0;
        while (pos < body.size() && body[pos] >= '0' && body[pos] <= '9')
          coef = coef * 10 + (body[pos++] - '0');
        if (coef > 1000000000) fail();
      }
      std::size_t power = 0;
      if (pos < body.size() && body[pos] == 'x') {
        ++pos;
        power = 1;
        if (pos < body.size() && body[pos] == '^') {
          ++pos;
          if (pos >= body.size() || body[pos] < '0' || body[pos] > '9') fail();
          power = 0;
          while (pos < body.size() && body[pos] >= '0' && body[pos] <= '9')
            power = power * 10 + (body[pos++] - '0');
          if (power > 64) fail();
        }
        if (coef < 0) coef = 1;
      } else if (coef < 0) {
        fail();
      }
      terms.emplace_back(power, field.reduce(coef));
    }
    if (terms.empty()) throw SyntaxError("empty polynomial in '" + std::string(text) + "'");

    std::size_t deg = 0;
    for (const auto& [power, coef] : terms)
      if (coef != 0 && power > deg) deg = power;
    if (deg == 0) throw SyntaxError("polynomial must have positive degree");
    std::vector<int> coeffs(deg + 1, 0);
    for (const auto& [power, coef] : terms)
      coeffs[power] = field.reduce(coeffs[power] + coef);
    if (coeffs[deg] != 1)
      throw SyntaxError("polynomial is not monic: '" + std::string(text) + "'");
    coeffs.pop_back();
    return MonicPolynomial{p, std::move(coeffs)};
  }
};

// Ones on the subdiagonal, the negated coefficients down the last column.
// Its characteristic polynomial is the given one.
inline FieldMatrix companion_matrix(const MonicPolynomial& q) {
  PrimeField field(q.p);
  std::size_t n = q.degree();
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i + 1 < n; ++i) rows[i + 1][i] = 1;
  for (std::size_t i = 0; i < n; ++i) rows[i][n - 1] = field.reduce(-q.coeffs[i]);
  return FieldMatrix(q.p, std::move(rows));
}

// The state space Z_p^n in lexicographic order.
inline StateSpace vector_space(int p, std::size_t n) {
  PrimeField field(p);
  return StateSpace::tuples(std::vector<int>(n, field.order()));
}

// The deterministic system x -> Mx on vector_space(M.p(), M.dimension()).
inline StateFunction linear_map_fds(const FieldMatrix& m) {
  StateSpace space = vector_space(m.p(), m.dimension());
  return function_of(space, m.str(), [&](const State& s) { return State(m.apply(s.coords())); });
}

// Superposition of linear maps over one common space.
inline Prn linear_prn(const std::vector<FieldMatrix>& maps,
                      const std::vector<Probability>& probabilities) {
  if (maps.empty()) throw ValidationError("no linear maps given");
  for (const auto& m : maps)
    if (m.p() != maps[0].p() || m.dimension() != maps[0].dimension())
      throw FieldMismatch("linear maps disagree on field or dimension");
  StateSpace space = vector_space(maps[0].p(), maps[0].dimension());
  std::vector<StateFunction> functions;
  functions.reserve(maps.size());
  for (const auto& m : maps) functions.push_back(linear_map_fds(m));
  return superpose(std::move(space), std::move(functions), probabilities);
}

// All n x n matrices over Z_p in lexicographic order of their entries
// (row-major, last entry fastest). Refuses to build more than cap of them.
inline std::vector<FieldMatrix> enumerate_linear_matrices(int p, std::size_t n,
                                                          std::uint64_t cap = 100000) {
  PrimeField field(p);
  BigInt count = pow(BigInt(field.order()), static_cast<unsigned>(n * n));
  if (count > cap)
    throw CapExceeded("would enumerate " + count.str() + " matrices, cap is " +
                      std::to_string(cap));

  std::vector<FieldMatrix> out;
  std::vector<int> entries(n * n, 0);
  while (true) {
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = entries[i * n + j];
    out.emplace_back(p, std::move(rows));
    std::size_t k = entries.size();
    while (k > 0 && ++entries[k - 1] == field.order()) entries[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

inline std::vector<StateFunction> enumerate_linear_fds(int p, std::size_t n,
                                                       std::uint64_t cap = 100000) {
  std::vector<StateFunction> out;
  for (const auto& m : enumerate_linear_matrices(p, n, cap)) out.push_back(linear_map_fds(m));
  return out;
}

// The four canonical 2x2 classes over Z_2, one per characteristic
// polynomial: zero, the rank-one split map, the identity, and the companion
// of x^2+x+1.
inline std::vector<FieldMatrix> z2_dim2_representatives() {
  return {FieldMatrix::zero(2, 2), FieldMatrix(2, {{0, 0}, {0, 1}}), FieldMatrix::identity(2, 2),
          FieldMatrix(2, {{0, 1}, {1, 1}})};
}

}  // namespace prn
