#pragma once

// Root systems of the simple types, the Weyl dimension formula, and the
// dimensions of the irreducible modules that appear unflagged in the catalog
// factor lists.

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "irrlat/charalg.hpp"

namespace irrlat {

struct simple_type {
  char series = 'A';
  int rank = 0;

  bool operator==(const simple_type&) const = default;
  auto operator<=>(const simple_type&) const = default;

  std::string str() const { return std::string(1, series) + std::to_string(rank); }

  static simple_type parse(const std::string& s) {
    if (s.size() < 2) fail(errc::parse_error, "bad type: " + s);
    simple_type t;
    t.series = s[0];
    t.rank = std::stoi(s.substr(1));
    if (std::string("ABCDEFG").find(t.series) == std::string::npos || t.rank < 1 || t.rank > 8)
      fail(errc::parse_error, "bad type: " + s);
    return t;
  }
};

namespace rootdata {

// Cartan matrix A[i][j] = <alpha_i, alpha_j^vee>, Bourbaki numbering.
inline std::vector<std::vector<int>> cartan(const simple_type& t) {
  int n = t.rank;
  std::vector<std::vector<int>> A(n, std::vector<int>(n, 0));
  auto chain = [&](int i, int j) { A[i][j] = A[j][i] = -1; };
  for (int i = 0; i < n; ++i) A[i][i] = 2;
  switch (t.series) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      A[n - 2][n - 1] = -2;  // alpha_{n-1} long, alpha_n short
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      A[n - 1][n - 2] = -2;
      break;
    case 'D':
      for (int i = 0; i + 1 < n - 1; ++i) chain(i, i + 1);
      chain(n - 3, n - 1);
      A[n - 2][n - 1] = A[n - 1][n - 2] = 0;
      break;
    case 'E':
      // Bourbaki: node 2 attaches to node 4.
      chain(0, 2);
      chain(2, 3);
      chain(1, 3);
      chain(3, 4);
      chain(4, 5);
      if (n >= 7) chain(5, 6);
      if (n >= 8) chain(6, 7);
      break;
    case 'F':
      chain(0, 1);
      chain(2, 3);
      A[1][2] = -2;
      A[2][1] = -1;
      break;
    case 'G':
      A[0][1] = -1;
      A[1][0] = -3;
      break;
  }
  return A;
}

// Half square lengths of the simple roots, scaled to integers.
inline std::vector<int> root_lengths(const simple_type& t) {
  int n = t.rank;
  std::vector<int> d(n, 1);
  switch (t.series) {
    case 'B':
      for (int i = 0; i + 1 < n; ++i) d[i] = 2;
      break;
    case 'C':
      d[n - 1] = 2;
      break;
    case 'F':
      d[0] = d[1] = 2;
      break;
    case 'G':
      d[1] = 3;
      break;
    default:
      break;
  }
  return d;
}

// Positive roots in simple-root coordinates, generated by string closure.
inline std::vector<std::vector<int>> positive_roots(const simple_type& t) {
  auto A = cartan(t);
  int n = t.rank;
  std::vector<std::vector<int>> roots;
  std::map<std::vector<int>, bool> seen;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    roots.push_back(e);
    seen[e] = true;
  }
  for (size_t head = 0; head < roots.size(); ++head) {
    auto alpha = roots[head];
    for (int i = 0; i < n; ++i) {
      // <alpha, alpha_i^vee>
      int pairing = 0;
      for (int j = 0; j < n; ++j) pairing += alpha[j] * A[j][i];
      // length of the descending string through alpha in direction alpha_i
      int down = 0;
      auto probe = alpha;
      for (;;) {
        probe[i] -= 1;
        bool zero = true;
        for (int x : probe)
          if (x != 0) zero = false;
        if (zero || seen.count(probe)) {
          ++down;
          if (zero) break;
        } else {
          break;
        }
      }
      if (down - pairing > 0) {
        auto up = alpha;
        up[i] += 1;
        if (!seen.count(up)) {
          seen[up] = true;
          roots.push_back(up);
        }
      }
    }
  }
  return roots;
}

}  // namespace rootdata

// Weyl dimension formula; valid in every characteristic for Weyl modules.
// Exact: the numerator and denominator products are tracked as prime
// exponent vectors.
inline std::int64_t weyl_dim(const simple_type& t, const high_weight& lambda) {
  if (static_cast<int>(lambda.size()) != t.rank) fail(errc::rank_mismatch, "weight rank for " + t.str());
  auto roots = rootdata::positive_roots(t);
  auto d = rootdata::root_lengths(t);
  std::map<long, long> exponents;
  auto account = [&](long value, int sign) {
    for (long q = 2; q * q <= value; ++q)
      while (value % q == 0) {
        exponents[q] += sign;
        value /= q;
      }
    if (value > 1) exponents[value] += sign;
  };
  // (mu, alpha) = sum_i c_i d_i mu_i for mu in fundamental coordinates.
  for (auto& alpha : roots) {
    long a = 0, b = 0;
    for (int i = 0; i < t.rank; ++i) {
      a += static_cast<long>(alpha[i]) * d[i] * (lambda[i] + 1);
      b += static_cast<long>(alpha[i]) * d[i];
    }
    account(a, +1);
    account(b, -1);
  }
  std::int64_t dim = 1;
  for (auto& [q, e] : exponents) {
    if (e < 0) fail(errc::not_a_character, "Weyl dimension not integral");
    for (long k = 0; k < e; ++k) dim *= q;
  }
  return dim;
}

// Dimensions of restricted irreducibles that differ from the Weyl dimension,
// for the (type, weight, p) combinations appearing unflagged in the catalog.
// Values are standard small-rank facts; the catalog dimension audit exercises
// every one of them against the module dimension totals.
inline const std::map<std::tuple<std::string, high_weight, int>, std::int64_t>&
restricted_dim_exceptions() {
  static const std::map<std::tuple<std::string, high_weight, int>, std::int64_t> table = {
      {{"B2", {1, 0}, 2}, 4},
      {{"B3", {1, 0, 0}, 2}, 6},
      {{"B3", {0, 1, 0}, 2}, 14},
      {{"C3", {0, 1, 0}, 3}, 13},
      {{"C3", {0, 0, 1}, 2}, 8},
      {{"C4", {0, 1, 0, 0}, 2}, 26},
      {{"C4", {0, 0, 0, 1}, 2}, 16},
      {{"D4", {0, 1, 0, 0}, 2}, 26},
      {{"A3", {1, 0, 1}, 2}, 14},
      {{"A5", {1, 0, 0, 0, 1}, 2}, 34},
      {{"A5", {1, 0, 0, 0, 1}, 3}, 34},
      {{"G2", {1, 0}, 2}, 6},
      {{"G2", {0, 1}, 2}, 14},
      {{"G2", {2, 0}, 7}, 26},
      {{"G2", {1, 1}, 7}, 38},
      {{"F4", {0, 0, 0, 1}, 3}, 25},
  };
  return table;
}

// Dimension of the irreducible module of the given high weight.  For A1 and
// A2 this is computed from the character machinery; for the other types the
// weight is split into base-p digit layers, each layer resolved through the
// exception table with the Weyl dimension as default.
inline std::int64_t irr_dim(const simple_type& t, const high_weight& lambda, characteristic p) {
  if (t.series == 'A' && t.rank == 1) return irr_char_a1(lambda[0], p).dim();
  if (t.series == 'A' && t.rank == 2) return irr_char_a2(lambda, p).dim();
  if (!p.finite()) return weyl_dim(t, lambda);
  std::int64_t dim = 1;
  auto rest = lambda;
  bool nonzero = true;
  while (nonzero) {
    high_weight layer(t.rank);
    nonzero = false;
    for (int i = 0; i < t.rank; ++i) {
      layer[i] = rest[i] % p.p();
      rest[i] /= p.p();
      if (rest[i] != 0) nonzero = true;
    }
    auto it = restricted_dim_exceptions().find({t.str(), layer, p.p()});
    dim *= (it != restricted_dim_exceptions().end()) ? it->second : weyl_dim(t, layer);
  }
  return dim;
}

}  // namespace irrlat
