#pragma once

// Exact formal characters of rank-one and rank-two simple factors, with
// Frobenius twists, tensor products and decomposition into irreducibles in
// positive characteristic.  All arithmetic is exact integer arithmetic on
// sparse weight -> multiplicity maps.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "irrlat/characteristic.hpp"
#include "irrlat/error.hpp"

namespace irrlat {

using weight_vec = std::vector<int>;  // coordinates in fundamental weights
using high_weight = weight_vec;

inline std::string weight_str(const weight_vec& w) {
  std::string s;
  if (w.size() == 1) return std::to_string(w[0]);
  s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

class character {
 public:
  explicit character(int rank) : rank_(rank) {}

  static character unit(int rank) {
    character c(rank);
    c.add(weight_vec(rank, 0), 1);
    return c;
  }

  int rank() const { return rank_; }
  bool empty() const { return terms_.empty(); }
  const std::map<weight_vec, std::int64_t>& terms() const { return terms_; }

  void add(const weight_vec& w, std::int64_t m) {
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      if (m != 0) terms_.emplace(w, m);
      return;
    }
    it->second += m;
    if (it->second == 0) terms_.erase(it);
  }

  std::int64_t mult(const weight_vec& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0 : it->second;
  }

  std::int64_t dim() const {
    std::int64_t d = 0;
    for (auto& [w, m] : terms_) d += m;
    return d;
  }

  bool nonnegative() const {
    for (auto& [w, m] : terms_)
      if (m < 0) return false;
    return true;
  }

  bool operator==(const character& o) const { return rank_ == o.rank_ && terms_ == o.terms_; }

 private:
  int rank_;
  std::map<weight_vec, std::int64_t> terms_;
};

inline character operator+(const character& a, const character& b) {
  if (a.rank() != b.rank()) fail(errc::rank_mismatch, "character sum");
  character c = a;
  for (auto& [w, m] : b.terms()) c.add(w, m);
  return c;
}

inline character operator-(const character& a, const character& b) {
  if (a.rank() != b.rank()) fail(errc::rank_mismatch, "character difference");
  character c = a;
  for (auto& [w, m] : b.terms()) c.add(w, -m);
  return c;
}

// Convolution product: realizes the tensor product of modules.
inline character tensor(const character& a, const character& b) {
  if (a.rank() != b.rank()) fail(errc::rank_mismatch, "tensor of characters");
  character c(a.rank());
  for (auto& [wa, ma] : a.terms())
    for (auto& [wb, mb] : b.terms()) {
      weight_vec w(wa);
      for (size_t i = 0; i < w.size(); ++i) w[i] += wb[i];
      c.add(w, ma * mb);
    }
  return c;
}

// External tensor product: concatenates the tori.
inline character outer_tensor(const character& a, const character& b) {
  character c(a.rank() + b.rank());
  for (auto& [wa, ma] : a.terms())
    for (auto& [wb, mb] : b.terms()) {
      weight_vec w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      c.add(w, ma * mb);
    }
  return c;
}

// Frobenius twist: scales all weights by p^r.
inline character twist(const character& c, int r, characteristic p) {
  if (r == 0) return c;
  if (!p.finite()) fail(errc::twist_in_char_zero, "nontrivial Frobenius twist over characteristic 0");
  std::int64_t f = 1;
  for (int i = 0; i < r; ++i) f *= p.p();
  character out(c.rank());
  for (auto& [w, m] : c.terms()) {
    weight_vec sw(w);
    for (auto& x : sw) x = static_cast<int>(x * f);
    out.add(sw, m);
  }
  return out;
}

// Pushforward along a linear map on weight lattices (rows = target coords).
inline character map_weights(const character& c, const std::vector<std::vector<int>>& rows) {
  character out(static_cast<int>(rows.size()));
  for (auto& [w, m] : c.terms()) {
    weight_vec img(rows.size(), 0);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != w.size()) fail(errc::rank_mismatch, "weight map shape");
      int v = 0;
      for (size_t j = 0; j < w.size(); ++j) v += rows[i][j] * w[j];
      img[i] = v;
    }
    out.add(img, m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rank one (type A1)
// ---------------------------------------------------------------------------

// Character of the Weyl module of high weight n: q^n + q^{n-2} + ... + q^{-n}.
inline character weyl_char_a1(int n) {
  if (n < 0) fail(errc::parse_error, "negative high weight");
  character c(1);
  for (int d = n; d >= -n; d -= 2) c.add({d}, 1);
  return c;
}

inline std::vector<int> base_p_digits(int n, int p) {
  std::vector<int> digits;
  if (n == 0) digits.push_back(0);
  while (n > 0) {
    digits.push_back(n % p);
    n /= p;
  }
  return digits;
}

// Character of the irreducible module of high weight n: the twisted tensor
// product of the Weyl characters of the base-p digits of n.
inline character irr_char_a1(int n, characteristic p) {
  if (n < 0) fail(errc::parse_error, "negative high weight");
  if (!p.finite()) return weyl_char_a1(n);
  character c = character::unit(1);
  int r = 0;
  for (int digit : base_p_digits(n, p.p())) {
    if (digit > 0) c = tensor(c, twist(weyl_char_a1(digit), r, p));
    ++r;
  }
  return c;
}

// Character of the tilting module of high weight n.  Only the range
// n <= 2p-2 is supported; nothing in the catalog needs more.
inline character tilting_char_a1(int n, characteristic p) {
  if (n < 0) fail(errc::parse_error, "negative high weight");
  if (!p.finite() || n < p.p()) return weyl_char_a1(n);
  if (n > 2 * p.p() - 2)
    fail(errc::out_of_supported_range,
         "tilting character T(" + std::to_string(n) + ") at p=" + p.str());
  return weyl_char_a1(n) + weyl_char_a1(2 * p.p() - 2 - n);
}

// Greedy decomposition of a symmetric rank-one character into irreducibles:
// repeatedly peel the irreducible character of the current highest weight.
// Valid because irreducibles have multiplicity one at their highest weight.
inline std::vector<int> decompose_a1(character c, characteristic p) {
  if (c.rank() != 1) fail(errc::rank_mismatch, "decompose_a1 expects rank 1");
  for (auto& [w, m] : c.terms())
    if (c.mult({-w[0]}) != m) fail(errc::not_a_character, "asymmetric rank-one character");
  std::vector<int> out;
  while (!c.empty()) {
    auto top = std::prev(c.terms().end());
    int n = top->first[0];
    std::int64_t m = top->second;
    if (n < 0 || m < 0) fail(errc::not_a_character, "negative remainder while peeling");
    character piece = irr_char_a1(n, p);
    for (std::int64_t k = 0; k < m; ++k) out.push_back(n);
    for (auto& [w, mm] : piece.terms()) c.add(w, -m * mm);
    if (!c.nonnegative()) fail(errc::not_a_character, "negative remainder while peeling");
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

// ---------------------------------------------------------------------------
// Rank two (type A2)
// ---------------------------------------------------------------------------

namespace a2 {

// Positive roots in fundamental-weight coordinates.
inline const std::array<weight_vec, 3>& positive_roots() {
  static const std::array<weight_vec, 3> roots = {weight_vec{2, -1}, weight_vec{-1, 2},
                                                  weight_vec{1, 1}};
  return roots;
}

// Invariant form scaled by 3 so that all values are integers.
inline long form3(const weight_vec& a, const weight_vec& b) {
  return 2L * a[0] * b[0] + a[0] * b[1] + a[1] * b[0] + 2L * a[1] * b[1];
}

inline weight_vec s1(const weight_vec& w) { return {-w[0], w[0] + w[1]}; }
inline weight_vec s2(const weight_vec& w) { return {w[0] + w[1], -w[1]}; }

inline weight_vec dominant_conjugate(weight_vec w) {
  while (w[0] < 0 || w[1] < 0) {
    if (w[0] < 0) w = s1(w);
    else w = s2(w);
  }
  return w;
}

}  // namespace a2

inline std::int64_t weyl_dim_a2(const high_weight& w) {
  return static_cast<std::int64_t>(w[0] + 1) * (w[1] + 1) * (w[0] + w[1] + 2) / 2;
}

// Weyl character of A2 via Freudenthal's multiplicity recursion.
inline character weyl_char_a2(const high_weight& lambda) {
  if (lambda.size() != 2 || lambda[0] < 0 || lambda[1] < 0)
    fail(errc::parse_error, "bad A2 high weight");
  const weight_vec rho{1, 1};
  weight_vec lr{lambda[0] + 1, lambda[1] + 1};
  long norm_lr = a2::form3(lr, lr);

  // Dominant weights of the module, indexed by lambda - c*a1 - d*a2.
  std::map<weight_vec, std::int64_t> dom;
  int bound = lambda[0] + lambda[1];
  std::vector<weight_vec> order;  // decreasing level c+d
  for (int c = 0; c <= bound; ++c)
    for (int d = 0; d <= bound; ++d) {
      weight_vec mu{lambda[0] - 2 * c + d, lambda[1] + c - 2 * d};
      if (mu[0] >= 0 && mu[1] >= 0) order.push_back(mu);
    }
  auto level = [&](const weight_vec& mu) {
    // lambda - mu expressed in simple roots; level = sum of coefficients.
    int dx = lambda[0] - mu[0], dy = lambda[1] - mu[1];
    return (2 * dx + dy) / 3 + (dx + 2 * dy) / 3;
  };
  std::sort(order.begin(), order.end(), [&](const weight_vec& x, const weight_vec& y) {
    return level(x) < level(y);
  });

  auto full_mult = [&](weight_vec mu) -> std::int64_t {
    mu = a2::dominant_conjugate(mu);
    auto it = dom.find(mu);
    return it == dom.end() ? 0 : it->second;
  };

  for (auto& mu : order) {
    if (mu == lambda) {
      dom[mu] = 1;
      continue;
    }
    weight_vec mr{mu[0] + 1, mu[1] + 1};
    long denom = norm_lr - a2::form3(mr, mr);
    long num = 0;
    // Any root string through the module has length at most 2*bound+1.
    for (auto& alpha : a2::positive_roots()) {
      for (int k = 1; k <= 2 * bound + 1; ++k) {
        weight_vec shifted{mu[0] + k * alpha[0], mu[1] + k * alpha[1]};
        std::int64_t m = full_mult(shifted);
        if (m != 0) num += 2 * m * a2::form3(shifted, alpha);
      }
    }
    if (num % denom != 0) fail(errc::not_a_character, "Freudenthal recursion not integral");
    if (num / denom > 0) dom[mu] = num / denom;
  }

  // Expand dominant multiplicities over the Weyl group orbit.
  character c(2);
  for (auto& [mu, m] : dom) {
    std::vector<weight_vec> orbit{mu};
    std::vector<weight_vec> frontier{mu};
    while (!frontier.empty()) {
      std::vector<weight_vec> next;
      for (auto& w : frontier)
        for (auto img : {a2::s1(w), a2::s2(w)})
          if (std::find(orbit.begin(), orbit.end(), img) == orbit.end()) {
            orbit.push_back(img);
            next.push_back(img);
          }
      frontier = std::move(next);
    }
    for (auto& w : orbit) c.add(w, m);
  }
  return c;
}

// Restricted irreducible A2 characters at p in {2,3}.  At p=2 every restricted
// Weyl module is irreducible; at p=3 the only reducible one is W(1,1), whose
// head is the 7-dimensional adjoint irreducible.  Checked in the test suite
// against an independent Jantzen sum-formula oracle.
inline character restricted_irr_char_a2_smallp(const high_weight& w, int p) {
  if (p == 3 && w[0] == 1 && w[1] == 1) return weyl_char_a2({1, 1}) - weyl_char_a2({0, 0});
  return weyl_char_a2(w);
}

// Irreducible A2 character where it is safely decidable: characteristic zero,
// the closure of the lowest alcove (a+b+2 <= p), or p in {2,3} via the
// Steinberg factorization over base-p digit pairs.
inline character irr_char_a2(const high_weight& w, characteristic p) {
  if (w.size() != 2 || w[0] < 0 || w[1] < 0) fail(errc::parse_error, "bad A2 high weight");
  if (!p.finite() || w[0] + w[1] + 2 <= p.p()) return weyl_char_a2(w);
  if (p.p() == 2 || p.p() == 3) {
    auto da = base_p_digits(w[0], p.p());
    auto db = base_p_digits(w[1], p.p());
    size_t k = std::max(da.size(), db.size());
    da.resize(k, 0);
    db.resize(k, 0);
    character c = character::unit(2);
    for (size_t i = 0; i < k; ++i) {
      if (da[i] == 0 && db[i] == 0) continue;
      c = tensor(c, twist(restricted_irr_char_a2_smallp({da[i], db[i]}, p.p()),
                          static_cast<int>(i), p));
    }
    return c;
  }
  fail(errc::unresolved,
       "irreducible A2 character L" + weight_str(w) + " at p=" + p.str());
}

// Greedy decomposition of an A2 character, peeling irreducibles from the
// highest remaining weight.  Throws Unresolved if a needed irreducible
// character is outside the safely decidable range.
inline std::vector<high_weight> decompose_a2(character c, characteristic p) {
  if (c.rank() != 2) fail(errc::rank_mismatch, "decompose_a2 expects rank 2");
  std::vector<high_weight> out;
  while (!c.empty()) {
    // Pick a dominant weight of maximal level among the support.
    const weight_vec* top = nullptr;
    long top_level = -1;
    for (auto& [w, m] : c.terms()) {
      if (w[0] < 0 || w[1] < 0) continue;
      long lvl = a2::form3(w, {1, 1});
      if (lvl > top_level) {
        top_level = lvl;
        top = &w;
      }
    }
    if (top == nullptr) fail(errc::not_a_character, "no dominant weight in remainder");
    weight_vec n = *top;
    std::int64_t m = c.mult(n);
    if (m < 0) fail(errc::not_a_character, "negative remainder while peeling");
    character piece = irr_char_a2(n, p);
    for (std::int64_t k = 0; k < m; ++k) out.push_back(n);
    for (auto& [w, mm] : piece.terms()) c.add(w, -m * mm);
    if (!c.nonnegative()) fail(errc::not_a_character, "negative remainder while peeling");
  }
  std::sort(out.begin(), out.end(), [](const high_weight& x, const high_weight& y) {
    if (x[0] + x[1] != y[0] + y[1]) return x[0] + x[1] > y[0] + y[1];
    return x > y;
  });
  return out;
}

// Weyl character dispatch for the supported factor types.
inline character weyl_char(const std::string& type, const high_weight& w) {
  if (type == "A1") {
    if (w.size() != 1) fail(errc::rank_mismatch, "A1 weight rank");
    return weyl_char_a1(w[0]);
  }
  if (type == "A2") return weyl_char_a2(w);
  fail(errc::unsupported_type, "weyl_char for type " + type);
}

}  // namespace irrlat
