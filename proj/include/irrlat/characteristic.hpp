#pragma once

#include <compare>
#include <string>
#include <vector>

#include "irrlat/error.hpp"

namespace irrlat {

// Field characteristic: a prime, or infinity for characteristic zero.
// Zero is deliberately unrepresentable.
class characteristic {
 public:
  static constexpr int kInfinity = -1;

  constexpr characteristic() : value_(kInfinity) {}

  static characteristic infinity() { return characteristic(); }

  static characteristic prime(int p) {
    if (p < 2 || !is_prime(p)) fail(errc::parse_error, "not a prime: " + std::to_string(p));
    characteristic c;
    c.value_ = p;
    return c;
  }

  static characteristic parse(const std::string& s) {
    if (s == "inf" || s == "0" || s == "infinity") return infinity();
    return prime(std::stoi(s));
  }

  bool finite() const { return value_ != kInfinity; }
  // Only valid when finite().
  int p() const { return value_; }

  // Numeric comparisons treating infinity as larger than every prime.
  bool operator==(const characteristic&) const = default;
  bool less_than(int bound) const { return finite() && value_ < bound; }
  bool at_least(int bound) const { return !finite() || value_ >= bound; }
  bool equals(int p) const { return finite() && value_ == p; }

  std::string str() const { return finite() ? std::to_string(value_) : "inf"; }

  static bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  int value_;
};

// The probe characteristics: every characteristic condition appearing in the
// catalog is determined by its behaviour on this set.
inline const std::vector<characteristic>& probe_characteristics() {
  static const std::vector<characteristic> probes = [] {
    std::vector<characteristic> v;
    for (int p : {2, 3, 5, 7, 11, 13}) v.push_back(characteristic::prime(p));
    v.push_back(characteristic::infinity());
    return v;
  }();
  return probes;
}

}  // namespace irrlat
