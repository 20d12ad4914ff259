#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include "chevgrade/exact.hpp"

namespace chevgrade {

/// Sparse linear combination of algebra basis vectors (flat basis indices).
/// Zero coefficients are never stored.
class AlgebraElement {
 public:
  AlgebraElement() = default;

  static AlgebraElement basis(std::size_t i, Rational c = 1) {
    AlgebraElement e;
    e.add(i, c);
    return e;
  }

  void add(std::size_t i, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(i, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void set(std::size_t i, const Rational& c) {
    if (c == 0) {
      terms_.erase(i);
    } else {
      terms_[i] = c;
    }
  }

  Rational coeff(std::size_t i) const {
    auto it = terms_.find(i);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const std::map<std::size_t, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    for (const auto& [i, c] : o.terms_) add(i, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    for (const auto& [i, c] : o.terms_) add(i, -c);
    return *this;
  }
  AlgebraElement& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [i, c] : terms_) c *= s;
    return *this;
  }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const Rational& s, AlgebraElement a) { return a *= s; }
  AlgebraElement operator-() const {
    AlgebraElement r = *this;
    return r *= Rational(-1);
  }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }

 private:
  std::map<std::size_t, Rational> terms_;
};

}  // namespace chevgrade
