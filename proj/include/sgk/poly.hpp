#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sgk/errors.hpp"
#include "sgk/rational.hpp"

namespace sgk {

using MultiIndex = std::vector<uint32_t>;

// Polynomial in a fixed number of commuting (even) variables with exact
// rational coefficients. Arity is part of the value; mixing arities throws.
class EvenPoly {
public:
  EvenPoly() : arity_(0) {}
  explicit EvenPoly(int arity) : arity_(arity) {}

  static EvenPoly constant(int arity, const Rational& c) {
    EvenPoly p(arity);
    p.add_term(MultiIndex(arity, 0), c);
    return p;
  }
  static EvenPoly variable(int arity, int i) {
    EvenPoly p(arity);
    MultiIndex m(arity, 0);
    m.at(i) = 1;
    p.add_term(m, Rational(1));
    return p;
  }

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<MultiIndex, Rational>& terms() const { return terms_; }

  void add_term(const MultiIndex& m, const Rational& c) {
    if (static_cast<int>(m.size()) != arity_)
      throw invariant_error("EvenPoly: multi-index arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  EvenPoly& operator+=(const EvenPoly& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  friend EvenPoly operator+(EvenPoly a, const EvenPoly& b) { a += b; return a; }

  EvenPoly& operator-=(const EvenPoly& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend EvenPoly operator-(EvenPoly a, const EvenPoly& b) { a -= b; return a; }

  EvenPoly& scale(const Rational& c) {
    if (c.is_zero()) terms_.clear();
    else for (auto& [m, v] : terms_) v *= c;
    return *this;
  }

  friend EvenPoly operator*(const EvenPoly& a, const EvenPoly& b) {
    a.check_same(b);
    EvenPoly r(a.arity_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        MultiIndex m(a.arity_);
        for (int i = 0; i < a.arity_; ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }

  EvenPoly derivative(int i) const {
    EvenPoly r(arity_);
    for (const auto& [m, c] : terms_) {
      if (m.at(i) == 0) continue;
      MultiIndex d = m;
      d[i] -= 1;
      r.add_term(d, c * Rational(static_cast<long>(m[i])));
    }
    return r;
  }

  // Substitute each variable by a polynomial of common arity `out_arity`.
  EvenPoly substitute(const std::vector<EvenPoly>& images, int out_arity) const {
    if (static_cast<int>(images.size()) != arity_)
      throw invariant_error("EvenPoly::substitute: wrong image count");
    EvenPoly r(out_arity);
    for (const auto& [m, c] : terms_) {
      EvenPoly term = EvenPoly::constant(out_arity, c);
      for (int i = 0; i < arity_; ++i)
        for (uint32_t e = 0; e < m[i]; ++e) term = term * images[i];
      r += term;
    }
    return r;
  }

  Rational eval(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != arity_)
      throw invariant_error("EvenPoly::eval: wrong point arity");
    Rational r(0);
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < arity_; ++i) t *= point[i].pow_u(m[i]);
      r += t;
    }
    return r;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (auto e : m) s += static_cast<int>(e);
      if (s > d) d = s;
    }
    return d;
  }

  friend bool operator==(const EvenPoly& a, const EvenPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const EvenPoly& a, const EvenPoly& b) { return !(a == b); }
  friend bool operator<(const EvenPoly& a, const EvenPoly& b) {
    if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
    return std::lexicographical_compare(
        a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
        [](const auto& x, const auto& y) {
          if (x.first != y.first) return x.first < y.first;
          return x.second < y.second;
        });
  }

  std::string str(const std::vector<std::string>& names) const;

private:
  void check_same(const EvenPoly& o) const {
    if (arity_ != o.arity_) throw invariant_error("EvenPoly: arity mismatch");
  }

  int arity_;
  std::map<MultiIndex, Rational> terms_;
};

}  // namespace sgk
