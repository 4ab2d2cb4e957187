#pragma once

#include <map>
#include <string>
#include <vector>

#include "sgk/poly.hpp"
#include "sgk/space.hpp"
#include "sgk/word.hpp"

namespace sgk {

// Sorted list of odd-coordinate indices (a Grassmann monomial xi_I).
using OddSet = std::vector<int>;

// Merge two disjoint odd subsets, counting the Koszul inversions produced by
// interleaving the second into the first. Returns sign 0 on overlap.
struct OddMerge {
  int sign = 1;  // 0 means the product vanishes
  OddSet merged;
};
OddMerge merge_odd_sets(const OddSet& a, const OddSet& b);

// A polynomial superfunction: element of Poly(E_0) (x) Lambda(E_1*) (x) F in
// coordinates. Terms are keyed by (target coordinate, odd subset of the
// source, even multi-index of the source). The scalar case uses the
// distinguished one-even-coordinate target returned by scalar_target().
class SuperPolynomial {
public:
  struct Key {
    int target_parity = 0;
    int target_index = 0;
    OddSet odds;
    MultiIndex evens;

    friend bool operator<(const Key& a, const Key& b) {
      if (a.target_parity != b.target_parity) return a.target_parity < b.target_parity;
      if (a.target_index != b.target_index) return a.target_index < b.target_index;
      if (a.odds != b.odds) return a.odds < b.odds;
      return a.evens < b.evens;
    }
    friend bool operator==(const Key& a, const Key& b) {
      return a.target_parity == b.target_parity && a.target_index == b.target_index &&
             a.odds == b.odds && a.evens == b.evens;
    }
  };

  SuperPolynomial() = default;
  SuperPolynomial(SuperVectorSpace source, SuperVectorSpace target)
      : source_(std::move(source)), target_(std::move(target)) {}

  static SuperVectorSpace scalar_target() { return SuperVectorSpace({"@"}, {}); }
  static SuperPolynomial scalar(SuperVectorSpace source) {
    return SuperPolynomial(std::move(source), scalar_target());
  }
  bool is_scalar_valued() const { return target_ == scalar_target(); }

  const SuperVectorSpace& source() const { return source_; }
  const SuperVectorSpace& target() const { return target_; }
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Key& k, const Rational& c);
  SuperPolynomial& operator+=(const SuperPolynomial& o);
  friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) {
    a += b;
    return a;
  }
  SuperPolynomial& scale(const Rational& c);

  // Convenience: add c * xi_I * x^m * e_target with target given by name
  // ("@" for scalar-valued), odd factors given by source coordinate names in
  // the written order (normalized with sign), even factors by name:exponent.
  void add_named_term(const std::string& target_name, const Rational& c,
                      const std::vector<std::string>& odd_factors,
                      const std::map<std::string, unsigned>& even_factors);

  // True when every term has the same total parity (|I| + |target|) mod 2;
  // outputs that parity.
  bool homogeneous_parity(int* parity_out) const;

  // Total source degree (even exponents + number of odd generators) max.
  int max_degree() const;

  // Left partial derivative in the named source coordinate. Odd directions
  // use the left convention: d_{xi_i} (xi_I) = (-1)^{#{j in I : j < i}} xi_{I-i}.
  SuperPolynomial partial(const std::string& name) const;
  SuperPolynomial partial_even(int i) const;
  SuperPolynomial partial_odd(int i) const;

  // Graded product. At least one factor must be scalar-valued; the other
  // side's target is kept. Signs: Grassmann interleaving of the odd subsets,
  // plus (target parity x |I|) when a scalar with odd part I multiplies an
  // F-valued polynomial from the right.
  friend SuperPolynomial superpoly_mul(const SuperPolynomial& p, const SuperPolynomial& q);

  // Coefficient of the full odd monomial xi_1...xi_q, per target coordinate
  // name. Requires a purely odd source.
  std::map<std::string, Rational> berezin_top() const;

  // Substitute even source variables by even polynomials over a new even
  // source arity (odd part and target unchanged). images[i] replaces x_i.
  SuperPolynomial substitute_evens(const std::vector<EvenPoly>& images,
                                   const SuperVectorSpace& new_source) const;

  // Extract the coefficient polynomial (over the even part of the source)
  // of a fixed odd subset, as an F-valued polynomial with purely even source.
  SuperPolynomial odd_coefficient(const OddSet& I) const;

  friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const SuperPolynomial& a, const SuperPolynomial& b) {
    return !(a == b);
  }

  std::string str() const;

private:
  SuperVectorSpace source_;
  SuperVectorSpace target_;
  std::map<Key, Rational> terms_;
};

}  // namespace sgk
