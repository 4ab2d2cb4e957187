#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgk/poly.hpp"

namespace sgk {

// Open interval with optional (= infinite) endpoints.
struct Interval {
  std::optional<Rational> lo;  // absent = -infinity
  std::optional<Rational> hi;  // absent = +infinity

  static Interval unbounded() { return {}; }
  bool is_unbounded() const { return !lo && !hi; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }

  // Membership in the open interval.
  bool contains(const Rational& x) const {
    if (lo && !(x > *lo)) return false;
    if (hi && !(x < *hi)) return false;
    return true;
  }
};

// Open box: one interval per even coordinate of a source space.
struct Box {
  std::vector<Interval> intervals;

  static Box unbounded(int p) { return Box{std::vector<Interval>(p)}; }
  int arity() const { return static_cast<int>(intervals.size()); }

  friend bool operator==(const Box& a, const Box& b) {
    return a.intervals == b.intervals;
  }
  friend bool operator!=(const Box& a, const Box& b) { return !(a == b); }

  bool contains(const std::vector<Rational>& pt) const {
    for (size_t i = 0; i < intervals.size(); ++i)
      if (!intervals[i].contains(pt.at(i))) return false;
    return true;
  }
};

// Closed-endpoint enclosure used during conservative evaluation. Distinct
// from Interval: absent endpoints again mean infinite.
struct Enclosure {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

Enclosure enclosure_add(const Enclosure& a, const Enclosure& b);
Enclosure enclosure_mul(const Enclosure& a, const Enclosure& b);
Enclosure enclosure_pow(const Enclosure& a, unsigned n);
Enclosure enclosure_scale(const Enclosure& a, const Rational& c);

// Conservative range of a polynomial over a box (monomial-wise interval
// arithmetic with exact power handling, so x^2 over (-1,1) yields [0,1]).
Enclosure polynomial_range(const EvenPoly& poly, const Box& box);

// Sample points of a box used for witness search: midpoints of the bounded
// directions, 0 for unbounded ones, plus points pushed toward each face.
std::vector<std::vector<Rational>> box_sample_points(const Box& box);

}  // namespace sgk
