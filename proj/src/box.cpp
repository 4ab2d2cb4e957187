#include "sgk/box.hpp"

#include <algorithm>

namespace sgk {

namespace {

// Multiply treating absent as +/- infinity with a definite sign taken from
// the context. Represent "infinite with sign s"; nan cases cannot arise
// because factors come from enclosures whose endpoints are paired.
struct Ext {
  bool inf = false;
  int inf_sign = 0;  // +1 or -1 when inf
  Rational v;

  static Ext finite(const Rational& r) { return Ext{false, 0, r}; }
  static Ext infinite(int s) { return Ext{true, s, Rational(0)}; }
};


Ext ext_mul(const Ext& a, const Ext& b) {
  if (a.inf || b.inf) {
    int sa = a.inf ? a.inf_sign : a.v.sign();
    int sb = b.inf ? b.inf_sign : b.v.sign();
    int s = sa * sb;
    if (s == 0) return Ext::finite(Rational(0));  // 0 * inf from a zero factor
    return Ext::infinite(s);
  }
  return Ext::finite(a.v * b.v);
}

Ext lo_ext(const Enclosure& e) { return e.lo ? Ext::finite(*e.lo) : Ext::infinite(-1); }
Ext hi_ext(const Enclosure& e) { return e.hi ? Ext::finite(*e.hi) : Ext::infinite(+1); }

Enclosure from_exts(std::vector<Ext> cands) {
  Enclosure out;
  bool lo_inf = false, hi_inf = false;
  std::optional<Rational> lo, hi;
  for (const auto& e : cands) {
    if (e.inf) {
      (e.inf_sign < 0 ? lo_inf : hi_inf) = true;
      continue;
    }
    if (!lo || e.v < *lo) lo = e.v;
    if (!hi || e.v > *hi) hi = e.v;
  }
  if (!lo_inf) out.lo = lo;
  if (!hi_inf) out.hi = hi;
  return out;
}

}  // namespace

Enclosure enclosure_add(const Enclosure& a, const Enclosure& b) {
  Enclosure out;
  if (a.lo && b.lo) out.lo = *a.lo + *b.lo;
  if (a.hi && b.hi) out.hi = *a.hi + *b.hi;
  return out;
}

Enclosure enclosure_mul(const Enclosure& a, const Enclosure& b) {
  return from_exts({ext_mul(lo_ext(a), lo_ext(b)), ext_mul(lo_ext(a), hi_ext(b)),
                    ext_mul(hi_ext(a), lo_ext(b)), ext_mul(hi_ext(a), hi_ext(b))});
}

Enclosure enclosure_pow(const Enclosure& a, unsigned n) {
  if (n == 0) {
    Enclosure e;
    e.lo = e.hi = Rational(1);
    return e;
  }
  if (n % 2 == 1) {
    // Odd powers are monotone.
    Enclosure out;
    if (a.lo) out.lo = a.lo->pow_u(n);
    if (a.hi) out.hi = a.hi->pow_u(n);
    return out;
  }
  // Even powers: range of |x|^n.
  Enclosure out;
  const bool spans_zero = (!a.lo || a.lo->sign() <= 0) && (!a.hi || a.hi->sign() >= 0);
  if (spans_zero) {
    out.lo = Rational(0);
    if (a.lo && a.hi) {
      Rational m = std::max(a.lo->abs(), a.hi->abs());
      out.hi = m.pow_u(n);
    }
    return out;
  }
  if (a.lo && a.lo->sign() > 0) {
    out.lo = a.lo->pow_u(n);
    if (a.hi) out.hi = a.hi->pow_u(n);
    return out;
  }
  // Entirely negative: hi < 0.
  out.lo = a.hi->pow_u(n);
  if (a.lo) out.hi = a.lo->pow_u(n);
  return out;
}

Enclosure enclosure_scale(const Enclosure& a, const Rational& c) {
  Enclosure out;
  if (c.is_zero()) {
    out.lo = out.hi = Rational(0);
    return out;
  }
  if (c.sign() > 0) {
    if (a.lo) out.lo = *a.lo * c;
    if (a.hi) out.hi = *a.hi * c;
  } else {
    if (a.hi) out.lo = *a.hi * c;
    if (a.lo) out.hi = *a.lo * c;
  }
  return out;
}

Enclosure polynomial_range(const EvenPoly& poly, const Box& box) {
  if (poly.arity() != box.arity())
    throw invariant_error("polynomial_range: box arity mismatch");
  Enclosure acc;
  acc.lo = acc.hi = Rational(0);
  bool first = true;
  for (const auto& [m, c] : poly.terms()) {
    Enclosure term;
    term.lo = term.hi = Rational(1);
    for (int i = 0; i < poly.arity(); ++i) {
      if (m[i] == 0) continue;
      Enclosure var;
      var.lo = box.intervals[i].lo;
      var.hi = box.intervals[i].hi;
      term = enclosure_mul(term, enclosure_pow(var, m[i]));
    }
    term = enclosure_scale(term, c);
    if (first) {
      acc = term;
      first = false;
    } else {
      acc = enclosure_add(acc, term);
    }
  }
  return acc;
}

std::vector<std::vector<Rational>> box_sample_points(const Box& box) {
  const int p = box.arity();
  auto rep = [](const Interval& iv, int which) -> Rational {
    // which: 0 = middle, -1 = near lower face, +1 = near upper face.
    if (iv.lo && iv.hi) {
      Rational mid = (*iv.lo + *iv.hi) / Rational(2);
      Rational quarter = (*iv.hi - *iv.lo) / Rational(4);
      if (which == 0) return mid;
      return which < 0 ? mid - quarter : mid + quarter;
    }
    if (iv.lo) return *iv.lo + Rational(1);
    if (iv.hi) return *iv.hi - Rational(1);
    return Rational(which);
  };
  std::vector<std::vector<Rational>> pts;
  for (int which : {0, -1, 1}) {
    std::vector<Rational> pt;
    pt.reserve(p);
    for (int i = 0; i < p; ++i) pt.push_back(rep(box.intervals[i], which));
    pts.push_back(std::move(pt));
  }
  // Per-axis pushes toward each face keep witnesses one-dimensional.
  for (int i = 0; i < p; ++i)
    for (int which : {-1, 1}) {
      std::vector<Rational> pt;
      for (int j = 0; j < p; ++j) pt.push_back(rep(box.intervals[j], j == i ? which : 0));
      pts.push_back(std::move(pt));
    }
  return pts;
}

}  // namespace sgk
