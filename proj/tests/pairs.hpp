#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sgk/group.hpp"

namespace sgk::testutil {

using Entry = std::pair<int, int>;  // (even variable, exponent)

inline void put(SuperPolynomial& f, const Rational& c, const OddSet& odds,
                const std::vector<Entry>& evens) {
  MultiIndex m(static_cast<size_t>(f.source().p()), 0);
  for (const auto& [v, e] : evens) m[static_cast<size_t>(v)] = static_cast<uint32_t>(e);
  f.add_term(SuperPolynomial::Key{0, 0, odds, m}, c);
}

inline SuperPolynomial fn(const SuperVectorSpace& sp) { return SuperPolynomial::scalar(sp); }

inline FormalSum<int> single(int k, const Rational& c) {
  FormalSum<int> v;
  v.add(k, c);
  return v;
}

// Additive pair on the abelian algebra with p even and q odd generators.
inline SupergroupPair abelian_pair(int p, int q) {
  std::vector<std::string> names;
  std::vector<int> par;
  for (int i = 0; i < p; ++i) {
    names.push_back("e" + std::to_string(i));
    par.push_back(0);
  }
  for (int t = 0; t < q; ++t) {
    names.push_back("o" + std::to_string(t));
    par.push_back(1);
  }
  LieSuperalgebra g = make_lie(names, par, {});
  std::vector<std::string> ch(names.begin(), names.begin() + p);
  Domain chart = Domain::whole(SuperVectorSpace(ch, {}));
  Domain cc = product_domain(chart, chart);
  std::map<std::pair<std::string, std::string>, Rational> add, neg;
  for (int k = 0; k < p; ++k) {
    add[{ch[static_cast<size_t>(k)], cc.space.even_name(k)}] = Rational(1);
    add[{ch[static_cast<size_t>(k)], cc.space.even_name(p + k)}] = Rational(1);
    neg[{ch[static_cast<size_t>(k)], ch[static_cast<size_t>(k)]}] = Rational(-1);
  }
  SpolMorphism law = linear_morphism(cc, chart, add);
  SpolMorphism invl = linear_morphism(chart, chart, neg);
  Domain lie = Domain::whole(SuperVectorSpace(ch, {names.begin() + p, names.end()}));
  SpolMorphism ad = projection_second(chart, lie);
  return {g, law, invl, ad};
}

// One even, one odd generator with the odd square bracket [tau,tau] = x,
// over the additive line.
inline SupergroupPair odd_square_pair() {
  LieSuperalgebra g = make_lie({"x", "tau"}, {0, 1}, {{1, 1, single(0, Rational(1))}});
  Domain chart = Domain::whole(SuperVectorSpace({"x"}, {}));
  Domain cc = product_domain(chart, chart);
  SpolMorphism law = linear_morphism(
      cc, chart,
      {{{"x", cc.space.even_name(0)}, Rational(1)}, {{"x", cc.space.even_name(1)}, Rational(1)}});
  SpolMorphism invl = linear_morphism(chart, chart, {{{"x", "x"}, Rational(-1)}});
  Domain lie = Domain::whole(SuperVectorSpace({"x"}, {"tau"}));
  SpolMorphism ad = projection_second(chart, lie);
  return {g, law, invl, ad};
}

// Two odd generators with squares and cross terms landing on the center:
// [y1,y1] = x, [y1,y2] = [y2,y1] = x, trivial adjoint.
inline SupergroupPair two_odd_pair(bool corrupt_adjoint) {
  FormalSum<int> x = single(0, Rational(1));
  LieSuperalgebra g = make_lie({"x", "y1", "y2"}, {0, 1, 1}, {{1, 1, x}, {1, 2, x}, {2, 1, x}});
  Domain chart = Domain::whole(SuperVectorSpace({"s"}, {}));
  Domain cc = product_domain(chart, chart);
  SpolMorphism law = linear_morphism(
      cc, chart,
      {{{"s", cc.space.even_name(0)}, Rational(1)}, {{"s", cc.space.even_name(1)}, Rational(1)}});
  SpolMorphism invl = linear_morphism(chart, chart, {{{"s", "s"}, Rational(-1)}});
  Domain lie = Domain::whole(SuperVectorSpace({"x"}, {"y1", "y2"}));
  Domain src = product_domain(chart, lie);
  std::vector<SuperPolynomial> evs{fn(src.space)};
  put(evs[0], Rational(1), {}, {{1, 1}});  // x passes through
  std::vector<SuperPolynomial> ods{fn(src.space), fn(src.space)};
  put(ods[0], Rational(1), {0}, {});  // y1 passes through
  put(ods[1], Rational(1), {1}, {});  // y2 passes through
  if (corrupt_adjoint) put(ods[0], Rational(1), {1}, {{0, 1}});  // y2 -> y2 + s y1
  SpolMorphism ad = from_pullbacks(src, lie, evs, ods);
  return {g, law, invl, ad};
}

// Unipotent 3-dimensional even group acting on a two-dimensional odd module:
// [P,Q] = Z central, [P,th1] = th2.
inline SupergroupPair heisenberg_pair() {
  LieSuperalgebra g = make_lie({"P", "Q", "Z", "th1", "th2"}, {0, 0, 0, 1, 1},
                               {{0, 1, single(2, Rational(1))},
                                {1, 0, single(2, Rational(-1))},
                                {0, 3, single(4, Rational(1))},
                                {3, 0, single(4, Rational(-1))}});
  Domain chart = Domain::whole(SuperVectorSpace({"a", "b", "c"}, {}));
  Domain cc = product_domain(chart, chart);

  std::vector<SuperPolynomial> law_evs;
  for (int k = 0; k < 3; ++k) {
    SuperPolynomial s = fn(cc.space);
    put(s, Rational(1), {}, {{k, 1}});
    put(s, Rational(1), {}, {{3 + k, 1}});
    law_evs.push_back(s);
  }
  put(law_evs[2], Rational(1), {}, {{0, 1}, {4, 1}});  // c-component picks up a b'
  SpolMorphism law = from_pullbacks(cc, chart, law_evs, {});

  std::vector<SuperPolynomial> inv_evs;
  for (int k = 0; k < 3; ++k) {
    SuperPolynomial s = fn(chart.space);
    put(s, Rational(-1), {}, {{k, 1}});
    inv_evs.push_back(s);
  }
  put(inv_evs[2], Rational(1), {}, {{0, 1}, {1, 1}});
  SpolMorphism invl = from_pullbacks(chart, chart, inv_evs, {});

  Domain lie = Domain::whole(SuperVectorSpace({"P", "Q", "Z"}, {"th1", "th2"}));
  Domain src = product_domain(chart, lie);
  std::vector<SuperPolynomial> evs;
  for (int k = 0; k < 3; ++k) {
    SuperPolynomial s = fn(src.space);
    put(s, Rational(1), {}, {{3 + k, 1}});
    evs.push_back(s);
  }
  put(evs[2], Rational(-1), {}, {{1, 1}, {3, 1}});  // Z picks up -b x_P
  put(evs[2], Rational(1), {}, {{0, 1}, {4, 1}});   // Z picks up +a x_Q
  std::vector<SuperPolynomial> ods;
  for (int t = 0; t < 2; ++t) {
    SuperPolynomial s = fn(src.space);
    put(s, Rational(1), {t}, {});
    ods.push_back(s);
  }
  put(ods[1], Rational(1), {0}, {{0, 1}});  // th2 picks up a x_th1
  SpolMorphism ad = from_pullbacks(src, lie, evs, ods);
  return {g, law, invl, ad};
}

}  // namespace sgk::testutil
