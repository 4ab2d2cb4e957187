#include "sgk/group.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "sgk/errors.hpp"
#include "sgk/weil.hpp"

namespace sgk {

namespace {

using PolyMatrix = std::vector<std::vector<EvenPoly>>;

// Scalar pullback of an even target coordinate of a purely even morphism.
EvenPoly even_component(const SpolMorphism& f, int k) {
  SuperPolynomial sp = coordinate_pullback(f, 0, k);
  const int arity = sp.source().p();
  EvenPoly out(arity);
  for (const auto& [key, c] : sp.terms()) {
    if (!key.odds.empty())
      throw invariant_error("even_component: source has odd dependence");
    out.add_term(key.evens, c);
  }
  return out;
}

EvenPoly embed_poly(const EvenPoly& a, int new_arity, int offset) {
  EvenPoly out(new_arity);
  for (const auto& [m, c] : a.terms()) {
    MultiIndex big(static_cast<size_t>(new_arity), 0);
    for (size_t i = 0; i < m.size(); ++i) big[i + static_cast<size_t>(offset)] = m[i];
    out.add_term(big, c);
  }
  return out;
}

PBWMonomial generator_monomial(const LieSuperalgebra& g, int a) {
  PBWMonomial m(static_cast<size_t>(g.dim()), 0);
  m[static_cast<size_t>(a)] = 1;
  return m;
}

// Letters of a purely even monomial as even basis ordinals, in normal order.
std::vector<int> even_letters(const LieSuperalgebra& g, const PBWMonomial& m) {
  std::vector<int> out;
  for (int letter : u_word(g, m)) {
    if (g.parity(letter) != 0)
      throw invariant_error("left-invariant application needs a purely even element");
    out.push_back(g.normal_rank(letter));
  }
  return out;
}

// L_{j_1} ... L_{j_r} f for left-invariant fields L_j = sum_k A[k][j] d_k,
// rightmost letter first.
EvenPoly frame_word_apply(const PolyMatrix& frame, const std::vector<int>& letters,
                          const EvenPoly& f) {
  EvenPoly acc = f;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    const int j = *it;
    EvenPoly next(acc.arity());
    for (size_t k = 0; k < frame.size(); ++k)
      next += frame[k][static_cast<size_t>(j)] * acc.derivative(static_cast<int>(k));
    acc = next;
  }
  return acc;
}

// Extend a matrix action on the algebra multiplicatively to an enveloping
// element: each letter of each word maps to its column of generator images.
UElem<EvenPoly> matrix_extend(const LieSuperalgebra& g, const PolyMatrix& mat,
                              int arity, const UEnvElement& u) {
  const int n = g.dim();
  std::vector<UElem<EvenPoly>> gen(static_cast<size_t>(n));
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      const EvenPoly& e = mat[static_cast<size_t>(a)][static_cast<size_t>(b)];
      if (!e.is_zero())
        uelem_add(gen[static_cast<size_t>(b)], generator_monomial(g, a), e);
    }
  UElem<EvenPoly> out;
  for (const auto& [m, c] : u.terms) {
    UElem<EvenPoly> acc;
    uelem_add(acc, PBWMonomial(static_cast<size_t>(n), 0), EvenPoly::constant(arity, c));
    for (int letter : u_word(g, m))
      acc = u_mul(g, acc, gen[static_cast<size_t>(letter)]);
    for (const auto& [mm, cc] : acc.terms) uelem_add(out, mm, cc);
  }
  return out;
}

// Rational specialization of matrix_extend at a chart point.
UEnvElement matrix_extend_at(const LieSuperalgebra& g, const PolyMatrix& mat,
                             const std::vector<Rational>& point, const UEnvElement& u) {
  const int n = g.dim();
  std::vector<UEnvElement> gen(static_cast<size_t>(n));
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      Rational v = mat[static_cast<size_t>(a)][static_cast<size_t>(b)].eval(point);
      if (!v.is_zero()) uelem_add(gen[static_cast<size_t>(b)], generator_monomial(g, a), v);
    }
  UEnvElement out;
  for (const auto& [m, c] : u.terms) {
    UEnvElement acc;
    uelem_add(acc, PBWMonomial(static_cast<size_t>(n), 0), c);
    for (int letter : u_word(g, m))
      acc = u_mul(g, acc, gen[static_cast<size_t>(letter)]);
    for (const auto& [mm, cc] : acc.terms) uelem_add(out, mm, cc);
  }
  return out;
}

std::vector<int> mask_to_set(unsigned mask, int q) {
  std::vector<int> out;
  for (int t = 0; t < q; ++t)
    if (mask & (1u << t)) out.push_back(t);
  return out;
}

// Rename the source coordinates of f so that its source space equals
// `like`, matching coordinates by position.
SpolMorphism align_source(const SpolMorphism& f, const Domain& like) {
  const SuperVectorSpace& a = f.source().space;
  const SuperVectorSpace& b = like.space;
  if (a.p() != b.p() || a.q() != b.q())
    throw invariant_error("align_source: dimension mismatch");
  std::map<std::string, std::string> nm;
  for (int i = 0; i < a.p(); ++i) nm[a.even_name(i)] = b.even_name(i);
  for (int i = 0; i < a.q(); ++i) nm[a.odd_name(i)] = b.odd_name(i);
  return rename_source(f, nm);
}

std::vector<Rational> zero_point(int p) { return std::vector<Rational>(static_cast<size_t>(p)); }

using RatMatrix = std::vector<std::vector<Rational>>;

RatMatrix rat_zero(int n) { return RatMatrix(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0))); }

RatMatrix rat_identity(int n) {
  RatMatrix m = rat_zero(n);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = Rational(1);
  return m;
}

RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b) {
  const int n = static_cast<int>(a.size());
  RatMatrix out = rat_zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

void rat_axpy(RatMatrix& acc, const Rational& c, const RatMatrix& m) {
  for (size_t i = 0; i < acc.size(); ++i)
    for (size_t j = 0; j < acc.size(); ++j) acc[i][j] += c * m[i][j];
}

int space_slot_parity(const SuperVectorSpace& v, int r) { return r < v.p() ? 0 : 1; }

// Entries of a morphism (base) x V -> V that is fiberwise linear, as
// polynomials in the base evens. Rows and columns run over V evens then V
// odds. Terms touching base odds are dropped in skip mode and rejected
// otherwise; a term of fiber degree != 1 is always rejected.
PolyMatrix fiber_matrix(const SpolMorphism& f, int base_evens, int base_odds,
                        const SuperVectorSpace& v, bool skip_base_odds) {
  const int nv = v.p() + v.q();
  PolyMatrix out(static_cast<size_t>(nv),
                 std::vector<EvenPoly>(static_cast<size_t>(nv), EvenPoly(base_evens)));
  for (int r = 0; r < nv; ++r) {
    const int pr = space_slot_parity(v, r);
    const int ir = pr ? r - v.p() : r;
    SuperPolynomial sp = coordinate_pullback(f, pr, ir);
    for (const auto& [key, c] : sp.terms()) {
      bool base_odd = false;
      std::vector<int> vodds;
      for (int o : key.odds) {
        if (o < base_odds) base_odd = true;
        else vodds.push_back(o - base_odds);
      }
      if (base_odd) {
        if (skip_base_odds) continue;
        throw invariant_error("fiber_matrix: entry depends on a base odd coordinate");
      }
      MultiIndex base_m(static_cast<size_t>(base_evens), 0);
      for (int k = 0; k < base_evens; ++k) base_m[static_cast<size_t>(k)] = key.evens[static_cast<size_t>(k)];
      unsigned fiber_deg = 0;
      int col = -1;
      for (int k = 0; k < v.p(); ++k) {
        const uint32_t e = key.evens[static_cast<size_t>(base_evens + k)];
        fiber_deg += e;
        if (e) col = k;
      }
      if (vodds.size() + fiber_deg != 1)
        throw invariant_error("fiber_matrix: entry is not linear over the fiber");
      if (!vodds.empty()) col = v.p() + vodds[0];
      out[static_cast<size_t>(r)][static_cast<size_t>(col)].add_term(base_m, c);
    }
  }
  return out;
}

// Fiberwise linear morphism base x V -> V with the given entry matrix.
SpolMorphism matrix_to_action(const Domain& base, const SuperVectorSpace& v,
                              const PolyMatrix& n) {
  const Domain vd = Domain::whole(v);
  const Domain src = product_domain(base, vd);
  const int bp = base.space.p();
  const int nv = v.p() + v.q();
  std::vector<SuperPolynomial> evs, ods;
  for (int r = 0; r < nv; ++r) {
    SuperPolynomial sp = SuperPolynomial::scalar(src.space);
    for (int c = 0; c < nv; ++c) {
      for (const auto& [m, coef] : n[static_cast<size_t>(r)][static_cast<size_t>(c)].terms()) {
        SuperPolynomial::Key key;
        key.evens = MultiIndex(static_cast<size_t>(src.space.p()), 0);
        for (size_t i = 0; i < m.size(); ++i) key.evens[i] = m[i];
        if (c < v.p()) key.evens[static_cast<size_t>(bp + c)] += 1;
        else key.odds = {base.space.q() + (c - v.p())};
        sp.add_term(key, coef);
      }
    }
    (r < v.p() ? evs : ods).push_back(sp);
  }
  return from_pullbacks(src, vd, evs, ods);
}

// Section of weil_space(A, d) over `from` with prescribed scalar values per
// (monomial, parity, index) triple; unlisted slots are zero.
SpolMorphism weil_section(const WeilSpace& ws, const Domain& from,
                          const std::map<std::array<int, 3>, SuperPolynomial>& values) {
  std::vector<SuperPolynomial> ev(static_cast<size_t>(ws.domain.space.p()),
                                  SuperPolynomial::scalar(from.space));
  std::vector<SuperPolynomial> od(static_cast<size_t>(ws.domain.space.q()),
                                  SuperPolynomial::scalar(from.space));
  for (const auto& [triple, value] : values) {
    const auto [par, idx] = ws.index.at(triple);
    (par ? od : ev)[static_cast<size_t>(idx)] = value;
  }
  return from_pullbacks(from, ws.domain, ev, od);
}

SuperPolynomial scalar_constant(const SuperVectorSpace& s, const Rational& c) {
  SuperPolynomial sp = SuperPolynomial::scalar(s);
  SuperPolynomial::Key key;
  key.evens = MultiIndex(static_cast<size_t>(s.p()), 0);
  sp.add_term(key, c);
  return sp;
}

SuperPolynomial scalar_even(const SuperVectorSpace& s, int i) {
  SuperPolynomial sp = SuperPolynomial::scalar(s);
  SuperPolynomial::Key key;
  key.evens = MultiIndex(static_cast<size_t>(s.p()), 0);
  key.evens[static_cast<size_t>(i)] += 1;
  sp.add_term(key, Rational(1));
  return sp;
}

SuperPolynomial scalar_odd(const SuperVectorSpace& s, int i) {
  SuperPolynomial sp = SuperPolynomial::scalar(s);
  SuperPolynomial::Key key;
  key.evens = MultiIndex(static_cast<size_t>(s.p()), 0);
  key.odds = {i};
  sp.add_term(key, Rational(1));
  return sp;
}

}  // namespace

Domain pair_chart(const SupergroupPair& pair) { return pair.group_law.target(); }

Domain pair_algebra_domain(const SupergroupPair& pair) {
  const LieSuperalgebra& g = pair.algebra;
  std::vector<std::string> ev, od;
  for (int k = 0; k < g.even_count(); ++k) ev.push_back(g.name(g.even_index(k)));
  for (int t = 0; t < g.odd_count(); ++t) od.push_back(g.name(g.odd_index(t)));
  return Domain::whole(SuperVectorSpace(std::move(ev), std::move(od)));
}

std::vector<std::vector<EvenPoly>> pair_ad_matrix(const SupergroupPair& pair) {
  const LieSuperalgebra& g = pair.algebra;
  const int p = g.even_count();
  const int q = g.odd_count();
  const int n = g.dim();
  const SuperVectorSpace& src = pair.adjoint.source().space;
  const SuperVectorSpace& tgt = pair.adjoint.target().space;
  if (tgt.p() != p || tgt.q() != q || src.p() != 2 * p || src.q() != q)
    throw reference_error("pair_ad_matrix: adjoint domains do not match the algebra");

  PolyMatrix M(static_cast<size_t>(n), std::vector<EvenPoly>(static_cast<size_t>(n), EvenPoly(p)));
  auto chart_part = [&](const MultiIndex& m) {
    MultiIndex small(static_cast<size_t>(p), 0);
    for (int i = 0; i < p; ++i) small[static_cast<size_t>(i)] = m[static_cast<size_t>(i)];
    return small;
  };
  auto fiber_even_column = [&](const MultiIndex& m) {
    // Exactly one unit exponent in the algebra block, or -1.
    int col = -1;
    unsigned total = 0;
    for (int i = p; i < 2 * p; ++i) {
      total += m[static_cast<size_t>(i)];
      if (m[static_cast<size_t>(i)] > 0) col = i - p;
    }
    if (total != 1) return -2;
    return col;
  };

  for (int row = 0; row < n; ++row) {
    const int parity = g.parity(row);
    const int ordinal = g.normal_rank(row) - (parity == 0 ? 0 : p);
    SuperPolynomial sp = coordinate_pullback(pair.adjoint, parity, ordinal);
    for (const auto& [key, c] : sp.terms()) {
      int col_basis = -1;
      MultiIndex chart_m = chart_part(key.evens);
      if (key.odds.empty()) {
        const int col = fiber_even_column(key.evens);
        if (col < 0)
          throw invariant_error("adjoint action is not linear over the algebra block");
        col_basis = g.even_index(col);
      } else if (key.odds.size() == 1) {
        unsigned fiber_even = 0;
        for (int i = p; i < 2 * p; ++i) fiber_even += key.evens[static_cast<size_t>(i)];
        if (fiber_even != 0)
          throw invariant_error("adjoint action is not linear over the algebra block");
        col_basis = g.odd_index(key.odds[0]);
      } else {
        throw invariant_error("adjoint action is not linear over the algebra block");
      }
      M[static_cast<size_t>(row)][static_cast<size_t>(col_basis)].add_term(chart_m, c);
    }
  }
  return M;
}

std::vector<std::vector<EvenPoly>> pair_left_frame(const SupergroupPair& pair) {
  const int p = pair.group_law.target().space.p();
  std::vector<EvenPoly> freeze;  // (s, h) -> s at h = 0
  for (int i = 0; i < p; ++i) freeze.push_back(EvenPoly::variable(p, i));
  for (int i = 0; i < p; ++i) freeze.push_back(EvenPoly::constant(p, Rational(0)));
  PolyMatrix A(static_cast<size_t>(p), std::vector<EvenPoly>(static_cast<size_t>(p), EvenPoly(p)));
  for (int k = 0; k < p; ++k) {
    EvenPoly mk = even_component(pair.group_law, k);
    for (int j = 0; j < p; ++j)
      A[static_cast<size_t>(k)][static_cast<size_t>(j)] = mk.derivative(p + j).substitute(freeze, p);
  }
  return A;
}

EvenPoly left_invariant_apply(const SupergroupPair& pair, const UEnvElement& u,
                              const EvenPoly& f) {
  const LieSuperalgebra& g = pair.algebra;
  const int p = g.even_count();
  if (f.arity() != p) throw reference_error("left_invariant_apply: arity mismatch");
  PolyMatrix A = pair_left_frame(pair);
  EvenPoly out(p);
  for (const auto& [m, c] : u.terms) {
    EvenPoly v = frame_word_apply(A, even_letters(g, m), f);
    out += v.scale(c);
  }
  return out;
}

PairCheckResult check_pair(const SupergroupPair& pair) {
  const LieSuperalgebra& g = pair.algebra;
  LieCheckResult lc = check_lie(g);
  if (!lc.pass) return {false, "algebra: " + lc.detail};
  const int p = g.even_count();
  const int n = g.dim();

  Domain chart = pair.group_law.target();
  if (chart.space.q() != 0) return {false, "group chart must be purely even"};
  if (chart != Domain::whole(chart.space)) return {false, "group chart must be unbounded"};
  if (chart.space.p() != p)
    return {false, "chart dimension must equal the even rank of the algebra"};
  if (pair.group_law.source() != product_domain(chart, chart))
    return {false, "group law must be defined on two chart factors"};
  if (pair.inverse_law.source() != chart || pair.inverse_law.target() != chart)
    return {false, "inverse law must map the chart to itself"};
  Domain lie = pair_algebra_domain(pair);
  if (pair.adjoint.source() != product_domain(chart, lie) || pair.adjoint.target() != lie)
    return {false, "adjoint action must map chart times algebra to the algebra"};

  // Group laws on the chart.
  SpolMorphism id_c = identity(chart);
  SpolMorphism origin = constant_morphism(chart, chart, zero_point(p));
  if (compose(pair.group_law, pair_morphism(id_c, origin)) != id_c)
    return {false, "group law must have the origin as right unit"};
  if (compose(pair.group_law, pair_morphism(origin, id_c)) != id_c)
    return {false, "group law must have the origin as left unit"};
  {
    SpolMorphism lhs = compose(pair.group_law, product_morphism(pair.group_law, id_c));
    SpolMorphism rhs = compose(pair.group_law, product_morphism(id_c, pair.group_law));
    if (align_source(rhs, lhs.source()) != lhs)
      return {false, "group law must be associative"};
  }
  if (compose(pair.group_law, pair_morphism(id_c, pair.inverse_law)) != origin)
    return {false, "inverse law must cancel on the right"};
  if (compose(pair.group_law, pair_morphism(pair.inverse_law, id_c)) != origin)
    return {false, "inverse law must cancel on the left"};

  // Adjoint layer.
  {
    const SuperVectorSpace& s = pair.adjoint.source().space;
    std::vector<std::string> fiber_src, fiber_tgt;
    for (int i = p; i < 2 * p; ++i) fiber_src.push_back(s.even_name(i));
    for (int t = 0; t < s.q(); ++t) fiber_src.push_back(s.odd_name(t));
    const SuperVectorSpace& ts = pair.adjoint.target().space;
    for (int i = 0; i < ts.p(); ++i) fiber_tgt.push_back(ts.even_name(i));
    for (int t = 0; t < ts.q(); ++t) fiber_tgt.push_back(ts.odd_name(t));
    FiberCheckResult fc = fiberwise_degree_check(pair.adjoint, fiber_src, fiber_tgt, 1);
    if (!fc.pass) return {false, "adjoint action must be linear over the algebra block"};
  }
  PolyMatrix M;
  try {
    M = pair_ad_matrix(pair);
  } catch (const std::exception& e) {
    return {false, e.what()};
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Rational v = M[static_cast<size_t>(a)][static_cast<size_t>(b)].eval(zero_point(p));
      if (v != Rational(a == b ? 1 : 0))
        return {false, "adjoint action must be the identity at the unit"};
    }

  {
    const int p2 = 2 * p;
    std::vector<EvenPoly> mult0, g_img, h_img;
    for (int k = 0; k < p; ++k) mult0.push_back(even_component(pair.group_law, k));
    for (int i = 0; i < p; ++i) g_img.push_back(EvenPoly::variable(p2, i));
    for (int i = 0; i < p; ++i) h_img.push_back(EvenPoly::variable(p2, p + i));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        EvenPoly lhs = M[static_cast<size_t>(a)][static_cast<size_t>(b)].substitute(mult0, p2);
        EvenPoly rhs(p2);
        for (int c = 0; c < n; ++c)
          rhs += M[static_cast<size_t>(a)][static_cast<size_t>(c)].substitute(g_img, p2) *
                 M[static_cast<size_t>(c)][static_cast<size_t>(b)].substitute(h_img, p2);
        if (lhs != rhs)
          return {false, "adjoint action must be multiplicative over the group law"};
      }
  }

  for (int b1 = 0; b1 < n; ++b1)
    for (int b2 = 0; b2 < n; ++b2) {
      std::vector<EvenPoly> lhs(static_cast<size_t>(n), EvenPoly(p));
      std::vector<EvenPoly> rhs(static_cast<size_t>(n), EvenPoly(p));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const auto& br = g.bracket(a, b);
          if (br.empty()) continue;
          EvenPoly prod = M[static_cast<size_t>(a)][static_cast<size_t>(b1)] *
                          M[static_cast<size_t>(b)][static_cast<size_t>(b2)];
          for (const auto& [k, r] : br.terms()) {
            EvenPoly t = prod;
            lhs[static_cast<size_t>(k)] += t.scale(r);
          }
        }
      for (const auto& [c, r] : g.bracket(b1, b2).terms())
        for (int k = 0; k < n; ++k) {
          EvenPoly t = M[static_cast<size_t>(k)][static_cast<size_t>(c)];
          rhs[static_cast<size_t>(k)] += t.scale(r);
        }
      for (int k = 0; k < n; ++k)
        if (lhs[static_cast<size_t>(k)] != rhs[static_cast<size_t>(k)])
          return {false, "adjoint action must preserve the bracket"};
    }

  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < p; ++j) {
        Rational lhs =
            M[static_cast<size_t>(a)][static_cast<size_t>(b)].derivative(j).eval(zero_point(p));
        Rational rhs = g.bracket(g.even_index(j), b).coefficient(a);
        if (lhs != rhs)
          return {false,
                  "adjoint differential at the unit must match the bracket on even generators"};
      }

  {
    std::vector<Rational> z = zero_point(2 * p);
    for (int k = 0; k < p; ++k) {
      EvenPoly mk = even_component(pair.group_law, k);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
          Rational d2 = mk.derivative(i).derivative(p + j).eval(z) -
                        mk.derivative(j).derivative(p + i).eval(z);
          Rational want = g.bracket(g.even_index(i), g.even_index(j)).coefficient(g.even_index(k));
          if (d2 != want)
            return {false,
                    "group law second-order terms at the unit must match the even structure "
                    "constants"};
        }
    }
  }

  return {};
}

KoszulGroup koszul_build(const SupergroupPair& pair) {
  PairCheckResult chk = check_pair(pair);
  if (!chk.pass) throw invariant_error("supergroup pair rejected: " + chk.axiom);

  const LieSuperalgebra& g = pair.algebra;
  const int p = g.even_count();
  const int q = g.odd_count();
  const int n = g.dim();
  Domain chart = pair_chart(pair);

  std::vector<std::string> odd_names;
  for (int t = 0; t < q; ++t) odd_names.push_back(g.name(g.odd_index(t)));
  for (const auto& en : chart.space.even_names())
    for (const auto& on : odd_names)
      if (en == on)
        throw reference_error("koszul_build: odd basis name '" + on +
                              "' collides with a chart coordinate");
  Domain G = Domain::whole(SuperVectorSpace(chart.space.even_names(), odd_names));
  Domain GG = product_domain(G, G);

  PolyMatrix M = pair_ad_matrix(pair);
  PolyMatrix A = pair_left_frame(pair);
  std::vector<EvenPoly> mult0, inv0;
  for (int k = 0; k < p; ++k) mult0.push_back(even_component(pair.group_law, k));
  for (int k = 0; k < p; ++k) inv0.push_back(even_component(pair.inverse_law, k));

  const PBWMonomial empty_mono(static_cast<size_t>(n), 0);

  // Multiplication: components over pairs of odd subsets of the two factors.
  SpolMorphism mult;
  {
    const int p2 = 2 * p;
    std::vector<EvenPoly> h_inv;  // chart variable -> inverse law of the h block
    for (int c = 0; c < p; ++c) h_inv.push_back(embed_poly(inv0[static_cast<size_t>(c)], p2, p));
    PolyMatrix Mh(static_cast<size_t>(n),
                  std::vector<EvenPoly>(static_cast<size_t>(n), EvenPoly(p2)));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        Mh[static_cast<size_t>(a)][static_cast<size_t>(b)] =
            M[static_cast<size_t>(a)][static_cast<size_t>(b)].substitute(h_inv, p2);
    const EvenPoly one2 = EvenPoly::constant(p2, Rational(1));

    std::vector<SuperPolynomial> evs, ods;
    for (int k = 0; k < p; ++k) evs.push_back(SuperPolynomial::scalar(GG.space));
    for (int j = 0; j < q; ++j) ods.push_back(SuperPolynomial::scalar(GG.space));

    for (unsigned m1 = 0; m1 < (1u << q); ++m1)
      for (unsigned m2 = 0; m2 < (1u << q); ++m2) {
        std::vector<int> K1 = mask_to_set(m1, q);
        std::vector<int> K2 = mask_to_set(m2, q);
        UElem<EvenPoly> left =
            matrix_extend(g, Mh, p2, u_beta(g, odd_subset_monomial(g, K1)));
        UElem<EvenPoly> right;
        u_axpy(right, one2, u_beta(g, odd_subset_monomial(g, K2)));
        UElem<EvenPoly> w = u_mul(g, left, right);
        auto layers = odd_decompose(g, w, one2);

        OddSet odds = K1;
        for (int t : K2) odds.push_back(t + q);

        auto base_layer = layers.find(std::vector<int>{});
        if (base_layer != layers.end()) {
          for (int k = 0; k < p; ++k) {
            EvenPoly val(p2);
            for (const auto& [mono, c] : base_layer->second.terms) {
              EvenPoly der =
                  frame_word_apply(A, even_letters(g, mono), EvenPoly::variable(p, k));
              val += c * der.substitute(mult0, p2);
            }
            for (const auto& [mi, r] : val.terms())
              evs[static_cast<size_t>(k)].add_term(SuperPolynomial::Key{0, 0, odds, mi}, r);
          }
        }
        for (int j = 0; j < q; ++j) {
          auto it = layers.find(std::vector<int>{j});
          if (it == layers.end()) continue;
          auto et = it->second.terms.find(empty_mono);
          if (et == it->second.terms.end()) continue;
          for (const auto& [mi, r] : et->second.terms())
            ods[static_cast<size_t>(j)].add_term(SuperPolynomial::Key{0, 0, odds, mi}, r);
        }
      }
    mult = from_pullbacks(GG, G, evs, ods);
  }

  // Inverse: antipode first, then the adjoint twist at the point itself.
  SpolMorphism inv;
  {
    const EvenPoly one1 = EvenPoly::constant(p, Rational(1));
    std::vector<SuperPolynomial> evs, ods;
    for (int k = 0; k < p; ++k) evs.push_back(SuperPolynomial::scalar(G.space));
    for (int j = 0; j < q; ++j) ods.push_back(SuperPolynomial::scalar(G.space));

    for (unsigned mk = 0; mk < (1u << q); ++mk) {
      std::vector<int> K = mask_to_set(mk, q);
      UEnvElement su = antipode(g, u_beta(g, odd_subset_monomial(g, K)));
      UElem<EvenPoly> w = matrix_extend(g, M, p, su);
      auto layers = odd_decompose(g, w, one1);

      auto base_layer = layers.find(std::vector<int>{});
      if (base_layer != layers.end()) {
        for (int k = 0; k < p; ++k) {
          EvenPoly val(p);
          for (const auto& [mono, c] : base_layer->second.terms) {
            EvenPoly der =
                frame_word_apply(A, even_letters(g, mono), EvenPoly::variable(p, k));
            val += c * der.substitute(inv0, p);
          }
          for (const auto& [mi, r] : val.terms())
            evs[static_cast<size_t>(k)].add_term(SuperPolynomial::Key{0, 0, K, mi}, r);
        }
      }
      for (int j = 0; j < q; ++j) {
        auto it = layers.find(std::vector<int>{j});
        if (it == layers.end()) continue;
        auto et = it->second.terms.find(empty_mono);
        if (et == it->second.terms.end()) continue;
        for (const auto& [mi, r] : et->second.terms())
          ods[static_cast<size_t>(j)].add_term(SuperPolynomial::Key{0, 0, K, mi}, r);
      }
    }
    inv = from_pullbacks(G, G, evs, ods);
  }

  SpolMorphism unit = constant_morphism(Domain::point(), G, zero_point(p));
  return {pair, G, unit, mult, inv};
}

GroupCheckResult verify_group(const KoszulGroup& kg) {
  const Domain& G = kg.domain;
  Domain GG = product_domain(G, G);
  if (kg.mult.source() != GG || kg.mult.target() != G || kg.inv.source() != G ||
      kg.inv.target() != G || kg.unit.source() != Domain::point() || kg.unit.target() != G)
    return {false, "structure maps must connect the expected domains"};
  if (underlying(kg.mult) != kg.pair.group_law)
    return {false, "multiplication must reduce to the even group law"};
  if (underlying(kg.inv) != kg.pair.inverse_law)
    return {false, "inversion must reduce to the even inverse law"};

  SpolMorphism id_g = identity(G);
  {
    SpolMorphism lhs = compose(kg.mult, product_morphism(kg.mult, id_g));
    SpolMorphism rhs = compose(kg.mult, product_morphism(id_g, kg.mult));
    if (align_source(rhs, lhs.source()) != lhs)
      return {false, "multiplication must be associative"};
  }
  std::vector<Rational> e = eval_base(kg.unit, {});
  SpolMorphism at_unit = constant_morphism(G, G, e);
  if (compose(kg.mult, pair_morphism(id_g, at_unit)) != id_g)
    return {false, "the unit must be right neutral"};
  if (compose(kg.mult, pair_morphism(at_unit, id_g)) != id_g)
    return {false, "the unit must be left neutral"};
  if (compose(kg.mult, pair_morphism(id_g, kg.inv)) != at_unit)
    return {false, "the inverse must cancel on the right"};
  if (compose(kg.mult, pair_morphism(kg.inv, id_g)) != at_unit)
    return {false, "the inverse must cancel on the left"};
  return {};
}

Rational distribution_pairing(const KoszulGroup& kg, const SuperPolynomial& f,
                              const Distribution& d) {
  const LieSuperalgebra& g = kg.pair.algebra;
  const int p = g.even_count();
  if (!f.is_scalar_valued() || f.source() != kg.domain.space)
    throw reference_error("distribution_pairing: need a scalar superfunction on the group domain");
  if (static_cast<int>(d.base.size()) != p)
    throw reference_error("distribution_pairing: support point has the wrong dimension");
  PolyMatrix A = pair_left_frame(kg.pair);
  Rational total(0);
  for (const auto& [K, u0] : odd_decompose(g, d.u, Rational(1))) {
    SuperPolynomial cf = f.odd_coefficient(K);
    EvenPoly fk(p);
    for (const auto& [key, c] : cf.terms()) fk.add_term(key.evens, c);
    for (const auto& [mono, c] : u0.terms) {
      EvenPoly v = frame_word_apply(A, even_letters(g, mono), fk);
      total += c * v.eval(d.base);
    }
  }
  return total;
}

Distribution convolve(const Distribution& a, const Distribution& b, const KoszulGroup& kg) {
  const LieSuperalgebra& g = kg.pair.algebra;
  const int p = g.even_count();
  if (static_cast<int>(a.base.size()) != p || static_cast<int>(b.base.size()) != p)
    throw reference_error("convolve: support point has the wrong dimension");
  PolyMatrix M = pair_ad_matrix(kg.pair);
  std::vector<Rational> h_inv = eval_base(kg.pair.inverse_law, b.base);
  UEnvElement twisted = matrix_extend_at(g, M, h_inv, a.u);
  UEnvElement u = u_mul(g, twisted, b.u);
  std::vector<Rational> point = a.base;
  point.insert(point.end(), b.base.begin(), b.base.end());
  return {eval_base(kg.pair.group_law, point), u};
}

Distribution delta_unit(const KoszulGroup& kg) {
  return {zero_point(kg.pair.algebra.even_count()), u_one(kg.pair.algebra)};
}

std::map<std::string, Rational> berezin_pair(const SuperPolynomial& f,
                                             const SuperPolynomial& density) {
  return superpoly_mul(f, density).berezin_top();
}

RepCheckResult check_rep(const SupergroupPair& pair, const PairRepresentation& rep) {
  const LieSuperalgebra& g = pair.algebra;
  const Domain chart = pair_chart(pair);
  const int p = chart.space.p();
  const int n = g.dim();
  const int pv = rep.space.p();
  const int nv = pv + rep.space.q();
  auto fail = [](const char* s) { return RepCheckResult{false, s}; };

  if (static_cast<int>(rep.differential.size()) != n)
    return fail("differential must provide one square matrix per basis element");
  for (const auto& mat : rep.differential) {
    if (static_cast<int>(mat.size()) != nv)
      return fail("differential must provide one square matrix per basis element");
    for (const auto& row : mat)
      if (static_cast<int>(row.size()) != nv)
        return fail("differential must provide one square matrix per basis element");
  }
  for (int b = 0; b < n; ++b)
    for (int r = 0; r < nv; ++r)
      for (int c = 0; c < nv; ++c)
        if (!rep.differential[b][r][c].is_zero() &&
            ((space_slot_parity(rep.space, r) + space_slot_parity(rep.space, c)) & 1) !=
                g.parity(b))
          return fail("differential matrices must be homogeneous of the basis parity");

  const Domain vd = Domain::whole(rep.space);
  if (!(rep.action0.source() == product_domain(chart, vd) && rep.action0.target() == vd))
    return fail("chart action must map the chart times the space to the space");

  {
    const SuperVectorSpace& s = rep.action0.source().space;
    std::vector<std::string> fib, tgt;
    for (int k = 0; k < rep.space.p(); ++k) fib.push_back(s.even_name(p + k));
    for (int i = 0; i < rep.space.q(); ++i) fib.push_back(s.odd_name(i));
    for (int k = 0; k < rep.space.p(); ++k) tgt.push_back(rep.space.even_name(k));
    for (int i = 0; i < rep.space.q(); ++i) tgt.push_back(rep.space.odd_name(i));
    if (!fiberwise_degree_check(rep.action0, fib, tgt, 1).pass)
      return fail("chart action must be linear over the space");
  }

  const PolyMatrix n0 = fiber_matrix(rep.action0, p, 0, rep.space, false);
  const std::vector<Rational> origin = zero_point(p);
  for (int r = 0; r < nv; ++r)
    for (int c = 0; c < nv; ++c)
      if (!(n0[r][c].eval(origin) == Rational(r == c ? 1 : 0)))
        return fail("chart action must be the identity at the unit");

  {
    std::vector<EvenPoly> m0;
    for (int k = 0; k < p; ++k) m0.push_back(even_component(pair.group_law, k));
    for (int r = 0; r < nv; ++r)
      for (int c = 0; c < nv; ++c) {
        const EvenPoly lhs = n0[r][c].substitute(m0, 2 * p);
        EvenPoly rhs(2 * p);
        for (int k = 0; k < nv; ++k)
          rhs += embed_poly(n0[r][k], 2 * p, 0) * embed_poly(n0[k][c], 2 * p, p);
        if (!(lhs == rhs))
          return fail("chart action must be multiplicative over the group law");
      }
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      RatMatrix want = rat_zero(nv);
      for (const auto& [k, c] : g.bracket(a, b).terms()) rat_axpy(want, c, rep.differential[k]);
      RatMatrix got = rat_mul(rep.differential[a], rep.differential[b]);
      rat_axpy(got, Rational((g.parity(a) & g.parity(b)) ? 1 : -1),
               rat_mul(rep.differential[b], rep.differential[a]));
      if (!(got == want)) return fail("differential must represent the bracket");
    }

  {
    const PolyMatrix M = pair_ad_matrix(pair);
    for (int b = 0; b < n; ++b)
      for (int r = 0; r < nv; ++r)
        for (int c = 0; c < nv; ++c) {
          EvenPoly lhs(p);
          for (int m = 0; m < nv; ++m) {
            if (rep.differential[b][m][c].is_zero()) continue;
            EvenPoly t = n0[r][m];
            t.scale(rep.differential[b][m][c]);
            lhs += t;
          }
          EvenPoly rhs(p);
          for (int a = 0; a < n; ++a) {
            if (M[a][b].is_zero()) continue;
            EvenPoly inner(p);
            for (int m = 0; m < nv; ++m) {
              if (rep.differential[a][r][m].is_zero()) continue;
              EvenPoly t = n0[m][c];
              t.scale(rep.differential[a][r][m]);
              inner += t;
            }
            rhs += M[a][b] * inner;
          }
          if (!(lhs == rhs))
            return fail("chart action and differential must satisfy the adjoint compatibility");
        }
  }

  for (int j = 0; j < p; ++j) {
    const auto& d = rep.differential[static_cast<size_t>(g.even_index(j))];
    for (int r = 0; r < nv; ++r)
      for (int c = 0; c < nv; ++c)
        if (!(n0[r][c].derivative(j).eval(origin) == d[static_cast<size_t>(r)][static_cast<size_t>(c)]))
          return fail("chart action derivative at the unit must match the even differential");
  }
  return {};
}

SpolMorphism rep_to_morphism(const KoszulGroup& kg, const PairRepresentation& rep) {
  const RepCheckResult chk = check_rep(kg.pair, rep);
  if (!chk.pass) throw invariant_error("representation rejected: " + chk.axiom);

  const Domain& G = kg.domain;
  const int p = G.space.p();
  const int q = G.space.q();
  const int pv = rep.space.p();
  const int nv = pv + rep.space.q();
  for (int k = 0; k < rep.space.p(); ++k)
    if (G.space.find(rep.space.even_name(k)))
      throw reference_error("rep_to_morphism: space coordinate '" + rep.space.even_name(k) +
                            "' collides with a group coordinate");
  for (int i = 0; i < rep.space.q(); ++i)
    if (G.space.find(rep.space.odd_name(i)))
      throw reference_error("rep_to_morphism: space coordinate '" + rep.space.odd_name(i) +
                            "' collides with a group coordinate");

  const LieSuperalgebra& g = kg.pair.algebra;
  const Domain vd = Domain::whole(rep.space);
  const Domain gv = product_domain(G, vd);
  const PolyMatrix n0 = fiber_matrix(rep.action0, p, 0, rep.space, false);

  std::vector<SuperPolynomial> evs(static_cast<size_t>(pv), SuperPolynomial::scalar(gv.space));
  std::vector<SuperPolynomial> ods(static_cast<size_t>(nv - pv), SuperPolynomial::scalar(gv.space));
  for (unsigned mask = 0; mask < (1u << q); ++mask) {
    const std::vector<int> K = mask_to_set(mask, q);
    RatMatrix dk = rat_identity(nv);
    if (!K.empty()) {
      dk = rat_zero(nv);
      for (const auto& [m, c] : u_beta(g, odd_subset_monomial(g, K)).terms) {
        RatMatrix w = rat_identity(nv);
        for (int letter : u_word(g, m)) w = rat_mul(w, rep.differential[static_cast<size_t>(letter)]);
        rat_axpy(dk, c, w);
      }
    }
    for (int r = 0; r < nv; ++r)
      for (int c = 0; c < nv; ++c) {
        EvenPoly e(p);
        for (int m = 0; m < nv; ++m) {
          if (dk[static_cast<size_t>(m)][static_cast<size_t>(c)].is_zero()) continue;
          EvenPoly t = n0[r][m];
          t.scale(dk[static_cast<size_t>(m)][static_cast<size_t>(c)]);
          e += t;
        }
        if (e.is_zero()) continue;
        SuperPolynomial& into = r < pv ? evs[static_cast<size_t>(r)] : ods[static_cast<size_t>(r - pv)];
        for (const auto& [mono, coef] : e.terms()) {
          SuperPolynomial::Key key;
          key.odds = OddSet(K.begin(), K.end());
          key.evens = MultiIndex(static_cast<size_t>(p + pv), 0);
          for (size_t i = 0; i < mono.size(); ++i) key.evens[i] = mono[i];
          if (c < pv) key.evens[static_cast<size_t>(p + c)] += 1;
          else key.odds.push_back(q + (c - pv));
          into.add_term(key, coef);
        }
      }
  }
  return from_pullbacks(gv, vd, evs, ods);
}

PairRepresentation morphism_to_rep(const KoszulGroup& kg, const SpolMorphism& action) {
  const Domain& G = kg.domain;
  const int p = G.space.p();
  const int q = G.space.q();
  const Domain vd = action.target();
  const SuperVectorSpace& V = vd.space;
  const int pv = V.p();
  const int nv = pv + V.q();
  if (!(action.source() == product_domain(G, vd) && vd == Domain::whole(V)))
    throw reference_error(
        "morphism_to_rep: the action must map the group times the space to the space");
  for (int k = 0; k < V.p(); ++k)
    if (G.space.find(V.even_name(k)))
      throw reference_error("morphism_to_rep: space coordinate '" + V.even_name(k) +
                            "' collides with a group coordinate");
  for (int i = 0; i < V.q(); ++i)
    if (G.space.find(V.odd_name(i)))
      throw reference_error("morphism_to_rep: space coordinate '" + V.odd_name(i) +
                            "' collides with a group coordinate");

  {
    const SuperVectorSpace& s = action.source().space;
    std::vector<std::string> fib, tgt;
    for (int k = 0; k < V.p(); ++k) fib.push_back(s.even_name(p + k));
    for (int i = 0; i < V.q(); ++i) fib.push_back(s.odd_name(q + i));
    for (int k = 0; k < V.p(); ++k) tgt.push_back(V.even_name(k));
    for (int i = 0; i < V.q(); ++i) tgt.push_back(V.odd_name(i));
    if (!fiberwise_degree_check(action, fib, tgt, 1).pass)
      throw invariant_error("morphism_to_rep: the action is not linear over the space");
  }
  {
    const SpolMorphism at_unit =
        compose(action, pair_morphism(constant_morphism(vd, G, zero_point(p)), identity(vd)));
    if (!(at_unit == identity(vd)))
      throw invariant_error("morphism_to_rep: the action does not satisfy the unit law");
  }
  {
    const SpolMorphism lhs = compose(action, product_morphism(kg.mult, identity(vd)));
    const SpolMorphism rhs = compose(action, product_morphism(identity(G), action));
    if (!(align_source(rhs, lhs.source()) == lhs))
      throw invariant_error("morphism_to_rep: the action does not satisfy the multiplication law");
  }

  const LieSuperalgebra& g = kg.pair.algebra;
  PairRepresentation rep;
  rep.space = V;
  rep.action0 = matrix_to_action(pair_chart(kg.pair), V, fiber_matrix(action, p, q, V, true));

  const int n = g.dim();
  rep.differential.assign(static_cast<size_t>(n), rat_zero(nv));
  for (int b = 0; b < n; ++b) {
    const int pb = g.parity(b);
    const WeilAlgebra A = pb ? odd_line() : dual_numbers();
    const WeilSpace ws = weil_space(A, action.source());
    const int ord = g.normal_rank(b) - (pb ? g.even_count() : 0);
    std::map<std::array<int, 3>, SuperPolynomial> sec;
    for (int k = 0; k < V.p(); ++k) sec[{0, 0, p + k}] = scalar_even(V, k);
    for (int i = 0; i < V.q(); ++i) sec[{0, 1, q + i}] = scalar_odd(V, i);
    sec[{1, pb, ord}] = scalar_constant(V, Rational(1));
    const SpolMorphism chi = compose(weil_apply(A, action), weil_section(ws, vd, sec));
    const WeilSpace wt = weil_space(A, vd);
    for (int r = 0; r < nv; ++r) {
      const std::pair<int, int> pos =
          r < pv ? wt.index.at({1, 0, r}) : wt.index.at({1, 1, r - pv});
      const SuperPolynomial sp = coordinate_pullback(chi, pos.first, pos.second);
      for (const auto& [key, c] : sp.terms()) {
        int col = -1;
        unsigned deg = 0;
        for (size_t k2 = 0; k2 < key.evens.size(); ++k2) {
          deg += key.evens[k2];
          if (key.evens[k2]) col = static_cast<int>(k2);
        }
        if (key.odds.size() + deg != 1)
          throw invariant_error("morphism_to_rep: the action is not linear over the space");
        if (!key.odds.empty()) col = pv + key.odds[0];
        rep.differential[static_cast<size_t>(b)][static_cast<size_t>(r)][static_cast<size_t>(col)] += c;
      }
    }
  }

  const RepCheckResult chk = check_rep(kg.pair, rep);
  if (!chk.pass) throw invariant_error("morphism_to_rep: extracted data rejected: " + chk.axiom);
  return rep;
}

bool intertwines(const KoszulGroup& kg, const SpolMorphism& action_v,
                 const SpolMorphism& action_w, const SpolMorphism& t) {
  const SpolMorphism lhs = compose(t, action_v);
  const SpolMorphism rhs = compose(action_w, product_morphism(identity(kg.domain), t));
  return lhs == rhs;
}

TangentGroupReport group_on_TG(const KoszulGroup& kg) {
  const Domain& G = kg.domain;
  const LieSuperalgebra& g = kg.pair.algebra;
  const int p = G.space.p();
  const int q = G.space.q();
  const int n = g.dim();
  const Domain A = pair_algebra_domain(kg.pair);
  const Domain GG = product_domain(G, G);
  const Domain GA = product_domain(G, A);

  const SpolMorphism conj =
      compose(kg.mult, pair_morphism(kg.mult, compose(kg.inv, projection_first(G, G))));

  // Group-level adjoint G x A -> A assembled column by column from tangent
  // prolongations of the conjugation; an odd column flips the sign of each
  // term with oddly many exterior factors, moving the direction generator
  // past the coefficient.
  std::vector<SuperPolynomial> ad_ev(static_cast<size_t>(p), SuperPolynomial::scalar(GA.space));
  std::vector<SuperPolynomial> ad_od(static_cast<size_t>(q), SuperPolynomial::scalar(GA.space));
  for (int b = 0; b < n; ++b) {
    const int pb = g.parity(b);
    const WeilAlgebra W = pb ? odd_line() : dual_numbers();
    const WeilSpace ws = weil_space(W, GG);
    const int ord = g.normal_rank(b) - (pb ? g.even_count() : 0);
    std::map<std::array<int, 3>, SuperPolynomial> sec;
    for (int k = 0; k < p; ++k) sec[{0, 0, k}] = scalar_even(G.space, k);
    for (int i = 0; i < q; ++i) sec[{0, 1, i}] = scalar_odd(G.space, i);
    sec[{1, pb, pb ? q + ord : p + ord}] = scalar_constant(G.space, Rational(1));
    const SpolMorphism chi = compose(weil_apply(W, conj), weil_section(ws, G, sec));
    const WeilSpace wt = weil_space(W, G);
    for (int r = 0; r < n; ++r) {
      const int prr = g.parity(r);
      const int ordr = g.normal_rank(r) - (prr ? g.even_count() : 0);
      const std::pair<int, int> pos = wt.index.at({1, prr, ordr});
      const SuperPolynomial sp = coordinate_pullback(chi, pos.first, pos.second);
      SuperPolynomial& into = prr ? ad_od[static_cast<size_t>(ordr)] : ad_ev[static_cast<size_t>(ordr)];
      for (const auto& [key, c] : sp.terms()) {
        Rational coef = c;
        if (pb && (key.odds.size() & 1)) coef = -coef;
        SuperPolynomial::Key nk;
        nk.odds = key.odds;
        nk.evens = MultiIndex(static_cast<size_t>(2 * p), 0);
        for (int k = 0; k < p; ++k) nk.evens[static_cast<size_t>(k)] = key.evens[static_cast<size_t>(k)];
        if (pb) nk.odds.push_back(q + ord);
        else nk.evens[static_cast<size_t>(p + ord)] += 1;
        into.add_term(nk, coef);
      }
    }
  }
  const SpolMorphism adS = from_pullbacks(GA, A, ad_ev, ad_od);

  // The tangent bundle as the Weil functor of the dual numbers, with its
  // points written in group-times-algebra coordinates.
  const WeilAlgebra D = dual_numbers();
  const WeilSpace wgg = weil_space(D, GG);
  std::map<std::array<int, 3>, SuperPolynomial> emb;
  for (int k = 0; k < p; ++k) {
    emb[{0, 0, k}] = scalar_even(GA.space, k);
    emb[{1, 0, p + k}] = scalar_even(GA.space, p + k);
  }
  for (int i = 0; i < q; ++i) {
    emb[{0, 1, i}] = scalar_odd(GA.space, i);
    emb[{1, 1, q + i}] = scalar_odd(GA.space, q + i);
  }
  const SpolMorphism Lam = compose(weil_apply(D, kg.mult), weil_section(wgg, GA, emb));

  const Domain TG = weil_space(D, G).domain;
  const Domain TGTG = product_domain(TG, TG);
  std::map<std::pair<std::string, std::string>, Rational> sh;
  for (int k = 0; k < wgg.domain.space.p(); ++k) {
    const std::string& nm = wgg.domain.space.even_name(k);
    sh[{nm, nm}] = Rational(1);
  }
  for (int i = 0; i < wgg.domain.space.q(); ++i) {
    const std::string& nm = wgg.domain.space.odd_name(i);
    sh[{nm, nm}] = Rational(1);
  }
  const SpolMorphism shuffle = linear_morphism(TGTG, wgg.domain, sh);

  const SpolMorphism pG = projection_first(G, A);
  const SpolMorphism pA = projection_second(G, A);
  const SpolMorphism p1 = projection_first(GA, GA);
  const SpolMorphism p2 = projection_second(GA, GA);
  const SpolMorphism gOf = compose(pG, p1);
  const SpolMorphism hOf = compose(pG, p2);
  const SpolMorphism xOf = compose(pA, p1);
  const SpolMorphism yOf = compose(pA, p2);

  const Domain AA = product_domain(A, A);
  std::map<std::pair<std::string, std::string>, Rational> add, neg;
  for (int k = 0; k < A.space.p(); ++k) {
    add[{A.space.even_name(k), AA.space.even_name(k)}] = Rational(1);
    add[{A.space.even_name(k), AA.space.even_name(A.space.p() + k)}] = Rational(1);
    neg[{A.space.even_name(k), A.space.even_name(k)}] = Rational(-1);
  }
  for (int i = 0; i < A.space.q(); ++i) {
    add[{A.space.odd_name(i), AA.space.odd_name(i)}] = Rational(1);
    add[{A.space.odd_name(i), AA.space.odd_name(A.space.q() + i)}] = Rational(1);
    neg[{A.space.odd_name(i), A.space.odd_name(i)}] = Rational(-1);
  }
  const SpolMorphism addA = linear_morphism(AA, A, add);
  const SpolMorphism negA = linear_morphism(A, A, neg);

  {
    const SpolMorphism lhs = compose(weil_apply(D, kg.mult),
                                     compose(shuffle, product_morphism(Lam, Lam)));
    const SpolMorphism twist = compose(adS, pair_morphism(compose(kg.inv, hOf), xOf));
    const SpolMorphism rho = pair_morphism(compose(kg.mult, pair_morphism(gOf, hOf)),
                                           compose(addA, pair_morphism(twist, yOf)));
    if (!(lhs == compose(Lam, rho)))
      return {false, "tangent multiplication does not match the semidirect formula"};
  }
  {
    const SpolMorphism lhs = compose(weil_apply(D, kg.inv), Lam);
    const SpolMorphism rho = pair_morphism(
        compose(kg.inv, pG), compose(negA, compose(adS, pair_morphism(pG, pA))));
    if (!(lhs == compose(Lam, rho)))
      return {false, "tangent inversion does not match the semidirect formula"};
  }

  for (int a = 0; a < n; ++a) {
    const int pa = g.parity(a);
    const WeilAlgebra W = pa ? odd_line() : dual_numbers();
    const WeilSpace ws = weil_space(W, GA);
    const int ord = g.normal_rank(a) - (pa ? g.even_count() : 0);
    std::map<std::array<int, 3>, SuperPolynomial> sec;
    for (int k = 0; k < A.space.p(); ++k) sec[{0, 0, p + k}] = scalar_even(A.space, k);
    for (int i = 0; i < A.space.q(); ++i) sec[{0, 1, q + i}] = scalar_odd(A.space, i);
    sec[{1, pa, ord}] = scalar_constant(A.space, Rational(1));
    const SpolMorphism chi = compose(weil_apply(W, adS), weil_section(ws, A, sec));
    const WeilSpace wt = weil_space(W, A);
    for (int r = 0; r < n; ++r) {
      const int prr = g.parity(r);
      const int ordr = g.normal_rank(r) - (prr ? g.even_count() : 0);
      const std::pair<int, int> pos = wt.index.at({1, prr, ordr});
      std::map<int, Rational> got;
      const SuperPolynomial column = coordinate_pullback(chi, pos.first, pos.second);
      for (const auto& [key, c] : column.terms()) {
        int declared = -1;
        unsigned deg = 0;
        for (size_t k2 = 0; k2 < key.evens.size(); ++k2) {
          deg += key.evens[k2];
          if (key.evens[k2]) declared = g.even_index(static_cast<int>(k2));
        }
        if (key.odds.size() + deg != 1)
          return {false, "derived bracket does not match the structure constants"};
        if (!key.odds.empty()) declared = g.odd_index(key.odds[0]);
        got[declared] += c;
      }
      for (int bcol = 0; bcol < n; ++bcol) {
        const Rational want = g.bracket(a, bcol).coefficient(r);
        const auto it = got.find(bcol);
        const Rational have = it == got.end() ? Rational(0) : it->second;
        if (!(want == have))
          return {false, "derived bracket does not match the structure constants"};
      }
    }
  }
  return {};
}

}  // namespace sgk
