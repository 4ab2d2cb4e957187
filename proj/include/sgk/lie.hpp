#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sgk/errors.hpp"
#include "sgk/poly.hpp"
#include "sgk/rational.hpp"
#include "sgk/word.hpp"

namespace sgk {

// Finite-dimensional Lie superalgebra presented by structure constants over a
// named homogeneous basis. brackets are stored exactly as supplied; nothing is
// symmetrized or repaired, so check_lie can observe a broken table.
class LieSuperalgebra {
public:
  int dim() const { return static_cast<int>(names_.size()); }
  int parity(int i) const { return parities_.at(i); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& parities() const { return parities_; }

  // [b_i, b_j] as a combination of basis elements.
  const FormalSum<int>& bracket(int i, int j) const {
    return brackets_.at(i).at(j);
  }

  // Position of generator i in the normal-form ordering: even generators
  // first, then odd, each block in declaration order.
  int normal_rank(int i) const { return ranks_.at(i); }
  // Declared indices listed in normal-form order (inverse of normal_rank).
  const std::vector<int>& normal_order() const { return order_; }

  int even_count() const {
    int c = 0;
    for (int p : parities_) c += 1 - p;
    return c;
  }
  int odd_count() const { return dim() - even_count(); }
  // Declared index of the k-th even / t-th odd generator.
  int even_index(int k) const { return order_.at(k); }
  int odd_index(int t) const { return order_.at(even_count() + t); }

  int find(const std::string& name) const;

  friend LieSuperalgebra make_lie(
      std::vector<std::string> names, std::vector<int> parities,
      const std::vector<std::tuple<int, int, FormalSum<int>>>& table);

private:
  LieSuperalgebra() = default;
  std::vector<std::string> names_;
  std::vector<int> parities_;
  std::vector<std::vector<FormalSum<int>>> brackets_;
  std::vector<int> ranks_;
  std::vector<int> order_;
};

// Builds the algebra from a sparse bracket table. Unlisted pairs are zero;
// listing the same pair twice is rejected rather than merged. Shape problems
// (bad indices, duplicate names, non-0/1 parities) throw reference_error.
LieSuperalgebra make_lie(
    std::vector<std::string> names, std::vector<int> parities,
    const std::vector<std::tuple<int, int, FormalSum<int>>>& table);

// Outcome of the axiom scan. A failing table is a result, not an exception:
// pass=false carries a human-readable reason and the indices that witness it.
// For a grading failure (i,j,k) is bracket pair plus offending component; for
// an antisymmetry failure k is -1; for a Jacobi failure (i,j,k) is the triple.
struct LieCheckResult {
  bool pass = true;
  std::string detail;
  int i = -1;
  int j = -1;
  int k = -1;
};

LieCheckResult check_lie(const LieSuperalgebra& g);

// Bilinear extension of the bracket table to formal combinations.
FormalSum<int> lie_bracket(const LieSuperalgebra& g, const FormalSum<int>& a,
                           const FormalSum<int>& b);

// Doubled algebra g + g[1]: a second parity-flipped copy (names prefixed
// "pi:") forming an abelian ideal, with [a, pi:b] = pi:[a,b] and the mirrored
// slots fixed by super-antisymmetry in the flipped grading. Throws
// invariant_error if the input fails check_lie.
LieSuperalgebra superloop_algebra(const LieSuperalgebra& g);

// ----------------------------------------------------------------------------
// Enveloping algebra: normal-form monomials and the straightening product.
//
// A monomial is an exponent vector over the declared basis (odd exponents at
// most 1), read as the product of generators in normal_rank order. Elements
// are finite sums with coefficients in a commutative ring C that embeds the
// rationals; Rational and EvenPoly are the two instances used here.

using PBWMonomial = MultiIndex;

inline int u_degree(const PBWMonomial& m) {
  return std::accumulate(m.begin(), m.end(), 0);
}

int u_parity(const LieSuperalgebra& g, const PBWMonomial& m);

// Generator word of a monomial, in normal_rank order.
std::vector<int> u_word(const LieSuperalgebra& g, const PBWMonomial& m);

namespace detail {
inline Rational coeff_scaled(const Rational& c, const Rational& r) {
  return c * r;
}
inline EvenPoly coeff_scaled(const EvenPoly& c, const Rational& r) {
  EvenPoly out = c;
  out.scale(r);
  return out;
}
}  // namespace detail

template <class C>
struct UElem {
  std::map<PBWMonomial, C> terms;

  friend bool operator==(const UElem& a, const UElem& b) {
    return a.terms == b.terms;
  }
  friend bool operator!=(const UElem& a, const UElem& b) { return !(a == b); }
};

using UEnvElement = UElem<Rational>;

template <class C>
void uelem_add(UElem<C>& u, const PBWMonomial& m, const C& c) {
  if (c.is_zero()) return;
  auto it = u.terms.find(m);
  if (it == u.terms.end()) {
    u.terms.emplace(m, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) u.terms.erase(it);
  }
}

// u += a * v, where v has rational coefficients.
template <class C>
void u_axpy(UElem<C>& u, const C& a, const UElem<Rational>& v) {
  for (const auto& [m, r] : v.terms) uelem_add(u, m, detail::coeff_scaled(a, r));
}

template <class C>
UElem<C> u_scalar(const LieSuperalgebra& g, const C& c) {
  UElem<C> u;
  uelem_add(u, PBWMonomial(g.dim(), 0), c);
  return u;
}

inline UEnvElement u_one(const LieSuperalgebra& g) {
  return u_scalar(g, Rational(1));
}

inline UEnvElement u_generator(const LieSuperalgebra& g, int i) {
  if (i < 0 || i >= g.dim()) throw reference_error("generator index out of range");
  UEnvElement u;
  PBWMonomial m(g.dim(), 0);
  m[static_cast<size_t>(i)] = 1;
  uelem_add(u, m, Rational(1));
  return u;
}

// The straightening rewrite picks one disordered adjacent pair per step; the
// two strategies differ only in which pair, and must produce the same value.
enum class StraightenOrder { leftmost, rightmost };

namespace detail {

// Rewrites the word b_{w0} b_{w1} ... into normal form and accumulates the
// result. A pair (w[t], w[t+1]) is disordered when the ranks decrease, or
// when it repeats an odd generator (x^2 = (1/2)[x,x] for odd x). Each swap
// keeps the length and lowers the inversion count; each bracket term lowers
// the length, so the recursion terminates along the filtration.
template <class C>
void straighten_word(const LieSuperalgebra& g, const std::vector<int>& w,
                     const C& coeff, StraightenOrder ord,
                     std::map<PBWMonomial, C>& out) {
  if (coeff.is_zero()) return;
  const int n = static_cast<int>(w.size());
  auto disordered = [&](int t) {
    if (w[t] == w[t + 1]) return g.parity(w[t]) == 1;
    return g.normal_rank(w[t]) > g.normal_rank(w[t + 1]);
  };
  int pos = -1;
  if (ord == StraightenOrder::leftmost) {
    for (int t = 0; t + 1 < n; ++t)
      if (disordered(t)) {
        pos = t;
        break;
      }
  } else {
    for (int t = n - 2; t >= 0; --t)
      if (disordered(t)) {
        pos = t;
        break;
      }
  }
  if (pos < 0) {
    PBWMonomial m(g.dim(), 0);
    for (int idx : w) m[static_cast<size_t>(idx)] += 1;
    auto it = out.find(m);
    if (it == out.end()) {
      out.emplace(m, coeff);
    } else {
      it->second = it->second + coeff;
    }
    return;
  }
  const int i = w[pos];
  const int j = w[pos + 1];
  if (i == j) {
    // odd square: replace the pair by (1/2)[b_i, b_i]
    for (const auto& [k, c] : g.bracket(i, i).terms()) {
      std::vector<int> w2(w.begin(), w.end() - 1);
      w2[static_cast<size_t>(pos)] = k;
      for (int t = pos + 1; t + 1 < n; ++t)
        w2[static_cast<size_t>(t)] = w[static_cast<size_t>(t) + 1];
      straighten_word(g, w2, coeff_scaled(coeff, c / Rational(2)), ord, out);
    }
    return;
  }
  // b_i b_j = (-1)^{|i||j|} b_j b_i + [b_i, b_j]
  std::vector<int> swapped = w;
  std::swap(swapped[static_cast<size_t>(pos)], swapped[static_cast<size_t>(pos) + 1]);
  const bool sign = g.parity(i) == 1 && g.parity(j) == 1;
  straighten_word(g, swapped, sign ? coeff_scaled(coeff, Rational(-1)) : coeff,
                  ord, out);
  for (const auto& [k, c] : g.bracket(i, j).terms()) {
    std::vector<int> contracted(w.begin(), w.end() - 1);
    contracted[static_cast<size_t>(pos)] = k;
    for (int t = pos + 1; t + 1 < n; ++t)
      contracted[static_cast<size_t>(t)] = w[static_cast<size_t>(t) + 1];
    straighten_word(g, contracted, coeff_scaled(coeff, c), ord, out);
  }
}

template <class C>
void prune_zeros(std::map<PBWMonomial, C>& terms) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second.is_zero())
      it = terms.erase(it);
    else
      ++it;
  }
}

}  // namespace detail

// Normal form of a plain generator word times a coefficient.
template <class C>
UElem<C> u_from_word(const LieSuperalgebra& g, const std::vector<int>& word,
                     const C& coeff,
                     StraightenOrder ord = StraightenOrder::leftmost) {
  for (int idx : word)
    if (idx < 0 || idx >= g.dim())
      throw reference_error("generator index out of range");
  UElem<C> u;
  detail::straighten_word(g, word, coeff, ord, u.terms);
  detail::prune_zeros(u.terms);
  return u;
}

template <class C>
UElem<C> u_mul(const LieSuperalgebra& g, const UElem<C>& a, const UElem<C>& b,
               StraightenOrder ord = StraightenOrder::leftmost) {
  UElem<C> out;
  for (const auto& [ma, ca] : a.terms) {
    const std::vector<int> wa = u_word(g, ma);
    for (const auto& [mb, cb] : b.terms) {
      std::vector<int> w = wa;
      const std::vector<int> wb = u_word(g, mb);
      w.insert(w.end(), wb.begin(), wb.end());
      detail::straighten_word(g, w, ca * cb, ord, out.terms);
    }
  }
  detail::prune_zeros(out.terms);
  return out;
}

// Graded antipode: S(1)=1, S(x)=-x on generators, S(uv)=(-1)^{|u||v|}S(v)S(u).
// On a normal word of length n with m odd letters this collapses to the sign
// (-1)^{n + m(m-1)/2} on the reversed word.
template <class C>
UElem<C> antipode(const LieSuperalgebra& g, const UElem<C>& u) {
  UElem<C> out;
  for (const auto& [mono, c] : u.terms) {
    std::vector<int> w = u_word(g, mono);
    int odds = 0;
    for (int idx : w)
      if (g.parity(idx) == 1) ++odds;
    const int exponent = static_cast<int>(w.size()) + odds * (odds - 1) / 2;
    std::reverse(w.begin(), w.end());
    const C signed_c =
        exponent % 2 ? detail::coeff_scaled(c, Rational(-1)) : c;
    detail::straighten_word(g, w, signed_c, StraightenOrder::leftmost,
                            out.terms);
  }
  detail::prune_zeros(out.terms);
  return out;
}

// Parity of a homogeneous element; disagreeing monomials throw
// invariant_error, the zero element reports parity 0.
int u_homogeneous_parity(const LieSuperalgebra& g, const UEnvElement& u);

// Two candidate evaluations of the antipode on a product: the genuine one,
// S(uv) = (-1)^{|u||v|} S(v) S(u), and the shorter recursion
// (-1)^{|u||v|} S(vu) that skips the factor split. They agree only when the
// relevant commutators vanish; the probe reports both so a discrepancy is
// visible instead of silently resolved. Requires homogeneous inputs.
struct AntipodeProbe {
  UEnvElement of_product;   // S(u v)
  UEnvElement by_reversal;  // (-1)^{|u||v|} S(v u)
  bool agree = false;
};

AntipodeProbe antipode_probe(const LieSuperalgebra& g, const UEnvElement& u,
                             const UEnvElement& v);

// Symmetrization of a generator word: the Koszul-signed average of all
// orderings, landing in filtration degree <= length. Words with a repeated
// odd letter vanish by sign cancellation.
UEnvElement symmetrize(const LieSuperalgebra& g, const std::vector<int>& word);

// Symmetrized monomial basis element: symmetrize applied to the word of m.
UEnvElement u_beta(const LieSuperalgebra& g, const PBWMonomial& m);

// Monomial with the given odd ordinals (positions in the odd block,
// strictly ascending) and no even part.
PBWMonomial odd_subset_monomial(const LieSuperalgebra& g,
                                const std::vector<int>& ordinals);

// Writes u as sum_K cofactor_K * beta(xi_K) over odd ordinal subsets K, with
// cofactors supported on purely even monomials: the factorization through
// the even enveloping subalgebra tensor the odd exterior block. Triangular
// by odd length (straightening only ever removes odd letters in pairs), so
// peeling the longest odd layers terminates. `one` is the coefficient unit,
// needed because polynomial coefficients carry an arity.
template <class C>
std::map<std::vector<int>, UElem<C>> odd_decompose(const LieSuperalgebra& g,
                                                   const UElem<C>& u,
                                                   const C& one) {
  std::map<std::vector<int>, UElem<C>> out;
  UElem<C> rem = u;
  auto odd_len = [&](const PBWMonomial& m) {
    int n = 0;
    for (int t = 0; t < g.odd_count(); ++t)
      n += static_cast<int>(m[static_cast<size_t>(g.odd_index(t))]);
    return n;
  };
  while (!rem.terms.empty()) {
    int top = 0;
    for (const auto& [m, c] : rem.terms) top = std::max(top, odd_len(m));
    std::map<std::vector<int>, UElem<C>> layer;
    for (const auto& [m, c] : rem.terms) {
      if (odd_len(m) != top) continue;
      std::vector<int> K;
      PBWMonomial even_part = m;
      for (int t = 0; t < g.odd_count(); ++t) {
        const size_t di = static_cast<size_t>(g.odd_index(t));
        if (m[di]) K.push_back(t);
        even_part[di] = 0;
      }
      uelem_add(layer[K], even_part, c);
    }
    for (const auto& [K, cof] : layer) {
      for (const auto& [m, c] : cof.terms) uelem_add(out[K], m, c);
      UElem<C> beta_c;
      u_axpy(beta_c, one, u_beta(g, odd_subset_monomial(g, K)));
      UElem<C> prod = u_mul(g, cof, beta_c);
      for (const auto& [m, c] : prod.terms)
        uelem_add(rem, m, detail::coeff_scaled(c, Rational(-1)));
    }
    for (const auto& [m, c] : rem.terms)
      if (odd_len(m) >= top)
        throw invariant_error("odd factorization is not triangular");
  }
  return out;
}

// Writes u as a combination of symmetrized monomials, u = sum c_m beta(m).
// beta(m) = m + lower filtration, so peeling top-degree terms terminates; a
// failure of that triangularity throws invariant_error.
template <class C>
std::map<PBWMonomial, C> beta_decompose(const LieSuperalgebra& g,
                                        const UElem<C>& u) {
  std::map<PBWMonomial, C> out;
  UElem<C> rem = u;
  while (!rem.terms.empty()) {
    int top = 0;
    for (const auto& [m, c] : rem.terms) top = std::max(top, u_degree(m));
    std::vector<std::pair<PBWMonomial, C>> layer;
    for (const auto& [m, c] : rem.terms)
      if (u_degree(m) == top) layer.emplace_back(m, c);
    for (const auto& [m, c] : layer) {
      out.emplace(m, c);
      u_axpy(rem, detail::coeff_scaled(c, Rational(-1)), u_beta(g, m));
    }
    for (const auto& [m, c] : rem.terms)
      if (u_degree(m) >= top)
        throw invariant_error("symmetrized basis is not triangular");
  }
  return out;
}

}  // namespace sgk
