#include "sgk/weil.hpp"

#include <algorithm>
#include <set>

#include "sgk/errors.hpp"

namespace sgk {

namespace {

// Merge two strictly increasing odd-index sets; sign counts the crossings.
// Returns false on a repeated generator (the product is zero).
bool merge_odds(const OddSet& a, const OddSet& b, OddSet* out, int* sign) {
  int inversions = 0;
  for (int x : a)
    for (int y : b) {
      if (x == y) return false;
      if (y < x) ++inversions;
    }
  OddSet m = a;
  m.insert(m.end(), b.begin(), b.end());
  std::sort(m.begin(), m.end());
  *out = std::move(m);
  *sign = (inversions & 1) ? -1 : 1;
  return true;
}

bool divides(const WeilMonomial& f, const WeilMonomial& m) {
  for (size_t i = 0; i < f.evens.size(); ++i)
    if (f.evens[i] > m.evens[i]) return false;
  return std::includes(m.odds.begin(), m.odds.end(), f.odds.begin(), f.odds.end());
}

}  // namespace

std::optional<int> WeilAlgebra::find(const WeilMonomial& m) const {
  auto it = position_.find(m);
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

std::string WeilAlgebra::monomial_name(int idx) const {
  const WeilMonomial& m = basis_.at(idx);
  if (m.degree() == 0) return "1";
  std::string out;
  int even_at = 0;
  std::vector<std::pair<int, std::string>> parts;  // (odd position or -1, text)
  for (const auto& g : generators_) {
    if (g.parity == 0) {
      unsigned e = m.evens[even_at++];
      if (e == 1) parts.emplace_back(-1, g.name);
      else if (e > 1) parts.emplace_back(-1, g.name + "^" + std::to_string(e));
    }
  }
  int odd_at = 0;
  for (const auto& g : generators_) {
    if (g.parity == 1) {
      if (std::find(m.odds.begin(), m.odds.end(), odd_at) != m.odds.end())
        parts.emplace_back(odd_at, g.name);
      ++odd_at;
    }
  }
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "*";
    out += parts[i].second;
  }
  return out;
}

FormalSum<int> WeilAlgebra::elem(int idx) const {
  FormalSum<int> s;
  if (idx < 0 || idx >= dim()) throw reference_error("weil: basis index out of range");
  s.add(idx, Rational(1));
  return s;
}

FormalSum<int> WeilAlgebra::mul_elems(const FormalSum<int>& a, const FormalSum<int>& b) const {
  FormalSum<int> out;
  for (const auto& [i, ci] : a.terms())
    for (const auto& [j, cj] : b.terms()) {
      Prod p = mul(i, j);
      if (p.index < 0) continue;
      out.add(p.index, ci * cj * Rational(p.sign));
    }
  return out;
}

FormalSum<int> WeilAlgebra::pow_elem(const FormalSum<int>& a, unsigned n) const {
  FormalSum<int> out = elem(0);
  for (unsigned k = 0; k < n; ++k) out = mul_elems(out, a);
  return out;
}

bool operator==(const WeilAlgebra& a, const WeilAlgebra& b) {
  auto gen_eq = [](const WeilGenerator& x, const WeilGenerator& y) {
    return x.name == y.name && x.parity == y.parity && x.order == y.order;
  };
  if (a.generators_.size() != b.generators_.size()) return false;
  for (size_t i = 0; i < a.generators_.size(); ++i)
    if (!gen_eq(a.generators_[i], b.generators_[i])) return false;
  return a.ideal_ == b.ideal_ && a.basis_ == b.basis_;
}

WeilAlgebra make_weil(std::vector<WeilGenerator> generators, std::vector<WeilMonomial> ideal) {
  int p = 0, q = 0;
  std::set<std::string> names;
  for (const auto& g : generators) {
    if (g.parity != 0 && g.parity != 1)
      throw invariant_error("make_weil: generator parity must be 0 or 1");
    if (g.name.empty() || !names.insert(g.name).second)
      throw invariant_error("make_weil: generator names must be distinct and nonempty");
    (g.parity ? q : p)++;
  }
  for (auto& m : ideal) {
    if (static_cast<int>(m.evens.size()) != p)
      throw reference_error("make_weil: ideal monomial has wrong even arity");
    for (size_t i = 0; i + 1 < m.odds.size(); ++i)
      if (m.odds[i] >= m.odds[i + 1])
        throw reference_error("make_weil: ideal monomial odd part must be strictly increasing");
    for (int o : m.odds)
      if (o < 0 || o >= q) throw reference_error("make_weil: ideal monomial odd index out of range");
    if (m.degree() == 0) throw invariant_error("make_weil: the ideal may not contain the unit");
  }

  // Every even generator needs a vanishing power, either declared or as a
  // pure power in the ideal; otherwise the quotient is infinite-dimensional.
  std::vector<unsigned> bound(p, 0);
  {
    int at = 0;
    for (const auto& g : generators) {
      if (g.parity) continue;
      unsigned eff = g.order;
      for (const auto& m : ideal) {
        if (!m.odds.empty()) continue;
        bool pure = m.evens[at] > 0;
        for (int i = 0; pure && i < p; ++i)
          if (i != at && m.evens[i] > 0) pure = false;
        if (pure && (eff == 0 || m.evens[at] < eff)) eff = m.evens[at];
      }
      if (eff == 0)
        throw invariant_error("make_weil: presentation is infinite-dimensional (generator " +
                              g.name + " has no vanishing power)");
      bound[at++] = eff;
    }
  }

  // Fold the declared orders into the ideal for the divisibility filter.
  std::vector<WeilMonomial> full_ideal = ideal;
  {
    int at = 0;
    for (const auto& g : generators) {
      if (g.parity) continue;
      if (g.order > 0) {
        WeilMonomial m{MultiIndex(p, 0), {}};
        m.evens[at] = g.order;
        full_ideal.push_back(m);
      }
      ++at;
    }
  }

  unsigned long raw = 1;
  for (int i = 0; i < p; ++i) {
    raw *= bound[i];
    if (raw > 100000) throw truncation_error("make_weil: presentation too large to enumerate");
  }
  if (q > 16) throw truncation_error("make_weil: too many odd generators");
  raw <<= q;
  if (raw > 100000) throw truncation_error("make_weil: presentation too large to enumerate");

  WeilAlgebra A;
  A.generators_ = std::move(generators);
  std::sort(ideal.begin(), ideal.end());
  A.ideal_ = std::move(ideal);

  // Enumerate surviving monomials.
  MultiIndex e(p, 0);
  for (;;) {
    for (unsigned long mask = 0; mask < (1ul << q); ++mask) {
      WeilMonomial m{e, {}};
      for (int i = 0; i < q; ++i)
        if (mask & (1ul << i)) m.odds.push_back(i);
      bool dead = false;
      for (const auto& f : full_ideal)
        if (divides(f, m)) {
          dead = true;
          break;
        }
      if (!dead) A.basis_.push_back(std::move(m));
    }
    int at = p - 1;
    while (at >= 0) {
      if (++e[at] < bound[at]) break;
      e[at--] = 0;
    }
    if (at < 0) break;
  }
  std::sort(A.basis_.begin(), A.basis_.end());
  if (A.basis_.empty() || A.basis_[0].degree() != 0)
    throw invariant_error("make_weil: the unit does not survive the quotient");
  if (A.dim() > 128) throw truncation_error("make_weil: dimension above the supported bound");
  for (int i = 0; i < A.dim(); ++i) A.position_[A.basis_[i]] = i;

  A.height_ = 0;
  for (const auto& m : A.basis_) {
    A.height_ = std::max(A.height_, m.degree());
    if (m.degree() == 1) (m.parity() ? A.width_.second : A.width_.first)++;
  }

  const int n = A.dim();
  A.table_.assign(static_cast<size_t>(n) * n, WeilAlgebra::Prod{});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      WeilMonomial prod{A.basis_[i].evens, {}};
      for (int k = 0; k < p; ++k) prod.evens[k] += A.basis_[j].evens[k];
      int sign = 1;
      if (!merge_odds(A.basis_[i].odds, A.basis_[j].odds, &prod.odds, &sign)) continue;
      auto pos = A.find(prod);
      if (!pos) continue;
      A.table_[static_cast<size_t>(i) * n + j] = WeilAlgebra::Prod{sign, *pos};
    }

  for (int i = 0; i < n; ++i) {
    if (!(A.mul(0, i).index == i && A.mul(0, i).sign == 1 && A.mul(i, 0).index == i))
      throw invariant_error("make_weil: unit law failed");
    for (int j = 0; j < n; ++j) {
      auto ij = A.mul(i, j);
      auto ji = A.mul(j, i);
      int s = (A.parity_of(i) & A.parity_of(j)) ? -1 : 1;
      if (ij.index != ji.index || (ij.index >= 0 && ij.sign != s * ji.sign))
        throw invariant_error("make_weil: multiplication is not supercommutative");
      for (int k = 0; k < n; ++k) {
        auto l = ij.index < 0 ? WeilAlgebra::Prod{} : A.mul(ij.index, k);
        auto jk = A.mul(j, k);
        auto r = jk.index < 0 ? WeilAlgebra::Prod{} : A.mul(i, jk.index);
        int ls = ij.index < 0 ? 0 : ij.sign * l.sign;
        int rs = jk.index < 0 ? 0 : jk.sign * r.sign;
        if (l.index != r.index || (l.index >= 0 && ls != rs))
          throw invariant_error("make_weil: multiplication is not associative");
      }
    }
  }
  return A;
}

WeilAlgebra trivial_weil() { return make_weil({}, {}); }

WeilAlgebra dual_numbers() { return make_weil({{"eps", 0, 2}}, {}); }

WeilAlgebra odd_line() { return make_weil({{"th", 1, 0}}, {}); }

WeilAlgebra weil_tensor(const WeilAlgebra& a, const WeilAlgebra& b) {
  std::set<std::string> left;
  bool clash = false;
  for (const auto& g : a.generators()) left.insert(g.name);
  for (const auto& g : b.generators())
    if (left.count(g.name)) clash = true;

  std::vector<WeilGenerator> gens;
  for (const auto& g : a.generators())
    gens.push_back({clash ? g.name + ".1" : g.name, g.parity, g.order});
  for (const auto& g : b.generators())
    gens.push_back({clash ? g.name + ".2" : g.name, g.parity, g.order});

  int pa = 0, qa = 0, pb = 0, qb = 0;
  for (const auto& g : a.generators()) (g.parity ? qa : pa)++;
  for (const auto& g : b.generators()) (g.parity ? qb : pb)++;

  std::vector<WeilMonomial> ideal;
  for (const auto& m : a.ideal()) {
    WeilMonomial n{m.evens, m.odds};
    n.evens.resize(pa + pb, 0);
    ideal.push_back(std::move(n));
  }
  for (const auto& m : b.ideal()) {
    WeilMonomial n{MultiIndex(pa, 0), {}};
    n.evens.insert(n.evens.end(), m.evens.begin(), m.evens.end());
    for (int o : m.odds) n.odds.push_back(o + qa);
    ideal.push_back(std::move(n));
  }
  return make_weil(std::move(gens), std::move(ideal));
}

WeilMorphism make_weil_morphism(const WeilAlgebra& a, const WeilAlgebra& b,
                                std::vector<FormalSum<int>> images) {
  if (images.size() != a.generators().size())
    throw reference_error("weil morphism: one image per source generator required");
  for (size_t i = 0; i < images.size(); ++i) {
    const int par = a.generators()[i].parity;
    for (const auto& [idx, c] : images[i].terms()) {
      if (idx < 0 || idx >= b.dim())
        throw reference_error("weil morphism: image index out of range");
      if (b.parity_of(idx) != par)
        throw invariant_error("weil morphism: image of " + a.generators()[i].name +
                              " is not parity-homogeneous");
      (void)c;
    }
  }
  WeilMorphism phi{a, b, std::move(images)};

  auto monomial_image = [&](const WeilMonomial& m) {
    FormalSum<int> acc = b.elem(0);
    int even_at = 0, odd_at = 0;
    size_t gi = 0;
    for (const auto& g : a.generators()) {
      if (g.parity == 0) {
        for (unsigned k = 0; k < m.evens[even_at]; ++k) acc = b.mul_elems(acc, phi.images[gi]);
        ++even_at;
      }
      ++gi;
    }
    gi = 0;
    for (const auto& g : a.generators()) {
      if (g.parity == 1) {
        if (std::find(m.odds.begin(), m.odds.end(), odd_at) != m.odds.end())
          acc = b.mul_elems(acc, phi.images[gi]);
        ++odd_at;
      }
      ++gi;
    }
    return acc;
  };

  size_t gi = 0;
  for (const auto& g : a.generators()) {
    if (g.parity == 0 && g.order > 0 && !b.pow_elem(phi.images[gi], g.order).empty())
      throw invariant_error("weil morphism: declared vanishing power of " + g.name +
                            " is not respected");
    ++gi;
  }
  for (const auto& m : a.ideal())
    if (!monomial_image(m).empty())
      throw invariant_error("weil morphism: an ideal relation is not respected");
  return phi;
}

WeilMorphism weil_identity(const WeilAlgebra& a) {
  std::vector<FormalSum<int>> images;
  int even_at = 0, odd_at = 0;
  int p = 0;
  for (const auto& g : a.generators())
    if (g.parity == 0) ++p;
  for (const auto& g : a.generators()) {
    WeilMonomial m{MultiIndex(p, 0), {}};
    if (g.parity == 0)
      m.evens[even_at++] = 1;
    else
      m.odds.push_back(odd_at++);
    FormalSum<int> s;
    if (auto pos = a.find(m)) s.add(*pos, Rational(1));
    images.push_back(std::move(s));
  }
  return make_weil_morphism(a, a, std::move(images));
}

WeilMorphism weil_augmentation(const WeilAlgebra& a) {
  std::vector<FormalSum<int>> images(a.generators().size());
  return make_weil_morphism(a, trivial_weil(), std::move(images));
}

WeilMorphism weil_unit(const WeilAlgebra& a) {
  return make_weil_morphism(trivial_weil(), a, {});
}

FormalSum<int> weil_morphism_image(const WeilMorphism& phi, int source_basis_idx) {
  const WeilMonomial& m = phi.source.basis().at(source_basis_idx);
  FormalSum<int> acc = phi.target.elem(0);
  int even_at = 0, odd_at = 0;
  size_t gi = 0;
  for (const auto& g : phi.source.generators()) {
    if (g.parity == 0) {
      for (unsigned k = 0; k < m.evens[even_at]; ++k) acc = phi.target.mul_elems(acc, phi.images[gi]);
      ++even_at;
    }
    ++gi;
  }
  gi = 0;
  for (const auto& g : phi.source.generators()) {
    if (g.parity == 1) {
      if (std::find(m.odds.begin(), m.odds.end(), odd_at) != m.odds.end())
        acc = phi.target.mul_elems(acc, phi.images[gi]);
      ++odd_at;
    }
    ++gi;
  }
  return acc;
}

std::string weil_coordinate_name(const WeilAlgebra& a, int basis_idx, const std::string& e_name) {
  if (basis_idx == 0) return e_name;
  return a.monomial_name(basis_idx) + ":" + e_name;
}

WeilSpace weil_space(const WeilAlgebra& a, const Domain& d) {
  WeilSpace w;
  std::vector<std::string> even_names, odd_names;
  std::vector<Interval> intervals;
  for (int m = 0; m < a.dim(); ++m) {
    const int pm = a.parity_of(m);
    for (int k = 0; k < d.space.p(); ++k) {
      std::array<int, 3> t{m, 0, k};
      if (pm == 0) {
        w.index[t] = {0, static_cast<int>(even_names.size())};
        even_names.push_back(weil_coordinate_name(a, m, d.space.even_name(k)));
        intervals.push_back(m == 0 ? d.box.intervals[k] : Interval{});
        w.even_coords.push_back(t);
      } else {
        w.index[t] = {1, static_cast<int>(odd_names.size())};
        odd_names.push_back(weil_coordinate_name(a, m, d.space.even_name(k)));
        w.odd_coords.push_back(t);
      }
    }
    for (int i = 0; i < d.space.q(); ++i) {
      std::array<int, 3> t{m, 1, i};
      if (pm == 1) {
        w.index[t] = {0, static_cast<int>(even_names.size())};
        even_names.push_back(weil_coordinate_name(a, m, d.space.odd_name(i)));
        intervals.push_back(Interval{});
        w.even_coords.push_back(t);
      } else {
        w.index[t] = {1, static_cast<int>(odd_names.size())};
        odd_names.push_back(weil_coordinate_name(a, m, d.space.odd_name(i)));
        w.odd_coords.push_back(t);
      }
    }
  }
  w.domain = Domain{SuperVectorSpace(even_names, odd_names), Box{std::move(intervals)}};
  return w;
}

SpolMorphism weil_apply(const WeilAlgebra& a, const SpolMorphism& f) {
  return weil_apply_truncated(a, f, a.height());
}

SpolMorphism weil_apply_truncated(const WeilAlgebra& a, const SpolMorphism& f, int jmax) {
  const WeilSpace ws = weil_space(a, f.source());
  const WeilSpace wt = weil_space(a, f.target());
  const int qb = static_cast<int>(ws.odd_coords.size());
  const int pb = static_cast<int>(ws.even_coords.size());
  if (qb > 20) throw truncation_error("weil_apply: too many odd coordinates");

  // Nilpotent even slots supply the Taylor letters.
  std::vector<int> nil;
  for (int i = 0; i < pb; ++i)
    if (ws.even_coords[i][0] != 0) nil.push_back(i);

  // E-base variable k sits at this big even position.
  std::vector<int> embed(f.source().space.p());
  for (size_t k = 0; k < embed.size(); ++k)
    embed[k] = ws.index.at({0, 0, static_cast<int>(k)}).second;

  const SuperVectorSpace big_base = ws.domain.space.even_part();
  std::map<TensorWord, SuperPolynomial> cache;
  auto evaluate = [&](const TensorWord& word) -> const SuperPolynomial& {
    auto it = cache.find(word);
    if (it == cache.end()) it = cache.emplace(word, apply_to_word(f, word).value).first;
    return it->second;
  };

  std::map<OddSet, SuperPolynomial> comp;
  auto component_of = [&](const OddSet& J) -> SuperPolynomial& {
    return comp.try_emplace(J, SuperPolynomial(big_base, wt.domain.space)).first->second;
  };

  for (unsigned long mask = 0; mask < (1ul << qb); ++mask) {
    OddSet J;
    for (int i = 0; i < qb; ++i)
      if (mask & (1ul << i)) J.push_back(i);

    std::vector<int> tuple;  // nondecreasing indices into nil
    auto emit = [&]() {
      // Letters: Taylor slots first, then the odd subset.
      std::vector<std::array<int, 3>> letters;
      for (int t : tuple) letters.push_back(ws.even_coords[nil[t]]);
      for (int i : J) letters.push_back(ws.odd_coords[i]);

      int sign = 1;
      int odd_c_seen = 0;
      int midx = 0;
      for (const auto& l : letters) {
        if (a.parity_of(l[0]) && (odd_c_seen & 1)) sign = -sign;
        auto pr = a.mul(midx, l[0]);
        if (pr.index < 0) return;
        sign *= pr.sign;
        midx = pr.index;
        odd_c_seen += l[1];
      }

      TensorWord word;
      for (const auto& l : letters) word.letters.push_back(Letter{l[1], l[2]});
      const SuperPolynomial& value = evaluate(word);
      if (value.is_zero()) return;

      Rational factor(sign);
      for (size_t i = 0; i < tuple.size();) {
        size_t j = i;
        while (j < tuple.size() && tuple[j] == tuple[i]) ++j;
        factor = factor / Rational::factorial(static_cast<unsigned>(j - i));
        i = j;
      }

      SuperPolynomial& target = component_of(J);
      for (const auto& [k, c] : value.terms()) {
        auto pos = wt.index.at({midx, k.target_parity, k.target_index});
        SuperPolynomial::Key nk;
        nk.target_parity = pos.first;
        nk.target_index = pos.second;
        nk.evens = MultiIndex(pb, 0);
        for (size_t e = 0; e < k.evens.size(); ++e) nk.evens[embed[e]] += k.evens[e];
        for (int t : tuple) nk.evens[nil[t]] += 1;
        target.add_term(nk, c * factor);
      }
    };

    // Depth-first over nondecreasing Taylor tuples up to length jmax.
    auto rec = [&](auto&& self, size_t start) -> void {
      emit();
      if (static_cast<int>(tuple.size()) >= jmax) return;
      for (size_t t = start; t < nil.size(); ++t) {
        tuple.push_back(static_cast<int>(t));
        self(self, t);
        tuple.pop_back();
      }
    };
    rec(rec, 0);
  }
  return SpolMorphism(ws.domain, wt.domain, std::move(comp));
}

SpolMorphism natural_transform(const WeilMorphism& phi, const Domain& d) {
  const WeilSpace ws = weil_space(phi.source, d);
  const WeilSpace wt = weil_space(phi.target, d);
  const SuperVectorSpace base = ws.domain.space.even_part();
  std::map<OddSet, SuperPolynomial> comp;
  auto component_of = [&](const OddSet& J) -> SuperPolynomial& {
    return comp.try_emplace(J, SuperPolynomial(base, wt.domain.space)).first->second;
  };
  for (size_t s = 0; s < ws.even_coords.size(); ++s) {
    const auto& t = ws.even_coords[s];
    FormalSum<int> img = weil_morphism_image(phi, t[0]);
    for (const auto& [b, lam] : img.terms()) {
      auto pos = wt.index.at({b, t[1], t[2]});
      SuperPolynomial::Key k;
      k.target_parity = pos.first;
      k.target_index = pos.second;
      k.evens = MultiIndex(ws.even_coords.size(), 0);
      k.evens[s] = 1;
      component_of({}).add_term(k, lam);
    }
  }
  for (size_t s = 0; s < ws.odd_coords.size(); ++s) {
    const auto& t = ws.odd_coords[s];
    FormalSum<int> img = weil_morphism_image(phi, t[0]);
    for (const auto& [b, lam] : img.terms()) {
      auto pos = wt.index.at({b, t[1], t[2]});
      SuperPolynomial::Key k;
      k.target_parity = pos.first;
      k.target_index = pos.second;
      k.evens = MultiIndex(ws.even_coords.size(), 0);
      component_of({static_cast<int>(s)}).add_term(k, lam);
    }
  }
  return SpolMorphism(ws.domain, wt.domain, std::move(comp));
}

VectorField make_vector_field(const Domain& d, int parity,
                              const std::map<std::string, SuperPolynomial>& coeffs) {
  if (parity != 0 && parity != 1) throw invariant_error("vector field: parity must be 0 or 1");
  VectorField x;
  x.domain = d;
  x.parity = parity;
  x.even_coeffs.assign(d.space.p(), SuperPolynomial::scalar(d.space));
  x.odd_coeffs.assign(d.space.q(), SuperPolynomial::scalar(d.space));
  for (const auto& [name, v] : coeffs) {
    auto pos = d.space.find_or_throw(name);
    if (v.source() != d.space)
      throw reference_error("vector field: coefficient over the wrong space");
    if (!v.is_scalar_valued())
      throw invariant_error("vector field: coefficients must be scalar superfunctions");
    int want = (parity + pos.first) & 1;
    int got = 0;
    if (!v.is_zero() && (!v.homogeneous_parity(&got) || got != want))
      throw invariant_error("vector field: coefficient of " + name + " has the wrong parity");
    (pos.first ? x.odd_coeffs : x.even_coeffs)[pos.second] = v;
  }
  return x;
}

SuperPolynomial vector_field_apply(const VectorField& x, const SuperPolynomial& h) {
  if (h.source() != x.domain.space)
    throw reference_error("vector field: function over the wrong space");
  SuperPolynomial out(h.source(), h.target());
  for (int k = 0; k < x.domain.space.p(); ++k)
    out += superpoly_mul(x.even_coeffs[k], h.partial_even(k));
  for (int i = 0; i < x.domain.space.q(); ++i)
    out += superpoly_mul(x.odd_coeffs[i], h.partial_odd(i));
  return out;
}

SpolMorphism tangent_section(const VectorField& x) {
  if (x.parity != 0)
    throw invariant_error("tangent_section: only even fields give sections");
  const Domain& d = x.domain;
  const WeilSpace wt = weil_space(dual_numbers(), d);
  std::vector<SuperPolynomial> ev(wt.domain.space.p(), SuperPolynomial::scalar(d.space));
  std::vector<SuperPolynomial> od(wt.domain.space.q(), SuperPolynomial::scalar(d.space));
  auto coordinate = [&](int parity, int index) {
    SuperPolynomial v = SuperPolynomial::scalar(d.space);
    SuperPolynomial::Key k;
    k.evens = MultiIndex(d.space.p(), 0);
    if (parity == 0)
      k.evens[index] = 1;
    else
      k.odds = {index};
    v.add_term(k, Rational(1));
    return v;
  };
  auto place = [&](const std::array<int, 3>& t, int parity, int index) {
    const SuperPolynomial v =
        t[0] == 0 ? coordinate(t[1], t[2])
                  : (t[1] == 0 ? x.even_coeffs[t[2]] : x.odd_coeffs[t[2]]);
    (parity ? od : ev)[index] = v;
  };
  for (size_t i = 0; i < wt.even_coords.size(); ++i) place(wt.even_coords[i], 0, static_cast<int>(i));
  for (size_t i = 0; i < wt.odd_coords.size(); ++i) place(wt.odd_coords[i], 1, static_cast<int>(i));
  return from_pullbacks(d, wt.domain, ev, od);
}

SuperPolynomial vector_field_apply_composite(const VectorField& x, const SuperPolynomial& h) {
  if (h.source() != x.domain.space)
    throw reference_error("vector field: function over the wrong space");
  if (!h.is_scalar_valued())
    throw invariant_error("vector field composite route: scalar functions only");
  int ph = 0;
  if (!h.homogeneous_parity(&ph))
    throw invariant_error("vector field composite route: homogeneous functions only");

  // h as a morphism to a one-coordinate superdomain of its parity.
  const SuperVectorSpace hspace = ph == 0 ? SuperVectorSpace({"h@"}, {})
                                          : SuperVectorSpace({}, {"h@"});
  const Domain htarget = Domain::whole(hspace);
  SpolMorphism hm = from_pullbacks(x.domain, htarget,
                                   ph == 0 ? std::vector<SuperPolynomial>{h}
                                           : std::vector<SuperPolynomial>{},
                                   ph == 0 ? std::vector<SuperPolynomial>{}
                                           : std::vector<SuperPolynomial>{h});
  SpolMorphism th = weil_apply(dual_numbers(), hm);

  SpolMorphism section;
  if (x.parity == 0) {
    section = tangent_section(x);
  } else {
    // Odd fields need an auxiliary odd parameter: the fiber entry is
    // lambda * coefficient, which has the even shift a section requires.
    const SuperVectorSpace& S = x.domain.space;
    std::vector<std::string> odd_ext = S.odd_names();
    odd_ext.push_back("lambda#");
    const SuperVectorSpace ext_space(S.even_names(), odd_ext);
    const Domain ext{ext_space, x.domain.box};
    auto extend = [&](const SuperPolynomial& v) {
      SuperPolynomial out = SuperPolynomial::scalar(ext_space);
      for (const auto& [k, c] : v.terms()) {
        SuperPolynomial::Key nk;
        nk.odds = k.odds;
        nk.evens = k.evens;
        out.add_term(nk, c);
      }
      return out;
    };
    SuperPolynomial lam = SuperPolynomial::scalar(ext_space);
    {
      SuperPolynomial::Key k;
      k.odds = {S.q()};
      k.evens = MultiIndex(S.p(), 0);
      lam.add_term(k, Rational(1));
    }
    const WeilSpace wt = weil_space(dual_numbers(), x.domain);
    std::vector<SuperPolynomial> ev(wt.domain.space.p(), SuperPolynomial::scalar(ext_space));
    std::vector<SuperPolynomial> od(wt.domain.space.q(), SuperPolynomial::scalar(ext_space));
    auto coordinate = [&](int parity, int index) {
      SuperPolynomial v = SuperPolynomial::scalar(ext_space);
      SuperPolynomial::Key k;
      k.evens = MultiIndex(S.p(), 0);
      if (parity == 0)
        k.evens[index] = 1;
      else
        k.odds = {index};
      v.add_term(k, Rational(1));
      return v;
    };
    auto place = [&](const std::array<int, 3>& t, int parity, int index) {
      SuperPolynomial v =
          t[0] == 0 ? coordinate(t[1], t[2])
                    : superpoly_mul(lam, extend(t[1] == 0 ? x.even_coeffs[t[2]]
                                                          : x.odd_coeffs[t[2]]));
      (parity ? od : ev)[index] = v;
    };
    for (size_t i = 0; i < wt.even_coords.size(); ++i) place(wt.even_coords[i], 0, static_cast<int>(i));
    for (size_t i = 0; i < wt.odd_coords.size(); ++i) place(wt.odd_coords[i], 1, static_cast<int>(i));
    section = from_pullbacks(ext, wt.domain, ev, od);
  }

  SpolMorphism composite = compose(th, section);
  // The fiber slot of the one-coordinate target sits behind the base slot.
  return coordinate_pullback(composite, ph, 1);
}

VectorField vector_field_bracket(const VectorField& x, const VectorField& y) {
  if (x.domain != y.domain) throw reference_error("bracket: fields on different domains");
  const int sign = (x.parity & y.parity) ? -1 : 1;
  std::map<std::string, SuperPolynomial> coeffs;
  auto entry = [&](int parity, int index, const SuperPolynomial& yc, const SuperPolynomial& xc) {
    SuperPolynomial v = vector_field_apply(x, yc);
    SuperPolynomial w = vector_field_apply(y, xc);
    w.scale(Rational(-sign));
    v += w;
    const std::string name =
        parity == 0 ? x.domain.space.even_name(index) : x.domain.space.odd_name(index);
    coeffs.emplace(name, std::move(v));
  };
  for (int k = 0; k < x.domain.space.p(); ++k) entry(0, k, y.even_coeffs[k], x.even_coeffs[k]);
  for (int i = 0; i < x.domain.space.q(); ++i) entry(1, i, y.odd_coeffs[i], x.odd_coeffs[i]);
  return make_vector_field(x.domain, (x.parity + y.parity) & 1, coeffs);
}

}  // namespace sgk
