#include "sgk/morphism.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sgk/coalgebra.hpp"
#include "sgk/errors.hpp"

namespace sgk {

namespace {

// Multiply a purely-even-source polynomial map by an even scalar polynomial
// over the same variables. Even scalars are central, so no signs appear.
SuperPolynomial scale_by_poly(const SuperPolynomial& sp, const EvenPoly& c) {
  SuperPolynomial out(sp.source(), sp.target());
  for (const auto& [k, v] : sp.terms()) {
    for (const auto& [m, cm] : c.terms()) {
      SuperPolynomial::Key nk = k;
      for (size_t i = 0; i < nk.evens.size(); ++i) nk.evens[i] += m[i];
      out.add_term(nk, v * cm);
    }
  }
  return out;
}

OddSet sorted_subset_from_mask(unsigned mask) {
  OddSet I;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) I.push_back(i);
  return I;
}

}  // namespace

SpolMorphism::SpolMorphism(Domain source, Domain target,
                           std::map<OddSet, SuperPolynomial> components)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.box.arity() != source_.space.p())
    throw invariant_error("SpolMorphism: box arity does not match even dimension");
  if (target_.box.arity() != target_.space.p())
    throw invariant_error("SpolMorphism: target box arity mismatch");
  const SuperVectorSpace base = source_.space.even_part();
  for (auto& [I, sp] : components) {
    for (size_t i = 0; i < I.size(); ++i) {
      if (I[i] < 0 || I[i] >= source_.space.q())
        throw reference_error("SpolMorphism: odd index out of range");
      if (i + 1 < I.size() && I[i] >= I[i + 1])
        throw invariant_error("SpolMorphism: component subsets must be strictly increasing");
    }
    if (sp.is_zero()) continue;
    if (!(sp.source() == base))
      throw invariant_error("SpolMorphism: component source must be the even base");
    if (!(sp.target() == target_.space))
      throw invariant_error("SpolMorphism: component target space mismatch");
    const int want = static_cast<int>(I.size()) & 1;
    for (const auto& [k, c] : sp.terms()) {
      (void)c;
      if (!k.odds.empty())
        throw invariant_error("SpolMorphism: components must not use odd source variables");
      if (k.target_parity != want)
        throw invariant_error("SpolMorphism: component parity incoherent with its subset");
    }
    components_.emplace(I, sp);
  }
}

SuperPolynomial SpolMorphism::component(const OddSet& I) const {
  auto it = components_.find(I);
  if (it != components_.end()) return it->second;
  return SuperPolynomial(source_.space.even_part(), target_.space);
}

std::vector<EvenPoly> SpolMorphism::base_map() const {
  const int p = source_.space.p();
  std::vector<EvenPoly> out(target_.space.p(), EvenPoly(p));
  auto it = components_.find(OddSet{});
  if (it == components_.end()) return out;
  for (const auto& [k, c] : it->second.terms())
    if (k.target_parity == 0) out[k.target_index].add_term(k.evens, c);
  return out;
}

int SpolMorphism::max_component_degree() const {
  int d = 0;
  for (const auto& [I, sp] : components_)
    d = std::max(d, static_cast<int>(I.size()) + sp.max_degree());
  return d;
}

std::string SpolMorphism::str() const {
  std::ostringstream os;
  for (const auto& [I, sp] : components_) {
    os << "[";
    for (size_t i = 0; i < I.size(); ++i)
      os << (i ? " " : "") << source_.space.odd_name(I[i]);
    os << "] " << sp.str() << "\n";
  }
  return os.str();
}

SpolMorphism identity(const Domain& d) {
  std::map<OddSet, SuperPolynomial> comp;
  const SuperVectorSpace base = d.space.even_part();
  SuperPolynomial c0(base, d.space);
  for (int j = 0; j < d.space.p(); ++j) {
    SuperPolynomial::Key k;
    k.target_parity = 0;
    k.target_index = j;
    k.evens = MultiIndex(d.space.p(), 0);
    k.evens[j] = 1;
    c0.add_term(k, Rational(1));
  }
  if (!c0.is_zero()) comp[{}] = c0;
  for (int i = 0; i < d.space.q(); ++i) {
    SuperPolynomial ci(base, d.space);
    SuperPolynomial::Key k;
    k.target_parity = 1;
    k.target_index = i;
    k.evens = MultiIndex(d.space.p(), 0);
    ci.add_term(k, Rational(1));
    comp[{i}] = ci;
  }
  return SpolMorphism(d, d, std::move(comp));
}

SpolMorphism constant_morphism(const Domain& source, const Domain& target,
                               const std::vector<Rational>& point) {
  if (static_cast<int>(point.size()) != target.space.p())
    throw reference_error("constant_morphism: point arity mismatch");
  if (!target.box.contains(point))
    throw domain_error_fail("constant_morphism: point outside the target box", "");
  std::map<OddSet, SuperPolynomial> comp;
  SuperPolynomial c0(source.space.even_part(), target.space);
  for (int j = 0; j < target.space.p(); ++j) {
    SuperPolynomial::Key k;
    k.target_parity = 0;
    k.target_index = j;
    k.evens = MultiIndex(source.space.p(), 0);
    c0.add_term(k, point[j]);
  }
  if (!c0.is_zero()) comp[{}] = c0;
  return SpolMorphism(source, target, std::move(comp));
}

SpolMorphism linear_morphism(const Domain& source, const Domain& target,
                             const std::map<std::pair<std::string, std::string>, Rational>& entries) {
  std::map<OddSet, SuperPolynomial> comp;
  const SuperVectorSpace base = source.space.even_part();
  for (const auto& [names, c] : entries) {
    auto t = target.space.find_or_throw(names.first);
    auto s = source.space.find_or_throw(names.second);
    if (t.first != s.first)
      throw invariant_error("linear_morphism: parity-mixing entry " + names.first + " <- " + names.second);
    if (t.first == 0) {
      auto& c0 = comp.try_emplace(OddSet{}, SuperPolynomial(base, target.space)).first->second;
      SuperPolynomial::Key k;
      k.target_parity = 0;
      k.target_index = t.second;
      k.evens = MultiIndex(source.space.p(), 0);
      k.evens[s.second] = 1;
      c0.add_term(k, c);
    } else {
      auto& ci = comp.try_emplace(OddSet{s.second}, SuperPolynomial(base, target.space)).first->second;
      SuperPolynomial::Key k;
      k.target_parity = 1;
      k.target_index = t.second;
      k.evens = MultiIndex(source.space.p(), 0);
      ci.add_term(k, c);
    }
  }
  return SpolMorphism(source, target, std::move(comp));
}

SpolMorphism from_pullbacks(const Domain& source, const Domain& target,
                            const std::vector<SuperPolynomial>& even_values,
                            const std::vector<SuperPolynomial>& odd_values) {
  if (static_cast<int>(even_values.size()) != target.space.p() ||
      static_cast<int>(odd_values.size()) != target.space.q())
    throw reference_error("from_pullbacks: value count does not match the target space");
  std::map<OddSet, SuperPolynomial> comp;
  const SuperVectorSpace base = source.space.even_part();
  auto feed = [&](const SuperPolynomial& v, int tp, int ti) {
    if (v.source() != source.space)
      throw reference_error("from_pullbacks: value over the wrong source space");
    if (!v.is_scalar_valued())
      throw invariant_error("from_pullbacks: values must be scalar superfunctions");
    for (const auto& [k, c] : v.terms()) {
      auto& ci = comp.try_emplace(k.odds, SuperPolynomial(base, target.space)).first->second;
      SuperPolynomial::Key nk;
      nk.target_parity = tp;
      nk.target_index = ti;
      nk.evens = k.evens;
      ci.add_term(nk, c);
    }
  };
  for (int t = 0; t < target.space.p(); ++t) feed(even_values[t], 0, t);
  for (int t = 0; t < target.space.q(); ++t) feed(odd_values[t], 1, t);
  return SpolMorphism(source, target, std::move(comp));
}

SuperPolynomial coordinate_pullback(const SpolMorphism& f, int target_parity, int target_index) {
  const auto& T = f.target().space;
  if (target_parity == 0 ? (target_index < 0 || target_index >= T.p())
                         : (target_index < 0 || target_index >= T.q()))
    throw reference_error("coordinate_pullback: target index out of range");
  SuperPolynomial out = SuperPolynomial::scalar(f.source().space);
  for (const auto& [I, ci] : f.components()) {
    for (const auto& [k, c] : ci.terms()) {
      if (k.target_parity != target_parity || k.target_index != target_index) continue;
      SuperPolynomial::Key nk;
      nk.odds = I;
      nk.evens = k.evens;
      out.add_term(nk, c);
    }
  }
  return out;
}

WordEvaluation apply_to_word(const SpolMorphism& f, const TensorWord& word) {
  const auto& E = f.source().space;
  for (const auto& l : word.letters) {
    if (l.parity == 0 && (l.index < 0 || l.index >= E.p()))
      throw reference_error("apply_to_word: even letter index out of range");
    if (l.parity == 1 && (l.index < 0 || l.index >= E.q()))
      throw reference_error("apply_to_word: odd letter index out of range");
  }
  NormalizedWord n = normalize(word.letters);
  WordEvaluation out;
  out.parity = word.parity();
  if (n.zero) {
    out.value = SuperPolynomial(E.even_part(), f.target().space);
    return out;
  }
  OddSet I;
  std::vector<int> evens;
  for (const auto& l : n.word.letters)
    (l.parity ? I : evens).push_back(l.index);
  SuperPolynomial v = f.component(I);
  for (int e : evens) v = v.partial_even(e);
  if (n.sign < 0) v.scale(Rational(-1));
  out.value = std::move(v);
  return out;
}

SuperPolynomial fdb_evaluate(const SpolMorphism& g, const SpolMorphism& f,
                             const TensorWord& word) {
  const SuperVectorSpace base = f.source().space.even_part();
  const int p = f.source().space.p();
  SuperPolynomial result(base, g.target().space);
  NormalizedWord nw = normalize(word.letters);
  if (nw.zero) return result;
  const std::vector<EvenPoly> f0 = f.base_map();
  if (nw.word.size() == 0) {
    result = g.component(OddSet{}).substitute_evens(f0, base);
    return result;
  }
  const int len = nw.word.size();
  // Letter-sum image of f on a canonical block word, cached: blocks of the
  // reduced coproduct are subsequences of a canonical word and repeat across
  // partition tuples.
  std::map<TensorWord, std::vector<std::pair<Letter, EvenPoly>>> image_cache;
  auto f_image = [&](const TensorWord& b) -> const std::vector<std::pair<Letter, EvenPoly>>& {
    auto it = image_cache.find(b);
    if (it != image_cache.end()) return it->second;
    WordEvaluation ev = apply_to_word(f, b);
    std::map<Letter, EvenPoly> by_letter;
    for (const auto& [k, c] : ev.value.terms()) {
      auto& poly = by_letter.try_emplace(Letter{k.target_parity, k.target_index}, EvenPoly(p))
                       .first->second;
      poly.add_term(k.evens, c);
    }
    return image_cache
        .emplace(b, std::vector<std::pair<Letter, EvenPoly>>(by_letter.begin(), by_letter.end()))
        .first->second;
  };
  // Taylor tensors of f on the word, summed over the order n: a formal sum
  // of words over the middle space with polynomial coefficients in the base.
  std::map<TensorWord, EvenPoly> middle;
  for (int n = 0; n < len; ++n) {
    Rational factor = Rational(1) / Rational::factorial(static_cast<unsigned>(n + 1));
    FormalSum<std::vector<TensorWord>> parts = reduced_coproduct_iter(n, nw.word);
    for (const auto& [blocks, eps] : parts.terms()) {
      // Each block maps to a letter sum over the middle space; distribute.
      std::vector<const std::vector<std::pair<Letter, EvenPoly>>*> images;
      images.reserve(blocks.size());
      bool dead = false;
      for (const auto& b : blocks) {
        const auto& img = f_image(b);
        if (img.empty()) {
          dead = true;
          break;
        }
        images.push_back(&img);
      }
      if (dead) continue;
      std::vector<Letter> chosen(images.size());
      EvenPoly one = EvenPoly::constant(p, Rational(1));
      std::function<void(size_t, const EvenPoly&)> distribute =
          [&](size_t at, const EvenPoly& coeff) {
            if (at == images.size()) {
              NormalizedWord m = normalize(chosen);
              if (m.zero) return;
              Rational c = eps * factor;
              if (m.sign < 0) c = -c;
              EvenPoly scaled = coeff;
              scaled.scale(c);
              auto& acc = middle.try_emplace(m.word, EvenPoly(p)).first->second;
              acc += scaled;
              return;
            }
            for (const auto& [letter, poly] : *images[at]) {
              chosen[at] = letter;
              distribute(at + 1, coeff * poly);
            }
          };
      distribute(0, one);
    }
  }
  for (const auto& [u, coeff] : middle) {
    if (coeff.is_zero()) continue;
    WordEvaluation ge = apply_to_word(g, u);
    if (ge.value.is_zero()) continue;
    SuperPolynomial piece = ge.value.substitute_evens(f0, base);
    result += scale_by_poly(piece, coeff);
  }
  if (nw.sign < 0) result.scale(Rational(-1));
  return result;
}

namespace {

void require_composable(const SpolMorphism& g, const SpolMorphism& f) {
  if (!(f.target().space == g.source().space))
    throw reference_error("compose: middle spaces disagree");
  DomainCheckResult dc = check_domain(f, g.source().box);
  if (dc.status == DomainCheckResult::fail) {
    std::ostringstream w;
    for (size_t i = 0; i < dc.witness.size(); ++i)
      w << (i ? " " : "") << dc.witness[i].str();
    throw domain_error_fail("compose: base image leaves the middle domain", w.str());
  }
  if (dc.status == DomainCheckResult::indeterminate)
    throw domain_error_fail("compose: middle domain containment undecided", "");
}

}  // namespace

SpolMorphism compose(const SpolMorphism& g, const SpolMorphism& f) {
  require_composable(g, f);
  const int q = f.source().space.q();
  if (q > 16) throw truncation_error("compose: too many odd source coordinates");
  std::map<OddSet, SuperPolynomial> comp;
  for (unsigned mask = 0; mask < (1u << q); ++mask) {
    OddSet I = sorted_subset_from_mask(mask);
    TensorWord w;
    for (int i : I) w.letters.push_back(Letter{1, i});
    SuperPolynomial c = fdb_evaluate(g, f, w);
    if (!c.is_zero()) comp[I] = c;
  }
  return SpolMorphism(f.source(), g.target(), std::move(comp));
}

namespace {

// Grassmann element over the source odds with even polynomial coefficients.
// Local to the oracle; the sign convention is recomputed here from scratch
// so the oracle shares no sign logic with the production path.
using GrassEl = std::map<OddSet, EvenPoly>;

int oracle_merge_sign(const OddSet& a, const OddSet& b, OddSet* merged) {
  merged->clear();
  size_t i = 0, j = 0;
  long cross = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      merged->push_back(a[i++]);
    } else {
      cross += static_cast<long>(a.size() - i);
      merged->push_back(b[j++]);
    }
  }
  while (i < a.size()) merged->push_back(a[i++]);
  while (j < b.size()) merged->push_back(b[j++]);
  return (cross % 2 == 0) ? 1 : -1;
}

void gr_accumulate(GrassEl& dst, const OddSet& I, const EvenPoly& c) {
  if (c.is_zero()) return;
  auto it = dst.find(I);
  if (it == dst.end())
    dst.emplace(I, c);
  else
    it->second += c;
}

GrassEl gr_mul(const GrassEl& a, const GrassEl& b) {
  GrassEl out;
  OddSet merged;
  for (const auto& [ia, ca] : a)
    for (const auto& [ib, cb] : b) {
      int s = oracle_merge_sign(ia, ib, &merged);
      if (s == 0) continue;
      EvenPoly c = ca * cb;
      if (s < 0) c.scale(Rational(-1));
      gr_accumulate(out, merged, c);
    }
  return out;
}


}  // namespace

SpolMorphism compose_oracle(const SpolMorphism& g, const SpolMorphism& f) {
  require_composable(g, f);
  const auto& E = f.source().space;
  const auto& F = g.source().space;
  const auto& W = g.target().space;
  const int p = E.p();
  const int q = E.q();
  const int r = F.p();
  const std::vector<EvenPoly> f0 = f.base_map();

  // Pullbacks of the middle coordinates as Grassmann-valued functions of the
  // source. nil[j] is the nilpotent part of the even pullback.
  std::vector<GrassEl> nil(r);
  std::vector<GrassEl> odd_pull(F.q());
  for (const auto& [I, sp] : f.components()) {
    for (const auto& [k, c] : sp.terms()) {
      EvenPoly mono(p);
      mono.add_term(k.evens, c);
      if (k.target_parity == 0) {
        if (!I.empty()) gr_accumulate(nil[k.target_index], I, mono);
      } else {
        gr_accumulate(odd_pull[k.target_index], I, mono);
      }
    }
  }

  // Taylor substitution bound: every nilpotent even part has odd degree at
  // least two, so total substitution order is capped by q/2.
  const int max_order = q / 2;

  std::map<OddSet, SuperPolynomial> comp;
  const SuperVectorSpace base = E.even_part();
  auto emit = [&](int tp, int ti, const GrassEl& val) {
    for (const auto& [I, poly] : val) {
      if (poly.is_zero()) continue;
      auto& dst = comp.try_emplace(I, SuperPolynomial(base, W)).first->second;
      for (const auto& [m, c] : poly.terms()) {
        SuperPolynomial::Key k;
        k.target_parity = tp;
        k.target_index = ti;
        k.evens = m;
        dst.add_term(k, c);
      }
    }
  };

  // Expand one scalar coefficient of g around the base image: iterate over
  // multi-indices gamma with sum bounded by max_order, differentiating and
  // substituting, then multiplying by the nilpotent parts.
  auto taylor = [&](const EvenPoly& gc) {
    GrassEl total;
    std::vector<unsigned> gamma(r, 0);
    std::function<void(int, int, const EvenPoly&, const GrassEl&, const Rational&)> rec =
        [&](int j, int used, const EvenPoly& deriv, const GrassEl& nilprod, const Rational& invfact) {
          if (j == r) {
            EvenPoly at_base = deriv.substitute(f0, p);
            if (at_base.is_zero()) return;
            at_base.scale(invfact);
            for (const auto& [I, c] : nilprod) gr_accumulate(total, I, at_base * c);
            return;
          }
          rec(j + 1, used, deriv, nilprod, invfact);
          EvenPoly d = deriv;
          GrassEl np = nilprod;
          Rational inv = invfact;
          for (int t = 1; used + t <= max_order; ++t) {
            d = d.derivative(j);
            if (d.is_zero()) break;
            np = gr_mul(np, nil[j]);
            if (np.empty()) break;
            inv = inv / Rational(static_cast<long>(t));
            rec(j + 1, used + t, d, np, inv);
          }
        };
    GrassEl unit;
    unit.emplace(OddSet{}, EvenPoly::constant(p, Rational(1)));
    rec(0, 0, gc, unit, Rational(1));
    return total;
  };

  for (const auto& [K, sp] : g.components()) {
    // Ordered product of the odd pullbacks for this subset.
    GrassEl oddprod;
    oddprod.emplace(OddSet{}, EvenPoly::constant(p, Rational(1)));
    bool dead = false;
    for (int l : K) {
      oddprod = gr_mul(oddprod, odd_pull[l]);
      if (oddprod.empty()) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    // Group g's terms by target coordinate, keeping the middle-even
    // polynomial per target.
    std::map<std::pair<int, int>, EvenPoly> by_target;
    for (const auto& [k, c] : sp.terms())
      by_target.try_emplace({k.target_parity, k.target_index}, EvenPoly(r))
          .first->second.add_term(k.evens, c);
    for (const auto& [tgt, gc] : by_target) {
      GrassEl expanded = taylor(gc);
      if (expanded.empty()) continue;
      emit(tgt.first, tgt.second, gr_mul(expanded, oddprod));
    }
  }
  // Drop exact zero sums the accumulation may have left behind.
  for (auto it = comp.begin(); it != comp.end();)
    it = it->second.is_zero() ? comp.erase(it) : std::next(it);
  return SpolMorphism(f.source(), g.target(), std::move(comp));
}

Domain product_domain(const Domain& a, const Domain& b) {
  std::set<std::string> names;
  for (const auto& n : a.space.even_names()) names.insert(n);
  for (const auto& n : a.space.odd_names()) names.insert(n);
  bool clash = false;
  for (const auto& n : b.space.even_names()) clash |= names.count(n) > 0;
  for (const auto& n : b.space.odd_names()) clash |= names.count(n) > 0;
  auto tag = [&](const std::vector<std::string>& v, const char* suffix) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& n : v) out.push_back(clash ? n + suffix : n);
    return out;
  };
  std::vector<std::string> even = tag(a.space.even_names(), ".1");
  std::vector<std::string> odd = tag(a.space.odd_names(), ".1");
  for (auto& n : tag(b.space.even_names(), ".2")) even.push_back(std::move(n));
  for (auto& n : tag(b.space.odd_names(), ".2")) odd.push_back(std::move(n));
  Box box;
  box.intervals = a.box.intervals;
  box.intervals.insert(box.intervals.end(), b.box.intervals.begin(), b.box.intervals.end());
  return Domain{SuperVectorSpace(std::move(even), std::move(odd)), std::move(box)};
}

namespace {

SpolMorphism projection(const Domain& a, const Domain& b, bool second) {
  Domain src = product_domain(a, b);
  const Domain& tgt = second ? b : a;
  const int pe = second ? a.space.p() : 0;
  const int po = second ? a.space.q() : 0;
  std::map<OddSet, SuperPolynomial> comp;
  const SuperVectorSpace base = src.space.even_part();
  SuperPolynomial c0(base, tgt.space);
  for (int j = 0; j < tgt.space.p(); ++j) {
    SuperPolynomial::Key k;
    k.target_parity = 0;
    k.target_index = j;
    k.evens = MultiIndex(src.space.p(), 0);
    k.evens[pe + j] = 1;
    c0.add_term(k, Rational(1));
  }
  if (!c0.is_zero()) comp[{}] = c0;
  for (int i = 0; i < tgt.space.q(); ++i) {
    SuperPolynomial ci(base, tgt.space);
    SuperPolynomial::Key k;
    k.target_parity = 1;
    k.target_index = i;
    k.evens = MultiIndex(src.space.p(), 0);
    ci.add_term(k, Rational(1));
    comp[{po + i}] = ci;
  }
  return SpolMorphism(src, tgt, std::move(comp));
}

// Re-embed a component polynomial into larger source/target spaces with
// index offsets (used by the blockwise product).
SuperPolynomial embed_terms(const SuperPolynomial& sp, const SuperVectorSpace& new_base,
                            const SuperVectorSpace& new_target, int even_src_offset,
                            int even_tgt_offset, int odd_tgt_offset) {
  SuperPolynomial out(new_base, new_target);
  for (const auto& [k, c] : sp.terms()) {
    SuperPolynomial::Key nk;
    nk.target_parity = k.target_parity;
    nk.target_index = k.target_index + (k.target_parity ? odd_tgt_offset : even_tgt_offset);
    nk.evens = MultiIndex(new_base.p(), 0);
    for (size_t i = 0; i < k.evens.size(); ++i) nk.evens[even_src_offset + i] = k.evens[i];
    out.add_term(nk, c);
  }
  return out;
}

}  // namespace

SpolMorphism projection_first(const Domain& a, const Domain& b) { return projection(a, b, false); }
SpolMorphism projection_second(const Domain& a, const Domain& b) { return projection(a, b, true); }

SpolMorphism product_morphism(const SpolMorphism& f, const SpolMorphism& g) {
  Domain src = product_domain(f.source(), g.source());
  Domain tgt = product_domain(f.target(), g.target());
  const SuperVectorSpace base = src.space.even_part();
  std::map<OddSet, SuperPolynomial> comp;
  for (const auto& [I, sp] : f.components())
    comp[I] = embed_terms(sp, base, tgt.space, 0, 0, 0);
  const int qshift = f.source().space.q();
  for (const auto& [I, sp] : g.components()) {
    OddSet J;
    for (int i : I) J.push_back(i + qshift);
    SuperPolynomial piece = embed_terms(sp, base, tgt.space, f.source().space.p(),
                                        f.target().space.p(), f.target().space.q());
    auto it = comp.find(J);
    if (it == comp.end())
      comp.emplace(J, std::move(piece));
    else
      it->second += piece;  // the empty subset carries both base maps
  }
  return SpolMorphism(std::move(src), std::move(tgt), std::move(comp));
}

SpolMorphism pair_morphism(const SpolMorphism& f, const SpolMorphism& g) {
  if (!(f.source() == g.source()))
    throw reference_error("pair_morphism: sources differ");
  Domain tgt = product_domain(f.target(), g.target());
  const SuperVectorSpace base = f.source().space.even_part();
  std::map<OddSet, SuperPolynomial> comp;
  for (const auto& [I, sp] : f.components())
    comp[I] = embed_terms(sp, base, tgt.space, 0, 0, 0);
  for (const auto& [I, sp] : g.components()) {
    SuperPolynomial piece =
        embed_terms(sp, base, tgt.space, 0, f.target().space.p(), f.target().space.q());
    auto it = comp.find(I);
    if (it == comp.end())
      comp.emplace(I, std::move(piece));
    else
      it->second += piece;
  }
  return SpolMorphism(f.source(), std::move(tgt), std::move(comp));
}

SpolMorphism underlying(const SpolMorphism& f) {
  Domain src{f.source().space.even_part(), f.source().box};
  Domain tgt{f.target().space.even_part(), f.target().box};
  std::map<OddSet, SuperPolynomial> comp;
  auto it = f.components().find(OddSet{});
  if (it != f.components().end()) {
    SuperPolynomial c0(src.space, tgt.space);
    for (const auto& [k, c] : it->second.terms())
      if (k.target_parity == 0) c0.add_term(k, c);
    if (!c0.is_zero()) comp[{}] = std::move(c0);
  }
  return SpolMorphism(std::move(src), std::move(tgt), std::move(comp));
}

DomainCheckResult check_domain(const SpolMorphism& f, const Box& target_box) {
  DomainCheckResult out;
  if (target_box.arity() != f.target().space.p())
    throw reference_error("check_domain: box arity does not match the target");
  const std::vector<EvenPoly> f0 = f.base_map();
  bool certified = true;
  for (int j = 0; j < target_box.arity(); ++j) {
    const Interval& itv = target_box.intervals[j];
    if (!itv.lo && !itv.hi) continue;
    Enclosure e = polynomial_range(f0[j], f.source().box);
    if (itv.lo && !(e.lo && *e.lo > *itv.lo)) certified = false;
    if (itv.hi && !(e.hi && *e.hi < *itv.hi)) certified = false;
    if (!certified) break;
  }
  if (certified) {
    out.status = DomainCheckResult::pass;
    out.detail = "interval enclosure strictly inside the target box";
    return out;
  }
  for (const auto& pt : box_sample_points(f.source().box)) {
    if (!f.source().box.contains(pt)) continue;
    std::vector<Rational> img;
    img.reserve(f0.size());
    for (const auto& c : f0) img.push_back(c.eval(pt));
    if (!target_box.contains(img)) {
      out.status = DomainCheckResult::fail;
      out.witness = pt;
      out.detail = "sampled source point maps outside the target box";
      return out;
    }
  }
  out.status = DomainCheckResult::indeterminate;
  out.detail = "interval bounds inconclusive and no witness found";
  return out;
}

std::vector<Rational> eval_base(const SpolMorphism& f, const std::vector<Rational>& x) {
  std::vector<Rational> out;
  for (const auto& c : f.base_map()) out.push_back(c.eval(x));
  return out;
}

FiberCheckResult fiberwise_degree_check(const SpolMorphism& f,
                                        const std::vector<std::string>& fiber_source,
                                        const std::vector<std::string>& fiber_target,
                                        int k) {
  FiberCheckResult out;
  std::set<int> fse, fso, fte, fto;
  for (const auto& n : fiber_source) {
    auto pr = f.source().space.find_or_throw(n);
    (pr.first ? fso : fse).insert(pr.second);
  }
  for (const auto& n : fiber_target) {
    auto pr = f.target().space.find_or_throw(n);
    (pr.first ? fto : fte).insert(pr.second);
  }
  for (const auto& [I, sp] : f.components()) {
    int odd_fiber = 0;
    for (int i : I) odd_fiber += fso.count(i);
    for (const auto& [key, c] : sp.terms()) {
      (void)c;
      int deg = odd_fiber;
      for (int i : fse)
        deg += static_cast<int>(key.evens[i]);
      const bool fiber_target_coord =
          key.target_parity ? fto.count(key.target_index) > 0 : fte.count(key.target_index) > 0;
      const int want = fiber_target_coord ? k : 0;
      if (deg != want) {
        out.pass = false;
        std::ostringstream os;
        os << "fiber degree " << deg << " (expected " << want << ") in component of "
           << (key.target_parity ? f.target().space.odd_name(key.target_index)
                                 : f.target().space.even_name(key.target_index));
        out.detail = os.str();
        return out;
      }
    }
  }
  out.detail = "all terms have the required fiber degree";
  return out;
}

namespace {

std::vector<std::string> apply_name_map(const std::vector<std::string>& names,
                                        const std::map<std::string, std::string>& m) {
  std::vector<std::string> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    auto it = m.find(n);
    out.push_back(it == m.end() ? n : it->second);
  }
  return out;
}

SuperPolynomial respace(const SuperPolynomial& sp, const SuperVectorSpace& src,
                        const SuperVectorSpace& tgt) {
  SuperPolynomial out(src, tgt);
  for (const auto& [k, c] : sp.terms()) out.add_term(k, c);
  return out;
}

}  // namespace

SpolMorphism rename_source(const SpolMorphism& f,
                           const std::map<std::string, std::string>& name_map) {
  SuperVectorSpace ns(apply_name_map(f.source().space.even_names(), name_map),
                      apply_name_map(f.source().space.odd_names(), name_map));
  Domain src{ns, f.source().box};
  std::map<OddSet, SuperPolynomial> comp;
  for (const auto& [I, sp] : f.components())
    comp[I] = respace(sp, ns.even_part(), f.target().space);
  return SpolMorphism(std::move(src), f.target(), std::move(comp));
}

SpolMorphism rename_target(const SpolMorphism& f,
                           const std::map<std::string, std::string>& name_map) {
  SuperVectorSpace nt(apply_name_map(f.target().space.even_names(), name_map),
                      apply_name_map(f.target().space.odd_names(), name_map));
  Domain tgt{nt, f.target().box};
  std::map<OddSet, SuperPolynomial> comp;
  for (const auto& [I, sp] : f.components())
    comp[I] = respace(sp, f.source().space.even_part(), nt);
  return SpolMorphism(f.source(), std::move(tgt), std::move(comp));
}

SpolMorphism reindex(const SpolMorphism& f, const Domain& new_source,
                     const Domain& new_target) {
  const auto& os = f.source().space;
  const auto& ot = f.target().space;
  auto perm = [](const std::vector<std::string>& from, const SuperVectorSpace& to, int want_parity) {
    std::vector<int> map(from.size());
    for (size_t i = 0; i < from.size(); ++i) {
      auto pr = to.find(from[i]);
      if (!pr || pr->first != want_parity)
        throw reference_error("reindex: coordinate " + from[i] + " missing or parity-changed");
      map[i] = pr->second;
    }
    return map;
  };
  std::vector<int> se = perm(os.even_names(), new_source.space, 0);
  std::vector<int> so = perm(os.odd_names(), new_source.space, 1);
  std::vector<int> te = perm(ot.even_names(), new_target.space, 0);
  std::vector<int> to = perm(ot.odd_names(), new_target.space, 1);
  if (new_source.space.dim() != os.dim() || new_target.space.dim() != ot.dim())
    throw reference_error("reindex: dimension mismatch");
  const SuperVectorSpace base = new_source.space.even_part();
  std::map<OddSet, SuperPolynomial> comp;
  for (const auto& [I, sp] : f.components()) {
    std::vector<int> mapped;
    mapped.reserve(I.size());
    for (int i : I) mapped.push_back(so[i]);
    long inversions = 0;
    for (size_t i = 0; i < mapped.size(); ++i)
      for (size_t j = i + 1; j < mapped.size(); ++j)
        if (mapped[i] > mapped[j]) ++inversions;
    OddSet J = mapped;
    std::sort(J.begin(), J.end());
    Rational sign((inversions % 2 == 0) ? 1 : -1);
    SuperPolynomial piece(base, new_target.space);
    for (const auto& [k, c] : sp.terms()) {
      SuperPolynomial::Key nk;
      nk.target_parity = k.target_parity;
      nk.target_index = k.target_parity ? to[k.target_index] : te[k.target_index];
      nk.evens = MultiIndex(base.p(), 0);
      for (size_t i = 0; i < k.evens.size(); ++i) nk.evens[se[i]] = k.evens[i];
      piece.add_term(nk, c * sign);
    }
    auto it = comp.find(J);
    if (it == comp.end())
      comp.emplace(J, std::move(piece));
    else
      it->second += piece;
  }
  for (auto it = comp.begin(); it != comp.end();)
    it = it->second.is_zero() ? comp.erase(it) : std::next(it);
  return SpolMorphism(new_source, new_target, std::move(comp));
}

}  // namespace sgk
