#pragma once

#include <random>
#include <string>
#include <vector>

#include "sgk/morphism.hpp"

namespace sgk::testutil {

// Deterministic sparse generators for the randomized law corpora. Sizes stay
// small (dims <= 3|3, degree <= 4, coefficients in [-10, 10]) so iterated
// compositions remain cheap while still exercising every sign path.
class Gen {
public:
  explicit Gen(unsigned seed) : eng_(seed) {}

  int uniform(int lo, int hi) {
    return lo + static_cast<int>(eng_() % static_cast<unsigned>(hi - lo + 1));
  }

  Rational coeff() {
    int c = 0;
    while (c == 0) c = uniform(-10, 10);
    return Rational(c);
  }

  SuperVectorSpace space(const std::string& prefix, int max_p = 3, int max_q = 3) {
    int p = uniform(0, max_p);
    int q = uniform(0, max_q);
    std::vector<std::string> even, odd;
    for (int i = 0; i < p; ++i) even.push_back(prefix + "x" + std::to_string(i));
    for (int i = 0; i < q; ++i) odd.push_back(prefix + "o" + std::to_string(i));
    return SuperVectorSpace(std::move(even), std::move(odd));
  }

  MultiIndex exponents(int arity, int max_total) {
    MultiIndex m(arity, 0);
    int budget = uniform(0, max_total);
    for (int t = 0; t < budget && arity > 0; ++t) m[uniform(0, arity - 1)] += 1;
    return m;
  }

  // A sparse random morphism with unbounded boxes; parities coherent by
  // construction. Components beyond the empty set appear with gaps so the
  // corpus mixes dense and thin morphisms.
  SpolMorphism morphism(const Domain& src, const Domain& tgt, int max_degree = 4,
                        int terms_per_component = 2) {
    const int p = src.space.p();
    const int q = src.space.q();
    std::map<OddSet, SuperPolynomial> comp;
    for (unsigned mask = 0; mask < (1u << q); ++mask) {
      OddSet I;
      for (int i = 0; i < q; ++i)
        if (mask & (1u << i)) I.push_back(i);
      if (!I.empty() && uniform(0, 2) == 0) continue;
      const int want = static_cast<int>(I.size()) & 1;
      const int navail = want ? tgt.space.q() : tgt.space.p();
      if (navail == 0) continue;
      SuperPolynomial sp(src.space.even_part(), tgt.space);
      int nterms = uniform(0, terms_per_component);
      for (int t = 0; t < nterms; ++t) {
        SuperPolynomial::Key k;
        k.target_parity = want;
        k.target_index = uniform(0, navail - 1);
        int room = max_degree - static_cast<int>(I.size());
        k.evens = exponents(p, room < 0 ? 0 : room);
        sp.add_term(k, coeff());
      }
      if (!sp.is_zero()) comp[I] = std::move(sp);
    }
    return SpolMorphism(src, tgt, std::move(comp));
  }

  SpolMorphism morphism_between(const std::string& sp_prefix, const std::string& tp_prefix) {
    Domain s = Domain::whole(space(sp_prefix));
    Domain t = Domain::whole(space(tp_prefix));
    return morphism(s, t);
  }

private:
  std::mt19937 eng_;
};

// Rebuild a morphism from its raw parts, re-running every construction
// invariant (used to assert parity coherence of computed outputs).
inline bool revalidates(const SpolMorphism& f) {
  try {
    SpolMorphism copy(f.source(), f.target(), f.components());
    return copy == f;
  } catch (const error&) {
    return false;
  }
}

}  // namespace sgk::testutil
