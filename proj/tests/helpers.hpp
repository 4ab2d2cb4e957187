#pragma once

#include <map>
#include <string>
#include <vector>

#include "sgk/morphism.hpp"

namespace sgk::testutil {

// Compact construction of morphisms in tests: terms are addressed entirely
// by coordinate names, with the odd source factors written in any order
// (normalization signs applied).
class MorphBuilder {
public:
  MorphBuilder(Domain src, Domain tgt) : src_(std::move(src)), tgt_(std::move(tgt)) {}

  MorphBuilder& term(const std::vector<std::string>& odd_sources, const std::string& target,
                     const Rational& c, const std::map<std::string, unsigned>& evens = {}) {
    std::vector<Letter> seq;
    for (const auto& n : odd_sources) {
      auto pos = src_.space.find_or_throw(n);
      if (pos.first != 1) throw reference_error("MorphBuilder: '" + n + "' is not odd");
      seq.push_back(Letter{1, pos.second});
    }
    NormalizedWord nw = normalize(seq);
    if (nw.zero) return *this;
    OddSet I;
    for (const auto& l : nw.word.letters) I.push_back(l.index);
    auto t = tgt_.space.find_or_throw(target);
    SuperPolynomial::Key k;
    k.target_parity = t.first;
    k.target_index = t.second;
    k.evens = MultiIndex(src_.space.p(), 0);
    for (const auto& [name, e] : evens) {
      auto pos = src_.space.find_or_throw(name);
      if (pos.first != 0) throw reference_error("MorphBuilder: '" + name + "' is not even");
      k.evens[pos.second] += e;
    }
    auto it = comp_.find(I);
    if (it == comp_.end())
      it = comp_.emplace(I, SuperPolynomial(src_.space.even_part(), tgt_.space)).first;
    it->second.add_term(k, nw.sign < 0 ? -c : c);
    return *this;
  }

  SpolMorphism build() const { return SpolMorphism(src_, tgt_, comp_); }

private:
  Domain src_;
  Domain tgt_;
  std::map<OddSet, SuperPolynomial> comp_;
};

inline Domain domain(std::vector<std::string> even, std::vector<std::string> odd) {
  return Domain::whole(SuperVectorSpace(std::move(even), std::move(odd)));
}

inline TensorWord word_of(const SuperVectorSpace& s, const std::vector<std::string>& names) {
  TensorWord w;
  for (const auto& n : names) {
    auto pos = s.find_or_throw(n);
    w.letters.push_back(Letter{pos.first, pos.second});
  }
  return w;
}

}  // namespace sgk::testutil
