#include "sgk/superpoly.hpp"

#include <algorithm>
#include <sstream>

namespace sgk {

OddMerge merge_odd_sets(const OddSet& a, const OddSet& b) {
  OddMerge out;
  out.merged.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  long inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      out.sign = 0;
      out.merged.clear();
      return out;
    }
    if (a[i] < b[j]) {
      out.merged.push_back(a[i++]);
    } else {
      // b[j] moves left past the remaining letters of a.
      inversions += static_cast<long>(a.size() - i);
      out.merged.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.merged.push_back(a[i++]);
  while (j < b.size()) out.merged.push_back(b[j++]);
  out.sign = (inversions % 2 == 0) ? 1 : -1;
  return out;
}

void SuperPolynomial::add_term(const Key& k, const Rational& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(k.evens.size()) != source_.p())
    throw invariant_error("SuperPolynomial: even multi-index arity mismatch");
  for (size_t i = 0; i + 1 < k.odds.size(); ++i)
    if (k.odds[i] >= k.odds[i + 1])
      throw invariant_error("SuperPolynomial: odd subset not strictly ascending");
  if (!k.odds.empty() && (k.odds.front() < 0 || k.odds.back() >= source_.q()))
    throw invariant_error("SuperPolynomial: odd index out of range");
  const int tdim = k.target_parity == 0 ? target_.p() : target_.q();
  if (k.target_index < 0 || k.target_index >= tdim)
    throw invariant_error("SuperPolynomial: target index out of range");
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& o) {
  if (source_ != o.source_ || target_ != o.target_)
    throw invariant_error("SuperPolynomial: source/target mismatch in addition");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

SuperPolynomial& SuperPolynomial::scale(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else {
    for (auto& [k, v] : terms_) v *= c;
  }
  return *this;
}

void SuperPolynomial::add_named_term(const std::string& target_name, const Rational& c,
                                     const std::vector<std::string>& odd_factors,
                                     const std::map<std::string, unsigned>& even_factors) {
  Key k;
  auto t = target_.find_or_throw(target_name);
  k.target_parity = t.first;
  k.target_index = t.second;
  k.evens.assign(source_.p(), 0);
  for (const auto& [name, exp] : even_factors) {
    auto pos = source_.find_or_throw(name);
    if (pos.first != 0)
      throw reference_error("even factor '" + name + "' names an odd coordinate");
    k.evens[pos.second] += exp;
  }
  // Normalize the odd factor sequence (tracks the sign, detects squares).
  std::vector<Letter> seq;
  for (const auto& name : odd_factors) {
    auto pos = source_.find_or_throw(name);
    if (pos.first != 1)
      throw reference_error("odd factor '" + name + "' names an even coordinate");
    seq.push_back(Letter{1, pos.second});
  }
  NormalizedWord nw = normalize(seq);
  if (nw.zero) return;
  for (const auto& l : nw.word.letters) k.odds.push_back(l.index);
  add_term(k, c * Rational(nw.sign));
}

bool SuperPolynomial::homogeneous_parity(int* parity_out) const {
  int par = -1;
  for (const auto& [k, c] : terms_) {
    int p = (static_cast<int>(k.odds.size()) + k.target_parity) & 1;
    if (par == -1) par = p;
    if (p != par) return false;
  }
  if (parity_out) *parity_out = (par == -1 ? 0 : par);
  return true;
}

int SuperPolynomial::max_degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) {
    int s = static_cast<int>(k.odds.size());
    for (auto e : k.evens) s += static_cast<int>(e);
    d = std::max(d, s);
  }
  return d;
}

SuperPolynomial SuperPolynomial::partial_even(int i) const {
  if (i < 0 || i >= source_.p()) throw reference_error("partial: even index out of range");
  SuperPolynomial r(source_, target_);
  for (const auto& [k, c] : terms_) {
    if (k.evens[i] == 0) continue;
    Key d = k;
    d.evens[i] -= 1;
    r.add_term(d, c * Rational(static_cast<long>(k.evens[i])));
  }
  return r;
}

SuperPolynomial SuperPolynomial::partial_odd(int i) const {
  if (i < 0 || i >= source_.q()) throw reference_error("partial: odd index out of range");
  SuperPolynomial r(source_, target_);
  for (const auto& [k, c] : terms_) {
    auto it = std::find(k.odds.begin(), k.odds.end(), i);
    if (it == k.odds.end()) continue;
    const long before = it - k.odds.begin();  // # of j in I with j < i
    Key d = k;
    d.odds.erase(d.odds.begin() + before);
    r.add_term(d, (before % 2 == 0) ? c : -c);
  }
  return r;
}

SuperPolynomial SuperPolynomial::partial(const std::string& name) const {
  auto pos = source_.find_or_throw(name);
  return pos.first == 0 ? partial_even(pos.second) : partial_odd(pos.second);
}

SuperPolynomial superpoly_mul(const SuperPolynomial& p, const SuperPolynomial& q) {
  if (p.source_ != q.source_)
    throw invariant_error("superpoly_mul: source space mismatch");
  const bool p_scalar = p.is_scalar_valued();
  const bool q_scalar = q.is_scalar_valued();
  if (!p_scalar && !q_scalar)
    throw invariant_error("superpoly_mul: at least one factor must be scalar-valued");

  const SuperVectorSpace& target = p_scalar ? q.target_ : p.target_;
  SuperPolynomial r(p.source_, target);
  const int arity = p.source_.p();
  for (const auto& [ka, ca] : p.terms_)
    for (const auto& [kb, cb] : q.terms_) {
      int extra = 1;
      SuperPolynomial::Key k;
      if (p_scalar) {
        // (c_a xi_I) * (c_b xi_J e_t): even coefficients commute freely, the
        // only sign is from merging xi_I xi_J.
        k.target_parity = kb.target_parity;
        k.target_index = kb.target_index;
      } else {
        // (c_a xi_I e_t) * (c_b xi_J): move xi_J left past e_t.
        k.target_parity = ka.target_parity;
        k.target_index = ka.target_index;
        if ((ka.target_parity & 1) && (kb.odds.size() & 1)) extra = -extra;
      }
      OddMerge m = merge_odd_sets(ka.odds, kb.odds);
      if (m.sign == 0) continue;
      k.odds = std::move(m.merged);
      k.evens.assign(arity, 0);
      for (int i = 0; i < arity; ++i) k.evens[i] = ka.evens[i] + kb.evens[i];
      r.add_term(k, ca * cb * Rational(m.sign * extra));
    }
  return r;
}

std::map<std::string, Rational> SuperPolynomial::berezin_top() const {
  if (source_.p() != 0)
    throw invariant_error("berezin_top: source must be purely odd");
  OddSet full(source_.q());
  for (int i = 0; i < source_.q(); ++i) full[i] = i;
  std::map<std::string, Rational> out;
  for (const auto& [k, c] : terms_) {
    if (k.odds != full) continue;
    const std::string& name = k.target_parity == 0 ? target_.even_name(k.target_index)
                                                   : target_.odd_name(k.target_index);
    auto it = out.find(name);
    if (it == out.end()) out.emplace(name, c);
    else it->second += c;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

SuperPolynomial SuperPolynomial::substitute_evens(const std::vector<EvenPoly>& images,
                                                  const SuperVectorSpace& new_source) const {
  if (static_cast<int>(images.size()) != source_.p())
    throw invariant_error("substitute_evens: wrong image count");
  if (new_source.q() != source_.q())
    throw invariant_error("substitute_evens: odd part must be unchanged");
  const int out_arity = new_source.p();
  SuperPolynomial r(new_source, target_);
  for (const auto& [k, c] : terms_) {
    EvenPoly acc = EvenPoly::constant(out_arity, c);
    for (int i = 0; i < source_.p(); ++i)
      for (uint32_t e = 0; e < k.evens[i]; ++e) acc = acc * images[i];
    for (const auto& [m, cc] : acc.terms()) {
      Key nk;
      nk.target_parity = k.target_parity;
      nk.target_index = k.target_index;
      nk.odds = k.odds;
      nk.evens = m;
      r.add_term(nk, cc);
    }
  }
  return r;
}

SuperPolynomial SuperPolynomial::odd_coefficient(const OddSet& I) const {
  SuperPolynomial r(source_.even_part(), target_);
  for (const auto& [k, c] : terms_) {
    if (k.odds != I) continue;
    Key nk;
    nk.target_parity = k.target_parity;
    nk.target_index = k.target_index;
    nk.evens = k.evens;
    r.add_term(nk, c);
  }
  return r;
}

std::string EvenPoly::str(const std::vector<std::string>& names) const {
  if (terms().empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms()) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      os << "*" << names.at(i);
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

std::string SuperPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (int i = 0; i < source_.p(); ++i) {
      if (k.evens[i] == 0) continue;
      os << "*" << source_.even_name(i);
      if (k.evens[i] > 1) os << "^" << k.evens[i];
    }
    for (int i : k.odds) os << "*" << source_.odd_name(i);
    if (!is_scalar_valued()) {
      os << " :" << (k.target_parity == 0 ? target_.even_name(k.target_index)
                                          : target_.odd_name(k.target_index));
    }
  }
  return os.str();
}

}  // namespace sgk
