#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "sgk/rational.hpp"
#include "sgk/space.hpp"

namespace sgk {

// One letter of a tensor word: a basis vector of a super vector space,
// carried as (parity, index) so sign bookkeeping never needs the space.
struct Letter {
  int parity = 0;  // 0 even, 1 odd
  int index = 0;

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.parity == b.parity && a.index == b.index;
  }
  friend bool operator<(const Letter& a, const Letter& b) {
    if (a.parity != b.parity) return a.parity < b.parity;
    return a.index < b.index;
  }
};

// A word in the supersymmetric algebra S(E), kept in canonical form: even
// letters first (sorted, repeats allowed), then odd letters (strictly
// increasing). Construction goes through normalize(), which tracks the
// Koszul sign and detects the square of an odd letter.
struct TensorWord {
  std::vector<Letter> letters;

  int size() const { return static_cast<int>(letters.size()); }
  int parity() const {
    int o = 0;
    for (const auto& l : letters) o += l.parity;
    return o & 1;
  }

  friend bool operator==(const TensorWord& a, const TensorWord& b) {
    return a.letters == b.letters;
  }
  friend bool operator<(const TensorWord& a, const TensorWord& b) {
    return a.letters < b.letters;
  }
};

struct NormalizedWord {
  bool zero = false;   // word contained a repeated odd letter
  int sign = 1;        // Koszul sign of the sorting permutation
  TensorWord word;     // canonical representative
};

// Sort a letter sequence into canonical order. The sign is (-1)^N where N
// counts inversions among odd letters; even letters commute freely.
inline NormalizedWord normalize(const std::vector<Letter>& seq) {
  NormalizedWord out;
  std::vector<int> odds;
  std::vector<int> evens;
  for (const auto& l : seq) {
    if (l.parity == 1)
      odds.push_back(l.index);
    else
      evens.push_back(l.index);
  }
  long inversions = 0;
  for (size_t i = 0; i < odds.size(); ++i)
    for (size_t j = i + 1; j < odds.size(); ++j) {
      if (odds[i] > odds[j]) ++inversions;
      if (odds[i] == odds[j]) {
        out.zero = true;
        return out;
      }
    }
  std::sort(evens.begin(), evens.end());
  std::sort(odds.begin(), odds.end());
  out.sign = (inversions % 2 == 0) ? 1 : -1;
  out.word.letters.reserve(seq.size());
  for (int e : evens) out.word.letters.push_back(Letter{0, e});
  for (int o : odds) out.word.letters.push_back(Letter{1, o});
  return out;
}

// Formal linear combination with exact rational coefficients. Zero terms are
// dropped eagerly, so equality of maps is equality of sums.
template <class T>
class FormalSum {
public:
  using Map = std::map<T, Rational>;

  void add(const T& key, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FormalSum& operator+=(const FormalSum& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }

  FormalSum& scale(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
  }

  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }

  Rational coefficient(const T& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const FormalSum& a, const FormalSum& b) {
    return a.terms_ == b.terms_;
  }

private:
  Map terms_;
};

}  // namespace sgk
