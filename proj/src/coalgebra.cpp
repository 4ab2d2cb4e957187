#include "sgk/coalgebra.hpp"

#include <functional>

namespace sgk {

Rational koszul_sign(const TensorWord& word, const std::vector<std::vector<int>>& blocks) {
  const int n = word.size();
  std::vector<int> block_of(n, -1);
  int covered = 0;
  for (size_t b = 0; b < blocks.size(); ++b) {
    for (int pos : blocks[b]) {
      if (pos < 0 || pos >= n)
        throw invariant_error("koszul_sign: position out of range");
      if (block_of[pos] != -1)
        throw invariant_error("koszul_sign: overlapping partition blocks");
      block_of[pos] = static_cast<int>(b);
      ++covered;
    }
  }
  if (covered != n) throw invariant_error("koszul_sign: partition does not cover the word");

  // A block holding the same odd letter twice kills the whole tensor term.
  for (const auto& blk : blocks)
    for (size_t a = 0; a < blk.size(); ++a)
      for (size_t b = a + 1; b < blk.size(); ++b) {
        const Letter &la = word.letters[blk[a]], &lb = word.letters[blk[b]];
        if (la.parity == 1 && lb.parity == 1 && la.index == lb.index) return Rational(0);
      }

  long count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (word.letters[i].parity == 1 && word.letters[j].parity == 1 &&
          block_of[i] > block_of[j])
        ++count;
  return (count % 2 == 0) ? Rational(1) : Rational(-1);
}

namespace {

// Ordered set partitions, built by choosing block 0 as a subset containing
// the smallest remaining element is NOT required here: blocks are ordered,
// so block 0 ranges over all nonempty subsets and we recurse on the rest.
void partitions_rec(const std::vector<int>& rest, int k,
                    std::vector<std::vector<int>>& acc,
                    const std::function<void(const std::vector<std::vector<int>>&)>& fn,
                    bool allow_empty) {
  if (k == 0) {
    if (rest.empty()) fn(acc);
    return;
  }
  const int n = static_cast<int>(rest.size());
  if (!allow_empty && n < k) return;
  // Enumerate subsets of `rest` for the next block.
  const unsigned long limit = 1ul << n;
  for (unsigned long mask = 0; mask < limit; ++mask) {
    if (!allow_empty && mask == 0) continue;
    std::vector<int> block, remain;
    for (int i = 0; i < n; ++i)
      ((mask >> i) & 1 ? block : remain).push_back(rest[i]);
    acc.push_back(std::move(block));
    partitions_rec(remain, k - 1, acc, fn, allow_empty);
    acc.pop_back();
  }
}

}  // namespace

void ordered_partitions(int n, int k,
                        const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
  if (k <= 0) return;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::vector<std::vector<int>> acc;
  partitions_rec(all, k, acc, fn, /*allow_empty=*/false);
}

void ordered_partitions_with_empty(
    int n, int k, const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
  if (k <= 0) return;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::vector<std::vector<int>> acc;
  partitions_rec(all, k, acc, fn, /*allow_empty=*/true);
}

namespace {

FormalSum<std::vector<TensorWord>> coproduct_common(int k, const TensorWord& word,
                                                    bool reduced) {
  FormalSum<std::vector<TensorWord>> out;
  if (k < 0) throw invariant_error("coproduct: negative iteration count");
  if (k == 0) {
    out.add({word}, Rational(1));
    return out;
  }
  const int n = word.size();
  auto emit = [&](const std::vector<std::vector<int>>& blocks) {
    Rational sign = koszul_sign(word, blocks);
    if (sign.is_zero()) return;
    std::vector<TensorWord> factors;
    factors.reserve(blocks.size());
    for (const auto& blk : blocks) {
      TensorWord w;
      for (int pos : blk) w.letters.push_back(word.letters[pos]);
      // Positions ascend and the source word is canonical, so each factor is
      // already canonical.
      factors.push_back(std::move(w));
    }
    out.add(factors, sign);
  };
  if (reduced)
    ordered_partitions(n, k + 1, emit);
  else
    ordered_partitions_with_empty(n, k + 1, emit);
  return out;
}

}  // namespace

FormalSum<std::vector<TensorWord>> reduced_coproduct_iter(int k, const TensorWord& word) {
  return coproduct_common(k, word, /*reduced=*/true);
}

FormalSum<std::vector<TensorWord>> coproduct_iter(int k, const TensorWord& word) {
  return coproduct_common(k, word, /*reduced=*/false);
}

FormalSum<TensorWord> product_iter(int k, const std::vector<TensorWord>& words) {
  if (static_cast<int>(words.size()) != k + 1)
    throw invariant_error("product_iter: expected k+1 words");
  std::vector<Letter> seq;
  for (const auto& w : words)
    seq.insert(seq.end(), w.letters.begin(), w.letters.end());
  FormalSum<TensorWord> out;
  NormalizedWord nw = normalize(seq);
  if (!nw.zero) out.add(nw.word, Rational(nw.sign));
  return out;
}

}  // namespace sgk
