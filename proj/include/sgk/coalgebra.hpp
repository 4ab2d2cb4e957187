#pragma once

#include <functional>
#include <vector>

#include "sgk/errors.hpp"
#include "sgk/word.hpp"

namespace sgk {

// Sign of the map e_1...e_n -> e_{I_0} (x) ... (x) e_{I_k} for an ordered
// partition of word positions into blocks. Counts position pairs i < j whose
// letters are both odd but whose blocks are in reversed order. Returns 0
// when some block contains the same odd letter twice (the tensor factor
// vanishes), +1/-1 otherwise. Blocks must partition {0..n-1} exactly.
Rational koszul_sign(const TensorWord& word, const std::vector<std::vector<int>>& blocks);

// All ordered set partitions of {0..n-1} into exactly k nonempty blocks,
// streamed to the callback as position lists (each block sorted ascending).
void ordered_partitions(int n, int k, const std::function<void(const std::vector<std::vector<int>>&)>& fn);

// Same but blocks may be empty (for the unreduced coproduct power).
void ordered_partitions_with_empty(int n, int k, const std::function<void(const std::vector<std::vector<int>>&)>& fn);

// Iterated reduced coproduct: Delta'^k applied to a canonical word, as a sum
// of (k+1)-tuples of canonical words with Koszul signs. k = 0 is the
// identity. Vanishes (empty sum) when k+1 exceeds the word length; Delta'^k
// of the empty word is zero for k >= 1.
FormalSum<std::vector<TensorWord>> reduced_coproduct_iter(int k, const TensorWord& word);

// Iterated full coproduct Delta^k (blocks may be empty), same conventions.
FormalSum<std::vector<TensorWord>> coproduct_iter(int k, const TensorWord& word);

// Iterated product: multiplies k+1 words into one canonical word (with sign),
// or zero when an odd letter repeats.
FormalSum<TensorWord> product_iter(int k, const std::vector<TensorWord>& words);

}  // namespace sgk
