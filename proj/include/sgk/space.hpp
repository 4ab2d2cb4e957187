#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sgk/errors.hpp"

namespace sgk {

// A finite-dimensional super vector space presented by ordered lists of even
// and odd coordinate names. Names must be unique across both lists; the list
// order fixes the meaning of multi-indices and odd subsets everywhere else.
class SuperVectorSpace {
public:
  SuperVectorSpace() = default;
  SuperVectorSpace(std::vector<std::string> even, std::vector<std::string> odd)
      : even_(std::move(even)), odd_(std::move(odd)) {
    std::set<std::string> seen;
    for (const auto& n : even_)
      if (!seen.insert(n).second)
        throw invariant_error("SuperVectorSpace: duplicate coordinate name '" + n + "'");
    for (const auto& n : odd_)
      if (!seen.insert(n).second)
        throw invariant_error("SuperVectorSpace: duplicate coordinate name '" + n + "'");
  }

  int p() const { return static_cast<int>(even_.size()); }
  int q() const { return static_cast<int>(odd_.size()); }
  int dim() const { return p() + q(); }

  const std::vector<std::string>& even_names() const { return even_; }
  const std::vector<std::string>& odd_names() const { return odd_; }

  const std::string& even_name(int i) const { return even_.at(i); }
  const std::string& odd_name(int i) const { return odd_.at(i); }

  // (parity, index) of a named coordinate; parity 0 = even, 1 = odd.
  std::optional<std::pair<int, int>> find(const std::string& name) const {
    for (int i = 0; i < p(); ++i)
      if (even_[i] == name) return std::make_pair(0, i);
    for (int i = 0; i < q(); ++i)
      if (odd_[i] == name) return std::make_pair(1, i);
    return std::nullopt;
  }

  std::pair<int, int> find_or_throw(const std::string& name) const {
    auto r = find(name);
    if (!r) throw reference_error("unknown coordinate '" + name + "'");
    return *r;
  }

  SuperVectorSpace even_part() const { return SuperVectorSpace(even_, {}); }

  friend bool operator==(const SuperVectorSpace& a, const SuperVectorSpace& b) {
    return a.even_ == b.even_ && a.odd_ == b.odd_;
  }
  friend bool operator!=(const SuperVectorSpace& a, const SuperVectorSpace& b) {
    return !(a == b);
  }

private:
  std::vector<std::string> even_;
  std::vector<std::string> odd_;
};

}  // namespace sgk
