#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgk/morphism.hpp"

namespace sgk {

// Monomial in the generators of a Weil algebra presentation: exponents of
// the even generators plus a strictly increasing odd subset.
struct WeilMonomial {
  MultiIndex evens;
  OddSet odds;

  int degree() const {
    int d = static_cast<int>(odds.size());
    for (auto e : evens) d += static_cast<int>(e);
    return d;
  }
  int parity() const { return static_cast<int>(odds.size()) & 1; }

  friend bool operator==(const WeilMonomial& a, const WeilMonomial& b) {
    return a.evens == b.evens && a.odds == b.odds;
  }
  // Canonical basis order: by degree, then odd count, then exponents.
  friend bool operator<(const WeilMonomial& a, const WeilMonomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.odds.size() != b.odds.size()) return a.odds.size() < b.odds.size();
    if (a.evens != b.evens) return a.evens < b.evens;
    return a.odds < b.odds;
  }
};

struct WeilGenerator {
  std::string name;
  int parity = 0;
  unsigned order = 0;  // even generators: least power that vanishes (>= 1)
};

// Finite-dimensional local supercommutative algebra presented by a monomial
// quotient. The basis, multiplication table, height, and width are computed
// and the table's supercommutativity and associativity are verified once at
// construction.
class WeilAlgebra {
public:
  struct Prod {
    int sign = 0;
    int index = -1;  // -1 encodes zero
  };

  const std::vector<WeilGenerator>& generators() const { return generators_; }
  const std::vector<WeilMonomial>& ideal() const { return ideal_; }
  const std::vector<WeilMonomial>& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int height() const { return height_; }
  std::pair<int, int> width() const { return width_; }
  int parity_of(int idx) const { return basis_.at(idx).parity(); }
  int degree_of(int idx) const { return basis_.at(idx).degree(); }

  Prod mul(int i, int j) const { return table_.at(static_cast<size_t>(i) * basis_.size() + j); }
  std::optional<int> find(const WeilMonomial& m) const;
  std::string monomial_name(int idx) const;

  FormalSum<int> elem(int idx) const;
  FormalSum<int> mul_elems(const FormalSum<int>& a, const FormalSum<int>& b) const;
  FormalSum<int> pow_elem(const FormalSum<int>& a, unsigned n) const;

  friend bool operator==(const WeilAlgebra& a, const WeilAlgebra& b);

  friend WeilAlgebra make_weil(std::vector<WeilGenerator> generators,
                               std::vector<WeilMonomial> ideal);

private:
  WeilAlgebra() = default;
  std::vector<WeilGenerator> generators_;
  std::vector<WeilMonomial> ideal_;
  std::vector<WeilMonomial> basis_;
  std::map<WeilMonomial, int> position_;
  std::vector<Prod> table_;
  int height_ = 0;
  std::pair<int, int> width_{0, 0};
};

WeilAlgebra make_weil(std::vector<WeilGenerator> generators, std::vector<WeilMonomial> ideal);
WeilAlgebra trivial_weil();
WeilAlgebra dual_numbers();  // R[eps]/(eps^2)
WeilAlgebra odd_line();      // R[theta]
WeilAlgebra weil_tensor(const WeilAlgebra& a, const WeilAlgebra& b);

// Even unital algebra morphism, stored by generator images and validated to
// respect the source relations (this forces locality).
struct WeilMorphism {
  WeilAlgebra source;
  WeilAlgebra target;
  std::vector<FormalSum<int>> images;  // per source generator
};

WeilMorphism make_weil_morphism(const WeilAlgebra& a, const WeilAlgebra& b,
                                std::vector<FormalSum<int>> images);
WeilMorphism weil_identity(const WeilAlgebra& a);
WeilMorphism weil_augmentation(const WeilAlgebra& a);  // A -> R
WeilMorphism weil_unit(const WeilAlgebra& a);          // R -> A

// Multiplicative extension of a morphism to a basis monomial of the source.
FormalSum<int> weil_morphism_image(const WeilMorphism& phi, int source_basis_idx);

// The superdomain of A (x) E over a box: coordinates are (basis monomial,
// E-coordinate) pairs ordered monomial-outer / E-inner, parity the sum. The
// box applies to the unit slot, nilpotent slots are unbounded.
struct WeilSpace {
  Domain domain;
  // Per big coordinate: (A basis index, E parity, E index).
  std::vector<std::array<int, 3>> even_coords;
  std::vector<std::array<int, 3>> odd_coords;
  std::map<std::array<int, 3>, std::pair<int, int>> index;  // triple -> (parity, big index)
};

WeilSpace weil_space(const WeilAlgebra& a, const Domain& d);
std::string weil_coordinate_name(const WeilAlgebra& a, int basis_idx, const std::string& e_name);

// The functor on morphisms: T^A f, computed through the nilpotent Taylor
// expansion of word evaluations at the reduced base point. jmax bounds the
// expansion order; the default (the algebra height) is exact.
SpolMorphism weil_apply(const WeilAlgebra& a, const SpolMorphism& f);
SpolMorphism weil_apply_truncated(const WeilAlgebra& a, const SpolMorphism& f, int jmax);

// T^phi on a fixed superdomain: the linear morphism induced by phi (x) id.
SpolMorphism natural_transform(const WeilMorphism& phi, const Domain& d);

// Homogeneous polynomial vector field in coefficient form: X = sum a_c d_c
// with a_c a scalar superfunction of parity |X| + |c|.
struct VectorField {
  Domain domain;
  int parity = 0;
  std::vector<SuperPolynomial> even_coeffs;
  std::vector<SuperPolynomial> odd_coeffs;
};

VectorField make_vector_field(const Domain& d, int parity,
                              const std::map<std::string, SuperPolynomial>& coeffs);

// Derivation action sum_c a_c * d_c(h); h may be vector-valued.
SuperPolynomial vector_field_apply(const VectorField& x, const SuperPolynomial& h);

// The literal tangent-composite route for the same action, used as a
// cross-check: pushes a section of the tangent bundle through T(h) and
// returns the fiber component. For odd fields the section needs an
// auxiliary odd parameter "lambda#" appended to the source, and the result
// equals lambda * vector_field_apply(x, h) over that extended space.
SuperPolynomial vector_field_apply_composite(const VectorField& x, const SuperPolynomial& h);

// Graded commutator of derivations, back in coefficient form.
VectorField vector_field_bracket(const VectorField& x, const VectorField& y);

// Section E_U -> T(E_U) of an even field (base projection is the identity).
SpolMorphism tangent_section(const VectorField& x);

}  // namespace sgk
