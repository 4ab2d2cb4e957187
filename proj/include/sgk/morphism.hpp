#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgk/box.hpp"
#include "sgk/superpoly.hpp"

namespace sgk {

// A superdomain: a super vector space together with an open box over its
// even coordinates.
struct Domain {
  SuperVectorSpace space;
  Box box;

  static Domain whole(SuperVectorSpace s) {
    Box b = Box::unbounded(s.p());
    return Domain{std::move(s), std::move(b)};
  }
  static Domain point() { return whole(SuperVectorSpace({}, {})); }

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.space == b.space && a.box == b.box;
  }
  friend bool operator!=(const Domain& a, const Domain& b) { return !(a == b); }
};

struct DomainCheckResult {
  enum Status { pass, fail, indeterminate } status = indeterminate;
  std::vector<Rational> witness;  // point of U violating containment, when fail
  std::string detail;
};

// Result of evaluating a morphism on one tensor word: an F-valued polynomial
// map of the base (purely even source), with the parity of the word.
struct WordEvaluation {
  int parity = 0;
  SuperPolynomial value;  // source = even part of E, target = F
};

// Morphism of polynomial superdomains in component form: for every subset I
// of the source odd coordinates, an F-valued polynomial c_I over the even
// source. Evaluation on words goes through derivatives of these components
// (the module is linear over the even subalgebra by construction), and the
// parity coherence |target| = |I| mod 2 is enforced at construction.
class SpolMorphism {
public:
  SpolMorphism() = default;
  SpolMorphism(Domain source, Domain target,
               std::map<OddSet, SuperPolynomial> components);

  const Domain& source() const { return source_; }
  const Domain& target() const { return target_; }
  const std::map<OddSet, SuperPolynomial>& components() const { return components_; }

  // Component for a subset (zero polynomial when absent).
  SuperPolynomial component(const OddSet& I) const;

  // The underlying even map: components[{}] restricted to even targets.
  std::vector<EvenPoly> base_map() const;

  int max_component_degree() const;

  friend bool operator==(const SpolMorphism& a, const SpolMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ &&
           a.components_ == b.components_;
  }
  friend bool operator!=(const SpolMorphism& a, const SpolMorphism& b) {
    return !(a == b);
  }

  std::string str() const;

private:
  Domain source_;
  Domain target_;
  std::map<OddSet, SuperPolynomial> components_;  // only nonzero components kept
};

// Identity morphism of a superdomain.
SpolMorphism identity(const Domain& d);

// Constant morphism onto a target point given by even coordinates.
SpolMorphism constant_morphism(const Domain& source, const Domain& target,
                               const std::vector<Rational>& point);

// Even linear morphism from a coefficient matrix: entry(target_name,
// source_name) -> coefficient. Parity-mixing entries throw.
SpolMorphism linear_morphism(const Domain& source, const Domain& target,
                             const std::map<std::pair<std::string, std::string>, Rational>& entries);

// Assemble a morphism from one scalar pullback superfunction per target
// coordinate, each over the full source space. Parity coherence of the
// values is enforced by the component constructor.
SpolMorphism from_pullbacks(const Domain& source, const Domain& target,
                            const std::vector<SuperPolynomial>& even_values,
                            const std::vector<SuperPolynomial>& odd_values);

// Inverse view: the pullback of one target coordinate as a scalar
// superfunction over the full source space.
SuperPolynomial coordinate_pullback(const SpolMorphism& f, int target_parity, int target_index);

// Evaluate f on a word over its source space (letters as (parity, index)).
WordEvaluation apply_to_word(const SpolMorphism& f, const TensorWord& word);

// Direct graded Faa di Bruno evaluation of (g o f) on a word, without
// constructing the composite. Exposed for the dual-route law tests.
SuperPolynomial fdb_evaluate(const SpolMorphism& g, const SpolMorphism& f,
                             const TensorWord& word);

// Composition via the graded Faa di Bruno expansion. Requires matching
// spaces and a passing domain check of f's base image inside g's source box.
SpolMorphism compose(const SpolMorphism& g, const SpolMorphism& f);

// Independent composition oracle: classical Grassmann substitution with a
// nilpotent Taylor expansion of the even arguments. Shares no code path with
// compose() beyond elementary polynomial arithmetic.
SpolMorphism compose_oracle(const SpolMorphism& g, const SpolMorphism& f);

// Direct sum of superdomains with concatenated boxes. On any coordinate
// name collision between the factors every name is namespaced with ".1" /
// ".2" suffixes; otherwise names are kept.
Domain product_domain(const Domain& a, const Domain& b);

// Projections out of product_domain(a, b).
SpolMorphism projection_first(const Domain& a, const Domain& b);
SpolMorphism projection_second(const Domain& a, const Domain& b);

// Product morphism f x g between the product domains, acting blockwise.
SpolMorphism product_morphism(const SpolMorphism& f, const SpolMorphism& g);

// Pairing (f, g): common source, product target.
SpolMorphism pair_morphism(const SpolMorphism& f, const SpolMorphism& g);

// Underlying morphism of reduced (purely even) domains.
SpolMorphism underlying(const SpolMorphism& f);

// Conservative check that f's base image lies in `target_box`.
DomainCheckResult check_domain(const SpolMorphism& f, const Box& target_box);

// Evaluate the base map at a rational point of the source.
std::vector<Rational> eval_base(const SpolMorphism& f, const std::vector<Rational>& x);

// Degree check over a parameter split: every component term must have total
// degree exactly k in the fiber source coordinates; fiber target coordinates
// carry the degree-k data, all other target coordinates must be fiber-free.
// k = 1 is the vector-bundle linearity criterion.
struct FiberCheckResult {
  bool pass = true;
  std::string detail;
};
FiberCheckResult fiberwise_degree_check(const SpolMorphism& f,
                                        const std::vector<std::string>& fiber_source,
                                        const std::vector<std::string>& fiber_target,
                                        int k);

// Rename coordinates (bijective name maps; absent names are kept).
SpolMorphism rename_source(const SpolMorphism& f,
                           const std::map<std::string, std::string>& name_map);
SpolMorphism rename_target(const SpolMorphism& f,
                           const std::map<std::string, std::string>& name_map);

// Rebuild f over a source space with the same coordinate names in possibly
// different order (odd subsets pick up resorting signs) and/or a reordered
// target. Used by the canonical-identification tests.
SpolMorphism reindex(const SpolMorphism& f, const Domain& new_source,
                     const Domain& new_target);

}  // namespace sgk
