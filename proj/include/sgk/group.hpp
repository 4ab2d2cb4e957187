#pragma once

#include <map>
#include <string>
#include <vector>

#include "sgk/lie.hpp"
#include "sgk/morphism.hpp"

namespace sgk {

// A supergroup presented by mixed data: a Lie superalgebra, a polynomial
// group law with inverse on a single global even chart whose coordinates
// match the even basis (unit at the origin), and the adjoint action of the
// chart on the algebra. The three layers carry redundant first-order
// information; check_pair audits all of it.
struct SupergroupPair {
  LieSuperalgebra algebra;
  SpolMorphism group_law;    // chart x chart -> chart
  SpolMorphism inverse_law;  // chart -> chart
  SpolMorphism adjoint;      // chart x algebra space -> algebra space
};

// The even chart domain (target of the group law).
Domain pair_chart(const SupergroupPair& pair);

// The algebra as a superdomain: even basis names as even coordinates, odd
// basis names as odd coordinates, over the whole space.
Domain pair_algebra_domain(const SupergroupPair& pair);

struct PairCheckResult {
  bool pass = true;
  std::string axiom;  // first violated axiom when pass is false
};

// Audit the pair: algebra axioms, shapes, unit/associativity/inverse of the
// chart group law, linearity and multiplicativity of the adjoint, bracket
// preservation, the adjoint differential at the unit against the bracket,
// and the antisymmetrized second derivative of the group law against the
// even structure constants. Malformed input is a failure, not an exception.
PairCheckResult check_pair(const SupergroupPair& pair);

// Adjoint matrix over the chart: entry [a][b] is the polynomial coefficient
// of basis element a in the image of basis element b. Throws invariant_error
// when the adjoint component is not linear over the algebra block.
std::vector<std::vector<EvenPoly>> pair_ad_matrix(const SupergroupPair& pair);

// Left-invariant frame on the chart: entry [k][j] is the k-th coordinate
// coefficient of the vector field extending the j-th even basis direction by
// left translation, i.e. the derivative of the group law's k-th component in
// the j-th direction of the second factor, at second factor = unit.
std::vector<std::vector<EvenPoly>> pair_left_frame(const SupergroupPair& pair);

// Apply a purely even enveloping element as a composite of left-invariant
// differential operators, rightmost letter acting first. Throws when the
// element has odd letters.
EvenPoly left_invariant_apply(const SupergroupPair& pair, const UEnvElement& u,
                              const EvenPoly& f);

// The supergroup assembled from a pair. Coordinates: the even chart plus one
// odd coordinate per odd basis element. A superfunction f is the collection
// of its coefficients f_K over the chart, K a subset of the odd coordinates,
// through the evaluation rule
//     < u0 . beta(xi_K) at chart point s , f > = (L(u0) f_K)(s)
// with L the left-invariant extension and beta the odd symmetrization.
// mult and inv realize the pullback formulas
//     m* f (u (x) v ; g, h) = f(Ad(inv(h)) u . v ; m0(g, h))
//     i* f (u ; g)          = f(Ad(g) S(u) ; inv0(g))
// on these components, with Ad extended multiplicatively and S the antipode.
struct KoszulGroup {
  SupergroupPair pair;
  Domain domain;
  SpolMorphism unit;  // point -> G
  SpolMorphism mult;  // G x G -> G
  SpolMorphism inv;   // G -> G
};

// Build the group. Throws invariant_error naming the violated axiom when
// check_pair rejects the input, or reference_error when an odd basis name
// collides with a chart coordinate name.
KoszulGroup koszul_build(const SupergroupPair& pair);

struct GroupCheckResult {
  bool pass = true;
  std::string axiom;
};

// Independent audit of the assembled structure maps, as exact morphism
// identities: reduction to the even laws, associativity, the two unit laws,
// and the two inverse laws.
GroupCheckResult verify_group(const KoszulGroup& kg);

// A distribution supported at a single chart point: pairs with a scalar
// superfunction f through the evaluation rule above, linearly in u.
struct Distribution {
  std::vector<Rational> base;
  UEnvElement u;

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.base == b.base && a.u == b.u;
  }
  friend bool operator!=(const Distribution& a, const Distribution& b) {
    return !(a == b);
  }
};

// < f , d > for a scalar superfunction f on the group domain.
Rational distribution_pairing(const KoszulGroup& kg, const SuperPolynomial& f,
                              const Distribution& d);

// Convolution: support points multiply through the group law while the
// enveloping parts combine after an adjoint twist of the left factor by the
// inverse of the right support point. Characterized by
//     < f , a * b > = < m* f , a (x) b >  for every superfunction f.
Distribution convolve(const Distribution& a, const Distribution& b,
                      const KoszulGroup& kg);

// Unit of the convolution algebra: evaluation at the group unit.
Distribution delta_unit(const KoszulGroup& kg);

// Berezin pairing on a purely odd domain: the top odd coefficient of
// f * density, per target coordinate name of f.
std::map<std::string, Rational> berezin_pair(const SuperPolynomial& f,
                                             const SuperPolynomial& density);

// A linear action of a pair on a super vector space: the chart acts through
// a fiberwise linear morphism, the algebra through one rational matrix per
// basis element. Matrix rows and columns run over the even coordinates of
// the space first, then the odd ones; the matrix of a basis element must be
// homogeneous of that element's parity.
struct PairRepresentation {
  SuperVectorSpace space;
  SpolMorphism action0;  // chart x space -> space, linear over the space
  std::vector<std::vector<std::vector<Rational>>> differential;  // [basis][row][col]
};

struct RepCheckResult {
  bool pass = true;
  std::string axiom;
};

// Audit a representation: shapes and parities, the chart action being a
// linear group action, the matrices respecting brackets, the mixed
// compatibility N(g) D_x = D_{Ad(g) x} N(g), and the derivative of the chart
// action at the unit against the even matrices.
RepCheckResult check_rep(const SupergroupPair& pair, const PairRepresentation& rep);

// The action of the assembled group on the space, as a morphism
// G x V -> V: the component at odd subset K acts by N(g) D(beta(xi_K)).
// Throws invariant_error when check_rep rejects the input.
SpolMorphism rep_to_morphism(const KoszulGroup& kg, const PairRepresentation& rep);

// Inverse construction: recover the pair-level action from a group action
// morphism. Validates that the input is a fiberwise linear action (unit law,
// associativity against the group multiplication) and extracts the matrices
// by differentiation at the unit; throws invariant_error otherwise.
PairRepresentation morphism_to_rep(const KoszulGroup& kg, const SpolMorphism& action);

// Equivariance of a constant linear map between two representation spaces:
// T after the first action equals the second action after (id x T).
bool intertwines(const KoszulGroup& kg, const SpolMorphism& action_v,
                 const SpolMorphism& action_w, const SpolMorphism& t);

struct TangentGroupReport {
  bool pass = true;
  std::string detail;
};

// Tangent group structure: push the group through the tangent functor,
// trivialize TG as G x (algebra space) by left translation, and compare the
// induced multiplication and inverse with the semidirect formulas
//     (g, x)(h, y) = (m(g, h), Ad(inv(h)) x + y)
//     (g, x)^{-1}  = (inv(g), -Ad(g) x)
// where Ad here is the group-level adjoint obtained from conjugation. Also
// rederives the bracket from the differential of that adjoint and compares
// it with the structure constants.
TangentGroupReport group_on_TG(const KoszulGroup& kg);

}  // namespace sgk
