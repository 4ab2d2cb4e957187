#include "doctest.h"

#include <vector>

#include "generators.hpp"
#include "sgk/lie.hpp"

using namespace sgk;
using testutil::Gen;

namespace {

// x even and central, y odd, [y,y] = x.
LieSuperalgebra odd_square() {
  FormalSum<int> x;
  x.add(0, Rational(1));
  return make_lie({"x", "y"}, {0, 1}, {{1, 1, x}});
}

LieSuperalgebra abelian(int p, int q) {
  std::vector<std::string> names;
  std::vector<int> parities;
  for (int i = 0; i < p; ++i) {
    names.push_back("e" + std::to_string(i));
    parities.push_back(0);
  }
  for (int i = 0; i < q; ++i) {
    names.push_back("o" + std::to_string(i));
    parities.push_back(1);
  }
  return make_lie(names, parities, {});
}

LieSuperalgebra sl2() {
  auto single = [](int k, int c) {
    FormalSum<int> v;
    v.add(k, Rational(c));
    return v;
  };
  // basis h, e, f
  return make_lie({"h", "e", "f"}, {0, 0, 0},
                  {{0, 1, single(1, 2)},
                   {1, 0, single(1, -2)},
                   {0, 2, single(2, -2)},
                   {2, 0, single(2, 2)},
                   {1, 2, single(0, 1)},
                   {2, 1, single(0, -1)}});
}

UEnvElement mono(const LieSuperalgebra&, const PBWMonomial& m,
                 const Rational& c) {
  UEnvElement u;
  uelem_add(u, m, c);
  return u;
}

UEnvElement scaled(UEnvElement u, const Rational& c) {
  UEnvElement out;
  for (const auto& [m, v] : u.terms) uelem_add(out, m, v * c);
  return out;
}

PBWMonomial random_monomial(Gen& gen, const LieSuperalgebra& g, int max_deg) {
  PBWMonomial m(static_cast<size_t>(g.dim()), 0);
  int budget = gen.uniform(0, max_deg);
  for (int t = 0; t < budget; ++t) {
    int i = gen.uniform(0, g.dim() - 1);
    if (g.parity(i) == 1 && m[static_cast<size_t>(i)] == 1) continue;
    m[static_cast<size_t>(i)] += 1;
  }
  return m;
}

UEnvElement random_uelem(Gen& gen, const LieSuperalgebra& g, int max_deg,
                         int nterms) {
  UEnvElement u;
  for (int t = 0; t < nterms; ++t)
    uelem_add(u, random_monomial(gen, g, max_deg), gen.coeff());
  return u;
}

UEnvElement random_homogeneous(Gen& gen, const LieSuperalgebra& g, int parity,
                               int max_deg, int nterms) {
  UEnvElement u;
  int placed = 0;
  for (int attempt = 0; attempt < 50 && placed < nterms; ++attempt) {
    PBWMonomial m = random_monomial(gen, g, max_deg);
    if (u_parity(g, m) != parity) continue;
    uelem_add(u, m, gen.coeff());
    ++placed;
  }
  return u;
}

unsigned long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  unsigned long long r = 1;
  for (int t = 0; t < k; ++t)
    r = r * static_cast<unsigned long long>(n - t) /
        static_cast<unsigned long long>(t + 1);
  return r;
}

// Monomial count for a free graded-commutative algebra on p even and q odd
// variables, degrees 0 through n inclusive.
unsigned long long graded_poly_dim(int p, int q, int n) {
  unsigned long long total = 0;
  for (int k = 0; k <= n; ++k)
    for (int b = 0; b <= q && b <= k; ++b)
      total += binomial(q, b) * binomial(p + (k - b) - 1, k - b);
  return total;
}

}  // namespace

TEST_CASE("axiom scan accepts the basic examples") {
  CHECK(check_lie(abelian(2, 1)).pass);
  CHECK(check_lie(odd_square()).pass);
  CHECK(check_lie(sl2()).pass);
}

TEST_CASE("axiom scan rejects a parity-breaking bracket") {
  FormalSum<int> y;
  y.add(1, Rational(1));
  LieSuperalgebra bad = make_lie({"x", "y"}, {0, 1}, {{1, 1, y}});
  LieCheckResult r = check_lie(bad);
  CHECK_FALSE(r.pass);
  CHECK(r.i == 1);
  CHECK(r.j == 1);
  CHECK(r.k == 1);
  CHECK(r.detail.find("parity") != std::string::npos);
}

TEST_CASE("axiom scan rejects broken antisymmetry") {
  FormalSum<int> z;
  z.add(2, Rational(1));
  LieSuperalgebra bad =
      make_lie({"a", "b", "c"}, {0, 0, 0}, {{0, 1, z}, {1, 0, z}});
  LieCheckResult r = check_lie(bad);
  CHECK_FALSE(r.pass);
  CHECK(r.i == 0);
  CHECK(r.j == 1);
  CHECK(r.k == -1);
  CHECK(r.detail.find("antisymmetry") != std::string::npos);
}

TEST_CASE("axiom scan rejects a Jacobi failure") {
  auto single = [](int k, int c) {
    FormalSum<int> v;
    v.add(k, Rational(c));
    return v;
  };
  // sl2 table with [e,f] corrupted to e
  LieSuperalgebra bad = make_lie({"h", "e", "f"}, {0, 0, 0},
                                 {{0, 1, single(1, 2)},
                                  {1, 0, single(1, -2)},
                                  {0, 2, single(2, -2)},
                                  {2, 0, single(2, 2)},
                                  {1, 2, single(1, 1)},
                                  {2, 1, single(1, -1)}});
  LieCheckResult r = check_lie(bad);
  CHECK_FALSE(r.pass);
  CHECK(r.detail.find("Jacobi") != std::string::npos);
  CHECK(r.i == 0);
  CHECK(r.j == 1);
  CHECK(r.k == 2);
}

TEST_CASE("table construction rejects malformed input") {
  CHECK_THROWS_AS(make_lie({"x", "x"}, {0, 0}, {}), reference_error);
  CHECK_THROWS_AS(make_lie({"x"}, {2}, {}), reference_error);
  CHECK_THROWS_AS(make_lie({"x"}, {0, 1}, {}), reference_error);
  FormalSum<int> far;
  far.add(5, Rational(1));
  CHECK_THROWS_AS(make_lie({"x"}, {0}, {{0, 0, far}}), reference_error);
  CHECK_THROWS_AS(make_lie({"x"}, {0}, {{0, 2, FormalSum<int>()}}),
                  reference_error);
  FormalSum<int> x;
  x.add(0, Rational(1));
  CHECK_THROWS_AS(make_lie({"x"}, {0}, {{0, 0, x}, {0, 0, x}}),
                  reference_error);
  LieSuperalgebra g = odd_square();
  CHECK(g.find("y") == 1);
  CHECK_THROWS_AS(g.find("z"), reference_error);
}

TEST_CASE("normal ordering puts even generators before odd ones") {
  LieSuperalgebra g = superloop_algebra(odd_square());
  // declared: x(even), y(odd), pi:x(odd), pi:y(even)
  CHECK(g.normal_order() == std::vector<int>{0, 3, 1, 2});
  CHECK(g.normal_rank(0) == 0);
  CHECK(g.normal_rank(3) == 1);
  CHECK(g.normal_rank(1) == 2);
  CHECK(g.normal_rank(2) == 3);
}

TEST_CASE("product straightens the frozen examples") {
  LieSuperalgebra g = odd_square();
  UEnvElement y = u_generator(g, 1);
  UEnvElement x = u_generator(g, 0);
  // y y = (1/2) x
  CHECK(u_mul(g, y, y) == mono(g, {1, 0}, Rational(1) / Rational(2)));
  // x is central: both orders give the normal monomial x y
  CHECK(u_mul(g, x, y) == mono(g, {1, 1}, Rational(1)));
  CHECK(u_mul(g, y, x) == mono(g, {1, 1}, Rational(1)));
  // odd-odd swap with a vanishing bracket picks up only the sign
  LieSuperalgebra d = superloop_algebra(odd_square());
  UEnvElement pix = u_generator(d, 2);
  UEnvElement dy = u_generator(d, 1);
  CHECK(u_mul(d, pix, dy) == mono(d, {0, 1, 1, 0}, Rational(-1)));
  CHECK(u_mul(d, dy, pix) == mono(d, {0, 1, 1, 0}, Rational(1)));
}

TEST_CASE("product is associative and unital") {
  Gen gen(601);
  std::vector<LieSuperalgebra> corpus = {odd_square(), sl2(),
                                         superloop_algebra(odd_square())};
  for (const auto& g : corpus) {
    for (int trial = 0; trial < 8; ++trial) {
      UEnvElement u = random_uelem(gen, g, 3, 3);
      UEnvElement v = random_uelem(gen, g, 3, 3);
      UEnvElement w = random_uelem(gen, g, 2, 2);
      CHECK(u_mul(g, u_mul(g, u, v), w) == u_mul(g, u, u_mul(g, v, w)));
      CHECK(u_mul(g, u, u_one(g)) == u);
      CHECK(u_mul(g, u_one(g), u) == u);
    }
  }
}

TEST_CASE("leftmost and rightmost straightening agree") {
  Gen gen(602);
  std::vector<LieSuperalgebra> corpus = {odd_square(), sl2(),
                                         superloop_algebra(odd_square())};
  for (const auto& g : corpus) {
    for (int trial = 0; trial < 20; ++trial) {
      int len = gen.uniform(0, 6);
      std::vector<int> word;
      for (int t = 0; t < len; ++t) word.push_back(gen.uniform(0, g.dim() - 1));
      Rational c = gen.coeff();
      CHECK(u_from_word(g, word, c, StraightenOrder::leftmost) ==
            u_from_word(g, word, c, StraightenOrder::rightmost));
    }
  }
}

TEST_CASE("normal monomials are fixed points and count like polynomials") {
  LieSuperalgebra d = superloop_algebra(odd_square());
  int count = 0;
  const int n = 4;
  // evens: x, pi:y; odds: y, pi:x
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = 0; c <= 1; ++c)
        for (int e = 0; e <= 1; ++e) {
          if (a + b + c + e > n) continue;
          ++count;
          PBWMonomial m = {static_cast<uint32_t>(a), static_cast<uint32_t>(c),
                           static_cast<uint32_t>(e), static_cast<uint32_t>(b)};
          if (a + b + c + e <= 3) {
            UEnvElement back =
                u_from_word(d, u_word(d, m), Rational(1));
            CHECK(back == mono(d, m, Rational(1)));
          }
        }
  CHECK(static_cast<unsigned long long>(count) == graded_poly_dim(2, 2, n));
  // purely even case
  unsigned long long sl2count = 0;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = 0; c <= n; ++c)
        if (a + b + c <= n) ++sl2count;
  CHECK(sl2count == graded_poly_dim(3, 0, n));
}

TEST_CASE("filtration degree never grows under straightening") {
  Gen gen(603);
  LieSuperalgebra d = superloop_algebra(odd_square());
  for (int trial = 0; trial < 20; ++trial) {
    int len = gen.uniform(0, 5);
    std::vector<int> word;
    for (int t = 0; t < len; ++t) word.push_back(gen.uniform(0, d.dim() - 1));
    UEnvElement u = u_from_word(d, word, Rational(1));
    for (const auto& [m, c] : u.terms) {
      (void)c;
      CHECK(u_degree(m) <= len);
    }
  }
}

TEST_CASE("symmetrized words have unit leading term") {
  LieSuperalgebra g = odd_square();
  CHECK(symmetrize(g, {0}) == mono(g, {1, 0}, Rational(1)));
  CHECK(symmetrize(g, {0, 1}) == mono(g, {1, 1}, Rational(1)));
  CHECK(symmetrize(g, {1, 1}).terms.empty());
  CHECK(symmetrize(g, {}) == u_one(g));

  LieSuperalgebra d = superloop_algebra(odd_square());
  const int n = 3;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = 0; c <= 1; ++c)
        for (int e = 0; e <= 1; ++e) {
          if (a + b + c + e > n || a + b + c + e == 0) continue;
          PBWMonomial m = {static_cast<uint32_t>(a), static_cast<uint32_t>(c),
                           static_cast<uint32_t>(e), static_cast<uint32_t>(b)};
          UEnvElement bm = u_beta(d, m);
          CHECK(bm.terms.count(m) == 1);
          CHECK(bm.terms.at(m) == Rational(1));
          for (const auto& [m2, c2] : bm.terms) {
            (void)c2;
            if (!(m2 == m)) CHECK(u_degree(m2) < u_degree(m));
          }
        }
}

TEST_CASE("symmetrized-basis decomposition inverts exactly") {
  Gen gen(604);
  std::vector<LieSuperalgebra> corpus = {sl2(), superloop_algebra(odd_square())};
  for (const auto& g : corpus) {
    for (int trial = 0; trial < 6; ++trial) {
      UEnvElement u = random_uelem(gen, g, 3, 4);
      auto parts = beta_decompose(g, u);
      UEnvElement back;
      for (const auto& [m, c] : parts) u_axpy(back, c, u_beta(g, m));
      CHECK(back == u);
    }
  }
}

TEST_CASE("straightening works over polynomial coefficients") {
  LieSuperalgebra g = odd_square();
  auto t0 = EvenPoly::variable(1, 0);
  auto one = EvenPoly::constant(1, Rational(1));
  UElem<EvenPoly> u;
  PBWMonomial ymono = {0, 1};
  uelem_add(u, ymono, t0);
  UElem<EvenPoly> prod = u_mul(g, u, u);
  // (t0 y)(t0 y) = t0^2 (1/2) x
  UElem<EvenPoly> expect;
  EvenPoly half_t2 = t0 * t0;
  half_t2.scale(Rational(1) / Rational(2));
  uelem_add(expect, PBWMonomial{1, 0}, half_t2);
  CHECK(prod == expect);

  UElem<EvenPoly> mixed;
  uelem_add(mixed, PBWMonomial{1, 0}, one + t0 * t0);
  uelem_add(mixed, ymono, t0);
  auto parts = beta_decompose(g, mixed);
  UElem<EvenPoly> back;
  for (const auto& [m, c] : parts) u_axpy(back, c, u_beta(g, m));
  CHECK(back == mixed);
}

TEST_CASE("antipode matches the frozen values") {
  LieSuperalgebra g = odd_square();
  UEnvElement x = u_generator(g, 0);
  UEnvElement y = u_generator(g, 1);
  CHECK(antipode(g, u_one(g)) == u_one(g));
  CHECK(antipode(g, y) == scaled(y, Rational(-1)));
  CHECK(antipode(g, x) == scaled(x, Rational(-1)));
  // S(y y) = S((1/2) x) = -(1/2) x
  CHECK(antipode(g, u_mul(g, y, y)) ==
        mono(g, {1, 0}, Rational(-1) / Rational(2)));
  // and the anti-homomorphism route agrees: (-1)^{1*1} S(y) S(y)
  CHECK(antipode(g, u_mul(g, y, y)) ==
        scaled(u_mul(g, antipode(g, y), antipode(g, y)), Rational(-1)));
  CHECK(antipode(g, mono(g, {1, 1}, Rational(1))) ==
        mono(g, {1, 1}, Rational(1)));
}

TEST_CASE("antipode is an involution and a graded anti-homomorphism") {
  Gen gen(605);
  std::vector<LieSuperalgebra> corpus = {sl2(), superloop_algebra(odd_square())};
  for (const auto& g : corpus) {
    for (int trial = 0; trial < 8; ++trial) {
      UEnvElement u = random_uelem(gen, g, 3, 3);
      CHECK(antipode(g, antipode(g, u)) == u);
      int pu = gen.uniform(0, 1);
      int pv = gen.uniform(0, 1);
      UEnvElement hu = random_homogeneous(gen, g, pu, 3, 2);
      UEnvElement hv = random_homogeneous(gen, g, pv, 3, 2);
      UEnvElement lhs = antipode(g, u_mul(g, hu, hv));
      UEnvElement rhs = u_mul(g, antipode(g, hv), antipode(g, hu));
      if (pu == 1 && pv == 1) rhs = scaled(rhs, Rational(-1));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("antipode probe localizes the recursion discrepancy") {
  LieSuperalgebra g = odd_square();
  UEnvElement x = u_generator(g, 0);
  UEnvElement y = u_generator(g, 1);
  // x central: both evaluations give S(xy) = xy
  AntipodeProbe central = antipode_probe(g, x, y);
  CHECK(central.agree);
  CHECK(central.of_product == mono(g, {1, 1}, Rational(1)));
  // u = v = y: the genuine antipode gives -(1/2)x, the shortened recursion
  // flips the sign, so the two disagree and the probe surfaces both
  AntipodeProbe square = antipode_probe(g, y, y);
  CHECK_FALSE(square.agree);
  CHECK(square.of_product == mono(g, {1, 0}, Rational(-1) / Rational(2)));
  CHECK(square.by_reversal == mono(g, {1, 0}, Rational(1) / Rational(2)));
  // mixed parity throws
  UEnvElement bad;
  uelem_add(bad, PBWMonomial{1, 0}, Rational(1));
  uelem_add(bad, PBWMonomial{0, 1}, Rational(1));
  CHECK_THROWS_AS(antipode_probe(g, bad, y), invariant_error);
}

TEST_CASE("doubled algebra flips parities and keeps the ideal abelian") {
  LieSuperalgebra g = odd_square();
  LieSuperalgebra d = superloop_algebra(g);
  CHECK(d.dim() == 4);
  CHECK(d.name(2) == "pi:x");
  CHECK(d.name(3) == "pi:y");
  CHECK(d.parity(2) == 1);
  CHECK(d.parity(3) == 0);
  CHECK(check_lie(d).pass);
  // [y, pi:y] = pi:x
  FormalSum<int> pix;
  pix.add(2, Rational(1));
  CHECK(d.bracket(1, 3) == pix);
  // second copy is abelian
  for (int i = 2; i < 4; ++i)
    for (int j = 2; j < 4; ++j) CHECK(d.bracket(i, j).empty());

  CHECK(check_lie(superloop_algebra(abelian(1, 2))).pass);
  CHECK(check_lie(superloop_algebra(sl2())).pass);
  CHECK(check_lie(superloop_algebra(d)).pass);

  FormalSum<int> ybad;
  ybad.add(1, Rational(1));
  LieSuperalgebra broken = make_lie({"x", "y"}, {0, 1}, {{1, 1, ybad}});
  CHECK_THROWS_AS(superloop_algebra(broken), invariant_error);
}

TEST_CASE("parity bookkeeping on monomials and elements") {
  LieSuperalgebra g = odd_square();
  CHECK(u_parity(g, {2, 0}) == 0);
  CHECK(u_parity(g, {2, 1}) == 1);
  CHECK_THROWS_AS(u_parity(g, {1, 0, 0}), reference_error);
  CHECK_THROWS_AS(u_word(g, {0, 2}), invariant_error);
  CHECK(u_homogeneous_parity(g, UEnvElement{}) == 0);
  CHECK(u_homogeneous_parity(g, u_generator(g, 1)) == 1);
  UEnvElement bad;
  uelem_add(bad, PBWMonomial{1, 0}, Rational(1));
  uelem_add(bad, PBWMonomial{0, 1}, Rational(1));
  CHECK_THROWS_AS(u_homogeneous_parity(g, bad), invariant_error);
}
