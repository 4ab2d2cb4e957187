#include "sgk/lie.hpp"

#include <set>
#include <sstream>

namespace sgk {
namespace {

std::string pair_str(const LieSuperalgebra& g, int i, int j) {
  return "[" + g.name(i) + "," + g.name(j) + "]";
}

}  // namespace

int LieSuperalgebra::find(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (names_[static_cast<size_t>(i)] == name) return i;
  throw reference_error("unknown basis element '" + name + "'");
}

LieSuperalgebra make_lie(
    std::vector<std::string> names, std::vector<int> parities,
    const std::vector<std::tuple<int, int, FormalSum<int>>>& table) {
  const int n = static_cast<int>(names.size());
  if (parities.size() != names.size())
    throw reference_error("basis names and parities differ in length");
  std::set<std::string> seen;
  for (const auto& nm : names) {
    if (nm.empty()) throw reference_error("empty basis name");
    if (!seen.insert(nm).second)
      throw reference_error("duplicate basis name '" + nm + "'");
  }
  for (int p : parities)
    if (p != 0 && p != 1) throw reference_error("parity must be 0 or 1");

  LieSuperalgebra g;
  g.names_ = std::move(names);
  g.parities_ = std::move(parities);
  g.brackets_.assign(static_cast<size_t>(n),
                     std::vector<FormalSum<int>>(static_cast<size_t>(n)));
  std::set<std::pair<int, int>> filled;
  for (const auto& [i, j, value] : table) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw reference_error("bracket index out of range");
    if (!filled.insert({i, j}).second) {
      std::ostringstream os;
      os << "bracket pair (" << i << "," << j << ") listed twice";
      throw reference_error(os.str());
    }
    for (const auto& [k, c] : value.terms()) {
      (void)c;
      if (k < 0 || k >= n)
        throw reference_error("bracket component index out of range");
    }
    g.brackets_[static_cast<size_t>(i)][static_cast<size_t>(j)] = value;
  }

  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < n; ++i)
      if (g.parities_[static_cast<size_t>(i)] == pass) g.order_.push_back(i);
  g.ranks_.assign(static_cast<size_t>(n), 0);
  for (int r = 0; r < n; ++r)
    g.ranks_[static_cast<size_t>(g.order_[static_cast<size_t>(r)])] = r;
  return g;
}

LieCheckResult check_lie(const LieSuperalgebra& g) {
  const int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int want = (g.parity(i) + g.parity(j)) % 2;
      for (const auto& [k, c] : g.bracket(i, j).terms()) {
        (void)c;
        if (g.parity(k) != want)
          return {false,
                  pair_str(g, i, j) + " has a component on " + g.name(k) +
                      " of the wrong parity",
                  i, j, k};
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // [x,y] + (-1)^{|x||y|} [y,x] must vanish.
      FormalSum<int> defect = g.bracket(i, j);
      FormalSum<int> other = g.bracket(j, i);
      if (g.parity(i) == 1 && g.parity(j) == 1) other.scale(Rational(-1));
      defect += other;
      if (!defect.empty())
        return {false,
                pair_str(g, i, j) + " and " + pair_str(g, j, i) +
                    " violate super-antisymmetry",
                i, j, -1};
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        FormalSum<int> a;
        a.add(i, Rational(1));
        FormalSum<int> b;
        b.add(j, Rational(1));
        FormalSum<int> c;
        c.add(l, Rational(1));
        FormalSum<int> lhs = lie_bracket(g, a, lie_bracket(g, b, c));
        FormalSum<int> rhs = lie_bracket(g, lie_bracket(g, a, b), c);
        FormalSum<int> mixed = lie_bracket(g, b, lie_bracket(g, a, c));
        if (g.parity(i) == 1 && g.parity(j) == 1) mixed.scale(Rational(-1));
        rhs += mixed;
        rhs.scale(Rational(-1));
        lhs += rhs;
        if (!lhs.empty())
          return {false,
                  "Jacobi fails on (" + g.name(i) + "," + g.name(j) + "," +
                      g.name(l) + ")",
                  i, j, l};
      }
  return {true, "", -1, -1, -1};
}

FormalSum<int> lie_bracket(const LieSuperalgebra& g, const FormalSum<int>& a,
                           const FormalSum<int>& b) {
  FormalSum<int> out;
  for (const auto& [i, ca] : a.terms())
    for (const auto& [j, cb] : b.terms())
      for (const auto& [k, c] : g.bracket(i, j).terms())
        out.add(k, ca * cb * c);
  return out;
}

LieSuperalgebra superloop_algebra(const LieSuperalgebra& g) {
  LieCheckResult base = check_lie(g);
  if (!base.pass)
    throw invariant_error("superloop input is not a Lie superalgebra: " +
                          base.detail);
  const int n = g.dim();
  std::vector<std::string> names = g.names();
  std::vector<int> parities = g.parities();
  // Prefix for the flipped copy; stepped when the input already uses it, so
  // doubling can be iterated.
  std::string prefix = "pi:";
  for (int attempt = 1;; ++attempt) {
    bool clash = false;
    for (int i = 0; i < n && !clash; ++i)
      for (int j = 0; j < n && !clash; ++j)
        if (g.name(i) == prefix + g.name(j)) clash = true;
    if (!clash) break;
    prefix = "pi." + std::to_string(attempt) + ":";
  }
  for (int i = 0; i < n; ++i) {
    names.push_back(prefix + g.name(i));
    parities.push_back(1 - g.parity(i));
  }
  std::vector<std::tuple<int, int, FormalSum<int>>> table;
  auto shifted = [&](const FormalSum<int>& v, const Rational& scale) {
    FormalSum<int> out;
    for (const auto& [k, c] : v.terms()) out.add(k + n, c * scale);
    return out;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!g.bracket(i, j).empty()) table.emplace_back(i, j, g.bracket(i, j));
      // [b_i, pi:b_j] = pi:[b_i, b_j]
      FormalSum<int> mixed = shifted(g.bracket(i, j), Rational(1));
      if (!mixed.empty()) table.emplace_back(i, j + n, mixed);
      // [pi:b_i, b_j] = (-1)^{|b_j|} pi:[b_i, b_j]
      FormalSum<int> mirrored = shifted(
          g.bracket(i, j), g.parity(j) == 1 ? Rational(-1) : Rational(1));
      if (!mirrored.empty()) table.emplace_back(i + n, j, mirrored);
    }
  LieSuperalgebra out = make_lie(std::move(names), std::move(parities), table);
  LieCheckResult check = check_lie(out);
  if (!check.pass)
    throw invariant_error("superloop construction broke the axioms: " +
                          check.detail);
  return out;
}

int u_parity(const LieSuperalgebra& g, const PBWMonomial& m) {
  if (static_cast<int>(m.size()) != g.dim())
    throw reference_error("monomial arity does not match the basis");
  int p = 0;
  for (int i = 0; i < g.dim(); ++i)
    p += static_cast<int>(m[static_cast<size_t>(i)]) * g.parity(i);
  return p % 2;
}

std::vector<int> u_word(const LieSuperalgebra& g, const PBWMonomial& m) {
  if (static_cast<int>(m.size()) != g.dim())
    throw reference_error("monomial arity does not match the basis");
  std::vector<int> w;
  for (int idx : g.normal_order()) {
    const uint32_t e = m[static_cast<size_t>(idx)];
    if (g.parity(idx) == 1 && e > 1)
      throw invariant_error("odd exponent above 1 in a normal monomial");
    for (uint32_t t = 0; t < e; ++t) w.push_back(idx);
  }
  return w;
}

int u_homogeneous_parity(const LieSuperalgebra& g, const UEnvElement& u) {
  std::optional<int> p;
  for (const auto& [m, c] : u.terms) {
    (void)c;
    const int mp = u_parity(g, m);
    if (!p) {
      p = mp;
    } else if (*p != mp) {
      throw invariant_error("element is not parity-homogeneous");
    }
  }
  return p.value_or(0);
}

AntipodeProbe antipode_probe(const LieSuperalgebra& g, const UEnvElement& u,
                             const UEnvElement& v) {
  const int pu = u_homogeneous_parity(g, u);
  const int pv = u_homogeneous_parity(g, v);
  AntipodeProbe probe;
  probe.of_product = antipode(g, u_mul(g, u, v));
  UEnvElement reversed = antipode(g, u_mul(g, v, u));
  if (pu == 1 && pv == 1) {
    UEnvElement flipped;
    for (const auto& [m, c] : reversed.terms) uelem_add(flipped, m, -c);
    reversed = std::move(flipped);
  }
  probe.by_reversal = std::move(reversed);
  probe.agree = probe.of_product == probe.by_reversal;
  return probe;
}

UEnvElement symmetrize(const LieSuperalgebra& g, const std::vector<int>& word) {
  for (int idx : word)
    if (idx < 0 || idx >= g.dim())
      throw reference_error("generator index out of range");
  const int n = static_cast<int>(word.size());
  if (n == 0) return u_one(g);
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  const Rational weight =
      Rational(1) / Rational::factorial(static_cast<unsigned>(n));
  UEnvElement out;
  do {
    // Koszul sign: one flip per inverted pair of odd letters.
    int inversions = 0;
    for (int s = 0; s < n; ++s)
      for (int t = s + 1; t < n; ++t)
        if (perm[static_cast<size_t>(s)] > perm[static_cast<size_t>(t)] &&
            g.parity(word[static_cast<size_t>(perm[static_cast<size_t>(s)])]) == 1 &&
            g.parity(word[static_cast<size_t>(perm[static_cast<size_t>(t)])]) == 1)
          ++inversions;
    std::vector<int> arranged(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t)
      arranged[static_cast<size_t>(t)] =
          word[static_cast<size_t>(perm[static_cast<size_t>(t)])];
    detail::straighten_word(g, arranged,
                            inversions % 2 ? -weight : weight,
                            StraightenOrder::leftmost, out.terms);
  } while (std::next_permutation(perm.begin(), perm.end()));
  detail::prune_zeros(out.terms);
  return out;
}

UEnvElement u_beta(const LieSuperalgebra& g, const PBWMonomial& m) {
  return symmetrize(g, u_word(g, m));
}

PBWMonomial odd_subset_monomial(const LieSuperalgebra& g,
                                const std::vector<int>& ordinals) {
  PBWMonomial m(static_cast<size_t>(g.dim()), 0);
  int prev = -1;
  for (int t : ordinals) {
    if (t <= prev || t >= g.odd_count())
      throw reference_error("odd ordinals must be ascending and in range");
    m[static_cast<size_t>(g.odd_index(t))] = 1;
    prev = t;
  }
  return m;
}

}  // namespace sgk
