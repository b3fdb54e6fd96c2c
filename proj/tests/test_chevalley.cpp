#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liecurv/compact.hpp"

using namespace liecurv;

namespace {

ChevalleyData f4() {
  static ChevalleyData cd = build_chevalley(build_root_system(parse_cartan_type("F4")));
  return cd;
}

// Signed root code for the test helpers: +(k+1) / −(k+1).
RootVector signed_vec(const RootSystemData& rs, int code) {
  RootVector v = rs.positive[std::abs(code) - 1];
  if (code < 0)
    for (auto& x : v) x = -x;
  return v;
}

bool is_root_vec(const RootSystemData& rs, const RootVector& v) {
  RootVector m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m[i] = -v[i];
  return rs.index.count(v) || rs.index.count(m);
}

// Down-string length: largest p with b − p·a a root.
int string_down(const RootSystemData& rs, int a, int b) {
  RootVector va = signed_vec(rs, a), vb = signed_vec(rs, b);
  int p = 0;
  while (true) {
    bool zero = true;
    for (std::size_t i = 0; i < vb.size(); ++i) {
      vb[i] -= va[i];
      if (vb[i]) zero = false;
    }
    if (zero || !is_root_vec(rs, vb)) break;
    ++p;
  }
  return p;
}

}  // namespace

TEST_CASE("F4 table passes the exhaustive Jacobi scan") {
  auto cd = f4();
  CHECK(cd.table.dim == 52);
  auto report = jacobi_check(cd.table);
  CAPTURE(report.detail);
  CHECK(report.pass);
}

TEST_CASE("Cartan pairings and coroot brackets") {
  auto cd = f4();
  const auto& rs = cd.rs;

  // [h_1, x_{α1}] = 2 x_{α1}
  int k1 = rs.index.at(RootVector{1, 0, 0, 0});
  Sparse b = cd.table.bracket(cd.h_index(0), cd.x_index(k1, false));
  REQUIRE(b.size() == 1);
  CHECK(b[0].first == cd.x_index(k1, false));
  CHECK(b[0].second == Rational(2));

  // [x_α, x_{−α}] = h_α for every positive root.
  for (int k = 0; k < cd.npos(); ++k) {
    Sparse h = cd.table.bracket(cd.x_index(k, false), cd.x_index(k, true));
    std::vector<int> c = coroot_coordinates(rs, rs.positive[k]);
    Sparse expect;
    for (int j = 0; j < rs.rank; ++j)
      if (c[j]) expect.emplace_back(j, Rational(c[j]));
    CHECK(h == expect);
  }

  // Highest root has coroot coordinates (2,3,2,1).
  auto top = coroot_coordinates(rs, highest_root(rs));
  CHECK(top == std::vector<int>{2, 3, 2, 1});
}

TEST_CASE("structure constants satisfy |N| = p+1 and N(-a,-b) = -N(a,b)") {
  auto cd = f4();
  const auto& rs = cd.rs;
  int P = static_cast<int>(rs.positive.size());
  int checked = 0;
  for (int a = -P; a <= P; ++a) {
    if (a == 0) continue;
    for (int b = -P; b <= P; ++b) {
      if (b == 0 || b == a || b == -a) continue;
      RootVector s = signed_vec(rs, a);
      RootVector t = signed_vec(rs, b);
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += t[i];
      if (!is_root_vec(rs, s)) continue;
      Rational n = structure_constant(cd, a, b);
      CHECK(is_integer(n));
      Rational expected(string_down(rs, a, b) + 1);
      CHECK(abs(n) == expected);
      CHECK(structure_constant(cd, -a, -b) == -n);
      ++checked;
    }
  }
  CHECK(checked > 400);
}

TEST_CASE("negating one constant breaks Jacobi") {
  auto cd = f4();
  // Flipping the sign of one N-constant (and its mirror, keeping
  // antisymmetry) must surface a witnessing triple.
  int a = cd.x_index(cd.rs.index.at(RootVector{0, 0, 1, 0}), false);
  int b = cd.x_index(cd.rs.index.at(RootVector{0, 0, 0, 1}), false);
  Sparse val = cd.table.bracket(a, b);
  REQUIRE(!val.empty());
  cd.table.set(a, b, sparse_neg(val));
  auto report = jacobi_check(cd.table);
  CHECK(!report.pass);
  CHECK(report.c >= 0);
}

TEST_CASE("small and rank-generic tables pass Jacobi") {
  for (const char* name : {"A1", "A2", "B2", "B4", "C3", "D4"}) {
    CAPTURE(name);
    auto cd = build_chevalley(build_root_system(parse_cartan_type(name)));
    CHECK(jacobi_check(cd.table).pass);
  }
}

TEST_CASE("compact form of F4") {
  auto cb = compact_form(f4());
  CHECK(cb.dim == 52);
  int nu = 0, nv = 0, nc = 0;
  for (auto& e : cb.elements) {
    if (e.kind == CompactBasis::Element::u) ++nu;
    if (e.kind == CompactBasis::Element::v) ++nv;
    if (e.kind == CompactBasis::Element::cartan) ++nc;
  }
  CHECK(nu == 24);
  CHECK(nv == 24);
  CHECK(nc == 4);

  CHECK(jacobi_check(cb.table).pass);

  // [u_α, v_α] lies in the Cartan part.
  for (int k = 0; k < 24; ++k) {
    Sparse b = cb.table.bracket(cb.u_index(k), cb.v_index(k));
    REQUIRE(!b.empty());
    for (auto& [idx, c] : b) CHECK(idx < cb.rs.rank);
  }
}

TEST_CASE("invariant form is diagonal, positive, and ad-antisymmetric") {
  auto cb = compact_form(f4());
  for (const Rational& n : cb.norm) CHECK(n > 0);

  // B([e_a, e_b], e_c) + B(e_b, [e_a, e_c]) = 0 for all basis triples; with
  // B diagonal both values are single lookups.
  auto coeff_of = [&](const Sparse& v, int idx) {
    for (auto& [i, c] : v)
      if (i == idx) return c;
    return Rational(0);
  };
  for (int a = 0; a < cb.dim; ++a)
    for (int b = 0; b < cb.dim; ++b)
      for (int c = b; c < cb.dim; ++c) {
        Rational lhs = coeff_of(cb.table.bracket(a, b), c) * cb.norm[c];
        Rational rhs = coeff_of(cb.table.bracket(a, c), b) * cb.norm[b];
        if (lhs + rhs != 0) {
          CAPTURE(a);
          CAPTURE(b);
          CAPTURE(c);
          REQUIRE(lhs + rhs == 0);
        }
      }
}

TEST_CASE("adjoint Casimir sum on the compact form") {
  // Σ_k ad(e_k)²/B(e_k,e_k) = −c·Id with c the adjoint Casimir constant.
  auto check = [](const char* name, int expected) {
    auto cb = compact_form(build_chevalley(build_root_system(parse_cartan_type(name))));
    for (int j = 0; j < cb.dim; ++j) {
      QVec acc(cb.dim, Rational(0));
      for (int k = 0; k < cb.dim; ++k) {
        Sparse once = cb.table.bracket(k, j);
        Sparse twice = cb.table.bracket({{k, Rational(1)}}, once);
        for (auto& [idx, c] : twice) acc[idx] += c / cb.norm[k];
      }
      for (int idx = 0; idx < cb.dim; ++idx)
        CHECK(acc[idx] == (idx == j ? Rational(-expected) : Rational(0)));
    }
  };
  check("F4", 18);
  check("D4", 12);
  check("B4", 14);
}

TEST_CASE("invariant form normalizations") {
  auto cb = compact_form(f4());
  auto lr2 = invariant_form(cb, "long-root-2");
  auto nk = invariant_form(cb, "negative-killing");
  for (int i = 0; i < cb.dim; ++i) CHECK(nk.diag[i] == 18 * lr2.diag[i]);

  auto cbd = compact_form(build_chevalley(build_root_system(parse_cartan_type("D4"))));
  auto nkd = invariant_form(cbd, "negative-killing");
  for (int i = 0; i < cbd.dim; ++i) CHECK(nkd.diag[i] == 12 * cbd.norm[i]);

  CHECK_THROWS_AS(invariant_form(cb, "euclidean"), InputError);
}

TEST_CASE("table dump is deterministic and complete") {
  auto cd = build_chevalley(build_root_system(parse_cartan_type("A2")));
  std::string d1 = dump_table(cd.table);
  std::string d2 = dump_table(cd.table);
  CHECK(d1 == d2);
  CHECK(d1.find("[h1, x[1,0]] = 2*x[1,0]") != std::string::npos);
  CHECK(d1.find("[x[0,1], x[1,0]]") != std::string::npos);
}
