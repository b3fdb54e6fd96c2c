#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "liecurv/curvature.hpp"

using namespace liecurv;

namespace {

struct F4Setup {
  RootSystemData rs;
  CompactBasis cb;
  GradedDecomposition dec;
  CasimirMatrix cm;
};

const F4Setup& setup() {
  static F4Setup s = [] {
    F4Setup x;
    x.rs = build_root_system(parse_cartan_type("F4"));
    x.cb = compact_form(build_chevalley(x.rs));
    auto theta = involution_from_marks(x.rs, {{0, 0, 0, 1}});
    auto tau = involution_from_marks(x.rs, {{0, 0, 1, 0}});
    x.dec = joint_decomposition(theta, tau, x.cb);
    x.cm = casimir_matrix(x.dec, x.cb);
    return x;
  }();
  return s;
}

Metric4<Rational> qmetric(const char* a, const char* b, const char* c,
                          const char* d) {
  return {parse_rational(a), parse_rational(b), parse_rational(c),
          parse_rational(d)};
}

Metric4<double> dmetric(const Metric4<Rational>& u) {
  return {to_double(u[0]), to_double(u[1]), to_double(u[2]), to_double(u[3])};
}

}  // namespace

TEST_CASE("block Casimir constants") {
  const auto& s = setup();
  CHECK(s.cm.dims == std::array<int, 4>{28, 8, 8, 8});

  CHECK(s.cm.c[0][0] == 12);
  for (int j = 1; j < 4; ++j) {
    CHECK(s.cm.c[0][j] == 7);
    CHECK(s.cm.c[j][0] == 2);
    CHECK(s.cm.c[j][j] == 7);
    for (int i = 1; i < 4; ++i)
      if (i != j) CHECK(s.cm.c[i][j] == 2);
  }

  // Column sums recover the adjoint Casimir constant.
  Rational full = killing_ratio(s.rs);
  CHECK(full == 18);
  for (int j = 0; j < 4; ++j) {
    Rational col(0);
    for (int i = 0; i < 4; ++i) col += s.cm.c[i][j];
    CHECK(col == full);
  }

  // c[i][j]·dim_j is symmetric in (i, j).
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(s.cm.c[i][j] * s.cm.dims[j] == s.cm.c[j][i] * s.cm.dims[i]);
}

TEST_CASE("triple-bracket sums") {
  const auto& s = setup();
  TripleBracketTable lr = triple_brackets(s.dec, s.cb, "long-root-2");
  TripleBracketTable nk = triple_brackets(s.dec, s.cb, "negative-killing");
  CHECK_THROWS_AS(triple_brackets(s.dec, s.cb, "euclidean"), InputError);

  CHECK(lr.t[0][0][0] == 336);
  CHECK(lr.t[0][1][1] == 56);
  CHECK(lr.t[3][1][2] == 16);

  Rational ratio = killing_ratio(s.rs);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        // Rescaling the form by c divides each sum by c.
        CHECK(nk.t[k][i][j] * ratio == lr.t[k][i][j]);
        // Zero off the Klein target, full S3 symmetry elsewhere.
        if (klein_target(i, j) != k) CHECK(lr.t[k][i][j] == 0);
        CHECK(lr.t[k][i][j] == lr.t[k][j][i]);
        CHECK(lr.t[k][i][j] == lr.t[i][k][j]);
        CHECK(lr.t[k][i][j] == lr.t[j][i][k]);
      }

  // Each sum equals the Casimir entry times the source dimension.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(lr.t[klein_target(i, j)][i][j] == s.cm.c[i][j] * s.cm.dims[j]);

  // Unit-normalized rows: Σ_{i,j} t[j][k][i] counts dim of block k.
  for (int k = 0; k < 4; ++k) {
    Rational total(0);
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) total += nk.t[j][k][i];
    CHECK(total == s.cm.dims[k]);
  }
}

TEST_CASE("closed-form Ricci eigenvalues") {
  const auto& s = setup();

  auto flat = ricci_closed_form(qmetric("1", "1", "1", "1"), s.cm);
  for (auto& r : flat) CHECK(r == Rational(9) / 2);

  auto r35 = ricci_closed_form(qmetric("3/5", "1", "1", "1"), s.cm);
  for (auto& r : r35) CHECK(r == Rational(59) / 10);

  auto r711 = ricci_closed_form(qmetric("7/11", "1", "1", "7/11"), s.cm);
  for (auto& r : r711) CHECK(r == Rational(135) / 22);

  auto rz = ricci_closed_form(qmetric("1", "1", "1", "2"), s.cm);
  CHECK(rz[0] == Rational(33) / 8);
  CHECK(rz[1] == Rational(7) / 2);
  CHECK(rz[2] == Rational(7) / 2);
  CHECK(rz[3] == Rational(37) / 8);

  CHECK_THROWS_AS(ricci_closed_form(qmetric("0", "1", "1", "1"), s.cm),
                  InputError);
  CHECK_THROWS_AS(ricci_closed_form(qmetric("-1", "1", "1", "1"), s.cm),
                  InputError);

  // Floating-point instantiation tracks the exact one.
  auto u = qmetric("5/4", "2/3", "1", "7/5");
  auto exact = ricci_closed_form(u, s.cm);
  auto approx = ricci_closed_form(dmetric(u), s.cm);
  for (int k = 0; k < 4; ++k)
    CHECK(approx[k] == doctest::Approx(to_double(exact[k])).epsilon(1e-14));
}

TEST_CASE("triple-bracket Ricci evaluator") {
  const auto& s = setup();
  TripleBracketTable nk = triple_brackets(s.dec, s.cb, "negative-killing");
  TripleBracketTable lr = triple_brackets(s.dec, s.cb, "long-root-2");

  std::vector<Rational> ones(4, Rational(1));
  auto flat = ricci_triple_bracket(ones, nk);
  for (auto& r : flat) CHECK(r == Rational(1) / 4);

  CHECK_THROWS_AS(ricci_triple_bracket(ones, lr), InputError);
  CHECK_THROWS_AS(
      ricci_triple_bracket(std::vector<Rational>(3, Rational(1)), nk),
      InputError);
  CHECK_THROWS_AS(
      ricci_triple_bracket(std::vector<Rational>{1, 1, -1, 1}, nk), InputError);

  // The same geometry in both coordinate conventions: u against the
  // root-normalized form is y = u/18 against the negative Killing form.
  for (auto u : {qmetric("1", "1", "1", "1"), qmetric("3/5", "1", "1", "1"),
                 qmetric("7/11", "1", "1", "7/11"), qmetric("1", "1", "1", "2"),
                 qmetric("5/4", "2/3", "1", "7/5")}) {
    std::vector<Rational> y(4);
    for (int k = 0; k < 4; ++k) y[k] = u[k] / 18;
    auto via_tb = ricci_triple_bracket(y, nk);
    auto via_cm = ricci_closed_form(u, s.cm);
    for (int k = 0; k < 4; ++k) CHECK(via_tb[k] == via_cm[k]);
  }

  // Scale covariance: r(c·y) = r(y)/c.
  std::vector<Rational> y{Rational(1) / 2, Rational(2), Rational(3) / 4,
                          Rational(5)};
  std::vector<Rational> y3 = y;
  for (auto& v : y3) v *= 3;
  auto base = ricci_triple_bracket(y, nk);
  auto scaled = ricci_triple_bracket(y3, nk);
  for (int k = 0; k < 4; ++k) CHECK(scaled[k] * 3 == base[k]);
}

TEST_CASE("connection coefficients") {
  auto u = qmetric("5/4", "2/3", "1", "7/5");
  auto ct = connection_table(u);

  for (int i = 0; i < 4; ++i) {
    CHECK(ct.kappa[i][i] == Rational(1) / 2);
    for (int j = 0; j < 4; ++j) {
      // Torsion-free: the two halves of a bracket add up.
      CHECK(ct.kappa[i][j] + ct.kappa[j][i] == 1);
      // Metric: ⟨∇x·y, z⟩ + ⟨y, ∇x·z⟩ = 0 reduces to this balance.
      int t = klein_target(i, j);
      CHECK(ct.kappa[i][j] * u[t] == ct.kappa[i][t] * u[j]);
    }
  }

  auto flat = connection_table(qmetric("1", "1", "1", "1"));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(flat.kappa[i][j] == Rational(1) / 2);
}

TEST_CASE("curvature-tensor Ricci agrees with the closed form") {
  const auto& s = setup();

  // Exact paths.
  for (auto u : {qmetric("1", "1", "1", "1"), qmetric("3/5", "1", "1", "1"),
                 qmetric("1", "1", "1", "2")}) {
    auto direct = ricci_connection_path(u, s.cb, s.dec);
    auto closed = ricci_closed_form(u, s.cm);
    for (int k = 0; k < 4; ++k) CHECK(direct[k] == closed[k]);
  }

  // Randomized floating-point agreement.
  std::mt19937 gen(20240521u);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  for (int trial = 0; trial < 12; ++trial) {
    Metric4<double> u{dist(gen), dist(gen), dist(gen), dist(gen)};
    auto direct = ricci_connection_path(u, s.cb, s.dec);
    Metric4<double> closed = ricci_closed_form(u, s.cm);
    for (int k = 0; k < 4; ++k)
      CHECK(direct[k] == doctest::Approx(closed[k]).epsilon(1e-12));
  }
}

TEST_CASE("natural-reductivity classification") {
  auto c1 = naturally_reductive_test(qmetric("1", "1", "1", "1"));
  CHECK(c1.cls == MetricClass::bi_invariant);
  CHECK(c1.label() == "bi-invariant");

  auto c2 = naturally_reductive_test(qmetric("3/5", "1", "1", "1"));
  CHECK(c2.cls == MetricClass::tail_equal);
  CHECK(c2.label() == "case-1 naturally reductive");

  auto c3 = naturally_reductive_test(qmetric("7/11", "1", "1", "7/11"));
  CHECK(c3.cls == MetricClass::paired);
  CHECK(c3.partner == 4);
  CHECK(c3.label() == "case-2 naturally reductive");

  auto c4 = naturally_reductive_test(qmetric("2", "2", "1", "1"));
  CHECK(c4.cls == MetricClass::paired);
  CHECK(c4.partner == 2);

  auto c5 = naturally_reductive_test(qmetric("3", "1", "3", "1"));
  CHECK(c5.cls == MetricClass::paired);
  CHECK(c5.partner == 3);

  auto c6 = naturally_reductive_test(qmetric("1", "1", "1", "2"));
  CHECK(c6.cls == MetricClass::generic_metric);
  CHECK(c6.label() == "non-naturally reductive");

  CHECK(naturally_reductive_test(qmetric("7/11", "1", "1", "1")).cls ==
        MetricClass::tail_equal);

  // Floating-point inputs compare with relative slack 1e-9.
  Metric4<double> near_flat{1.0, 1.0 + 1e-12, 1.0, 1.0};
  CHECK(naturally_reductive_test(near_flat).cls == MetricClass::bi_invariant);
  Metric4<double> apart{1.0, 1.0 + 1e-6, 1.0, 1.0};
  CHECK(naturally_reductive_test(apart).cls != MetricClass::bi_invariant);
  Metric4<double> nr{0.70189, 1.0, 1.0, 1.38415};
  CHECK(naturally_reductive_test(nr).cls == MetricClass::generic_metric);

  CHECK_THROWS_AS(naturally_reductive_test(qmetric("0", "1", "1", "1")),
                  InputError);
}
