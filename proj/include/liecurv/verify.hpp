#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "liecurv/einstein.hpp"

namespace liecurv {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string expected;
  std::string computed;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Dimension, root count, and exact Jacobi identity of the built algebra.
inline CheckResult check_algebra_integrity(const RootSystemData& rs,
                                           const CompactBasis& cb) {
  CheckResult r{"algebra-integrity", false, "dim 52, 48 roots, jacobi pass", ""};
  int roots = static_cast<int>(2 * rs.positive.size());
  JacobiReport jac = jacobi_check(cb.table);
  r.computed = "dim " + std::to_string(cb.dim) + ", " + std::to_string(roots) +
               " roots, jacobi " + (jac.pass ? "pass" : "fail: " + jac.detail);
  r.pass = cb.dim == 52 && algebra_dimension(rs) == 52 && roots == 48 && jac.pass;
  return r;
}

/// Casimir eigenvalues of the reference modules and the block Casimir
/// matrix of the decomposition, including exact column sums.
inline CheckResult check_casimir_table(const CasimirMatrix& cm) {
  CheckResult r{"casimir-table", false,
                "module constants 9/14/12/7; c = [12 7 7 7; 2 7 2 2; "
                "2 2 7 2; 2 2 2 7] with every column summing to 18",
                ""};
  auto b4 = build_root_system(parse_cartan_type("B4"));
  auto d4 = build_root_system(parse_cartan_type("D4"));
  Rational spinor = casimir_constant(b4, b4.fundamental[3]);
  Rational b4_adjoint = killing_ratio(b4);
  Rational d4_adjoint = killing_ratio(d4);
  Rational vec = casimir_constant(d4, d4.fundamental[0]);
  bool consts = spinor == 9 && b4_adjoint == 14 && d4_adjoint == 12 && vec == 7;

  bool matrix = cm.c[0][0] == 12;
  for (int j = 1; j < 4; ++j) {
    matrix = matrix && cm.c[0][j] == 7 && cm.c[j][0] == 2 && cm.c[j][j] == 7;
    for (int i = 1; i < 4; ++i)
      if (i != j) matrix = matrix && cm.c[i][j] == 2;
  }
  bool columns = true;
  for (int j = 0; j < 4; ++j) {
    Rational col(0);
    for (int i = 0; i < 4; ++i) col += cm.c[i][j];
    columns = columns && col == 18;
  }

  r.computed = "module constants " + spinor.get_str() + "/" +
               b4_adjoint.get_str() + "/" + d4_adjoint.get_str() + "/" +
               vec.get_str() + "; matrix " + (matrix ? "exact" : "mismatch") +
               "; column sums " + (columns ? "all 18" : "off");
  r.pass = consts && matrix && columns;
  return r;
}

/// Sum rule of the unit-normalized triple brackets plus spot values in the
/// root normalization.
inline CheckResult check_sum_rule(const TripleBracketTable& nk,
                                  const TripleBracketTable& lr) {
  CheckResult r{"triple-bracket-sum-rule", false,
                "per-block totals 28/8/8/8; spot sums 336, 56, 16", ""};
  bool totals = true;
  std::string got;
  for (int k = 0; k < 4; ++k) {
    Rational total(0);
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) total += nk.t[j][k][i];
    totals = totals && total == nk.dims[k];
    got += (k ? "/" : "") + total.get_str();
  }
  bool spots = lr.t[0][0][0] == 336 && lr.t[0][1][1] == 56 && lr.t[3][1][2] == 16;
  r.computed = "per-block totals " + got + "; spot sums " +
               lr.t[0][0][0].get_str() + ", " + lr.t[0][1][1].get_str() + ", " +
               lr.t[3][1][2].get_str();
  r.pass = totals && spots;
  return r;
}

/// Componentwise agreement of the three Ricci computations on random
/// metrics; the curvature-tensor path also enforces off-block vanishing.
inline CheckResult check_ricci_oracles(const CompactBasis& cb,
                                       const GradedDecomposition& dec,
                                       const CasimirMatrix& cm,
                                       const TripleBracketTable& nk,
                                       int samples = 100) {
  CheckResult r{"ricci-oracle-equivalence", false,
                "three Ricci paths within 1e-12 on " +
                    std::to_string(samples) +
                    " random metrics, off-block entries below 1e-12",
                ""};
  std::mt19937 gen(90210u);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  double worst = 0;
  for (int trial = 0; trial < samples; ++trial) {
    Metric4<double> u{dist(gen), dist(gen), dist(gen), dist(gen)};
    Metric4<double> closed = ricci_closed_form(u, cm);
    std::vector<double> y(4);
    for (int k = 0; k < 4; ++k) y[k] = u[k] / 18.0;
    std::vector<double> brackets = ricci_triple_bracket(y, nk);
    Metric4<double> conn;
    try {
      conn = ricci_connection_path(u, cb, dec);
    } catch (const Error& e) {
      r.computed = std::string("curvature-tensor path failed: ") + e.what();
      return r;
    }
    for (int k = 0; k < 4; ++k) {
      worst = std::max(worst, std::abs(closed[k] - brackets[k]));
      worst = std::max(worst, std::abs(closed[k] - conn[k]));
    }
  }
  r.computed = "max disagreement " + format_significant(worst, 3) + " over " +
               std::to_string(samples) + " samples";
  r.pass = worst <= 1e-12;
  return r;
}

/// The four Einstein classes with exact residuals for the rational three
/// and pinned four-digit windows for the numeric one.
inline CheckResult check_einstein_solutions(
    const std::vector<EinsteinSolution>& sols) {
  CheckResult r{"einstein-solutions", false,
                "4 classes; (1,1,1,1), (3/5,1,1,1), (7/11,1,1,7/11) exact "
                "with zero residual; numeric class at u1=0.7019(1), "
                "u4=1.3842(1) with residual < 1e-12",
                ""};
  if (sols.size() != 4) {
    r.computed = std::to_string(sols.size()) + " classes";
    return r;
  }
  const Metric4<Rational> expected[3] = {
      {Rational(1), Rational(1), Rational(1), Rational(1)},
      {Rational(3) / 5, Rational(1), Rational(1), Rational(1)},
      {Rational(7) / 11, Rational(1), Rational(1), Rational(7) / 11}};
  bool exact_ok = true;
  for (const auto& want : expected) {
    bool found = false;
    for (const auto& s : sols)
      if (s.exact && s.u_exact == want && einstein_residual(want) == 0)
        found = true;
    exact_ok = exact_ok && found;
  }
  const EinsteinSolution* numeric = nullptr;
  int numeric_count = 0;
  for (const auto& s : sols)
    if (!s.exact) {
      numeric = &s;
      ++numeric_count;
    }
  bool numeric_ok = numeric_count == 1 && numeric &&
                    std::abs(numeric->u[0] - 0.7019) <= 1e-4 &&
                    std::abs(numeric->u[3] - 1.3842) <= 1e-4 &&
                    numeric->residual < 1e-12;
  r.computed = std::string(exact_ok ? "exact classes present with zero residual"
                                    : "exact classes missing or inexact") +
               "; " + std::to_string(numeric_count) + " numeric class" +
               (numeric ? " at u1=" + format_significant(numeric->u[0], 6) +
                              ", u4=" + format_significant(numeric->u[3], 6) +
                              ", residual " +
                              format_significant(numeric->residual, 3)
                        : "");
  r.pass = exact_ok && numeric_ok;
  return r;
}

/// Natural-reductivity verdicts across the four classes.
inline CheckResult check_classification(
    const std::vector<EinsteinSolution>& sols) {
  CheckResult r{"solution-classification", false,
                "bi-invariant, case-1, case-2, and one non-naturally "
                "reductive class",
                ""};
  int counts[4] = {0, 0, 0, 0};
  for (const auto& s : sols) counts[static_cast<int>(s.classification.cls)]++;
  r.computed = std::to_string(counts[0]) + " bi-invariant, " +
               std::to_string(counts[1]) + " case-1, " +
               std::to_string(counts[2]) + " case-2, " +
               std::to_string(counts[3]) + " non-naturally reductive";
  r.pass = sols.size() == 4 && counts[0] == 1 && counts[1] == 1 &&
           counts[2] == 1 && counts[3] == 1;
  return r;
}

/// The all-distinct sweep finds no candidate below the screening residual.
inline CheckResult check_case_c(const CaseCReport& rep) {
  CheckResult r{"case-c-emptiness", false,
                "no all-distinct positive candidate with residual < 1e-6 "
                "over the full grid",
                ""};
  r.computed = std::to_string(rep.grid_points) + " grid points, " +
               std::to_string(rep.real_discriminant) +
               " with real roots, " + std::to_string(rep.positive) +
               " positive, " + std::to_string(rep.candidates.size()) +
               " candidates";
  r.pass = rep.grid_points == 174999 && rep.candidates.empty();
  return r;
}

/// Scale covariance and permutation equivariance of the Ricci data, and
/// exact scale invariance of the classifier.
inline CheckResult check_properties(const CasimirMatrix& cm) {
  CheckResult r{"property-suite", false,
                "r(c·u) = r(u)/c and residual permutation-equivariance "
                "within 1e-12 on 20 random draws; classifier "
                "scale-invariant exactly",
                ""};
  std::mt19937 gen(424242u);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  double worst_scale = 0, worst_perm = 0;
  static const int perms[6][3] = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3},
                                  {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
  for (int trial = 0; trial < 20; ++trial) {
    Metric4<double> u{dist(gen), dist(gen), dist(gen), dist(gen)};
    double c = dist(gen);
    Metric4<double> uc{c * u[0], c * u[1], c * u[2], c * u[3]};
    Metric4<double> base = ricci_closed_form(u, cm);
    Metric4<double> scaled = ricci_closed_form(uc, cm);
    for (int k = 0; k < 4; ++k)
      worst_scale = std::max(worst_scale, std::abs(scaled[k] - base[k] / c));

    double res = einstein_residual(u);
    for (const auto& p : perms) {
      Metric4<double> v{u[0], u[p[0]], u[p[1]], u[p[2]]};
      worst_perm = std::max(worst_perm, std::abs(einstein_residual(v) - res));
    }
  }

  bool classifier = true;
  const Metric4<Rational> samples[] = {
      {Rational(1), Rational(1), Rational(1), Rational(1)},
      {Rational(3) / 5, Rational(1), Rational(1), Rational(1)},
      {Rational(7) / 11, Rational(1), Rational(1), Rational(7) / 11},
      {Rational(1), Rational(1), Rational(1), Rational(2)},
      {Rational(2), Rational(2), Rational(5), Rational(5)}};
  const Rational scales[] = {Rational(3), Rational(1) / 2, Rational(7) / 5};
  for (const auto& u : samples) {
    auto base = naturally_reductive_test(u);
    for (const auto& s : scales) {
      Metric4<Rational> v{u[0] * s, u[1] * s, u[2] * s, u[3] * s};
      auto got = naturally_reductive_test(v);
      classifier = classifier && got.cls == base.cls && got.partner == base.partner;
    }
  }

  r.computed = "scale deviation " + format_significant(worst_scale, 3) +
               ", permutation deviation " + format_significant(worst_perm, 3) +
               ", classifier " + (classifier ? "stable" : "unstable");
  r.pass = worst_scale <= 1e-12 && worst_perm <= 1e-12 && classifier;
  return r;
}

/// The full acceptance battery over a built decomposition.
inline VerifyReport verify_paper_claims(const RootSystemData& rs,
                                        const CompactBasis& cb,
                                        const GradedDecomposition& dec,
                                        int oracle_samples = 100) {
  CasimirMatrix cm = casimir_matrix(dec, cb);
  TripleBracketTable nk = triple_brackets(dec, cb, "negative-killing");
  TripleBracketTable lr = triple_brackets(dec, cb, "long-root-2");
  std::vector<EinsteinSolution> sols = enumerate_solutions(cb, dec);
  CaseCReport casec = solve_case_C();

  VerifyReport rep;
  rep.checks.push_back(check_algebra_integrity(rs, cb));
  rep.checks.push_back(check_casimir_table(cm));
  rep.checks.push_back(check_sum_rule(nk, lr));
  rep.checks.push_back(check_ricci_oracles(cb, dec, cm, nk, oracle_samples));
  rep.checks.push_back(check_einstein_solutions(sols));
  rep.checks.push_back(check_classification(sols));
  rep.checks.push_back(check_case_c(casec));
  rep.checks.push_back(check_properties(cm));
  return rep;
}

}  // namespace liecurv
