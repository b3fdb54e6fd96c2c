#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "liecurv/curvature.hpp"
#include "liecurv/linalg.hpp"

namespace liecurv {

/// The four balance expressions whose mutual equality characterizes the
/// Einstein metrics of the family. E₁ belongs to the 28-dimensional block;
/// E₂..E₄ are symmetric under permuting (u₂,u₃,u₄).
template <typename T>
std::array<T, 4> evaluate_system(const Metric4<T>& u) {
  require_positive(u);
  std::array<T, 4> e{};
  e[0] = -T(3) / u[0] - u[0] / (T(2) * u[1] * u[1]) -
         u[0] / (T(2) * u[2] * u[2]) - u[0] / (T(2) * u[3] * u[3]);
  for (int m = 1; m < 4; ++m) {
    int p = m == 1 ? 2 : 1, q = m == 3 ? 2 : 3;
    e[m] = T(7) * u[0] / (T(2) * u[m] * u[m]) - T(9) / u[m] +
           (u[p] * u[p] + u[q] * u[q] - u[m] * u[m]) / (u[m] * u[p] * u[q]);
  }
  return e;
}

/// Partial derivatives dE[i][j] = ∂E_{i+1}/∂u_{j+1}.
template <typename T>
std::array<std::array<T, 4>, 4> system_jacobian(const Metric4<T>& u) {
  require_positive(u);
  std::array<std::array<T, 4>, 4> d{};
  T inv_sq_sum = T(1) / (u[1] * u[1]) + T(1) / (u[2] * u[2]) + T(1) / (u[3] * u[3]);
  d[0][0] = T(3) / (u[0] * u[0]) - inv_sq_sum / T(2);
  for (int j = 1; j < 4; ++j) d[0][j] = u[0] / (u[j] * u[j] * u[j]);
  for (int m = 1; m < 4; ++m) {
    int p = m == 1 ? 2 : 1, q = m == 3 ? 2 : 3;
    d[m][0] = T(7) / (T(2) * u[m] * u[m]);
    d[m][m] = -T(7) * u[0] / (u[m] * u[m] * u[m]) + T(9) / (u[m] * u[m]) -
              (u[m] * u[m] + u[p] * u[p] + u[q] * u[q]) /
                  (u[m] * u[m] * u[p] * u[q]);
    d[m][p] = (u[m] * u[m] + u[p] * u[p] - u[q] * u[q]) /
              (u[m] * u[p] * u[p] * u[q]);
    d[m][q] = (u[m] * u[m] + u[q] * u[q] - u[p] * u[p]) /
              (u[m] * u[q] * u[q] * u[p]);
  }
  return d;
}

template <typename T>
T system_residual(const std::array<T, 4>& e) {
  T lo = e[0], hi = e[0];
  for (const T& v : e) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return hi - lo;
}

template <typename T>
T einstein_residual(const Metric4<T>& u) {
  return system_residual(evaluate_system(u));
}

struct NewtonResult {
  Metric4<double> u{};
  double residual = 0;
  int iterations = 0;
};

/// Newton refinement of the balance system in the scale gauge u₂ = 1,
/// solving (E₁−E₂, E₂−E₃, E₃−E₄) = 0 for (u₁, u₃, u₄).
inline NewtonResult newton_refine(const Metric4<double>& u0,
                                  int max_iterations = 20) {
  for (double v : u0)
    if (!(v > 0)) throw InputError("refinement start must be positive");
  Metric4<double> u = u0;
  for (double& v : u) v /= u0[1];

  NewtonResult res;
  res.u = u;
  res.residual = einstein_residual(u);
  if (res.residual <= 1e-13) return res;

  for (int it = 1; it <= max_iterations; ++it) {
    auto e = evaluate_system(u);
    auto d = system_jacobian(u);
    static constexpr int var[3] = {0, 2, 3};
    Mat<double> jac(3, std::vector<double>(3));
    std::vector<double> rhs(3);
    for (int r = 0; r < 3; ++r) {
      rhs[r] = -(e[r] - e[r + 1]);
      for (int c = 0; c < 3; ++c)
        jac[r][c] = d[r][var[c]] - d[r + 1][var[c]];
    }
    std::vector<double> step;
    try {
      step = solve_dense(std::move(jac), std::move(rhs));
    } catch (const Error&) {
      throw ConstructionError("singular Jacobian during refinement");
    }
    for (int c = 0; c < 3; ++c) u[var[c]] += step[c];
    for (double v : u) {
      if (!std::isfinite(v)) throw ConstructionError("refinement diverged");
      if (v <= 0)
        throw ConstructionError("refinement left the positive orthant");
    }
    res.u = u;
    res.residual = einstein_residual(u);
    res.iterations = it;
    if (res.residual <= 1e-13) return res;
  }
  if (res.residual <= 1e-12) return res;
  throw ConstructionError("refinement did not converge within the iteration limit");
}

struct CaseASolutions {
  std::vector<Metric4<Rational>> exact;  // residual identically zero
  std::vector<Metric4<double>> numeric;  // from the cubic branch
  Rational cubic_discriminant;           // of 4t³ − 14t² + 37t − 35
  double cubic_root = 0;
};

namespace detail {

inline double case_a_cubic(double t) {
  return ((4 * t - 14) * t + 37) * t - 35;
}

/// Single positive real root of 4t³ − 14t² + 37t − 35: sign bracketing on
/// [0, 8] in steps of 1/64, bisection, then Newton polish.
inline double case_a_cubic_root() {
  double lo = 0, hi = 0;
  bool found = false;
  for (int k = 0; k < 8 * 64 && !found; ++k) {
    double a = k / 64.0, b = (k + 1) / 64.0;
    if (case_a_cubic(a) <= 0 && case_a_cubic(b) > 0) {
      lo = a;
      hi = b;
      found = true;
    }
  }
  if (!found) throw ConstructionError("cubic bracketing failed");
  while (hi - lo > 1e-12) {
    double mid = (lo + hi) / 2;
    (case_a_cubic(mid) <= 0 ? lo : hi) = mid;
  }
  double t = (lo + hi) / 2;
  for (int it = 0; it < 40; ++it) {
    double f = case_a_cubic(t);
    double df = (12 * t - 28) * t + 37;
    double step = f / df;
    t -= step;
    if (std::abs(step) <= 1e-14 * (1 + std::abs(t))) break;
  }
  return t;
}

}  // namespace detail

/// Solutions with u₂ = u₃ = 1. The branch u₄ = 1 reduces to
/// 5u₁² − 8u₁ + 3 = 0; the branch u₄ ≠ 1 pins u₁ = 2u₄(7−2u₄)/(7u₄+7) and
/// leaves (11u₄−7)(4u₄³−14u₄²+37u₄−35) = 0.
inline CaseASolutions solve_case_A() {
  CaseASolutions out;

  // u₄ = 1: roots 1 and 3/5 of the quadratic.
  out.exact.push_back({Rational(1), Rational(1), Rational(1), Rational(1)});
  out.exact.push_back(
      {Rational(3) / 5, Rational(1), Rational(1), Rational(1)});

  // u₄ ≠ 1, rational factor 11u₄ − 7.
  Rational u4 = Rational(7) / 11;
  Rational u1 = 2 * u4 * (7 - 2 * u4) / (7 * u4 + 7);
  out.exact.push_back({u1, Rational(1), Rational(1), u4});

  for (const auto& s : out.exact)
    if (einstein_residual(s) != 0)
      throw ConstructionError("case-A exact candidate fails the balance system");

  // Cubic factor: Δ < 0, hence exactly one real root.
  Rational a(4), b(-14), c(37), dd(-35);
  out.cubic_discriminant = 18 * a * b * c * dd - 4 * b * b * b * dd +
                           b * b * c * c - 4 * a * c * c * c -
                           27 * a * a * dd * dd;
  if (out.cubic_discriminant >= 0)
    throw ConstructionError("cubic branch no longer has a unique real root");
  double t = detail::case_a_cubic_root();
  out.cubic_root = t;
  double v1 = 2 * t * (7 - 2 * t) / (7 * t + 7);
  if (v1 > 0 && t > 0) out.numeric.push_back({v1, 1.0, 1.0, t});
  return out;
}

struct CaseBSolutions {
  std::vector<Metric4<Rational>> exact;
};

/// Solutions with u₁ = u₂ = 1: the difference E₁ − E₂ factors as
/// (u₃−u₄)²(2u₃u₄+1) up to a positive multiple, forcing u₃ = u₄, and the
/// remaining condition is 7u₃² − 18u₃ + 11 = 0 with roots 1 and 11/7.
inline CaseBSolutions solve_case_B() {
  CaseBSolutions out;
  out.exact.push_back({Rational(1), Rational(1), Rational(1), Rational(1)});
  out.exact.push_back(
      {Rational(1), Rational(1), Rational(11) / 7, Rational(11) / 7});
  for (const auto& s : out.exact)
    if (einstein_residual(s) != 0)
      throw ConstructionError("case-B exact candidate fails the balance system");
  return out;
}

struct CaseCReport {
  long long grid_points = 0;
  long long excluded_pole = 0;
  long long real_discriminant = 0;
  long long positive = 0;
  long long distinct = 0;
  double min_residual = std::numeric_limits<double>::infinity();
  std::vector<Metric4<double>> candidates;  // residual below 1e-6
};

/// Grid search over all-distinct metrics in the gauge u₁ = 1. Pairwise
/// balance forces u₂+u₃+u₄ = 7/4 and u₂u₃ = 7u₄(7/4−u₄)/(22u₄−7), so each
/// grid value of u₄ determines (u₂,u₃) as roots of a quadratic; surviving
/// positive distinct candidates are scored by the full residual.
inline CaseCReport solve_case_C(double step = 1e-5) {
  if (!(step > 0)) throw InputError("grid step must be positive");
  long long kmax = static_cast<long long>(std::floor(1.75 / step));
  if (kmax * step >= 1.75) --kmax;

  auto parts = chunked_map<CaseCReport>(
      static_cast<std::size_t>(kmax), [&](std::size_t lo, std::size_t hi) {
        CaseCReport rep;
        for (std::size_t idx = lo; idx < hi; ++idx) {
          double u4 = static_cast<double>(idx + 1) * step;
          ++rep.grid_points;
          if (std::abs(22 * u4 - 7) < 1e-12) {
            ++rep.excluded_pole;
            continue;
          }
          double s = 1.75 - u4;
          double p = 7 * u4 * s / (22 * u4 - 7);
          double disc = s * s - 4 * p;
          if (disc < 0) continue;
          ++rep.real_discriminant;
          double sq = std::sqrt(disc);
          double u2 = (s + sq) / 2, u3 = (s - sq) / 2;
          if (!(u2 > 0) || !(u3 > 0)) continue;
          ++rep.positive;
          std::array<double, 4> v{1.0, u2, u3, u4};
          bool ok = true;
          for (int x = 0; x < 4 && ok; ++x)
            for (int y = x + 1; y < 4 && ok; ++y)
              if (std::abs(v[x] - v[y]) <=
                  1e-9 * std::max(std::abs(v[x]), std::abs(v[y])))
                ok = false;
          if (!ok) continue;
          ++rep.distinct;
          double res = einstein_residual(Metric4<double>{1.0, u2, u3, u4});
          if (res < rep.min_residual) rep.min_residual = res;
          if (res < 1e-6) rep.candidates.push_back({1.0, u2, u3, u4});
        }
        return rep;
      });

  CaseCReport total;
  for (const auto& rep : parts) {
    total.grid_points += rep.grid_points;
    total.excluded_pole += rep.excluded_pole;
    total.real_discriminant += rep.real_discriminant;
    total.positive += rep.positive;
    total.distinct += rep.distinct;
    total.min_residual = std::min(total.min_residual, rep.min_residual);
    total.candidates.insert(total.candidates.end(), rep.candidates.begin(),
                            rep.candidates.end());
  }
  return total;
}

struct EinsteinSolution {
  bool exact = false;
  Metric4<Rational> u_exact{};  // meaningful when exact
  Metric4<double> u{};          // always set, gauge u₂ = 1
  Rational constant_exact{};    // meaningful when exact
  double constant = 0;          // common Ricci eigenvalue
  double residual = 0;          // balance residual, identically 0 when exact
  ClassificationResult classification;
  std::string provenance;  // case-A | case-B | case-C | newton
};

namespace detail {

/// Canonical representative modulo scaling and permutation of the last
/// three parameters: sort (u₂,u₃,u₄) ascending, then rescale to u₂ = 1.
template <typename T>
Metric4<T> dedup_key(Metric4<T> u) {
  std::sort(u.begin() + 1, u.end());
  T scale = u[1];
  for (T& v : u) v = v / scale;
  return u;
}

inline bool keys_match(const Metric4<double>& a, const Metric4<double>& b) {
  for (int k = 0; k < 4; ++k)
    if (std::abs(a[k] - b[k]) > 1e-8 * std::max(1.0, std::abs(a[k])))
      return false;
  return true;
}

}  // namespace detail

/// Union of the three case analyses, deduplicated modulo scaling and
/// permutation of (u₂,u₃,u₄). Every retained solution is re-verified
/// through the curvature-tensor Ricci computation and classified.
inline std::vector<EinsteinSolution> enumerate_solutions(
    const CompactBasis& cb, const GradedDecomposition& dec) {
  CasimirMatrix cm = casimir_matrix(dec, cb);

  std::vector<EinsteinSolution> out;
  std::vector<Metric4<double>> keys;

  auto seen = [&](const Metric4<double>& key) {
    for (const auto& k : keys)
      if (detail::keys_match(k, key)) return true;
    return false;
  };

  auto add_exact = [&](const Metric4<Rational>& uq, const std::string& tag) {
    Metric4<Rational> gauged = uq;
    for (auto& v : gauged) v = v / uq[1];
    Metric4<double> ud{to_double(gauged[0]), to_double(gauged[1]),
                       to_double(gauged[2]), to_double(gauged[3])};
    Metric4<double> key = detail::dedup_key(ud);
    if (seen(key)) return;

    if (einstein_residual(gauged) != 0)
      throw ConstructionError("exact solution fails the balance system");
    Metric4<Rational> ricci = ricci_connection_path(gauged, cb, dec);
    for (int k = 1; k < 4; ++k)
      if (ricci[k] != ricci[0])
        throw ConstructionError("exact solution is not Einstein under the "
                                "curvature-tensor check");
    Metric4<Rational> closed = ricci_closed_form(gauged, cm);
    if (closed != ricci)
      throw ConstructionError("Ricci paths disagree on an exact solution");

    EinsteinSolution sol;
    sol.exact = true;
    sol.u_exact = gauged;
    sol.u = ud;
    sol.constant_exact = ricci[0];
    sol.constant = to_double(ricci[0]);
    sol.residual = 0;
    sol.classification = naturally_reductive_test(gauged);
    sol.provenance = tag;
    out.push_back(std::move(sol));
    keys.push_back(key);
  };

  auto add_numeric = [&](const Metric4<double>& u0, const std::string& tag) {
    NewtonResult ref = newton_refine(u0);
    Metric4<double> key = detail::dedup_key(ref.u);
    if (seen(key)) return;

    Metric4<double> ricci = ricci_connection_path(ref.u, cb, dec);
    Metric4<double> closed = ricci_closed_form(ref.u, cm);
    for (int k = 0; k < 4; ++k)
      if (std::abs(ricci[k] - closed[0]) > 1e-10)
        throw ConstructionError("numeric solution is not Einstein under the "
                                "curvature-tensor check");

    EinsteinSolution sol;
    sol.exact = false;
    sol.u = ref.u;
    sol.constant = closed[0];
    sol.residual = ref.residual;
    sol.classification = naturally_reductive_test(ref.u);
    sol.provenance = tag;
    out.push_back(std::move(sol));
    keys.push_back(key);
  };

  CaseASolutions a = solve_case_A();
  for (const auto& uq : a.exact) add_exact(uq, "case-A");
  for (const auto& ud : a.numeric) add_numeric(ud, "newton");
  for (const auto& uq : solve_case_B().exact) add_exact(uq, "case-B");
  for (const auto& ud : solve_case_C().candidates) add_numeric(ud, "case-C");

  std::sort(out.begin(), out.end(),
            [](const EinsteinSolution& x, const EinsteinSolution& y) {
              if (x.classification.cls != y.classification.cls)
                return static_cast<int>(x.classification.cls) <
                       static_cast<int>(y.classification.cls);
              return x.u < y.u;
            });
  return out;
}

}  // namespace liecurv
