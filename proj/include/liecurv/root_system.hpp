#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "liecurv/cartan.hpp"
#include "liecurv/error.hpp"
#include "liecurv/linalg.hpp"
#include "liecurv/rational.hpp"

namespace liecurv {

/// Integer coefficient vector over the simple roots. A root is c with
/// root = Σ c_i α_i; positive roots have all c_i ≥ 0.
using RootVector = std::vector<int>;

/// Rational coefficient vector over the simple roots (weights live in the
/// rational span of the roots for all types handled here).
using WeightVector = QVec;

struct RootSystemData {
  CartanType type;
  int rank = 0;
  QMat gram;                            // (α_i, α_j), long-root-2 normalized
  std::vector<std::vector<int>> cartan; // C[i][j] = ⟨α_i, α_j^∨⟩
  std::vector<RootVector> positive;     // sorted by (height, lexicographic)
  std::vector<int> height;              // height of positive[k]
  std::map<RootVector, int> index;      // positive root → position
  QMat fundamental;                     // row i = ω_i over the simple roots
  WeightVector delta;                   // δ = Σ ω_i

  bool is_positive_root(const RootVector& c) const { return index.count(c) != 0; }
  bool is_root(const RootVector& c) const {
    if (index.count(c)) return true;
    RootVector m(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) m[i] = -c[i];
    return index.count(m) != 0;
  }
};

inline WeightVector to_weight(const RootVector& c) {
  WeightVector w(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) w[i] = c[i];
  return w;
}

inline Rational inner_product(const RootSystemData& rs, const WeightVector& v,
                              const WeightVector& w) {
  if (v.size() != rs.gram.size() || w.size() != rs.gram.size())
    throw InputError("vector length does not match the root system rank");
  Rational s(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) s += v[i] * rs.gram[i][j] * w[j];
  }
  return s;
}

inline Rational inner_product(const RootSystemData& rs, const RootVector& a,
                              const RootVector& b) {
  return inner_product(rs, to_weight(a), to_weight(b));
}

/// ⟨β, α_i^∨⟩ = 2(β, α_i)/(α_i, α_i) = Σ_j β_j C[j][i]; always an integer
/// when β is a root.
inline int pairing_with_simple_coroot(const RootSystemData& rs, const RootVector& beta,
                                      int i) {
  int s = 0;
  for (std::size_t j = 0; j < beta.size(); ++j) s += beta[j] * rs.cartan[j][i];
  return s;
}

inline RootVector simple_reflection(const RootSystemData& rs, const RootVector& beta,
                                    int i) {
  RootVector r = beta;
  r[i] -= pairing_with_simple_coroot(rs, beta, i);
  return r;
}

inline RootSystemData build_root_system(const CartanType& t) {
  RootSystemData rs;
  rs.type = t;
  rs.rank = t.rank;
  rs.gram = simple_root_gram(t);
  rs.cartan = cartan_matrix(rs.gram);

  int l = rs.rank;
  // Breadth-first closure over root strings: a positive root β extends to
  // β + α_i iff q = p − ⟨β, α_i^∨⟩ > 0, where p counts how far the string
  // β, β−α_i, ... stays inside the system. Levels are processed by height,
  // so every β − kα_i needed for p is already known.
  std::map<RootVector, int> seen;
  std::vector<RootVector> level;
  for (int i = 0; i < l; ++i) {
    RootVector e(l, 0);
    e[i] = 1;
    level.push_back(e);
    seen.emplace(e, 1);
  }
  std::vector<RootVector> all = level;
  int h = 1;
  while (!level.empty()) {
    std::vector<RootVector> next;
    for (const RootVector& beta : level) {
      for (int i = 0; i < l; ++i) {
        int p = 0;
        RootVector down = beta;
        while (true) {
          down[i] -= 1;
          bool inside = false;
          if (down[i] >= 0) {
            inside = seen.count(down) != 0;
          } else {
            // β − kα_i with a negative coefficient is a root only when β is
            // α_i itself and k = 2; those strings never matter because β − α_i
            // is then zero, ending the string.
            inside = false;
          }
          if (!inside) break;
          ++p;
        }
        int q = p - pairing_with_simple_coroot(rs, beta, i);
        if (q <= 0) continue;
        RootVector up = beta;
        up[i] += 1;
        if (seen.emplace(up, h + 1).second) next.push_back(up);
      }
    }
    std::sort(next.begin(), next.end());
    for (const RootVector& r : next) all.push_back(r);
    level = std::move(next);
    ++h;
    if (h > 64) throw ConstructionError("root generation failed to terminate");
  }

  rs.positive = std::move(all);
  std::stable_sort(rs.positive.begin(), rs.positive.end(),
                   [](const RootVector& a, const RootVector& b) {
                     int ha = std::accumulate(a.begin(), a.end(), 0);
                     int hb = std::accumulate(b.begin(), b.end(), 0);
                     if (ha != hb) return ha < hb;
                     return a < b;
                   });
  for (std::size_t k = 0; k < rs.positive.size(); ++k) {
    rs.height.push_back(
        std::accumulate(rs.positive[k].begin(), rs.positive[k].end(), 0));
    rs.index.emplace(rs.positive[k], static_cast<int>(k));
  }

  rs.fundamental = [&] {
    QMat c(l, QVec(l));
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) c[i][j] = rs.cartan[i][j];
    return inverse(c);
  }();
  rs.delta.assign(l, Rational(0));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) rs.delta[j] += rs.fundamental[i][j];
  return rs;
}

inline RootVector highest_root(const RootSystemData& rs) {
  if (rs.positive.empty()) throw ConstructionError("empty root system");
  int top = rs.height.back();
  std::size_t count = 0;
  for (int hgt : rs.height)
    if (hgt == top) ++count;
  if (count != 1) throw ConstructionError("highest root is not unique");
  return rs.positive.back();
}

inline bool is_dominant(const RootSystemData& rs, const WeightVector& lambda) {
  for (int j = 0; j < rs.rank; ++j) {
    Rational s(0);
    for (int k = 0; k < rs.rank; ++k) s += lambda[k] * rs.cartan[k][j];
    if (s < 0) return false;
  }
  return true;
}

/// Eigenvalue (λ, λ + 2δ) of the quadratic Casimir on the irreducible
/// representation of highest weight λ, under the long-root-2 form.
inline Rational casimir_constant(const RootSystemData& rs, const WeightVector& lambda) {
  if (!is_dominant(rs, lambda))
    throw InputError("Casimir constant requires a dominant weight");
  WeightVector shifted(lambda);
  for (int i = 0; i < rs.rank; ++i) shifted[i] += 2 * rs.delta[i];
  return inner_product(rs, lambda, shifted);
}

inline std::vector<WeightVector> fundamental_weights(const RootSystemData& rs) {
  std::vector<WeightVector> ws;
  for (int i = 0; i < rs.rank; ++i) ws.push_back(rs.fundamental[i]);
  return ws;
}

/// Ratio between the negative Killing form and the long-root-2 form:
/// 2·(dual Coxeter number) = Casimir constant of the adjoint representation.
inline Rational killing_ratio(const RootSystemData& rs) {
  return casimir_constant(rs, to_weight(highest_root(rs)));
}

inline int algebra_dimension(const RootSystemData& rs) {
  return static_cast<int>(2 * rs.positive.size()) + rs.rank;
}

}  // namespace liecurv
