#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <string>
#include <type_traits>
#include <vector>

#include "liecurv/compact.hpp"
#include "liecurv/error.hpp"
#include "liecurv/involution.hpp"
#include "liecurv/rational.hpp"
#include "liecurv/util.hpp"

namespace liecurv {

template <typename T>
using Metric4 = std::array<T, 4>;

template <typename T>
T scalar_cast(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) return q;
  else return to_double(q);
}

template <typename T>
T abs_val(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) return abs(x);
  else return std::abs(x);
}

template <typename T>
void require_positive(const Metric4<T>& u) {
  for (const T& x : u)
    if (!(x > T(0))) throw InputError("metric parameters must be positive");
}

/// c[i][j] with Σ_{e∈𝔥_{i+1}} ad(ê)²|𝔥_{j+1} = −c[i][j]·Id over B-orthonormal ê.
struct CasimirMatrix {
  std::array<std::array<Rational, 4>, 4> c{};
  std::array<int, 4> dims{};
};

inline CasimirMatrix casimir_matrix(const GradedDecomposition& dec,
                                    const CompactBasis& cb) {
  CasimirMatrix cm;
  cm.dims = dec.dims;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      bool have = false;
      Rational constant(0);
      for (int b : dec.blocks[j]) {
        // w = Σ_{k∈block i} ad(e_k)² e_b / ‖e_k‖²
        QVec w(cb.dim, Rational(0));
        for (int k : dec.blocks[i]) {
          Sparse once = cb.table.bracket(k, b);
          for (auto& [mid, cm1] : once)
            for (auto& [fin, cm2] : cb.table.bracket(k, mid))
              w[fin] += cm1 * cm2 / cb.norm[k];
        }
        for (int idx = 0; idx < cb.dim; ++idx)
          if (idx != b && w[idx] != 0)
            throw ConstructionError("block Casimir operator is not diagonal");
        Rational val = -w[b];
        if (!have) {
          constant = val;
          have = true;
        } else if (val != constant) {
          throw ConstructionError("block Casimir operator is not scalar");
        }
      }
      cm.c[i][j] = constant;
    }
  return cm;
}

/// Sums Σ (A^γ_{αβ})² of squared orthonormal structure constants, indexed by
/// source blocks (i, j) and target block k. Exact rationals in either
/// normalization of the invariant form.
struct TripleBracketTable {
  int blocks = 0;
  std::vector<std::vector<std::vector<Rational>>> t;  // t[k][i][j]
  std::vector<int> dims;
  std::string normalization;
};

inline TripleBracketTable triple_brackets(const GradedDecomposition& dec,
                                          const CompactBasis& cb,
                                          const std::string& normalization) {
  InvariantFormData form = invariant_form(cb, normalization);
  TripleBracketTable tb;
  tb.blocks = 4;
  tb.dims.assign(dec.dims.begin(), dec.dims.end());
  tb.normalization = normalization;
  tb.t.assign(4, std::vector<std::vector<Rational>>(4, std::vector<Rational>(4)));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int a : dec.blocks[i])
        for (int b : dec.blocks[j]) {
          for (auto& [g, coeff] : cb.table.bracket(a, b)) {
            int k = dec.block_of[g];
            tb.t[k][i][j] +=
                coeff * coeff * form.diag[g] / (form.diag[a] * form.diag[b]);
          }
        }
  return tb;
}

/// Ricci eigenvalues per block for the metric Σ u_i B|𝔥_i, derived from the
/// Casimir matrix alone. With T[k][i][j] = c[i][j]·d_j concentrated on the
/// Klein target k = t(i,j), the block-diagonal Ricci reduces to
///   r_k = S_k/(2u_k) + (1/4d_k) Σ_{t(j,i)=k} c[j][i] d_i u_k/(u_j u_i)
///              − (1/2d_k) Σ_i c[k][i] d_i u_{t(k,i)}/(u_k u_i),
/// where S_k = Σ_i c[i][k] is the adjoint Casimir constant.
template <typename T>
Metric4<T> ricci_closed_form(const Metric4<T>& u, const CasimirMatrix& cm) {
  require_positive(u);
  Metric4<T> r{};
  for (int k = 0; k < 4; ++k) {
    Rational sk(0);
    for (int i = 0; i < 4; ++i) sk += cm.c[i][k];
    T dk = T(cm.dims[k]);
    T acc = scalar_cast<T>(sk) / (T(2) * u[k]);
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) {
        if (klein_target(j, i) != k) continue;
        acc += scalar_cast<T>(cm.c[j][i] * cm.dims[i]) * u[k] /
               (T(4) * dk * u[j] * u[i]);
      }
    for (int i = 0; i < 4; ++i) {
      int t = klein_target(k, i);
      acc -= scalar_cast<T>(cm.c[k][i] * cm.dims[i]) * u[t] /
             (T(2) * dk * u[k] * u[i]);
    }
    r[k] = acc;
  }
  return r;
}

/// Generic block-metric Ricci from triple-bracket sums, any number of
/// blocks. Premise: the table is in negative-Killing normalization and y
/// holds the metric coefficients relative to that form.
template <typename T>
std::vector<T> ricci_triple_bracket(const std::vector<T>& y,
                                    const TripleBracketTable& tb) {
  if (tb.normalization != "negative-killing")
    throw InputError("triple-bracket Ricci expects the negative-Killing table");
  int q = tb.blocks;
  if (static_cast<int>(y.size()) != q)
    throw InputError("metric coefficient count does not match the block count");
  for (const T& v : y)
    if (!(v > T(0))) throw InputError("metric parameters must be positive");

  std::vector<T> r(q);
  for (int k = 0; k < q; ++k) {
    T dk = T(tb.dims[k]);
    T acc = T(1) / (T(2) * y[k]);
    for (int j = 0; j < q; ++j)
      for (int i = 0; i < q; ++i) {
        Rational tkji = tb.t[k][j][i];
        if (tkji != 0)
          acc += scalar_cast<T>(tkji) * y[k] / (T(4) * dk * y[j] * y[i]);
        Rational tjki = tb.t[j][k][i];
        if (tjki != 0)
          acc -= scalar_cast<T>(tjki) * y[j] / (T(2) * dk * y[k] * y[i]);
      }
    r[k] = acc;
  }
  return r;
}

/// Levi-Civita coefficients κ(i,j): ∇_x y = κ(i,j)[x,y] for x ∈ 𝔥_{i+1},
/// y ∈ 𝔥_{j+1}. Koszul with the grading gives κ = (u_t + u_j − u_i)/(2 u_t)
/// on the target block t = t(i,j).
template <typename T>
struct ConnectionTable {
  std::array<std::array<T, 4>, 4> kappa{};
};

template <typename T>
ConnectionTable<T> connection_table(const Metric4<T>& u) {
  require_positive(u);
  ConnectionTable<T> ct;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int t = klein_target(i, j);
      ct.kappa[i][j] = (u[t] + u[j] - u[i]) / (T(2) * u[t]);
    }
  return ct;
}

namespace detail {

template <typename T>
using SparseT = std::vector<std::pair<int, T>>;

template <typename T>
void sparse_add(SparseT<T>& dest, int idx, const std::type_identity_t<T>& c) {
  for (auto& [i, v] : dest)
    if (i == idx) {
      v += c;
      return;
    }
  dest.emplace_back(idx, c);
}

/// ∇_{e_a} applied to a block-homogeneous sparse vector.
template <typename T>
SparseT<T> nabla_basis(const CompactBasis& cb, const GradedDecomposition& dec,
                       const ConnectionTable<T>& ct, int a, const SparseT<T>& y) {
  SparseT<T> out;
  int bi = dec.block_of[a];
  for (auto& [j, cj] : y) {
    T k = ct.kappa[bi][dec.block_of[j]];
    for (auto& [idx, c] : cb.table.bracket(a, j))
      sparse_add(out, idx, k * cj * scalar_cast<T>(c));
  }
  return out;
}

}  // namespace detail

/// Ricci through the curvature tensor: Ric(x, y) = tr(z ↦ R(z, x)y) as a
/// coefficient trace over the basis. Verifies that the result is diagonal
/// and scalar per block before reporting the four eigenvalues relative to
/// the metric u_k · B restricted to block k.
template <typename T>
Metric4<T> ricci_connection_path(const Metric4<T>& u, const CompactBasis& cb,
                                 const GradedDecomposition& dec) {
  require_positive(u);
  ConnectionTable<T> ct = connection_table(u);
  int n = cb.dim;

  auto ricci_entry = [&](int x, int y) {
    // tr(z ↦ ∇_z ∇_x y − ∇_x ∇_z y − ∇_{[z,x]} y)
    T total(0);
    detail::SparseT<T> ybase{{y, T(1)}};
    detail::SparseT<T> nxy = detail::nabla_basis(cb, dec, ct, x, ybase);
    for (int k = 0; k < n; ++k) {
      detail::SparseT<T> acc = detail::nabla_basis(cb, dec, ct, k, nxy);
      // minus ∇_x ∇_{e_k} y
      detail::SparseT<T> nky = detail::nabla_basis(cb, dec, ct, k, ybase);
      for (auto& [idx, c] : detail::nabla_basis(cb, dec, ct, x, nky))
        detail::sparse_add(acc, idx, -c);
      // minus ∇_{[e_k, x]} y; [e_k, x] is block-homogeneous
      int bk = klein_target(dec.block_of[k], dec.block_of[x]);
      for (auto& [mid, cm] : cb.table.bracket(k, x)) {
        T kappa = ct.kappa[bk][dec.block_of[y]];
        for (auto& [idx, c] : cb.table.bracket(mid, y))
          detail::sparse_add(acc, idx, -kappa * scalar_cast<T>(cm) * scalar_cast<T>(c));
      }
      for (auto& [idx, c] : acc)
        if (idx == k) total += c;
    }
    return total;
  };

  // Full symmetric matrix, rows in parallel.
  using Row = std::vector<T>;
  auto chunks = chunked_map<std::vector<Row>>(
      static_cast<std::size_t>(n), [&](std::size_t b, std::size_t e) {
        std::vector<Row> out;
        out.reserve(e - b);
        for (std::size_t xs = b; xs < e; ++xs) {
          int x = static_cast<int>(xs);
          Row row;
          row.reserve(n - x);
          for (int y = x; y < n; ++y) row.push_back(ricci_entry(x, y));
          out.push_back(std::move(row));
        }
        return out;
      });
  std::vector<Row> rows;
  rows.reserve(n);
  for (auto& ch : chunks)
    for (auto& row : ch) rows.push_back(std::move(row));

  T scale(0);
  for (auto& row : rows)
    for (auto& val : row)
      if (scale < abs_val(val)) scale = abs_val(val);

  // Off-diagonal entries must vanish; diagonal ones agree per block.
  Metric4<T> r{};
  std::array<bool, 4> have{};
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      const T& val = rows[x][y - x];
      if (y != x) {
        bool ok;
        if constexpr (std::is_same_v<T, Rational>) ok = val == 0;
        else ok = std::abs(val) <= 1e-12 * (1.0 + scale);
        if (!ok) throw ConstructionError("Ricci tensor is not block-scalar");
        continue;
      }
      int blk = dec.block_of[x];
      T eigen = val / (u[blk] * scalar_cast<T>(cb.norm[x]));
      if (!have[blk]) {
        r[blk] = eigen;
        have[blk] = true;
      } else {
        bool ok;
        if constexpr (std::is_same_v<T, Rational>) ok = eigen == r[blk];
        else ok = std::abs(eigen - r[blk]) <= 1e-12 * (1.0 + std::abs(r[blk]));
        if (!ok) throw ConstructionError("Ricci eigenvalue varies inside a block");
      }
    }
  return r;
}

/// Classification of the metric family by parameter coincidences.
enum class MetricClass { bi_invariant = 0, tail_equal = 1, paired = 2, generic_metric = 3 };

struct ClassificationResult {
  MetricClass cls = MetricClass::generic_metric;
  int partner = 0;  // for paired: which of u₂..u₄ equals u₁

  std::string label() const {
    switch (cls) {
      case MetricClass::bi_invariant: return "bi-invariant";
      case MetricClass::tail_equal: return "case-1 naturally reductive";
      case MetricClass::paired: return "case-2 naturally reductive";
      default: return "non-naturally reductive";
    }
  }
};

/// Exact comparisons for rational input; relative tolerance 10⁻⁹ otherwise.
template <typename T>
ClassificationResult naturally_reductive_test(const Metric4<T>& u) {
  require_positive(u);
  auto eq = [](const T& a, const T& b) {
    if constexpr (std::is_same_v<T, Rational>) {
      return a == b;
    } else {
      double x = a, y = b;
      return std::abs(x - y) <= 1e-9 * std::max(std::abs(x), std::abs(y));
    }
  };
  if (eq(u[0], u[1]) && eq(u[1], u[2]) && eq(u[2], u[3]))
    return {MetricClass::bi_invariant, 0};
  if (eq(u[1], u[2]) && eq(u[2], u[3])) return {MetricClass::tail_equal, 0};
  for (int i = 1; i < 4; ++i) {
    int a = i == 1 ? 2 : 1, b = i == 3 ? 2 : 3;
    if (eq(u[0], u[i]) && eq(u[a], u[b])) return {MetricClass::paired, i + 1};
  }
  return {MetricClass::generic_metric, 0};
}

}  // namespace liecurv
