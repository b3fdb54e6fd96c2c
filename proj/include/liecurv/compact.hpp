#pragma once

#include <string>
#include <utility>
#include <vector>

#include "liecurv/chevalley.hpp"
#include "liecurv/error.hpp"
#include "liecurv/root_system.hpp"
#include "liecurv/structure_table.hpp"

namespace liecurv {

/// Compact real form on the basis t_1..t_l (orthogonalized Cartan
/// directions), then u_α = x_α − x_{−α} and v_α = i(x_α + x_{−α}) per
/// positive root. All structure constants are rational and the positive
/// form B (negative of the complex invariant form, long-root-2 normalized)
/// is diagonal on this basis.
struct CompactBasis {
  struct Element {
    enum Kind { cartan, u, v } kind;
    int root;  // positive-root index; Cartan ordinal for kind == cartan
  };

  RootSystemData rs;
  StructureTable table;
  std::vector<Element> elements;
  QVec norm;          // B(e_i, e_i) > 0, exact
  QMat cartan_combo;  // row j: t_j over the raw directions i·h_k
  int dim = 0;

  int cartan_index(int j) const { return j; }
  int u_index(int k) const { return rs.rank + 2 * k; }
  int v_index(int k) const { return rs.rank + 2 * k + 1; }
};

inline CompactBasis compact_form(const ChevalleyData& cd) {
  const RootSystemData& rs = cd.rs;
  int l = rs.rank;
  int P = cd.npos();
  CompactBasis cb;
  cb.rs = rs;
  cb.dim = l + 2 * P;
  cb.table.init(cb.dim);
  cb.norm.assign(cb.dim, Rational(0));

  // Raw Cartan directions i·h_k have Gram matrix
  // G[j][k] = 4(α_j, α_k)/((α_j,α_j)(α_k,α_k)), positive definite but not
  // diagonal; Gram–Schmidt over the rationals fixes that. cartan_combo is
  // unit lower triangular, so brackets re-expressed through it stay rational.
  QMat gram(l, QVec(l));
  for (int j = 0; j < l; ++j)
    for (int k = 0; k < l; ++k)
      gram[j][k] = 4 * rs.gram[j][k] / (rs.gram[j][j] * rs.gram[k][k]);

  QMat combo = identity_matrix<Rational>(l);
  QVec cnorm(l);
  auto form_on = [&](const QVec& x, const QVec& y) {
    Rational s(0);
    for (int j = 0; j < l; ++j)
      for (int k = 0; k < l; ++k) s += x[j] * gram[j][k] * y[k];
    return s;
  };
  for (int j = 0; j < l; ++j) {
    for (int m = 0; m < j; ++m) {
      Rational proj = form_on(combo[j], combo[m]) / cnorm[m];
      for (int k = 0; k < l; ++k) combo[j][k] -= proj * combo[m][k];
    }
    cnorm[j] = form_on(combo[j], combo[j]);
    if (cnorm[j] <= 0) throw ConstructionError("Cartan Gram is not positive definite");
  }
  cb.cartan_combo = combo;
  QMat combo_inv = inverse(combo);

  for (int j = 0; j < l; ++j) {
    cb.table.labels[j] = "t" + std::to_string(j + 1);
    cb.norm[j] = cnorm[j];
    cb.elements.push_back({CompactBasis::Element::cartan, j});
  }
  for (int k = 0; k < P; ++k) {
    cb.table.labels[cb.u_index(k)] = root_label(rs.positive[k], 'u');
    cb.table.labels[cb.v_index(k)] = root_label(rs.positive[k], 'v');
    Rational len = inner_product(rs, rs.positive[k], rs.positive[k]);
    cb.norm[cb.u_index(k)] = 4 / len;
    cb.norm[cb.v_index(k)] = 4 / len;
    cb.elements.push_back({CompactBasis::Element::u, k});
    cb.elements.push_back({CompactBasis::Element::v, k});
  }

  detail::ChevalleyBuilder builder(rs);
  auto pcode = [](int k) { return detail::ChevalleyBuilder::code(k, false); };

  // Signed u/v with a root argument of either sign: u_{−γ} = −u_γ, v_{−γ} = v_γ.
  auto u_signed = [&](int code_val, const Rational& coeff) -> std::pair<int, Rational> {
    int k = std::abs(code_val) - 1;
    return {cb.u_index(k), code_val < 0 ? -coeff : coeff};
  };
  auto v_signed = [&](int code_val, const Rational& coeff) -> std::pair<int, Rational> {
    int k = std::abs(code_val) - 1;
    return {cb.v_index(k), coeff};
  };

  // [t_j, u_α] = a_j(α) v_α and [t_j, v_α] = −a_j(α) u_α, where a_j(α) is
  // ⟨α, ·⟩ paired through the Gram–Schmidt combination.
  for (int j = 0; j < l; ++j)
    for (int k = 0; k < P; ++k) {
      Rational a(0);
      for (int m = 0; m < l; ++m)
        a += combo[j][m] * pairing_with_simple_coroot(rs, rs.positive[k], m);
      if (a == 0) continue;
      cb.table.set(cb.cartan_index(j), cb.u_index(k), {{cb.v_index(k), a}});
      cb.table.set(cb.cartan_index(j), cb.v_index(k), {{cb.u_index(k), -a}});
    }

  // [u_α, v_α] = 2 i h_α, expressed over the orthogonalized Cartan basis:
  // coordinates c over t_k become (combo⁻¹)ᵀ c.
  for (int k = 0; k < P; ++k) {
    std::vector<int> c = coroot_coordinates(rs, rs.positive[k]);
    Sparse h;
    for (int j = 0; j < l; ++j) {
      Rational d(0);
      for (int m = 0; m < l; ++m) d += combo_inv[m][j] * c[m];
      if (d != 0) h.emplace_back(j, 2 * d);
    }
    cb.table.set(cb.u_index(k), cb.v_index(k), std::move(h));
  }

  // Off-diagonal root pairs (α ≠ β), via the complex constants
  // n1 = N_{α,β}, n2 = N_{α,−β}:
  //   [u_α, u_β] = n1 u_{α+β} − n2 u_{α−β}
  //   [u_α, v_β] = n1 v_{α+β} + n2 v_{α−β}
  //   [v_α, v_β] = −n1 u_{α+β} − n2 u_{α−β}
  for (int ka = 0; ka < P; ++ka)
    for (int kb = ka + 1; kb < P; ++kb) {
      auto sum = builder.sum_code(pcode(ka), pcode(kb));
      auto dif = builder.sum_code(pcode(ka), -pcode(kb));
      Rational n1 = sum ? builder.N(pcode(ka), pcode(kb)) : Rational(0);
      Rational n2 = dif ? builder.N(pcode(ka), -pcode(kb)) : Rational(0);

      Sparse uu, uv, vv;
      if (sum && n1 != 0) {
        uu.push_back(u_signed(*sum, n1));
        uv.push_back(v_signed(*sum, n1));
        vv.push_back(u_signed(*sum, -n1));
      }
      if (dif && n2 != 0) {
        uu.push_back(u_signed(*dif, -n2));
        uv.push_back(v_signed(*dif, n2));
        vv.push_back(u_signed(*dif, -n2));
      }
      if (!uu.empty()) cb.table.set(cb.u_index(ka), cb.u_index(kb), std::move(uu));
      if (!uv.empty()) cb.table.set(cb.u_index(ka), cb.v_index(kb), std::move(uv));
      if (!vv.empty()) cb.table.set(cb.v_index(ka), cb.v_index(kb), std::move(vv));

      // [u_β, v_α]: same expansion with the roles of α and β swapped; its
      // mirror supplies [v_α, u_β].
      Rational m1 = sum ? builder.N(pcode(kb), pcode(ka)) : Rational(0);
      Rational m2 = dif ? builder.N(pcode(kb), -pcode(ka)) : Rational(0);
      Sparse bu;
      if (sum && m1 != 0) bu.push_back(v_signed(*sum, m1));
      if (dif && m2 != 0)
        bu.push_back(v_signed(*builder.sum_code(pcode(kb), -pcode(ka)), m2));
      if (!bu.empty()) cb.table.set(cb.u_index(kb), cb.v_index(ka), std::move(bu));
    }

  return cb;
}

/// Diagonal Gram data of the invariant form on a compact basis.
struct InvariantFormData {
  QVec diag;
  std::string normalization;  // "long-root-2" or "negative-killing"
};

inline InvariantFormData invariant_form(const CompactBasis& cb,
                                        const std::string& normalization) {
  if (normalization == "long-root-2") return {cb.norm, normalization};
  if (normalization == "negative-killing") {
    Rational ratio = killing_ratio(cb.rs);
    QVec d = cb.norm;
    for (auto& x : d) x *= ratio;
    return {d, normalization};
  }
  throw InputError("unknown normalization: '" + normalization + "'");
}

}  // namespace liecurv
