#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "liecurv/error.hpp"
#include "liecurv/root_system.hpp"
#include "liecurv/structure_table.hpp"

namespace liecurv {

/// Complex Chevalley layer: basis h_1..h_l (simple coroots), then x_α for
/// positive α in root order, then x_{−α}. All structure constants integral.
struct ChevalleyData {
  RootSystemData rs;
  StructureTable table;

  int npos() const { return static_cast<int>(rs.positive.size()); }
  int h_index(int i) const { return i; }
  int x_index(int root, bool negative) const {
    return rs.rank + (negative ? npos() : 0) + root;
  }
};

namespace detail {

/// Signed root code: +(k+1) is positive root k, −(k+1) its negative.
class ChevalleyBuilder {
 public:
  explicit ChevalleyBuilder(const RootSystemData& rs) : rs_(rs) {
    P_ = static_cast<int>(rs.positive.size());
    for (int k = 0; k < P_; ++k) {
      if (rs_.height[k] == 1) {
        extraspecial_.emplace_back(0, 0);
        continue;
      }
      // Extraspecial pair of γ: the least positive root ε (in table order)
      // with γ − ε again a positive root; the order is by height then lex,
      // so ε is found among strictly smaller indices.
      int eps = -1, eta = -1;
      for (int e = 0; e < k; ++e) {
        RootVector rest = rs_.positive[k];
        bool nonneg = true;
        for (int j = 0; j < rs_.rank; ++j) {
          rest[j] -= rs_.positive[e][j];
          if (rest[j] < 0) nonneg = false;
        }
        if (!nonneg) continue;
        auto it = rs_.index.find(rest);
        if (it == rs_.index.end()) continue;
        eps = e;
        eta = it->second;
        break;
      }
      if (eps < 0) throw ConstructionError("positive root has no decomposition");
      extraspecial_.emplace_back(code(eps, false), code(eta, false));
    }
  }

  static int code(int root, bool negative) { return negative ? -(root + 1) : root + 1; }

  RootVector vec(int c) const {
    RootVector v = rs_.positive[std::abs(c) - 1];
    if (c < 0)
      for (auto& x : v) x = -x;
    return v;
  }

  std::optional<int> code_of(const RootVector& v) const {
    auto it = rs_.index.find(v);
    if (it != rs_.index.end()) return code(it->second, false);
    RootVector m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) m[i] = -v[i];
    it = rs_.index.find(m);
    if (it != rs_.index.end()) return code(it->second, true);
    return std::nullopt;
  }

  std::optional<int> sum_code(int a, int b) const {
    RootVector s = vec(a);
    RootVector t = vec(b);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += t[i];
    bool zero = true;
    for (int x : s)
      if (x) zero = false;
    if (zero) return std::nullopt;
    return code_of(s);
  }

  Rational norm2(int c) const {
    RootVector v = vec(c);
    return inner_product(rs_, v, v);
  }

  /// Largest k with b − k·a still a root (the down-string length).
  int string_p(int a, int b) const {
    RootVector va = vec(a), vb = vec(b);
    int p = 0;
    while (true) {
      for (std::size_t i = 0; i < vb.size(); ++i) vb[i] -= va[i];
      bool zero = true;
      for (int x : vb)
        if (x) zero = false;
      if (zero || !code_of(vb)) break;
      ++p;
    }
    return p;
  }

  /// Structure constant N_{a,b} with [x_a, x_b] = N_{a,b} x_{a+b}, for roots
  /// a, b with a + b a root. The extraspecial constants are +(p+1); all
  /// others follow from the Jacobi identity and the bilinear-form relations
  /// N_{−a,−b} = −N_{a,b} and N_{a,b}/|c|² invariance under cycling a+b+c=0.
  Rational N(int a, int b) {
    auto key = std::make_pair(a, b);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;
    Rational r = compute(a, b);
    memo_.emplace(key, r);
    return r;
  }

 private:
  Rational compute(int a, int b) {
    auto s = sum_code(a, b);
    if (!s) return Rational(0);
    if (a < 0 && b < 0) return -N(-a, -b);
    if (a < 0) return -N(b, a);
    if (b < 0) {
      if (*s > 0) {
        // a + b = c > 0: cycle (a, b, −c), then flip both negatives.
        return -(norm2(*s) / norm2(a)) * N(-b, *s);
      }
      // a + b = −d < 0: cycle (a, b, d).
      return (norm2(*s) / norm2(b)) * N(-*s, a);
    }
    // Both positive. Order so the first argument is smaller in root order.
    if (a > b) return -N(b, a);
    int gamma = *s - 1;
    auto [eps, eta] = extraspecial_[gamma];
    if (a == eps && b == eta) return Rational(string_p(eps, eta) + 1);

    // Jacobi on (x_ε, x_η, x_{−a}) pins down N_{−a,γ}; the cycling relation
    // converts it to N_{a,b}. ε ≠ a and η ≠ a hold because (a, b) is not the
    // extraspecial pair of γ.
    Rational t1(0), t2(0);
    if (sum_code(eta, -a)) t1 = N(eta, -a) * N(eps, *sum_code(eta, -a));
    if (sum_code(eps, -a)) t2 = N(-a, eps) * N(eta, *sum_code(eps, -a));
    Rational n_minus_a_gamma = -(t1 + t2) / N(eps, eta);
    return n_minus_a_gamma * norm2(*s) / norm2(b);
  }

  const RootSystemData& rs_;
  int P_ = 0;
  std::vector<std::pair<int, int>> extraspecial_;
  std::map<std::pair<int, int>, Rational> memo_;
};

}  // namespace detail

/// Coroot coordinates: h_α = Σ_j c_j h_j with c_j = a_j (α_j, α_j)/(α, α);
/// integral for every root of every supported type.
inline std::vector<int> coroot_coordinates(const RootSystemData& rs,
                                           const RootVector& alpha) {
  Rational len = inner_product(rs, alpha, alpha);
  std::vector<int> c(rs.rank);
  for (int j = 0; j < rs.rank; ++j) {
    Rational v = Rational(alpha[j]) * rs.gram[j][j] / len;
    if (!is_integer(v)) throw ConstructionError("coroot coordinates not integral");
    c[j] = static_cast<int>(v.get_num().get_si());
  }
  return c;
}

inline std::string root_label(const RootVector& v, char letter) {
  std::ostringstream os;
  os << letter << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

inline ChevalleyData build_chevalley(const RootSystemData& rs) {
  ChevalleyData cd;
  cd.rs = rs;
  int l = rs.rank;
  int P = static_cast<int>(rs.positive.size());
  int n = l + 2 * P;
  cd.table.init(n);

  for (int i = 0; i < l; ++i) cd.table.labels[i] = "h" + std::to_string(i + 1);
  for (int k = 0; k < P; ++k) {
    cd.table.labels[cd.x_index(k, false)] = root_label(rs.positive[k], 'x');
    RootVector m = rs.positive[k];
    for (auto& x : m) x = -x;
    cd.table.labels[cd.x_index(k, true)] = root_label(m, 'x');
  }

  detail::ChevalleyBuilder builder(rs);
  auto xidx = [&](int code) {
    return cd.x_index(std::abs(code) - 1, code < 0);
  };

  // [h_i, h_j] = 0; [h_i, x_α] = ⟨α, α_i^∨⟩ x_α.
  for (int i = 0; i < l; ++i)
    for (int k = 0; k < P; ++k) {
      int pair_val = pairing_with_simple_coroot(rs, rs.positive[k], i);
      if (pair_val == 0) continue;
      cd.table.set(i, cd.x_index(k, false), {{cd.x_index(k, false), Rational(pair_val)}});
      cd.table.set(i, cd.x_index(k, true), {{cd.x_index(k, true), Rational(-pair_val)}});
    }

  // [x_α, x_β]: N-constant when α + β is a root, h_α when β = −α.
  std::vector<int> codes;
  for (int k = 0; k < P; ++k) codes.push_back(detail::ChevalleyBuilder::code(k, false));
  for (int k = 0; k < P; ++k) codes.push_back(detail::ChevalleyBuilder::code(k, true));
  for (std::size_t ia = 0; ia < codes.size(); ++ia)
    for (std::size_t ib = ia + 1; ib < codes.size(); ++ib) {
      int a = codes[ia], b = codes[ib];
      if (a == -b) {
        // [x_α, x_{−α}] = h_α (a is the positive one by construction order).
        std::vector<int> c = coroot_coordinates(rs, builder.vec(a));
        Sparse h;
        for (int j = 0; j < l; ++j)
          if (c[j]) h.emplace_back(j, Rational(c[j]));
        cd.table.set(xidx(a), xidx(b), std::move(h));
        continue;
      }
      auto s = builder.sum_code(a, b);
      if (!s) continue;
      Rational coeff = builder.N(a, b);
      if (!is_integer(coeff))
        throw ConstructionError("non-integral structure constant");
      if (coeff != 0) cd.table.set(xidx(a), xidx(b), {{xidx(*s), coeff}});
    }
  return cd;
}

/// N_{α,β} accessor on a built table; a and b are signed codes ±(k+1) over
/// the positive-root list.
inline Rational structure_constant(const ChevalleyData& cd, int a, int b) {
  detail::ChevalleyBuilder builder(cd.rs);
  auto s = builder.sum_code(a, b);
  if (!s) return Rational(0);
  int ia = cd.x_index(std::abs(a) - 1, a < 0);
  int ib = cd.x_index(std::abs(b) - 1, b < 0);
  for (auto& [idx, c] : cd.table.bracket(ia, ib))
    if (idx == cd.x_index(std::abs(*s) - 1, *s < 0)) return c;
  return Rational(0);
}

}  // namespace liecurv
