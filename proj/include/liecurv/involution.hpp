#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "liecurv/compact.hpp"
#include "liecurv/error.hpp"
#include "liecurv/linalg.hpp"
#include "liecurv/structure_table.hpp"

namespace liecurv {

/// One 0/1 mark per simple root; mark 1 sends the root's phase halfway
/// around the circle, so x_α scales by (−1)^{Σ c_i marks_i}.
struct InvolutionSpec {
  std::vector<int> marks;
};

/// Diagonal automorphism fixing the Cartan part. On the plane of a positive
/// root α it rotates by a quarter turn taken phase[α] times: x_α ↦ i^r x_α,
/// hence u_α ↦ v_α ↦ −u_α for r = 1. Involutions have every phase in {0, 2}.
struct AutomorphismMatrix {
  std::vector<int> phase;  // per positive root, mod 4

  int sign(int root) const { return phase[root] == 0 ? 1 : -1; }
};

/// Phases from rational marks m_i (denominator 1 or 2): r(α) = Σ c_i · 2 m_i
/// (mod 4). Integral marks give ±1 signatures; half-integral marks produce
/// order-4 maps, which check_involution rejects.
inline AutomorphismMatrix automorphism_from_phase_marks(const RootSystemData& rs,
                                                        const QVec& marks) {
  if (static_cast<int>(marks.size()) != rs.rank)
    throw InputError("marks length does not match the rank");
  AutomorphismMatrix a;
  for (const auto& root : rs.positive) {
    Rational twice(0);
    for (int i = 0; i < rs.rank; ++i) twice += 2 * marks[i] * root[i];
    if (!is_integer(twice))
      throw InputError("marks must be integral or half-integral");
    long r = twice.get_num().get_si() % 4;
    a.phase.push_back(static_cast<int>((r + 4) % 4));
  }
  return a;
}

inline AutomorphismMatrix involution_from_marks(const RootSystemData& rs,
                                                const InvolutionSpec& spec) {
  if (static_cast<int>(spec.marks.size()) != rs.rank)
    throw InputError("marks length does not match the rank");
  QVec m;
  for (int x : spec.marks) {
    if (x != 0 && x != 1) throw InputError("marks must be 0 or 1");
    m.push_back(Rational(x));
  }
  return automorphism_from_phase_marks(rs, m);
}

/// Composition of two diagonal automorphisms; phases add modulo 4.
inline AutomorphismMatrix compose(const AutomorphismMatrix& a,
                                  const AutomorphismMatrix& b) {
  if (a.phase.size() != b.phase.size())
    throw InputError("automorphisms act on different root systems");
  AutomorphismMatrix c;
  for (std::size_t k = 0; k < a.phase.size(); ++k)
    c.phase.push_back((a.phase[k] + b.phase[k]) % 4);
  return c;
}

/// Image of basis element idx under the automorphism, as a sparse vector.
inline Sparse apply_automorphism(const AutomorphismMatrix& a, const CompactBasis& cb,
                                 int idx) {
  const auto& e = cb.elements[idx];
  if (e.kind == CompactBasis::Element::cartan) return {{idx, Rational(1)}};
  int r = a.phase[e.root];
  bool is_u = e.kind == CompactBasis::Element::u;
  int ui = cb.u_index(e.root), vi = cb.v_index(e.root);
  switch (r) {
    case 0: return {{idx, Rational(1)}};
    case 1: return is_u ? Sparse{{vi, Rational(1)}} : Sparse{{ui, Rational(-1)}};
    case 2: return {{idx, Rational(-1)}};
    default: return is_u ? Sparse{{vi, Rational(-1)}} : Sparse{{ui, Rational(1)}};
  }
}

inline Sparse apply_automorphism(const AutomorphismMatrix& a, const CompactBasis& cb,
                                 const Sparse& x) {
  Sparse out;
  for (auto& [idx, c] : x) sparse_axpy(out, c, apply_automorphism(a, cb, idx));
  sparse_normalize(out);
  return out;
}

/// True iff a² = Id, a[x,y] = [ax, ay] on all basis pairs, and B(ax, ay) =
/// B(x, y).
inline bool check_involution(const AutomorphismMatrix& a, const CompactBasis& cb) {
  if (static_cast<int>(a.phase.size()) * 2 + cb.rs.rank != cb.dim) return false;
  for (int r : a.phase)
    if (r != 0 && r != 2) return false;

  auto sparse_B = [&](const Sparse& x, const Sparse& y) {
    Rational s(0);
    auto ix = x.begin();
    for (auto& [idx, c] : y) {
      while (ix != x.end() && ix->first < idx) ++ix;
      if (ix != x.end() && ix->first == idx) s += ix->second * c * cb.norm[idx];
    }
    return s;
  };

  for (int i = 0; i < cb.dim; ++i) {
    Sparse ai = apply_automorphism(a, cb, i);
    if (apply_automorphism(a, cb, ai) != Sparse{{i, Rational(1)}}) return false;
    for (int j = i; j < cb.dim; ++j) {
      Sparse aj = apply_automorphism(a, cb, j);
      Sparse lhs = apply_automorphism(a, cb, cb.table.bracket(i, j));
      if (cb.table.bracket(ai, aj) != lhs) return false;
      Rational want = i == j ? cb.norm[i] : Rational(0);
      if (sparse_B(ai, aj) != want) return false;
    }
  }
  return true;
}

/// Joint (θ, τ)-eigenspace blocks in the order (++, +−, −+, −−).
struct GradedDecomposition {
  std::array<std::vector<int>, 4> blocks;  // basis indices, ascending
  std::array<int, 4> dims{};
  std::array<int, 4> boundary{};           // i₁ < i₂ < i₃ < i₄ = dim
  std::vector<int> block_of;               // per basis index
};

/// Multiplication table of the Klein grading: block(i)·block(j) target.
inline int klein_target(int i, int j) {
  if (i == j) return 0;
  if (i == 0) return j;
  if (j == 0) return i;
  return 6 - i - j;  // {1,2,3}: the remaining label
}

inline GradedDecomposition joint_decomposition(const AutomorphismMatrix& theta,
                                               const AutomorphismMatrix& tau,
                                               const CompactBasis& cb) {
  if (!check_involution(theta, cb))
    throw InvolutionError("first map is not a B-preserving involution");
  if (!check_involution(tau, cb))
    throw InvolutionError("second map is not a B-preserving involution");

  GradedDecomposition d;
  d.block_of.assign(cb.dim, 0);
  for (int i = 0; i < cb.dim; ++i) {
    const auto& e = cb.elements[i];
    int blk = 0;
    if (e.kind != CompactBasis::Element::cartan) {
      bool tneg = theta.sign(e.root) < 0;
      bool uneg = tau.sign(e.root) < 0;
      blk = (tneg ? 2 : 0) + (uneg ? 1 : 0);
    }
    d.block_of[i] = blk;
    d.blocks[blk].push_back(i);
  }
  for (int b = 0; b < 4; ++b) d.dims[b] = static_cast<int>(d.blocks[b].size());
  for (int b = 0; b < 4; ++b)
    if (d.dims[b] == 0)
      throw InvolutionError(
          "degenerate pair: joint eigenspace block " + std::to_string(b + 1) +
          " is empty (the two maps do not generate a four-group)");
  int acc = 0;
  for (int b = 0; b < 4; ++b) {
    acc += d.dims[b];
    d.boundary[b] = acc;
  }

  // Grading: every product lands in the Klein-group target block.
  for (int i = 0; i < cb.dim; ++i)
    for (int j = 0; j < cb.dim; ++j) {
      int target = klein_target(d.block_of[i], d.block_of[j]);
      for (auto& [idx, c] : cb.table.bracket(i, j))
        if (d.block_of[idx] != target)
          throw ConstructionError("bracket violates the four-group grading");
    }
  return d;
}

/// Restriction of the compact table to a bracket-closed index subset.
struct SubAlgebra {
  StructureTable table;
  std::vector<int> parent;  // parent basis index per sub element
  QVec norm;
  std::vector<CompactBasis::Element> elements;
  RootSystemData rs;  // parent root system; root labels refer to it
};

inline SubAlgebra restrict_table(const CompactBasis& cb, std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  SubAlgebra sub;
  sub.rs = cb.rs;
  sub.parent = indices;
  std::map<int, int> pos;
  for (std::size_t i = 0; i < indices.size(); ++i)
    pos[indices[i]] = static_cast<int>(i);
  sub.table.init(static_cast<int>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    sub.table.labels[i] = cb.table.labels[indices[i]];
    sub.norm.push_back(cb.norm[indices[i]]);
    sub.elements.push_back(cb.elements[indices[i]]);
  }
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = i + 1; j < indices.size(); ++j) {
      Sparse out;
      for (auto& [idx, c] : cb.table.bracket(indices[i], indices[j])) {
        auto it = pos.find(idx);
        if (it == pos.end())
          throw ConstructionError("index subset is not closed under bracket");
        out.emplace_back(it->second, c);
      }
      sub.table.set(static_cast<int>(i), static_cast<int>(j), std::move(out));
    }
  return sub;
}

inline SubAlgebra fixed_subalgebra(const AutomorphismMatrix& a, const CompactBasis& cb) {
  if (!check_involution(a, cb))
    throw InvolutionError("fixed_subalgebra requires a B-preserving involution");
  std::vector<int> idx;
  for (int i = 0; i < cb.dim; ++i) {
    const auto& e = cb.elements[i];
    if (e.kind == CompactBasis::Element::cartan || a.sign(e.root) > 0)
      idx.push_back(i);
  }
  return restrict_table(cb, idx);
}

/// Killing form κ(x, y) = tr(ad x ∘ ad y) of the subalgebra itself.
inline QMat killing_form(const StructureTable& t) {
  int n = t.dim;
  QMat k(n, QVec(n, Rational(0)));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Rational s(0);
      for (int c = 0; c < n; ++c) {
        // coefficient of e_c in [e_a, [e_b, e_c]]
        for (auto& [mid, cm] : t.bracket(b, c))
          for (auto& [fin, cf] : t.bracket(a, mid))
            if (fin == c) s += cm * cf;
      }
      k[a][b] = k[b][a] = s;
    }
  return k;
}

/// Simple factors of a compact subalgebra that contains the full Cartan
/// part of its parent. Root labels carried by the basis make the sub's root
/// system explicit: the planes (u_α, v_α) inside the subalgebra are exactly
/// its root spaces relative to that Cartan.
inline std::vector<CartanType> identify_components(const SubAlgebra& sub) {
  if (!is_negative_definite(killing_form(sub.table)))
    throw ConstructionError("subalgebra is not compact semisimple");

  int cartan_count = 0;
  std::set<int> roots;
  for (const auto& e : sub.elements) {
    if (e.kind == CompactBasis::Element::cartan) ++cartan_count;
    else roots.insert(e.root);
  }
  if (cartan_count != sub.rs.rank)
    throw ConstructionError("subalgebra does not contain the Cartan part");

  // Simple roots of the sub: labels not expressible as a sum of two labels.
  std::vector<RootVector> simple;
  for (int k : roots) {
    const RootVector& alpha = sub.rs.positive[k];
    bool decomposable = false;
    for (int m : roots) {
      if (decomposable) break;
      RootVector rest = alpha;
      bool nonneg = true;
      for (int j = 0; j < sub.rs.rank; ++j) {
        rest[j] -= sub.rs.positive[m][j];
        if (rest[j] < 0) nonneg = false;
      }
      if (!nonneg) continue;
      auto it = sub.rs.index.find(rest);
      if (it != sub.rs.index.end() && roots.count(it->second)) decomposable = true;
    }
    if (!decomposable) simple.push_back(sub.rs.positive[k]);
  }

  // Split by Dynkin-graph connectivity.
  int r = static_cast<int>(simple.size());
  std::vector<int> comp(r, -1);
  int ncomp = 0;
  for (int i = 0; i < r; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int j = 0; j < r; ++j)
        if (comp[j] < 0 && inner_product(sub.rs, simple[x], simple[j]) != 0) {
          comp[j] = ncomp;
          stack.push_back(j);
        }
    }
    ++ncomp;
  }

  std::vector<CartanType> result;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<RootVector> part;
    for (int i = 0; i < r; ++i)
      if (comp[i] == c) part.push_back(simple[i]);
    int pr = static_cast<int>(part.size());
    if (pr > 8) throw ConstructionError("component rank too large to identify");

    QMat cm(pr, QVec(pr));
    for (int i = 0; i < pr; ++i)
      for (int j = 0; j < pr; ++j)
        cm[i][j] = 2 * inner_product(sub.rs, part[i], part[j]) /
                   inner_product(sub.rs, part[j], part[j]);

    std::vector<CartanType> candidates;
    candidates.push_back({Series::A, pr});
    if (pr >= 2) candidates.push_back({Series::B, pr});
    if (pr >= 2) candidates.push_back({Series::C, pr});
    if (pr >= 3) candidates.push_back({Series::D, pr});
    if (pr == 4) candidates.push_back({Series::F, 4});

    std::optional<CartanType> found;
    std::vector<int> perm(pr);
    std::iota(perm.begin(), perm.end(), 0);
    for (const CartanType& cand : candidates) {
      auto ref = build_root_system(cand);
      std::vector<int> p = perm;
      bool match = false;
      do {
        bool ok = true;
        for (int i = 0; i < pr && ok; ++i)
          for (int j = 0; j < pr && ok; ++j)
            if (cm[p[i]][p[j]] != ref.cartan[i][j]) ok = false;
        if (ok) match = true;
      } while (!match && std::next_permutation(p.begin(), p.end()));
      if (match) {
        found = cand;
        break;
      }
    }
    if (!found) throw ConstructionError("component does not match a supported type");
    result.push_back(*found);
  }
  std::sort(result.begin(), result.end(), [](const CartanType& a, const CartanType& b) {
    return a.name() < b.name();
  });
  return result;
}

inline CartanType identify_type(const SubAlgebra& sub) {
  auto parts = identify_components(sub);
  if (parts.size() != 1) {
    std::ostringstream os;
    os << "subalgebra is not simple; factors:";
    for (auto& p : parts) os << " " << p.name();
    throw ConstructionError(os.str());
  }
  return parts[0];
}

}  // namespace liecurv
