#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "liecurv/error.hpp"
#include "liecurv/rational.hpp"
#include "liecurv/util.hpp"

namespace liecurv {

/// Sparse vector over a basis: (index, coefficient) pairs, sorted by index,
/// no zero coefficients.
using Sparse = std::vector<std::pair<int, Rational>>;

inline void sparse_normalize(Sparse& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Sparse out;
  for (auto& [idx, c] : v) {
    if (!out.empty() && out.back().first == idx)
      out.back().second += c;
    else
      out.emplace_back(idx, c);
    if (out.back().second == 0) out.pop_back();
  }
  v = std::move(out);
}

inline void sparse_axpy(Sparse& dest, const Rational& coeff, const Sparse& src) {
  if (coeff == 0) return;
  for (auto& [idx, c] : src) dest.emplace_back(idx, coeff * c);
}

inline Sparse sparse_neg(Sparse v) {
  for (auto& [idx, c] : v) c = -c;
  return v;
}

/// Bilinear bracket table over an ordered basis. Stores both orientations;
/// antisymmetry is a checked invariant, not an assumption of the layout.
struct StructureTable {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<Sparse>> bk;  // bk[a][b] = [e_a, e_b]

  void init(int n) {
    dim = n;
    labels.assign(n, {});
    bk.assign(n, std::vector<Sparse>(n));
  }

  void set(int a, int b, Sparse value) {
    sparse_normalize(value);
    bk[a][b] = value;
    bk[b][a] = sparse_neg(std::move(value));
  }

  const Sparse& bracket(int a, int b) const { return bk[a][b]; }

  Sparse bracket(const Sparse& x, const Sparse& y) const {
    Sparse out;
    for (auto& [i, ci] : x)
      for (auto& [j, cj] : y) sparse_axpy(out, ci * cj, bk[i][j]);
    sparse_normalize(out);
    return out;
  }
};

struct JacobiReport {
  bool pass = true;
  int a = -1, b = -1, c = -1;
  std::string detail;
};

/// Exhaustive certification: antisymmetry on all pairs, then the Jacobi
/// identity on all index triples a < b < c (triples with a repeated index
/// reduce to antisymmetry). Parallel over the leading index; the first
/// violation in lexicographic order wins, independent of thread count.
inline JacobiReport jacobi_check(const StructureTable& t) {
  int n = t.dim;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) {
      Sparse s = t.bk[a][b];
      sparse_axpy(s, Rational(1), t.bk[b][a]);
      sparse_normalize(s);
      if (!s.empty())
        return {false, a, b, -1, "antisymmetry fails on (" + t.labels[a] + ", " +
                                     t.labels[b] + ")"};
    }

  auto scan = [&](std::size_t begin, std::size_t end) -> JacobiReport {
    for (std::size_t a = begin; a < end; ++a)
      for (int b = static_cast<int>(a) + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          Sparse s = t.bracket(t.bk[a][b], {{c, Rational(1)}});
          sparse_axpy(s, Rational(1),
                      t.bracket(t.bk[b][c], {{static_cast<int>(a), Rational(1)}}));
          Sparse third = t.bracket(t.bk[c][static_cast<int>(a)], {{b, Rational(1)}});
          sparse_axpy(s, Rational(1), third);
          sparse_normalize(s);
          if (!s.empty()) {
            std::ostringstream os;
            os << "jacobi sum has " << s.size() << " nonzero term(s) on ("
               << t.labels[a] << ", " << t.labels[b] << ", " << t.labels[c] << ")";
            return {false, static_cast<int>(a), b, c, os.str()};
          }
        }
    return {};
  };
  for (const JacobiReport& r :
       chunked_map<JacobiReport>(static_cast<std::size_t>(n), scan))
    if (!r.pass) return r;
  return {};
}

/// Deterministic line-per-bracket dump, for diffing and external checks.
inline std::string dump_table(const StructureTable& t) {
  std::ostringstream os;
  for (int a = 0; a < t.dim; ++a)
    for (int b = a + 1; b < t.dim; ++b) {
      if (t.bk[a][b].empty()) continue;
      os << "[" << t.labels[a] << ", " << t.labels[b] << "] =";
      for (auto& [idx, c] : t.bk[a][b])
        os << " " << to_fraction_string(c) << "*" << t.labels[idx];
      os << "\n";
    }
  return os.str();
}

}  // namespace liecurv
