#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "liecurv/error.hpp"
#include "liecurv/linalg.hpp"
#include "liecurv/rational.hpp"

namespace liecurv {

enum class Series { A, B, C, D, F };

struct CartanType {
  Series series;
  int rank;

  std::string name() const {
    static const char* letters = "ABCDF";
    return std::string(1, letters[static_cast<int>(series)]) + std::to_string(rank);
  }
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

/// Accepts "F4", "f4", "B4", "a1", "d4", ... F is rank-4 only.
inline CartanType parse_cartan_type(const std::string& text) {
  if (text.size() < 2)
    throw InputError("unsupported Cartan type: '" + text + "'");
  char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  int rank = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw InputError("unsupported Cartan type: '" + text + "'");
    rank = rank * 10 + (text[i] - '0');
  }
  Series series;
  switch (letter) {
    case 'A': series = Series::A; break;
    case 'B': series = Series::B; break;
    case 'C': series = Series::C; break;
    case 'D': series = Series::D; break;
    case 'F': series = Series::F; break;
    default: throw InputError("unsupported Cartan type: '" + text + "'");
  }
  CartanType t{series, rank};
  bool ok = false;
  switch (series) {
    case Series::A: ok = rank >= 1; break;
    case Series::B: ok = rank >= 2; break;
    case Series::C: ok = rank >= 2; break;
    case Series::D: ok = rank >= 3; break;
    case Series::F: ok = rank == 4; break;
  }
  if (!ok) throw InputError("unsupported Cartan type: '" + text + "'");
  return t;
}

/// Gram matrix (α_i, α_j) of the simple roots, normalized so the long roots
/// have squared length 2. Bourbaki node numbering throughout.
inline QMat simple_root_gram(const CartanType& t) {
  int l = t.rank;
  QMat g(l, QVec(l, Rational(0)));
  auto chain = [&](Rational val) {
    for (int i = 0; i + 1 < l; ++i) g[i][i + 1] = g[i + 1][i] = val;
  };
  switch (t.series) {
    case Series::A:
      for (int i = 0; i < l; ++i) g[i][i] = 2;
      chain(-1);
      break;
    case Series::B:
      // alpha_l is the short root.
      for (int i = 0; i < l; ++i) g[i][i] = 2;
      g[l - 1][l - 1] = 1;
      chain(-1);
      break;
    case Series::C:
      // alpha_l is the long root; the short chain has squared length 1.
      for (int i = 0; i < l; ++i) g[i][i] = 1;
      g[l - 1][l - 1] = 2;
      chain(Rational(-1, 2));
      g[l - 2][l - 1] = g[l - 1][l - 2] = -1;
      break;
    case Series::D:
      for (int i = 0; i < l; ++i) g[i][i] = 2;
      for (int i = 0; i + 2 < l; ++i) g[i][i + 1] = g[i + 1][i] = -1;
      g[l - 3][l - 1] = g[l - 1][l - 3] = -1;
      break;
    case Series::F:
      g = {{Rational(2), Rational(-1), Rational(0), Rational(0)},
           {Rational(-1), Rational(2), Rational(-1), Rational(0)},
           {Rational(0), Rational(-1), Rational(1), Rational(-1, 2)},
           {Rational(0), Rational(0), Rational(-1, 2), Rational(1)}};
      break;
  }
  return g;
}

/// Cartan matrix C[i][j] = 2(α_i, α_j)/(α_j, α_j); integer entries.
inline std::vector<std::vector<int>> cartan_matrix(const QMat& gram) {
  std::size_t l = gram.size();
  std::vector<std::vector<int>> c(l, std::vector<int>(l, 0));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      Rational v = 2 * gram[i][j] / gram[j][j];
      if (!is_integer(v))
        throw ConstructionError("Cartan pairing is not integral");
      c[i][j] = static_cast<int>(v.get_num().get_si());
    }
  return c;
}

}  // namespace liecurv
