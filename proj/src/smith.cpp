#include "cuspcert/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace cuspcert {

IntMatrix SmithDecomposition::diagonal_matrix(std::size_t rows, std::size_t cols) const {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < d.size() && i < rows && i < cols; ++i) m.at(i, i) = d[i];
  return m;
}

namespace {

// Smallest magnitude nonzero entry of the trailing block, or false if the
// block is all zero.
bool find_pivot(const IntMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Int& v = a.at(i, j);
      if (v == 0) continue;
      Int av = abs(v);
      if (!found || av < best) {
        found = true;
        best = av;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(r);
  IntMatrix v = IntMatrix::identity(c);
  const std::size_t steps = std::min(r, c);

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      std::size_t pi = t, pj = t;
      if (!find_pivot(a, t, pi, pj)) goto done;  // rest of d stays zero
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);

      // clear row t and column t; a remainder smaller than the pivot ever
      // produced becomes the new pivot
      bool dirty = true;
      while (dirty) {
        dirty = false;
        for (std::size_t i = t + 1; i < r; ++i) {
          if (a.at(i, t) == 0) continue;
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), a.at(i, t).get_mpz_t(), a.at(t, t).get_mpz_t());
          a.add_row_multiple(i, t, -q);
          u.add_row_multiple(i, t, -q);
          if (a.at(i, t) != 0) {
            a.swap_rows(t, i);
            u.swap_rows(t, i);
            dirty = true;
          }
        }
        for (std::size_t j = t + 1; j < c; ++j) {
          if (a.at(t, j) == 0) continue;
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), a.at(t, j).get_mpz_t(), a.at(t, t).get_mpz_t());
          a.add_col_multiple(j, t, -q);
          v.add_col_multiple(j, t, -q);
          if (a.at(t, j) != 0) {
            a.swap_cols(t, j);
            v.swap_cols(t, j);
            dirty = true;
          }
        }
      }

      // the pivot must divide the whole trailing block, otherwise mix the
      // offending row in and reduce again (the pivot gcd strictly shrinks)
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c && divides; ++j)
          if (a.at(i, j) % a.at(t, t) != 0) {
            a.add_row_multiple(t, i, 1);
            u.add_row_multiple(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
  }
done:

  for (std::size_t t = 0; t < steps; ++t)
    if (a.at(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }

  SmithDecomposition out;
  out.U = std::move(u);
  out.V = std::move(v);
  out.d.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) out.d[t] = a.at(t, t);
  return out;
}

}  // namespace cuspcert
