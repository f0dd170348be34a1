#pragma once

#include <vector>

#include "cuspcert/intmat.hpp"

namespace cuspcert {

// U * M * V = diag(d) with U and V unimodular, every d[i] nonnegative,
// d[i] dividing d[i+1], and zeros (if any) at the tail.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix V;
  std::vector<Int> d;  // length min(rows, cols)

  IntMatrix diagonal_matrix(std::size_t rows, std::size_t cols) const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

}  // namespace cuspcert
