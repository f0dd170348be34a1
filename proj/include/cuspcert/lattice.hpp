#pragma once

#include <optional>
#include <vector>

#include "cuspcert/intmat.hpp"
#include "cuspcert/smith.hpp"

namespace cuspcert {

// A finite rank sublattice of Z^N stored via an explicit basis matrix
// (N x r, full column rank). This covers Z^n itself, the index two
// sum-even sublattices, and the sum-zero hyperplane lattice uniformly.
class Lattice {
 public:
  Lattice(std::size_t ambient_dim, IntMatrix basis);
  static Lattice standard(std::size_t n);

  std::size_t ambient_dim() const { return n_; }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }

  // coordinates of v in the basis, or nullopt if v is not in the lattice
  std::optional<std::vector<Int>> coords(const std::vector<Int>& v) const;
  bool contains(const std::vector<Int>& v) const;
  std::vector<Int> from_coords(const std::vector<Int>& c) const;

 private:
  std::size_t n_;
  IntMatrix basis_;
  SmithDecomposition basis_snf_;  // precomputed, drives membership solves
};

// One integer solution x of A x = b, free coordinates set to zero;
// nullopt if no integer solution exists.
std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& b);

// The r x r matrix of M restricted to L, written in L-basis coordinates.
// Throws std::invalid_argument if M does not map L into L.
IntMatrix restrict_to_lattice(const IntMatrix& m, const Lattice& l);

// Solve M x = v with x in L, for M an ambient endomorphism mapping L into
// L and v in L. Returns an ambient solution vector, or nullopt when v is
// not in M(L). Rejects v outside L and M not stabilizing L.
std::optional<std::vector<Int>> solve_in_lattice(const IntMatrix& m, const std::vector<Int>& v,
                                                 const Lattice& l);

// The sublattice {x in L : M x = 0}.
Lattice kernel_lattice(const IntMatrix& m, const Lattice& l);

}  // namespace cuspcert
