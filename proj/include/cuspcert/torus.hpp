#pragma once

#include <string>
#include <vector>

#include "cuspcert/lattice.hpp"
#include "cuspcert/signed_perm.hpp"
#include "cuspcert/smith.hpp"
#include "cuspcert/weyl.hpp"

namespace cuspcert {

enum class Family { A, B, C, D, TwoA, TwoD };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Character lattice of the adjoint torus plus the lattice action of the
// diagram part of Frobenius.
//   A_n:   N = n+1, sum-zero lattice, F0 = identity
//   B_n:   N = n,   Z^n,              F0 = identity
//   C_n:   N = n,   sum-even lattice, F0 = identity
//   D_n:   N = n,   sum-even lattice, F0 = identity
//   2A_r:  N = r+1, sum-zero lattice, F0 = -identity
//   2D_r:  N = r+1, sum-even lattice, F0 = sign flip on the last coordinate
struct FamilySpec {
  Family family;
  int rank;
  int ambient_dim;
  Lattice char_lattice;
  SignedPermutation f0;
  WeylFamily weyl_family;  // group the twisting elements live in
  int weyl_rank;
  std::string lattice_name;  // "full" | "sum_zero" | "sum_even"
};

FamilySpec build_family(Family family, int rank);

bool is_prime_power(const Int& q);

// T_0(w) over F_q: the geometric Frobenius acts on the character lattice
// as w after F0, and the relative q-Frobenius as q times that.
struct TwistedTorus {
  FamilySpec spec;
  SignedPermutation w;
  Int q;
  SignedPermutation geom_frob;  // w after F0
  IntMatrix m_ambient;          // q * (w after F0) - 1 on the ambient lattice
  IntMatrix m;                  // the same map in char_lattice coordinates
};

TwistedTorus twist(const FamilySpec& spec, const SignedPermutation& w, const Int& q);

// True when the geometric Frobenius fixes no nonzero lattice vector,
// equivalently det(wF0 - 1) != 0 on the character lattice.
bool is_anisotropic(const TwistedTorus& t);

// {v in the character lattice : (wF0) v = v}; zero rank iff anisotropic.
Lattice fixed_sublattice(const TwistedTorus& t);

// |T(F_q)| = |det m|.
Int torus_order(const TwistedTorus& t);

// The finite abelian group Lambda / (q wF0 - 1) Lambda in invariant factor
// coordinates, with enough decomposition data to push Weyl elements down
// to the quotient.
class CharacterGroup {
 public:
  CharacterGroup(const TwistedTorus& t);

  const std::vector<Int>& invariant_factors() const { return d_; }
  const Int& order() const { return order_; }

  // image of an ambient lattice vector, entries reduced into [0, d_i)
  std::vector<Int> project(const std::vector<Int>& v) const;

  // matrix of the quotient action of s, entries reduced mod the row modulus
  IntMatrix action_matrix(const SignedPermutation& s) const;

  // apply an action matrix to quotient coordinates
  std::vector<Int> act(const IntMatrix& a, const std::vector<Int>& x) const;

 private:
  Lattice lattice_;
  SmithDecomposition snf_;
  IntMatrix u_inverse_;
  std::vector<Int> d_;
  Int order_;
};

CharacterGroup character_group(const TwistedTorus& t);

}  // namespace cuspcert
