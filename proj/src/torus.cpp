#include "cuspcert/torus.hpp"

#include <stdexcept>

namespace cuspcert {

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::TwoA: return "2A";
    case Family::TwoD: return "2D";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "A") return Family::A;
  if (name == "B") return Family::B;
  if (name == "C") return Family::C;
  if (name == "D") return Family::D;
  if (name == "2A") return Family::TwoA;
  if (name == "2D") return Family::TwoD;
  throw std::invalid_argument("unknown family: " + name);
}

namespace {

// basis e_1 - e_2, ..., e_{n-1} - e_n of the sum-zero hyperplane lattice
IntMatrix sum_zero_basis(int n) {
  IntMatrix b(n, n - 1);
  for (int j = 0; j + 1 < n; ++j) {
    b.at(j, j) = 1;
    b.at(j + 1, j) = -1;
  }
  return b;
}

// basis e_1 - e_2, ..., e_{n-1} - e_n, 2 e_n of the sum-even lattice
IntMatrix sum_even_basis(int n) {
  IntMatrix b(n, n);
  for (int j = 0; j + 1 < n; ++j) {
    b.at(j, j) = 1;
    b.at(j + 1, j) = -1;
  }
  b.at(n - 1, n - 1) = 2;
  return b;
}

SignedPermutation minus_identity(int n) {
  std::vector<int> perm(n), signs(n, -1);
  for (int i = 0; i < n; ++i) perm[i] = i;
  return SignedPermutation(perm, signs);
}

SignedPermutation last_sign_flip(int n) {
  std::vector<int> perm(n), signs(n, 1);
  for (int i = 0; i < n; ++i) perm[i] = i;
  signs[n - 1] = -1;
  return SignedPermutation(perm, signs);
}

}  // namespace

FamilySpec build_family(Family family, int rank) {
  switch (family) {
    case Family::A: {
      if (rank < 1) throw std::invalid_argument("family A needs rank >= 1");
      const int n = rank + 1;
      return {family, rank, n, Lattice(n, sum_zero_basis(n)), SignedPermutation(n),
              WeylFamily::A, rank, "sum_zero"};
    }
    case Family::B: {
      if (rank < 2) throw std::invalid_argument("family B needs rank >= 2");
      return {family, rank, rank, Lattice::standard(rank), SignedPermutation(rank),
              WeylFamily::B, rank, "full"};
    }
    case Family::C: {
      if (rank < 2) throw std::invalid_argument("family C needs rank >= 2");
      return {family, rank, rank, Lattice(rank, sum_even_basis(rank)), SignedPermutation(rank),
              WeylFamily::C, rank, "sum_even"};
    }
    case Family::D: {
      if (rank < 4) throw std::invalid_argument("family D needs rank >= 4");
      return {family, rank, rank, Lattice(rank, sum_even_basis(rank)), SignedPermutation(rank),
              WeylFamily::D, rank, "sum_even"};
    }
    case Family::TwoA: {
      if (rank < 2) throw std::invalid_argument("family 2A needs rank >= 2");
      const int n = rank + 1;
      return {family, rank, n, Lattice(n, sum_zero_basis(n)), minus_identity(n),
              WeylFamily::A, n - 1, "sum_zero"};
    }
    case Family::TwoD: {
      if (rank < 3) throw std::invalid_argument("family 2D needs rank >= 3");
      const int n = rank + 1;
      return {family, rank, n, Lattice(n, sum_even_basis(n)), last_sign_flip(n),
              WeylFamily::D, n, "sum_even"};
    }
  }
  throw std::invalid_argument("unknown family");
}

bool is_prime_power(const Int& q) {
  if (q < 2) return false;
  Int rest = q;
  Int p = 0;
  for (Int f = 2; f * f <= rest; ++f) {
    if (rest % f == 0) {
      p = f;
      while (rest % f == 0) rest /= f;
      break;
    }
  }
  if (p == 0) return true;  // q itself is prime
  return rest == 1;         // no second prime factor allowed
}

TwistedTorus twist(const FamilySpec& spec, const SignedPermutation& w, const Int& q) {
  if (!is_prime_power(q)) throw std::invalid_argument("q = " + q.get_str() + " is not a prime power");
  WeylGroup group(spec.weyl_family, spec.weyl_rank);
  if (!group.contains(w)) throw std::invalid_argument("twist element is not in the Weyl group");
  SignedPermutation geom = w.compose(spec.f0);
  IntMatrix m_ambient = geom.matrix().scaled(q) - IntMatrix::identity(spec.ambient_dim);
  IntMatrix m = restrict_to_lattice(m_ambient, spec.char_lattice);
  return {spec, w, q, geom, std::move(m_ambient), std::move(m)};
}

bool is_anisotropic(const TwistedTorus& t) {
  IntMatrix fixed = t.geom_frob.matrix() - IntMatrix::identity(t.spec.ambient_dim);
  return determinant(restrict_to_lattice(fixed, t.spec.char_lattice)) != 0;
}

Lattice fixed_sublattice(const TwistedTorus& t) {
  IntMatrix fixed = t.geom_frob.matrix() - IntMatrix::identity(t.spec.ambient_dim);
  return kernel_lattice(fixed, t.spec.char_lattice);
}

Int torus_order(const TwistedTorus& t) {
  Int det = determinant(t.m);
  return det < 0 ? Int(-det) : det;
}

CharacterGroup::CharacterGroup(const TwistedTorus& t) : lattice_(t.spec.char_lattice) {
  snf_ = smith_normal_form(t.m);
  u_inverse_ = unimodular_inverse(snf_.U);
  d_ = snf_.d;
  order_ = 1;
  for (const Int& dv : d_) order_ *= dv;
  if (order_ == 0) throw std::invalid_argument("character group of an isotropic torus is infinite");
}

std::vector<Int> CharacterGroup::project(const std::vector<Int>& v) const {
  auto c = lattice_.coords(v);
  if (!c) throw std::invalid_argument("vector is not in the character lattice");
  std::vector<Int> x = snf_.U.apply(*c);
  for (std::size_t i = 0; i < x.size(); ++i) {
    mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), d_[i].get_mpz_t());
  }
  return x;
}

IntMatrix CharacterGroup::action_matrix(const SignedPermutation& s) const {
  IntMatrix sl = restrict_to_lattice(s.matrix(), lattice_);
  IntMatrix a = snf_.U * sl * u_inverse_;
  // the induced map is well defined mod the invariant factors; reduce
  // entries by the row modulus to keep the numbers small
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      mpz_fdiv_r(a.at(i, j).get_mpz_t(), a.at(i, j).get_mpz_t(), d_[i].get_mpz_t());
  return a;
}

std::vector<Int> CharacterGroup::act(const IntMatrix& a, const std::vector<Int>& x) const {
  std::vector<Int> y = a.apply(x);
  for (std::size_t i = 0; i < y.size(); ++i)
    mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), d_[i].get_mpz_t());
  return y;
}

CharacterGroup character_group(const TwistedTorus& t) { return CharacterGroup(t); }

}  // namespace cuspcert
