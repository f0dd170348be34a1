#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "cuspcert/errors.hpp"
#include "cuspcert/signed_perm.hpp"

namespace cuspcert {

enum class WeylFamily { A, B, C, D };

// Full enumeration is allowed up to this many group elements. B_8 and D_8
// sit below the bound, D_9 (needed as the ambient group of the largest
// non-split orthogonal case) does not.
constexpr std::uint64_t kEnumerationThreshold = 20'000'000;

// W(A_n) = S_{n+1} on Z^{n+1} (all signs +1), |W(B_n)| = |W(C_n)| = 2^n n!,
// W(D_n) = even sign count subgroup of W(B_n).
class WeylGroup {
 public:
  WeylGroup(WeylFamily family, int rank);

  WeylFamily family() const { return family_; }
  int rank() const { return rank_; }
  int ambient_dim() const { return n_; }
  std::uint64_t order() const { return order_; }
  bool enumerable() const { return order_ <= kEnumerationThreshold; }
  bool contains(const SignedPermutation& s) const;
  std::vector<SignedPermutation> simple_reflections() const;

  // Dense indexing of the enumeration space: permutations in Lehmer rank
  // order, tensored with sign masks for B/C/D. Ascending index equals the
  // lexicographic element order of SignedPermutation::operator<. For D the
  // space includes odd sign patterns; those indices are simply never used.
  std::uint64_t index_space() const;
  std::uint64_t element_index(const SignedPermutation& s) const;
  SignedPermutation element_at(std::uint64_t idx) const;

  // Visit every element in lexicographic order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    std::vector<int> p(n_);
    std::iota(p.begin(), p.end(), 0);
    std::vector<int> signs(n_, 1);
    const bool with_signs = family_ != WeylFamily::A;
    const std::uint32_t mask_end = with_signs ? (1u << n_) : 1u;
    do {
      for (std::uint32_t mask = 0; mask < mask_end; ++mask) {
        if (family_ == WeylFamily::D && (std::popcount(mask) & 1u)) continue;
        for (int i = 0; i < n_; ++i) signs[i] = (mask >> (n_ - 1 - i)) & 1u ? -1 : 1;
        fn(SignedPermutation(p, signs));
      }
    } while (std::next_permutation(p.begin(), p.end()));
  }

 private:
  WeylFamily family_;
  int rank_;
  int n_;
  std::uint64_t order_;
};

// Orthogonal reflection in a root of the given family. Accepted roots:
// e_i - e_j everywhere; e_i + e_j in B, C, D; e_i in B; 2 e_i in C.
SignedPermutation reflection(WeylFamily family, int rank, const std::vector<Int>& root);

// Product of the simple reflections in Bourbaki order. Its order is the
// Coxeter number: n+1 for A_n, 2n for B_n and C_n, 2(n-1) for D_n.
SignedPermutation coxeter_element(WeylFamily family, int rank);

// The signed full cycle (x_1,...,x_n) -> (-x_n, x_1, ..., x_{n-2}, -x_{n-1})
// in W(D_n). It has order n, so it is not a Coxeter element, and the split
// torus twisted by it keeps Frobenius fixed vectors. Kept as the classical
// negative control for type D.
SignedPermutation d_signed_cycle(int rank);

struct TwistedClass {
  SignedPermutation rep;  // lexicographically minimal class member
  std::uint64_t size;
};

struct TwistedClassTable {
  SignedPermutation f0;
  std::vector<TwistedClass> classes;
};

// All s in W with s(wF0) = (wF0)s as lattice maps, by full enumeration.
// nullopt when the group is too large to enumerate.
std::optional<std::vector<SignedPermutation>> centralizer_twisted(const WeylGroup& group,
                                                                  const SignedPermutation& w,
                                                                  const SignedPermutation& f0);

// The same subgroup computed without enumerating W: any solution must
// normalize the cycles of the permutation part of wF0, and the signs then
// satisfy a chain of two-element-field equations along each cycle.
// Applicable whenever the cycle lengths of the permutation part are
// pairwise distinct, which covers every twist this library constructs.
// nullopt when that condition fails.
std::optional<std::vector<SignedPermutation>> structural_centralizer(const WeylGroup& group,
                                                                     const SignedPermutation& w,
                                                                     const SignedPermutation& f0);

// Partition of W under w ~ x w F0(x)^{-1} with F0 acting by conjugation.
// Representatives are the lexicographically minimal class members.
// nullopt when the group is too large to enumerate.
std::optional<TwistedClassTable> twisted_conjugacy_classes(const WeylGroup& group,
                                                           const SignedPermutation& f0);

}  // namespace cuspcert
