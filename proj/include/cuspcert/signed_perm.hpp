#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cuspcert/intmat.hpp"

namespace cuspcert {

// A signed permutation acting on Z^n by e_i -> sign(i) * e_{perm(i)}.
// Composition matches multiplication of the induced matrices. Ambient
// dimensions stay small (at most 9 on the certification grid), so the
// data lives in flat fixed capacity arrays and elements are cheap to
// copy and compare, which matters when groups with 10^7 elements get
// enumerated.
class SignedPermutation {
 public:
  static constexpr int kMaxDim = 12;

  explicit SignedPermutation(int n);  // identity
  SignedPermutation(const std::vector<int>& perm, const std::vector<int>& signs);

  // 1-based signed targets: {2, 3, -1} sends e1 -> e2, e2 -> e3, e3 -> -e1
  static SignedPermutation from_images(const std::vector<int>& images);

  int dim() const { return n_; }
  int perm(int i) const { return perm_[i]; }
  int sign(int i) const { return sign_[i]; }

  bool is_identity() const;
  int negative_count() const;

  std::vector<Int> apply(const std::vector<Int>& x) const;
  SignedPermutation compose(const SignedPermutation& rhs) const;  // this after rhs
  SignedPermutation inverse() const;
  SignedPermutation power(int k) const;
  int order() const;
  IntMatrix matrix() const;

  std::vector<int> images() const;
  std::string to_string() const;

  bool operator==(const SignedPermutation& rhs) const;
  bool operator!=(const SignedPermutation& rhs) const { return !(*this == rhs); }
  // lexicographic on (perm, signs), plus signs ordered before minus
  bool operator<(const SignedPermutation& rhs) const;

 private:
  int n_;
  std::array<std::int8_t, kMaxDim> perm_;
  std::array<std::int8_t, kMaxDim> sign_;
};

}  // namespace cuspcert
