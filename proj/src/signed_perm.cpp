#include "cuspcert/signed_perm.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace cuspcert {

SignedPermutation::SignedPermutation(int n) : n_(n) {
  if (n < 0 || n > kMaxDim) throw std::invalid_argument("signed permutation dimension out of range");
  for (int i = 0; i < n_; ++i) {
    perm_[i] = static_cast<std::int8_t>(i);
    sign_[i] = 1;
  }
}

SignedPermutation::SignedPermutation(const std::vector<int>& perm, const std::vector<int>& signs)
    : n_(static_cast<int>(perm.size())) {
  if (n_ > kMaxDim) throw std::invalid_argument("signed permutation dimension out of range");
  if (signs.size() != perm.size()) throw std::invalid_argument("perm and sign lists differ in length");
  std::array<bool, kMaxDim> seen{};
  for (int i = 0; i < n_; ++i) {
    int p = perm[i];
    if (p < 0 || p >= n_ || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
    if (signs[i] != 1 && signs[i] != -1) throw std::invalid_argument("signs must be +1 or -1");
    perm_[i] = static_cast<std::int8_t>(p);
    sign_[i] = static_cast<std::int8_t>(signs[i]);
  }
}

SignedPermutation SignedPermutation::from_images(const std::vector<int>& images) {
  std::vector<int> perm(images.size()), signs(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    int t = images[i];
    if (t == 0 || std::abs(t) > static_cast<int>(images.size()))
      throw std::invalid_argument("image out of range");
    perm[i] = std::abs(t) - 1;
    signs[i] = t > 0 ? 1 : -1;
  }
  return SignedPermutation(perm, signs);
}

bool SignedPermutation::is_identity() const {
  for (int i = 0; i < n_; ++i)
    if (perm_[i] != i || sign_[i] != 1) return false;
  return true;
}

int SignedPermutation::negative_count() const {
  int c = 0;
  for (int i = 0; i < n_; ++i)
    if (sign_[i] < 0) ++c;
  return c;
}

std::vector<Int> SignedPermutation::apply(const std::vector<Int>& x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("vector has wrong dimension");
  std::vector<Int> y(n_);
  for (int i = 0; i < n_; ++i) y[perm_[i]] = sign_[i] > 0 ? x[i] : -x[i];
  return y;
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("composition dimension mismatch");
  SignedPermutation out(n_);
  for (int i = 0; i < n_; ++i) {
    int mid = rhs.perm_[i];
    out.perm_[i] = perm_[mid];
    out.sign_[i] = static_cast<std::int8_t>(rhs.sign_[i] * sign_[mid]);
  }
  return out;
}

SignedPermutation SignedPermutation::inverse() const {
  SignedPermutation out(n_);
  for (int i = 0; i < n_; ++i) {
    out.perm_[perm_[i]] = static_cast<std::int8_t>(i);
    out.sign_[perm_[i]] = sign_[i];
  }
  return out;
}

SignedPermutation SignedPermutation::power(int k) const {
  SignedPermutation base = k >= 0 ? *this : inverse();
  int e = std::abs(k);
  SignedPermutation out(n_);
  while (e > 0) {
    out = out.compose(base);
    --e;
  }
  return out;
}

int SignedPermutation::order() const {
  SignedPermutation acc = *this;
  int k = 1;
  while (!acc.is_identity()) {
    acc = acc.compose(*this);
    ++k;
    if (k > 4096) throw std::logic_error("runaway order computation");
  }
  return k;
}

IntMatrix SignedPermutation::matrix() const {
  IntMatrix m(n_, n_);
  for (int i = 0; i < n_; ++i) m.at(perm_[i], i) = sign_[i];
  return m;
}

std::vector<int> SignedPermutation::images() const {
  std::vector<int> out(n_);
  for (int i = 0; i < n_; ++i) out[i] = sign_[i] * (perm_[i] + 1);
  return out;
}

std::string SignedPermutation::to_string() const {
  std::ostringstream s;
  s << "[";
  for (int i = 0; i < n_; ++i) s << (i ? "," : "") << sign_[i] * (perm_[i] + 1);
  s << "]";
  return s.str();
}

bool SignedPermutation::operator==(const SignedPermutation& rhs) const {
  if (n_ != rhs.n_) return false;
  for (int i = 0; i < n_; ++i)
    if (perm_[i] != rhs.perm_[i] || sign_[i] != rhs.sign_[i]) return false;
  return true;
}

bool SignedPermutation::operator<(const SignedPermutation& rhs) const {
  if (n_ != rhs.n_) return n_ < rhs.n_;
  for (int i = 0; i < n_; ++i)
    if (perm_[i] != rhs.perm_[i]) return perm_[i] < rhs.perm_[i];
  for (int i = 0; i < n_; ++i)
    if (sign_[i] != rhs.sign_[i]) return sign_[i] > rhs.sign_[i];  // +1 first
  return false;
}

}  // namespace cuspcert
