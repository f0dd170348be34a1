#include "cuspcert/weyl.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace cuspcert {

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

int ambient_of(WeylFamily family, int rank) {
  return family == WeylFamily::A ? rank + 1 : rank;
}

void check_rank(WeylFamily family, int rank) {
  switch (family) {
    case WeylFamily::A:
      if (rank < 1) throw std::invalid_argument("type A needs rank >= 1");
      break;
    case WeylFamily::B:
    case WeylFamily::C:
      if (rank < 2) throw std::invalid_argument("types B and C need rank >= 2");
      break;
    case WeylFamily::D:
      if (rank < 4) throw std::invalid_argument("type D needs rank >= 4");
      break;
  }
  if (ambient_of(family, rank) > SignedPermutation::kMaxDim)
    throw std::invalid_argument("rank too large for the fixed element capacity");
}

}  // namespace

WeylGroup::WeylGroup(WeylFamily family, int rank) : family_(family), rank_(rank) {
  check_rank(family, rank);
  n_ = ambient_of(family, rank);
  std::uint64_t f = factorial(n_);
  switch (family_) {
    case WeylFamily::A:
      order_ = f;
      break;
    case WeylFamily::B:
    case WeylFamily::C:
      order_ = f << n_;
      break;
    case WeylFamily::D:
      order_ = f << (n_ - 1);
      break;
  }
}

bool WeylGroup::contains(const SignedPermutation& s) const {
  if (s.dim() != n_) return false;
  switch (family_) {
    case WeylFamily::A:
      return s.negative_count() == 0;
    case WeylFamily::B:
    case WeylFamily::C:
      return true;
    case WeylFamily::D:
      return s.negative_count() % 2 == 0;
  }
  return false;
}

std::vector<SignedPermutation> WeylGroup::simple_reflections() const {
  std::vector<SignedPermutation> gens;
  for (int i = 0; i + 1 < n_; ++i) {
    std::vector<Int> root(n_, Int(0));
    root[i] = 1;
    root[i + 1] = -1;
    gens.push_back(reflection(family_, rank_, root));
  }
  std::vector<Int> last(n_, Int(0));
  switch (family_) {
    case WeylFamily::A:
      break;  // transpositions only
    case WeylFamily::B:
      last[n_ - 1] = 1;
      gens.push_back(reflection(family_, rank_, last));
      break;
    case WeylFamily::C:
      last[n_ - 1] = 2;
      gens.push_back(reflection(family_, rank_, last));
      break;
    case WeylFamily::D:
      last[n_ - 2] = 1;
      last[n_ - 1] = 1;
      gens.push_back(reflection(family_, rank_, last));
      break;
  }
  return gens;
}

std::uint64_t WeylGroup::index_space() const {
  std::uint64_t f = factorial(n_);
  return family_ == WeylFamily::A ? f : f << n_;
}

std::uint64_t WeylGroup::element_index(const SignedPermutation& s) const {
  // Lehmer rank of the permutation part
  std::uint64_t rank = 0;
  for (int i = 0; i < n_; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n_; ++j)
      if (s.perm(j) < s.perm(i)) ++smaller;
    rank = rank * static_cast<std::uint64_t>(n_ - i) + static_cast<std::uint64_t>(smaller);
  }
  if (family_ == WeylFamily::A) return rank;
  std::uint64_t mask = 0;
  for (int i = 0; i < n_; ++i)
    if (s.sign(i) < 0) mask |= 1ull << (n_ - 1 - i);
  return (rank << n_) | mask;
}

SignedPermutation WeylGroup::element_at(std::uint64_t idx) const {
  std::uint64_t mask = 0;
  std::uint64_t rank = idx;
  if (family_ != WeylFamily::A) {
    mask = idx & ((1ull << n_) - 1);
    rank = idx >> n_;
  }
  std::vector<int> digits(n_);
  for (int i = n_ - 1; i >= 0; --i) {
    digits[i] = static_cast<int>(rank % static_cast<std::uint64_t>(n_ - i));
    rank /= static_cast<std::uint64_t>(n_ - i);
  }
  std::vector<int> pool(n_);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> perm(n_), signs(n_);
  for (int i = 0; i < n_; ++i) {
    perm[i] = pool[digits[i]];
    pool.erase(pool.begin() + digits[i]);
    signs[i] = (mask >> (n_ - 1 - i)) & 1ull ? -1 : 1;
  }
  return SignedPermutation(perm, signs);
}

SignedPermutation reflection(WeylFamily family, int rank, const std::vector<Int>& root) {
  check_rank(family, rank);
  const int n = ambient_of(family, rank);
  if (static_cast<int>(root.size()) != n) throw std::invalid_argument("root has wrong dimension");

  std::vector<int> support;
  for (int i = 0; i < n; ++i)
    if (root[i] != 0) support.push_back(i);

  if (support.size() == 2) {
    const int i = support[0], j = support[1];
    const Int &a = root[i], &b = root[j];
    if ((a == 1 || a == -1) && (b == 1 || b == -1)) {
      const bool same = a == b;
      if (same && family == WeylFamily::A)
        throw std::invalid_argument("e_i + e_j is not a root of type A");
      std::vector<int> perm(n), signs(n, 1);
      std::iota(perm.begin(), perm.end(), 0);
      perm[i] = j;
      perm[j] = i;
      if (same) signs[i] = signs[j] = -1;  // reflection in e_i + e_j
      return SignedPermutation(perm, signs);
    }
  } else if (support.size() == 1) {
    const int i = support[0];
    const Int& a = root[i];
    const bool short_root = a == 1 || a == -1;
    const bool long_root = a == 2 || a == -2;
    if ((short_root && family == WeylFamily::B) || (long_root && family == WeylFamily::C)) {
      std::vector<int> perm(n), signs(n, 1);
      std::iota(perm.begin(), perm.end(), 0);
      signs[i] = -1;
      return SignedPermutation(perm, signs);
    }
  }
  throw std::invalid_argument("vector is not a root of the declared family");
}

SignedPermutation coxeter_element(WeylFamily family, int rank) {
  WeylGroup group(family, rank);
  SignedPermutation w(group.ambient_dim());
  for (const SignedPermutation& s : group.simple_reflections()) w = w.compose(s);
  return w;
}

SignedPermutation d_signed_cycle(int rank) {
  check_rank(WeylFamily::D, rank);
  const int n = rank;
  std::vector<int> images(n);
  for (int i = 0; i + 2 < n; ++i) images[i] = i + 2;  // e_i -> e_{i+1}
  images[n - 2] = -n;
  images[n - 1] = -1;
  return SignedPermutation::from_images(images);
}

std::optional<std::vector<SignedPermutation>> centralizer_twisted(const WeylGroup& group,
                                                                  const SignedPermutation& w,
                                                                  const SignedPermutation& f0) {
  if (!group.enumerable()) return std::nullopt;
  if (!group.contains(w)) throw std::invalid_argument("twist element is not in the group");
  const SignedPermutation c = w.compose(f0);
  std::vector<SignedPermutation> out;
  group.for_each([&](const SignedPermutation& s) {
    if (s.compose(c) == c.compose(s)) out.push_back(s);
  });
  return out;
}

std::optional<std::vector<SignedPermutation>> structural_centralizer(const WeylGroup& group,
                                                                     const SignedPermutation& w,
                                                                     const SignedPermutation& f0) {
  if (!group.contains(w)) throw std::invalid_argument("twist element is not in the group");
  const SignedPermutation c = w.compose(f0);
  const int n = c.dim();

  // cycles of the permutation part
  std::vector<std::vector<int>> cycles;
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    for (int j = i; !seen[j]; j = c.perm(j)) {
      seen[j] = true;
      cyc.push_back(j);
    }
    cycles.push_back(cyc);
  }
  for (std::size_t a = 0; a < cycles.size(); ++a)
    for (std::size_t b = a + 1; b < cycles.size(); ++b)
      if (cycles[a].size() == cycles[b].size()) return std::nullopt;

  // With distinct cycle lengths, a commuting permutation maps each cycle
  // to itself and rotates it. Enumerate the rotation amounts.
  std::vector<SignedPermutation> out;
  std::vector<std::size_t> rot(cycles.size(), 0);
  for (;;) {
    std::vector<int> p(n);
    for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
      const auto& cyc = cycles[ci];
      const std::size_t len = cyc.size();
      for (std::size_t k = 0; k < len; ++k) p[cyc[k]] = cyc[(k + rot[ci]) % len];
    }
    // Sign chain along each cycle: b[c.perm(j)] = a_j * a_{p(j)} * b_j where
    // a is the sign part of c. Each cycle admits either two solutions (a
    // free global sign) or none, decided by the product condition around
    // the cycle.
    bool consistent = true;
    std::vector<std::vector<std::vector<int>>> per_cycle_options;  // sign vectors indexed by cycle
    for (const auto& cyc : cycles) {
      std::vector<int> b(n, 0);
      const int start = cyc[0];
      b[start] = 1;
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        const int j = cyc[k];
        const int next = c.perm(j);
        const int step = c.sign(j) * c.sign(p[j]);
        if (k + 1 < cyc.size()) {
          b[next] = step * b[j];
        } else if (step * b[j] != b[start]) {
          consistent = false;
        }
      }
      if (!consistent) break;
      std::vector<int> plus, minus;
      for (int j : cyc) plus.push_back(b[j]);
      for (int j : cyc) minus.push_back(-b[j]);
      per_cycle_options.push_back({plus, minus});
    }
    if (consistent) {
      const std::size_t combos = 1ull << cycles.size();
      for (std::size_t pick = 0; pick < combos; ++pick) {
        std::vector<int> signs(n, 1);
        for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
          const auto& opt = per_cycle_options[ci][(pick >> ci) & 1];
          for (std::size_t k = 0; k < cycles[ci].size(); ++k) signs[cycles[ci][k]] = opt[k];
        }
        SignedPermutation s(p, signs);
        if (group.contains(s)) out.push_back(s);
      }
    }
    // next rotation tuple
    std::size_t ci = 0;
    while (ci < cycles.size()) {
      if (++rot[ci] < cycles[ci].size()) break;
      rot[ci] = 0;
      ++ci;
    }
    if (ci == cycles.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<TwistedClassTable> twisted_conjugacy_classes(const WeylGroup& group,
                                                           const SignedPermutation& f0) {
  if (!group.enumerable()) return std::nullopt;
  const int n = group.ambient_dim();
  const std::uint64_t space = group.index_space();

  // moves w -> g w F0(g)^{-1} for each simple generator g, where F0 acts
  // by conjugation: F0(g)^{-1} = f0 g^{-1} f0^{-1}
  std::vector<SignedPermutation> left, right;
  const SignedPermutation f0inv = f0.inverse();
  for (const SignedPermutation& g : group.simple_reflections()) {
    left.push_back(g);
    right.push_back(f0.compose(g.inverse()).compose(f0inv));
  }

  std::vector<bool> visited(space, false);
  TwistedClassTable table{f0, {}};
  std::uint64_t total = 0;

  std::vector<std::uint64_t> queue;
  for (std::uint64_t idx = 0; idx < space; ++idx) {
    if (visited[idx]) continue;
    if (group.family() == WeylFamily::D &&
        (std::popcount(idx & ((1ull << n) - 1)) & 1ull))
      continue;  // odd sign patterns are not elements of W(D)
    SignedPermutation rep = group.element_at(idx);
    visited[idx] = true;
    queue.clear();
    queue.push_back(idx);
    std::uint64_t size = 0;
    while (!queue.empty()) {
      SignedPermutation cur = group.element_at(queue.back());
      queue.pop_back();
      ++size;
      for (std::size_t k = 0; k < left.size(); ++k) {
        std::uint64_t ni = group.element_index(left[k].compose(cur).compose(right[k]));
        if (!visited[ni]) {
          visited[ni] = true;
          queue.push_back(ni);
        }
      }
    }
    total += size;
    table.classes.push_back({rep, size});
  }
  if (total != group.order()) throw std::logic_error("twisted class sizes do not sum to the group order");
  return table;
}

}  // namespace cuspcert
