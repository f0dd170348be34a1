#include "cuspcert/genpos.hpp"

#include <cstdint>
#include <stdexcept>

#include "cuspcert/errors.hpp"

namespace cuspcert {

const char* method_name(RationalWeylAction::Method m) {
  return m == RationalWeylAction::Method::structural ? "structural" : "brute_force_centralizer";
}

const char* method_name(GenPosVerdict::Method m) {
  return m == GenPosVerdict::Method::orbit_oracle ? "orbit_oracle" : "lattice_membership";
}

RationalWeylAction rational_weyl_group(const TwistedTorus& t) {
  WeylGroup group(t.spec.weyl_family, t.spec.weyl_rank);
  if (auto fast = structural_centralizer(group, t.w, t.spec.f0)) {
    return {std::move(*fast), RationalWeylAction::Method::structural};
  }
  if (auto slow = centralizer_twisted(group, t.w, t.spec.f0)) {
    return {std::move(*slow), RationalWeylAction::Method::brute_force_centralizer};
  }
  throw ThresholdExceeded("rational Weyl group: no structural description and |W| = " +
                          std::to_string(group.order()) + " exceeds the enumeration threshold");
}

GenPosVerdict is_general_position(const TwistedTorus& t, const RationalWeylAction& action,
                                  const std::vector<Int>& v) {
  if (!t.spec.char_lattice.contains(v))
    throw std::invalid_argument("witness vector is not in the character lattice");
  for (const SignedPermutation& s : action.elements) {
    if (s.is_identity()) continue;
    std::vector<Int> diff = s.apply(v);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= v[i];
    if (solve_in_lattice(t.m_ambient, diff, t.spec.char_lattice)) {
      return {v, false, s, GenPosVerdict::Method::lattice_membership};
    }
  }
  return {v, true, std::nullopt, GenPosVerdict::Method::lattice_membership};
}

OracleContext make_oracle_context(const TwistedTorus& t, const RationalWeylAction& action) {
  CharacterGroup chars(t);
  if (chars.order() > Int(static_cast<unsigned long>(kOracleThreshold)))
    throw ThresholdExceeded("character group order " + chars.order().get_str() +
                            " exceeds the oracle threshold");
  std::vector<IntMatrix> mats;
  mats.reserve(action.elements.size());
  for (const SignedPermutation& s : action.elements) mats.push_back(chars.action_matrix(s));
  return {std::move(chars), action.elements, std::move(mats)};
}

GenPosVerdict oracle_verdict(const OracleContext& ctx, const std::vector<Int>& v) {
  std::vector<Int> x = ctx.chars.project(v);
  for (std::size_t k = 0; k < ctx.elements.size(); ++k) {
    if (ctx.elements[k].is_identity()) continue;
    if (ctx.chars.act(ctx.action[k], x) == x) {
      return {v, false, ctx.elements[k], GenPosVerdict::Method::orbit_oracle};
    }
  }
  return {v, true, std::nullopt, GenPosVerdict::Method::orbit_oracle};
}

GenPosVerdict orbit_oracle(const TwistedTorus& t, const RationalWeylAction& action,
                           const std::vector<Int>& v) {
  return oracle_verdict(make_oracle_context(t, action), v);
}

std::uint64_t count_general_position(const TwistedTorus& t, const RationalWeylAction& action) {
  OracleContext ctx = make_oracle_context(t, action);
  const std::vector<Int>& d = ctx.chars.invariant_factors();
  const std::size_t n = d.size();

  // everything fits in machine words: every invariant factor divides the
  // group order, which the threshold caps at 1e6
  std::vector<std::int64_t> d64(n);
  for (std::size_t i = 0; i < n; ++i) d64[i] = d[i].get_si();
  std::vector<std::vector<std::int64_t>> mats;
  for (std::size_t k = 0; k < ctx.elements.size(); ++k) {
    if (ctx.elements[k].is_identity()) continue;
    std::vector<std::int64_t> flat(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = ctx.action[k].at(i, j).get_si();
    mats.push_back(std::move(flat));
  }

  std::vector<std::int64_t> x(n, 0);
  std::uint64_t count = 0;
  while (true) {
    bool free_orbit = true;
    for (const auto& a : mats) {
      bool fixed = true;
      for (std::size_t i = 0; i < n && fixed; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += a[i * n + j] * x[j];
        if (acc % d64[i] != x[i]) fixed = false;
      }
      if (fixed) {
        free_orbit = false;
        break;
      }
    }
    if (free_orbit) ++count;

    // mixed-radix increment
    std::size_t pos = 0;
    while (pos < n && ++x[pos] == d64[pos]) x[pos++] = 0;
    if (pos == n) break;
  }
  return count;
}

std::vector<std::vector<Int>> general_position_orbit_reps(const TwistedTorus& t,
                                                          const RationalWeylAction& action,
                                                          std::size_t max_orbits) {
  OracleContext ctx = make_oracle_context(t, action);
  const std::vector<Int>& d = ctx.chars.invariant_factors();
  const std::size_t n = d.size();
  std::vector<std::int64_t> d64(n);
  for (std::size_t i = 0; i < n; ++i) d64[i] = d[i].get_si();
  std::vector<std::vector<std::int64_t>> mats;
  for (std::size_t k = 0; k < ctx.elements.size(); ++k) {
    if (ctx.elements[k].is_identity()) continue;
    std::vector<std::int64_t> flat(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) flat[i * n + j] = ctx.action[k].at(i, j).get_si();
    mats.push_back(std::move(flat));
  }
  auto apply = [&](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& in,
                   std::vector<std::int64_t>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += a[i * n + j] * in[j];
      out[i] = acc % d64[i];
    }
  };

  // walk tuples in lexicographic order; a general-position tuple is recorded
  // exactly when it is the smallest member of its orbit
  std::vector<std::vector<Int>> reps;
  std::vector<std::int64_t> x(n, 0), y(n);
  while (max_orbits > 0) {
    bool gp = true;
    bool minimal = true;
    for (const auto& a : mats) {
      apply(a, x, y);
      if (y == x) {
        gp = false;
        break;
      }
      if (y < x) minimal = false;
    }
    if (gp && minimal) {
      std::vector<Int> rep(n);
      for (std::size_t i = 0; i < n; ++i) rep[i] = x[i];
      reps.push_back(std::move(rep));
      if (reps.size() == max_orbits) break;
    }
    int p = static_cast<int>(n) - 1;
    while (p >= 0 && ++x[p] == d64[p]) x[p--] = 0;
    if (p < 0) break;
  }
  return reps;
}

}  // namespace cuspcert
