// General position tests for characters of a twisted maximal torus.
//
// A character is in general position when no non-identity element of the
// rational Weyl group W_T(k) fixes it.  Two independent tests are provided:
//
//  * lattice membership: s fixes the class of v exactly when s(v) - v lies
//    in the image lattice (q Frob - 1) L, decided by an exact integer solve;
//  * orbit oracle: project v into the finite quotient L / (q Frob - 1) L via
//    the Smith form and act there directly.
//
// The oracle path materializes the quotient group, so it is guarded by
// kOracleThreshold; the membership path has no size limit.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cuspcert/torus.hpp"

namespace cuspcert {

constexpr std::uint64_t kOracleThreshold = 1'000'000;

struct RationalWeylAction {
  enum class Method { brute_force_centralizer, structural };

  std::vector<SignedPermutation> elements;  // sorted, identity first
  Method method;

  std::uint64_t order() const { return elements.size(); }
};

const char* method_name(RationalWeylAction::Method m);

// Computes W_T(k), the centralizer of w * F0 in the Weyl group.  Prefers the
// structural route (valid whenever the cycle type of the underlying
// permutation has pairwise distinct lengths); falls back to brute-force
// enumeration for small groups.  Throws ThresholdExceeded when neither
// applies.
RationalWeylAction rational_weyl_group(const TwistedTorus& t);

struct GenPosVerdict {
  enum class Method { lattice_membership, orbit_oracle };

  std::vector<Int> witness;
  bool in_general_position;
  std::optional<SignedPermutation> failing_element;
  Method method;
};

const char* method_name(GenPosVerdict::Method m);

// Exact test via solve_in_lattice; v must lie in the character lattice.
GenPosVerdict is_general_position(const TwistedTorus& t, const RationalWeylAction& action,
                                  const std::vector<Int>& v);

// Precomputed data for the quotient-group route.
struct OracleContext {
  CharacterGroup chars;
  std::vector<SignedPermutation> elements;
  std::vector<IntMatrix> action;  // aligned with elements
};

// Throws ThresholdExceeded when the character group is larger than
// kOracleThreshold.
OracleContext make_oracle_context(const TwistedTorus& t, const RationalWeylAction& action);

GenPosVerdict oracle_verdict(const OracleContext& ctx, const std::vector<Int>& v);

// Convenience wrapper: build the context and test one vector.
GenPosVerdict orbit_oracle(const TwistedTorus& t, const RationalWeylAction& action,
                           const std::vector<Int>& v);

// Number of characters of T(k) in general position, by exhaustive scan of
// the quotient group.  Subject to kOracleThreshold.
std::uint64_t count_general_position(const TwistedTorus& t, const RationalWeylAction& action);

// Lexicographically minimal representatives of the first max_orbits orbits
// of general-position characters, in quotient coordinates (one entry per
// invariant factor), ascending.  Subject to kOracleThreshold.
std::vector<std::vector<Int>> general_position_orbit_reps(const TwistedTorus& t,
                                                          const RationalWeylAction& action,
                                                          std::size_t max_orbits);

}  // namespace cuspcert
