#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "cuspcert/torus.hpp"

using namespace cuspcert;

namespace {

std::vector<Int> int_vec(const std::vector<int>& v) {
  std::vector<Int> out;
  out.reserve(v.size());
  for (int x : v) out.emplace_back(x);
  return out;
}

SignedPermutation rotation(int n) {
  std::vector<int> images(n);
  for (int i = 0; i + 1 < n; ++i) images[i] = i + 2;
  images[n - 1] = 1;
  return SignedPermutation::from_images(images);
}

SignedPermutation block_twist(int n) {
  const int m = n - 1;
  std::vector<int> images(n);
  for (int j = 0; j + 1 < m; ++j) images[j] = j + 2;
  images[m - 1] = -1;
  images[n - 1] = -n;
  return SignedPermutation::from_images(images);
}

// standard anisotropic twist used on the certification grid
SignedPermutation grid_twist(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::A:
      return rotation(spec.ambient_dim);
    case Family::B:
    case Family::C:
      return coxeter_element(spec.weyl_family, spec.weyl_rank);
    case Family::D:
      return block_twist(spec.ambient_dim);
    case Family::TwoA: {
      const int n = spec.ambient_dim;
      if (n % 2 == 1) return rotation(n);
      std::vector<int> images(n);
      for (int i = 0; i + 2 < n; ++i) images[i] = i + 2;
      images[n - 2] = 1;
      images[n - 1] = n;
      return SignedPermutation::from_images(images);
    }
    case Family::TwoD:
      return rotation(spec.ambient_dim);
  }
  throw std::logic_error("unreachable");
}

Int pow_int(const Int& q, int e) {
  Int out = 1;
  for (int i = 0; i < e; ++i) out *= q;
  return out;
}

std::vector<Int> random_lattice_vector(const Lattice& l, std::mt19937_64& rng) {
  std::vector<Int> coords;
  for (int i = 0; i < l.rank(); ++i)
    coords.emplace_back(static_cast<long>(rng() % 15) - 7);
  return l.from_coords(coords);
}

}  // namespace

TEST_CASE("family names round trip") {
  for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::TwoA, Family::TwoD})
    CHECK(family_from_name(family_name(f)) == f);
  CHECK(family_name(Family::TwoA) == "2A");
  CHECK(family_name(Family::TwoD) == "2D");
  CHECK_THROWS_AS(family_from_name("E"), std::invalid_argument);
  CHECK_THROWS_AS(family_from_name(""), std::invalid_argument);
}

TEST_CASE("family specs carry the right lattice and diagram action") {
  const FamilySpec a = build_family(Family::A, 3);
  CHECK(a.ambient_dim == 4);
  CHECK(a.char_lattice.rank() == 3);
  CHECK(a.lattice_name == "sum_zero");
  CHECK(a.f0.is_identity());
  CHECK(a.weyl_family == WeylFamily::A);
  CHECK(a.weyl_rank == 3);

  const FamilySpec b = build_family(Family::B, 3);
  CHECK(b.ambient_dim == 3);
  CHECK(b.char_lattice.rank() == 3);
  CHECK(b.lattice_name == "full");
  CHECK(b.char_lattice.contains(int_vec({1, 0, 0})));

  const FamilySpec c = build_family(Family::C, 2);
  CHECK(c.lattice_name == "sum_even");
  CHECK(c.char_lattice.basis().column(0) == int_vec({1, -1}));
  CHECK(c.char_lattice.basis().column(1) == int_vec({0, 2}));
  CHECK(c.char_lattice.contains(int_vec({1, 1})));
  CHECK_FALSE(c.char_lattice.contains(int_vec({1, 0})));

  const FamilySpec d = build_family(Family::D, 4);
  CHECK(d.lattice_name == "sum_even");
  CHECK(d.weyl_family == WeylFamily::D);

  const FamilySpec ua = build_family(Family::TwoA, 2);
  CHECK(ua.ambient_dim == 3);
  CHECK(ua.lattice_name == "sum_zero");
  CHECK(ua.f0 == SignedPermutation({0, 1, 2}, {-1, -1, -1}));
  CHECK(ua.weyl_family == WeylFamily::A);
  CHECK(ua.weyl_rank == 2);

  const FamilySpec ud = build_family(Family::TwoD, 3);
  CHECK(ud.ambient_dim == 4);
  CHECK(ud.lattice_name == "sum_even");
  CHECK(ud.f0 == SignedPermutation({0, 1, 2, 3}, {1, 1, 1, -1}));
  CHECK(ud.weyl_family == WeylFamily::D);
  CHECK(ud.weyl_rank == 4);

  CHECK_THROWS_AS(build_family(Family::A, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_family(Family::B, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_family(Family::C, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_family(Family::D, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_family(Family::TwoA, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_family(Family::TwoD, 2), std::invalid_argument);
}

TEST_CASE("prime power detection") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 31, 32, 49, 64, 81, 121, 128})
    CHECK(is_prime_power(q));
  for (int q : {0, 1, 6, 10, 12, 14, 15, 18, 20, 21, 22, 24, 26, 100})
    CHECK_FALSE(is_prime_power(q));
  CHECK_FALSE(is_prime_power(-2));
  CHECK(is_prime_power(Int("1000003")));  // a prime
  CHECK_FALSE(is_prime_power(Int("1000006")));
}

TEST_CASE("twist validation") {
  const FamilySpec spec = build_family(Family::A, 2);
  const SignedPermutation w = rotation(3);
  CHECK_THROWS_AS(twist(spec, w, 6), std::invalid_argument);
  CHECK_THROWS_AS(twist(spec, w, 1), std::invalid_argument);
  CHECK_THROWS_AS(twist(spec, w, 0), std::invalid_argument);
  // sign flips do not lie in a type A Weyl group
  const SignedPermutation flip({0, 1, 2}, {1, 1, -1});
  CHECK_THROWS_AS(twist(spec, flip, 2), std::invalid_argument);
  CHECK_THROWS_AS(twist(spec, SignedPermutation(4), 2), std::invalid_argument);
}

TEST_CASE("frozen matrices for small tori") {
  SUBCASE("B2 Coxeter twist at q = 2") {
    const FamilySpec spec = build_family(Family::B, 2);
    const TwistedTorus t = twist(spec, coxeter_element(WeylFamily::B, 2), 2);
    CHECK(t.geom_frob == t.w);
    CHECK(t.m == IntMatrix::from_rows({int_vec({-1, -2}), int_vec({2, -1})}));
    CHECK(t.m == t.m_ambient);
    CHECK(torus_order(t) == 5);
    const CharacterGroup chars(t);
    CHECK(chars.invariant_factors() == std::vector<Int>{1, 5});
    CHECK(chars.order() == 5);
  }
  SUBCASE("ambient rank three unitary torus at q = 2") {
    const FamilySpec spec = build_family(Family::TwoA, 2);
    const TwistedTorus t = twist(spec, rotation(3), 2);
    CHECK(t.geom_frob.images() == std::vector<int>{-2, -3, -1});
    CHECK(t.m == IntMatrix::from_rows({int_vec({-1, 2}), int_vec({-2, 1})}));
    CHECK(torus_order(t) == 3);
    CHECK(determinant(t.m_ambient) == -9);  // ambient count q^3 + 1 times q - 1
  }
}

TEST_CASE("torus orders follow the cyclotomic closed forms") {
  const std::vector<Int> qs = {2, 3, 4, 5, 7, 9, 16};
  for (const Int& q : qs) {
    for (int n = 2; n <= 6; ++n) {
      const TwistedTorus tb = twist(build_family(Family::B, n), grid_twist(build_family(Family::B, n)), q);
      CHECK(torus_order(tb) == pow_int(q, n) + 1);
      const TwistedTorus tc = twist(build_family(Family::C, n), grid_twist(build_family(Family::C, n)), q);
      CHECK(torus_order(tc) == pow_int(q, n) + 1);
    }
    for (int n = 1; n <= 6; ++n) {
      const FamilySpec spec = build_family(Family::A, n);
      const TwistedTorus t = twist(spec, grid_twist(spec), q);
      CHECK(torus_order(t) * (q - 1) == pow_int(q, n + 1) - 1);
    }
    for (int n = 4; n <= 7; ++n) {
      const FamilySpec spec = build_family(Family::D, n);
      const TwistedTorus t = twist(spec, grid_twist(spec), q);
      CHECK(torus_order(t) == (pow_int(q, n - 1) + 1) * (q + 1));
    }
    for (int r = 2; r <= 6; ++r) {
      const FamilySpec spec = build_family(Family::TwoA, r);
      const TwistedTorus t = twist(spec, grid_twist(spec), q);
      const int n = spec.ambient_dim;
      if (n % 2 == 1) {
        CHECK(torus_order(t) * (q + 1) == pow_int(q, n) + 1);
      } else {
        CHECK(torus_order(t) == pow_int(q, n - 1) + 1);
      }
    }
    for (int r = 3; r <= 6; ++r) {
      const FamilySpec spec = build_family(Family::TwoD, r);
      const TwistedTorus t = twist(spec, grid_twist(spec), q);
      CHECK(torus_order(t) == pow_int(q, spec.ambient_dim) + 1);
    }
  }
}

TEST_CASE("anisotropy detection") {
  for (Family f : {Family::A, Family::B, Family::C, Family::D, Family::TwoA, Family::TwoD}) {
    const int lo = f == Family::D ? 4 : (f == Family::TwoD ? 3 : (f == Family::A || f == Family::TwoA ? 2 : 2));
    for (int rank = lo; rank <= lo + 2; ++rank) {
      const FamilySpec spec = build_family(f, rank);
      const TwistedTorus t = twist(spec, grid_twist(spec), 2);
      CAPTURE(family_name(f));
      CAPTURE(rank);
      CHECK(is_anisotropic(t));
      CHECK(fixed_sublattice(t).rank() == 0);
    }
  }

  SUBCASE("the signed n-cycle twist of D is isotropic") {
    for (int n = 4; n <= 7; ++n) {
      const FamilySpec spec = build_family(Family::D, n);
      const TwistedTorus t = twist(spec, d_signed_cycle(n), 3);
      CHECK_FALSE(is_anisotropic(t));
      const Lattice fixed = fixed_sublattice(t);
      CHECK(fixed.rank() == 1);
      std::vector<Int> v(n, Int(2));
      v[n - 1] = -2;
      CHECK(fixed.contains(v));
      CHECK(torus_order(t) != 0);  // the q-twisted map stays invertible
    }
  }

  SUBCASE("identity twist is isotropic") {
    const FamilySpec spec = build_family(Family::B, 3);
    const TwistedTorus t = twist(spec, SignedPermutation(3), 5);
    CHECK_FALSE(is_anisotropic(t));
    CHECK(fixed_sublattice(t).rank() == 3);
    CHECK(torus_order(t) == pow_int(5, 3) - 3 * pow_int(5, 2) + 3 * 5 - 1);  // (q-1)^3
  }
}

TEST_CASE("torus order is a twisted conjugacy invariant") {
  std::mt19937_64 rng(20240815);
  struct Case {
    Family family;
    int rank;
  };
  for (const Case& c : {Case{Family::B, 3}, Case{Family::TwoA, 3}, Case{Family::TwoD, 3}}) {
    const FamilySpec spec = build_family(c.family, c.rank);
    const SignedPermutation w = grid_twist(spec);
    const WeylGroup group(spec.weyl_family, spec.weyl_rank);
    const TwistedTorus base = twist(spec, w, 4);
    const CharacterGroup base_chars(base);
    for (int rep = 0; rep < 12; ++rep) {
      SignedPermutation s(spec.ambient_dim);
      do {
        s = group.element_at(rng() % group.index_space());
      } while (!group.contains(s));
      // w -> s w F0(s)^{-1} with F0 acting by conjugation with f0
      const SignedPermutation conj =
          s.compose(w).compose(spec.f0.compose(s.inverse()).compose(spec.f0.inverse()));
      REQUIRE(group.contains(conj));
      const TwistedTorus t = twist(spec, conj, 4);
      CHECK(torus_order(t) == torus_order(base));
      CHECK(CharacterGroup(t).invariant_factors() == base_chars.invariant_factors());
      CHECK(is_anisotropic(t) == is_anisotropic(base));
    }
  }
}

TEST_CASE("results do not depend on the chosen lattice basis") {
  std::mt19937_64 rng(20240816);
  for (Family f : {Family::A, Family::C, Family::TwoD}) {
    const int rank = f == Family::TwoD ? 3 : 3;
    FamilySpec spec = build_family(f, rank);
    const SignedPermutation w = grid_twist(spec);
    const TwistedTorus base = twist(spec, w, 3);

    // random unimodular column operations on the basis
    IntMatrix nb = spec.char_lattice.basis();
    for (int step = 0; step < 25; ++step) {
      const int i = static_cast<int>(rng() % nb.cols());
      const int j = static_cast<int>(rng() % nb.cols());
      if (i == j) continue;
      nb.add_col_multiple(j, i, Int(static_cast<long>(rng() % 5) - 2));
    }
    FamilySpec rebased = spec;
    rebased.char_lattice = Lattice(spec.ambient_dim, nb);
    const TwistedTorus t = twist(rebased, w, 3);
    CHECK(torus_order(t) == torus_order(base));
    CHECK(CharacterGroup(t).invariant_factors() == CharacterGroup(base).invariant_factors());
  }
}

TEST_CASE("character group projection and action") {
  std::mt19937_64 rng(20240817);
  struct Case {
    Family family;
    int rank;
    Int q;
  };
  const std::vector<Case> cases = {
      {Family::B, 2, 2}, {Family::B, 3, 3}, {Family::C, 3, 2},  {Family::A, 2, 4},
      {Family::D, 4, 2}, {Family::TwoA, 4, 2}, {Family::TwoD, 3, 2},
  };
  for (const Case& c : cases) {
    const FamilySpec spec = build_family(c.family, c.rank);
    const SignedPermutation w = grid_twist(spec);
    const TwistedTorus t = twist(spec, w, c.q);
    const CharacterGroup chars(t);
    CAPTURE(family_name(c.family));

    Int product = 1;
    for (const Int& d : chars.invariant_factors()) product *= d;
    CHECK(product == torus_order(t));
    for (std::size_t i = 1; i < chars.invariant_factors().size(); ++i)
      CHECK(chars.invariant_factors()[i] % chars.invariant_factors()[i - 1] == 0);

    // only elements commuting with the geometric Frobenius act on the quotient
    const auto cent = structural_centralizer(WeylGroup(spec.weyl_family, spec.weyl_rank), w,
                                             spec.f0);
    REQUIRE(cent.has_value());
    std::vector<IntMatrix> action;
    for (const auto& s : *cent) action.push_back(chars.action_matrix(s));

    for (int rep = 0; rep < 20; ++rep) {
      const std::vector<Int> v = random_lattice_vector(spec.char_lattice, rng);
      const std::vector<Int> pv = chars.project(v);
      for (std::size_t i = 0; i < pv.size(); ++i) {
        CHECK(pv[i] >= 0);
        CHECK(pv[i] < chars.invariant_factors()[i]);
      }
      // shifting by the image lattice does not move the projection
      const std::vector<Int> u = random_lattice_vector(spec.char_lattice, rng);
      CHECK(chars.project(t.m_ambient.apply(u)) == std::vector<Int>(pv.size(), Int(0)));
      std::vector<Int> shifted = v;
      {
        const std::vector<Int> mu = t.m_ambient.apply(u);
        for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += mu[i];
      }
      CHECK(chars.project(shifted) == pv);
      // equivariance of the quotient action, over the whole rational Weyl group
      for (std::size_t k = 0; k < cent->size(); ++k)
        CHECK(chars.project((*cent)[k].apply(v)) == chars.act(action[k], pv));
    }
  }
}
