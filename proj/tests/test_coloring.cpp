#include "doctest.h"

#include "dwtv/builders.hpp"
#include "dwtv/coloring.hpp"
#include "dwtv/prism.hpp"
#include "dwtv/rng.hpp"

#include <vector>

using namespace dwtv;

namespace {

// Independent oracle: odometer over all |G|^E assignments, checking every
// triangle relation directly.
long long brute_count(const ConstraintSystem& sys, const FiniteGroup& g) {
  std::vector<int> a(sys.vars, 0);
  auto term = [&](int var, bool inv) { return inv ? g.inv(a[var]) : a[var]; };
  long long total = 0;
  while (true) {
    bool ok = true;
    for (const auto& r : sys.rels)
      if (g.mul(term(r.var[0], r.inv[0]), term(r.var[1], r.inv[1])) != term(r.var[2], r.inv[2])) {
        ok = false;
        break;
      }
    if (ok) ++total;
    int i = 0;
    while (i < sys.vars && ++a[i] == g.order()) {
      a[i] = 0;
      ++i;
    }
    if (i == sys.vars) break;
  }
  return total;
}

bool is_flat(const ConstraintSystem& sys, const FiniteGroup& g, const std::vector<int>& col) {
  auto term = [&](int var, bool inv) { return inv ? g.inv(col[var]) : col[var]; };
  for (const auto& r : sys.rels)
    if (g.mul(term(r.var[0], r.inv[0]), term(r.var[1], r.inv[1])) != term(r.var[2], r.inv[2]))
      return false;
  return true;
}

}  // namespace

TEST_CASE("surface coloring counts against the odometer oracle") {
  auto torus = constraint_system(torus_surface());
  CHECK(all_colorings(torus, FiniteGroup::cyclic(2)).size() == 4);
  CHECK(brute_count(torus, FiniteGroup::cyclic(2)) == 4);
  CHECK(all_colorings(torus, FiniteGroup::cyclic(3)).size() == 9);
  CHECK(brute_count(torus, FiniteGroup::cyclic(3)) == 9);
  auto s3 = FiniteGroup::symmetric(3);
  CHECK(all_colorings(torus, s3).size() == 18);  // commuting pairs
  CHECK(brute_count(torus, s3) == 18);

  auto g2 = constraint_system(sigma_surface(2));
  CHECK(all_colorings(g2, FiniteGroup::cyclic(2)).size() == 16);
  CHECK(brute_count(g2, FiniteGroup::cyclic(2)) == 16);

  auto sphere = constraint_system(sphere_surface());
  // simply connected: gauge freedom at 4 vertices over a base point
  CHECK(all_colorings(sphere, FiniteGroup::cyclic(3)).size() == 27);
  CHECK(brute_count(sphere, FiniteGroup::cyclic(3)) == 27);
}

TEST_CASE("3-manifold coloring counts against the odometer oracle") {
  auto t3 = constraint_system(torus3());
  CHECK(all_colorings(t3, FiniteGroup::cyclic(2)).size() == 8);
  CHECK(brute_count(t3, FiniteGroup::cyclic(2)) == 8);
  CHECK(all_colorings(t3, FiniteGroup::cyclic(3)).size() == 27);
  CHECK(brute_count(t3, FiniteGroup::cyclic(3)) == 27);
  auto s3 = FiniteGroup::symmetric(3);
  CHECK(all_colorings(t3, s3).size() == 48);  // commuting triples

  auto sp = constraint_system(sphere3());
  CHECK(all_colorings(sp, FiniteGroup::cyclic(2)).size() == 16);  // |G|^(n0-1)
  CHECK(brute_count(sp, FiniteGroup::cyclic(2)) == 16);
  CHECK(all_colorings(sp, FiniteGroup::cyclic(3)).size() == 81);
}

TEST_CASE("coloring counts only depend on the manifold") {
  // a refined torus surface has more vertices, scaling the count by |G|
  auto refined = constraint_system(refine_triangle(torus_surface(), 0));
  CHECK(all_colorings(refined, FiniteGroup::cyclic(2)).size() == 8);
  CHECK(brute_count(refined, FiniteGroup::cyclic(2)) == 8);

  // the mapping torus of the identity on the torus matches torus3
  auto prod = constraint_system(closed_product_with_circle(torus_surface()));
  CHECK(all_colorings(prod, FiniteGroup::cyclic(2)).size() == 8);
  auto s3 = FiniteGroup::symmetric(3);
  CHECK(all_colorings(prod, s3).size() == 48);
}

TEST_CASE("compiled programs use the expected number of free steps") {
  CHECK(ColoringProgram(constraint_system(torus_surface())).free_step_count() == 2);
  CHECK(ColoringProgram(constraint_system(sigma_surface(2))).free_step_count() == 4);
  CHECK(ColoringProgram(constraint_system(torus3())).free_step_count() == 3);
  CHECK(ColoringProgram(constraint_system(sphere3())).free_step_count() == 4);
}

TEST_CASE("all enumerated colorings are flat, sorted, and unique") {
  auto sys = constraint_system(torus3());
  auto g = FiniteGroup::symmetric(3);
  auto cols = all_colorings(sys, g);
  for (const auto& c : cols) CHECK(is_flat(sys, g, c));
  for (size_t i = 1; i < cols.size(); ++i) CHECK(cols[i - 1] < cols[i]);
}

TEST_CASE("pinned searches") {
  auto sys = constraint_system(torus_surface());
  auto g = FiniteGroup::cyclic(2);
  std::vector<int> pinned(sys.vars, -1);
  pinned[0] = 1;
  auto cols = all_colorings(sys, g, pinned);
  CHECK(cols.size() == 2);
  for (const auto& c : cols) {
    CHECK(c[0] == 1);
    CHECK(is_flat(sys, g, c));
  }
  // pinning everything to a non-solution yields nothing
  std::vector<int> bad(sys.vars, 0);
  bad[0] = 1;
  bad[1] = 0;
  bad[2] = 0;
  auto none = all_colorings(sys, g, bad);
  CHECK(none.empty());
}

TEST_CASE("gauge transforms preserve flatness") {
  auto sys = constraint_system(torus3());
  auto g = FiniteGroup::symmetric(3);
  auto cols = all_colorings(sys, g);
  SplitMix64 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    const auto& c = cols[rng.below(cols.size())];
    std::vector<int> delta(sys.verts);
    for (auto& d : delta) d = rng.below_int(g.order());
    auto img = gauge_transform(sys, g, c, delta);
    CHECK(is_flat(sys, g, img));
  }
}

TEST_CASE("gauge orbit counts") {
  // abelian group, one vertex: conjugation is trivial, orbits are singletons
  auto t3 = constraint_system(torus3());
  auto z2 = FiniteGroup::cyclic(2);
  auto cols = all_colorings(t3, z2);
  CHECK(gauge_orbit_count(t3, z2, cols) == 8);

  // the 3-sphere has a single orbit
  auto sp = constraint_system(sphere3());
  auto spc = all_colorings(sp, z2);
  CHECK(gauge_orbit_count(sp, z2, spc) == 1);

  // surface torus with S3: 18 colorings in 8 conjugation orbits
  auto ts = constraint_system(torus_surface());
  auto s3 = FiniteGroup::symmetric(3);
  auto tsc = all_colorings(ts, s3);
  CHECK(gauge_orbit_count(ts, s3, tsc) == 8);

  // refining does not change the orbit count
  auto rf = constraint_system(refine_triangle(torus_surface(), 0));
  CHECK(gauge_orbit_count(rf, z2, all_colorings(rf, z2)) == 4);
  CHECK(gauge_orbit_count(ts, z2, all_colorings(ts, z2)) == 4);
}

TEST_CASE("weighted histograms against unweighted counts") {
  auto t3 = constraint_system(torus3());
  auto z2 = parse_group_spec_shared("cyclic:2");
  ColoringProgram prog(t3);
  auto triv = trivial_cocycle(z2);
  auto hist = prog.weighted_histogram(*z2, triv);
  REQUIRE(hist.size() == 1);
  CHECK(hist[0] == 8);

  // a nontrivial cocycle redistributes but preserves the total
  auto zn = zn_cocycle(3);
  auto z3 = zn.group;
  auto t3sys = constraint_system(torus3());
  ColoringProgram prog3(t3sys);
  auto h3 = prog3.weighted_histogram(*z3, zn);
  BigInt total = 0;
  for (const auto& v : h3) total += v;
  CHECK(total == 27);
}

#include "dwtv/homcount.hpp"

TEST_CASE("hom counts from the presentation oracle") {
  auto z2 = FiniteGroup::cyclic(2);
  auto z3 = FiniteGroup::cyclic(3);
  auto s3 = FiniteGroup::symmetric(3);

  CHECK(hom_count(sphere3(), z2) == 1);
  CHECK(hom_count(sphere3(), s3) == 1);
  CHECK(hom_count(torus3(), z2) == 8);
  CHECK(hom_count(torus3(), z3) == 27);
  CHECK(hom_count(torus3(), s3) == 48);
  CHECK(hom_count(torus3(), FiniteGroup::product(z2, z2)) == 64);

  // surfaces: the genus-g counts match the character-sum formula
  // |G|^(2g-1) * sum over irreducibles of dim^(2-2g)
  CHECK(hom_count(torus_surface(), s3) == 18);
  CHECK(hom_count(sigma_surface(2), z3) == 81);
  CHECK(hom_count(sigma_surface(2), s3) == 486);
  CHECK(hom_count(sphere_surface(), s3) == 1);

  // products with the circle: sum of centralizer counts
  CHECK(hom_count(closed_product_with_circle(torus_surface()), s3) == 48);
  CHECK(hom_count(sigma_cross_s1(2), s3) == 696);
}

TEST_CASE("hom masses") {
  auto z2 = FiniteGroup::cyclic(2);
  auto s3 = FiniteGroup::symmetric(3);
  CHECK(hom_mass(sphere3(), z2) == Rational(1, 2));
  CHECK(hom_mass(torus3(), s3) == Rational(8));
  CHECK(hom_mass(sigma_cross_s1(2), s3) == Rational(116));
}

TEST_CASE("hom conjugation orbits") {
  auto z2 = FiniteGroup::cyclic(2);
  auto s3 = FiniteGroup::symmetric(3);
  CHECK(hom_count_mod_conj(sphere3(), z2) == 1);
  CHECK(hom_count_mod_conj(sphere3(), s3) == 1);
  CHECK(hom_count_mod_conj(torus3(), z2) == 8);
  CHECK(hom_count_mod_conj(torus3(), s3) == 21);
  CHECK(hom_count_mod_conj(torus_surface(), s3) == 8);
  // Burnside over centralizers: (696 + 3*32 + 2*243) / 6
  CHECK(hom_count_mod_conj(sigma_cross_s1(2), s3) == 213);
}

TEST_CASE("gauge orbit counts agree with hom conjugation orbits") {
  auto z2 = FiniteGroup::cyclic(2);
  auto s3 = FiniteGroup::symmetric(3);
  {
    auto t = torus3();
    auto sys = constraint_system(t);
    CHECK(BigInt(gauge_orbit_count(sys, s3, all_colorings(sys, s3))) ==
          hom_count_mod_conj(sys, s3));
  }
  {
    auto t = sphere3();
    auto sys = constraint_system(t);
    CHECK(BigInt(gauge_orbit_count(sys, z2, all_colorings(sys, z2))) ==
          hom_count_mod_conj(sys, z2));
  }
  {
    auto s = sigma_surface(2);
    auto sys = constraint_system(s);
    CHECK(BigInt(gauge_orbit_count(sys, z2, all_colorings(sys, z2))) ==
          hom_count_mod_conj(sys, z2));
  }
}
