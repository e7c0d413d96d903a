#include "doctest.h"

#include "dwtv/surface.hpp"

#include <set>
#include <vector>

using namespace dwtv;

TEST_CASE("sphere surface structure") {
  auto s = sphere_surface();
  CHECK(s.valid());
  CHECK(s.tri_count() == 4);
  CHECK(s.vertex_class_count() == 4);
  CHECK(s.edge_class_count() == 6);
  CHECK(s.euler_characteristic() == 2);
  CHECK(s.eta(0) == 1);
  CHECK(s.eta(1) == -1);
  CHECK(s.eta(2) == 1);
  CHECK(s.eta(3) == -1);
  // every edge class is shared by exactly two side slots
  std::vector<int> uses(s.edge_class_count(), 0);
  for (int t = 0; t < 4; ++t)
    for (int e = 0; e < 3; ++e) ++uses[s.edge_class(t, e)];
  for (int u : uses) CHECK(u == 2);
}

TEST_CASE("torus surface structure") {
  auto s = torus_surface();
  CHECK(s.valid());
  CHECK(s.tri_count() == 2);
  CHECK(s.vertex_class_count() == 1);
  CHECK(s.edge_class_count() == 3);
  CHECK(s.euler_characteristic() == 0);
  CHECK(s.eta(0) == 1);
  CHECK(s.eta(1) == -1);
  // corner 0 is the branching source of both triangles
  CHECK(s.rank(0, 0) == 0);
  CHECK(s.rank(1, 0) == 0);
  // each triangle touches all three edge classes
  for (int t = 0; t < 2; ++t) {
    std::set<int> ids;
    for (int e = 0; e < 3; ++e) ids.insert(s.edge_class(t, e));
    CHECK(ids.size() == 3);
  }
}

TEST_CASE("higher genus fan surfaces") {
  for (int g = 2; g <= 3; ++g) {
    CAPTURE(g);
    auto s = sigma_surface(g);
    CHECK(s.valid());
    CHECK(s.tri_count() == 4 * g - 2);
    CHECK(s.vertex_class_count() == 1);
    CHECK(s.edge_class_count() == 6 * g - 3);
    CHECK(s.euler_characteristic() == 2 - 2 * g);
    for (int t = 0; t < s.tri_count(); ++t) {
      CAPTURE(t);
      CHECK(s.rank(t, 0) == 0);  // the polygon center is the source everywhere
    }
  }
  CHECK_THROWS_AS(sigma_surface(0), std::invalid_argument);
}

TEST_CASE("surface validation failures") {
  // unglued side
  SurfData d;
  d.resize(2);
  d.add_gluing({0, 0}, {1, 0}, {1, 2});
  d.add_gluing({0, 1}, {1, 1}, {0, 2});
  for (auto& a : d.dir) a = {1, 1, 1};
  SurfaceTriangulation s(d);
  CHECK(!s.valid());
  CHECK_THROWS_AS(s.require_valid(), std::runtime_error);

  // edge glued to itself reversed: one triangle pair with a flip
  SurfData d2;
  d2.resize(2);
  d2.add_gluing({0, 0}, {1, 0}, {1, 2});
  d2.add_gluing({0, 1}, {1, 1}, {0, 2});
  d2.add_gluing({0, 2}, {1, 2}, {1, 0});  // reversed correspondence
  for (auto& a : d2.dir) a = {1, 1, 1};
  SurfaceTriangulation s2(d2);
  CHECK(!s2.valid());
}

TEST_CASE("doubled triangle is a sphere") {
  // two triangles glued along all three sides by the identity correspondence
  SurfData d;
  d.resize(2);
  for (int e = 0; e < 3; ++e) {
    auto sc = side_corners(e);
    d.add_gluing({0, e}, {1, e}, {sc[0], sc[1]});
  }
  d.dir[0] = {1, 1, 1};
  d.dir[1] = {1, 1, 1};
  d.eta[0] = 1;
  d.eta[1] = -1;
  SurfaceTriangulation s(std::move(d));
  CHECK(s.valid());
  CHECK(s.vertex_class_count() == 3);
  CHECK(s.edge_class_count() == 3);
  CHECK(s.euler_characteristic() == 2);
}

TEST_CASE("refining a triangle preserves the surface invariants") {
  auto t0 = torus_surface();
  auto t1 = refine_triangle(t0, 0);
  CHECK(t1.valid());
  CHECK(t1.tri_count() == 4);
  CHECK(t1.vertex_class_count() == 2);
  CHECK(t1.edge_class_count() == 6);
  CHECK(t1.euler_characteristic() == 0);

  auto t2 = refine_triangle(t1, 2);
  CHECK(t2.valid());
  CHECK(t2.tri_count() == 6);
  CHECK(t2.euler_characteristic() == 0);

  auto s1 = refine_triangle(sphere_surface(), 3);
  CHECK(s1.valid());
  CHECK(s1.tri_count() == 6);
  CHECK(s1.vertex_class_count() == 5);
  CHECK(s1.edge_class_count() == 9);
  CHECK(s1.euler_characteristic() == 2);

  auto g2 = refine_triangle(sigma_surface(2), 1);
  CHECK(g2.valid());
  CHECK(g2.euler_characteristic() == -2);

  CHECK_THROWS_AS(refine_triangle(t0, 5), std::invalid_argument);
}

#include "dwtv/prism.hpp"

TEST_CASE("cylinder over the torus") {
  auto cyl = cylinder_over(torus_surface());
  CHECK(cyl.tri.valid());
  CHECK(cyl.tri.tet_count() == 6);
  CHECK(cyl.tri.vertex_class_count() == 2);
  CHECK(cyl.tri.edge_class_count() == 10);
  CHECK(cyl.tri.euler_characteristic() == 0);
  CHECK(!cyl.tri.closed());
  CHECK(cyl.tri.boundary_face_count() == 4);
  auto& comps = cyl.tri.boundary_components();
  REQUIRE(comps.size() == 2);
  std::set<std::string> labels;
  for (auto& c : comps) labels.insert(c.label);
  CHECK(labels == std::set<std::string>{"in", "out"});
  // the port edge maps respect directions and hit distinct classes
  std::set<int> in_ids, out_ids;
  for (auto [id, sgn] : cyl.in_edges) {
    CHECK(sgn == 1);
    in_ids.insert(id);
  }
  for (auto [id, sgn] : cyl.out_edges) {
    CHECK(sgn == 1);
    out_ids.insert(id);
  }
  CHECK(in_ids.size() == 3);
  CHECK(out_ids.size() == 3);
  for (int id : in_ids) CHECK(!out_ids.count(id));
}

TEST_CASE("cylinder over the sphere") {
  auto cyl = cylinder_over(sphere_surface());
  CHECK(cyl.tri.valid());
  CHECK(cyl.tri.tet_count() == 12);
  CHECK(cyl.tri.vertex_class_count() == 8);
  CHECK(cyl.tri.edge_class_count() == 22);
  CHECK(cyl.tri.euler_characteristic() == 2);
}

TEST_CASE("cylinder over a refined surface") {
  auto s = refine_triangle(torus_surface(), 1);
  auto cyl = cylinder_over(s);
  CHECK(cyl.tri.valid());
  CHECK(cyl.tri.tet_count() == 12);
  CHECK(cyl.tri.vertex_class_count() == 2 * s.vertex_class_count());
  CHECK(cyl.tri.edge_class_count() == 3 * s.edge_class_count() + s.vertex_class_count());
  CHECK(cyl.tri.euler_characteristic() == 0);
}

TEST_CASE("stacked cylinders") {
  auto cyl = cylinder_over(torus_surface());
  auto two = stack(cyl, cyl);
  CHECK(two.tri.valid());
  CHECK(two.tri.tet_count() == 12);
  CHECK(two.tri.vertex_class_count() == 3);
  CHECK(two.tri.boundary_face_count() == 4);
  auto three = stack(two, cyl);
  CHECK(three.tri.valid());
  CHECK(three.tri.tet_count() == 18);
  CHECK(three.tri.vertex_class_count() == 4);
  // ports still map onto distinct directed classes
  for (auto [id, sgn] : three.in_edges) CHECK(sgn == 1);
  for (auto [id, sgn] : three.out_edges) CHECK(sgn == 1);
  CHECK_THROWS_AS(stack(cyl, cylinder_over(sphere_surface())), std::invalid_argument);
}

TEST_CASE("closed products with the circle") {
  auto t3 = closed_product_with_circle(torus_surface());
  CHECK(t3.valid());
  CHECK(t3.closed());
  CHECK(t3.tet_count() == 6);
  CHECK(t3.vertex_class_count() == 1);
  CHECK(t3.edge_class_count() == 7);
  CHECK(t3.euler_characteristic() == 0);

  auto g2 = sigma_cross_s1(2);
  CHECK(g2.valid());
  CHECK(g2.closed());
  CHECK(g2.tet_count() == 18);
  CHECK(g2.vertex_class_count() == 1);
  CHECK(g2.edge_class_count() == 19);
  CHECK(g2.euler_characteristic() == 0);

  auto s2 = closed_product_with_circle(sphere_surface());
  CHECK(s2.valid());
  CHECK(s2.closed());
  CHECK(s2.vertex_class_count() == 4);
  CHECK(s2.euler_characteristic() == 0);
}
