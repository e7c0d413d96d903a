#pragma once

// Product cobordisms: the cylinder S x [0,1] over a branched closed surface,
// triangulated with three tetrahedra per surface triangle, plus stacking of
// cobordisms along matching boundary surfaces and the closed product S x S1.
//
// Over a triangle with branch-ranked corners w0 < w1 < w2 the prism is cut
// along the square diagonals u_bottom -> v_top:
//   tet 3f   (A): (w0b, w1b, w2b, w2t)
//   tet 3f+1 (B): (w0b, w1b, w1t, w2t)
//   tet 3f+2 (C): (w0b, w0t, w1t, w2t)
// with vertices ordered bottom-before-top and by surface rank within a level,
// so every tet is listed in branching order. Orientation signs alternate
// (+eta, -eta, +eta) against the surface sign of the triangle.

#include "dwtv/surface.hpp"
#include "dwtv/triangulation.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace dwtv {

// A boundary triangle of a cobordism: the carrying face and the tet corner
// matched with each surface rank (0, 1, 2).
struct PortFace {
  int tet = -1;
  std::array<int, 3> corner_by_rank{};
  int face() const { return 6 - corner_by_rank[0] - corner_by_rank[1] - corner_by_rank[2]; }
};

struct Cobordism {
  Triangulation tri;
  SurfaceTriangulation in_surface;
  SurfaceTriangulation out_surface;
  std::vector<PortFace> in_faces;   // indexed by surface triangle
  std::vector<PortFace> out_faces;
  // surface edge class -> (edge class of tri, sign); sign +1 when the
  // directions agree
  std::vector<std::pair<int, int>> in_edges;
  std::vector<std::pair<int, int>> out_edges;
};

namespace detail {

inline std::vector<std::pair<int, int>> port_edge_map(const Triangulation& tri,
                                                      const SurfaceTriangulation& surf,
                                                      const std::vector<PortFace>& faces) {
  std::vector<std::pair<int, int>> out(surf.edge_class_count(), {-1, 0});
  for (int f = 0; f < surf.tri_count(); ++f)
    for (int s = 0; s < 3; ++s) {
      int k = surf.edge_class(f, s);
      if (out[k].second != 0) continue;
      auto sc = side_corners(s);
      int ra = surf.rank(f, sc[0]);
      int rb = surf.rank(f, sc[1]);
      if (ra > rb) std::swap(ra, rb);
      int lu = faces[f].corner_by_rank[ra];
      int lv = faces[f].corner_by_rank[rb];
      out[k] = tri.edge_of_corners(faces[f].tet, lu, lv);
    }
  return out;
}

// Faces covering the half-squares over surface side (rank pair i < j):
// the lower half (u_bottom, v_bottom, v_top) and the upper half
// (u_bottom, u_top, v_top), as (tet offset within the prism, corner labels
// in role order).
struct HalfSquare {
  int tet_off;
  std::array<int, 3> role_corners;
};

inline std::pair<HalfSquare, HalfSquare> square_halves(int i, int j) {
  if (i == 1 && j == 2) return {{0, {1, 2, 3}}, {1, {1, 2, 3}}};
  if (i == 0 && j == 1) return {{1, {0, 1, 2}}, {2, {0, 1, 2}}};
  if (i == 0 && j == 2) return {{0, {0, 2, 3}}, {2, {0, 1, 3}}};
  throw std::logic_error("square_halves: bad rank pair");
}

}  // namespace detail

inline Cobordism cylinder_over(const SurfaceTriangulation& surf) {
  surf.require_valid();
  int nt = surf.tri_count();
  TriData d;
  d.resize(3 * nt);
  for (int t = 0; t < 3 * nt; ++t) d.dir[t] = {1, 1, 1, 1, 1, 1};
  for (int f = 0; f < nt; ++f) {
    int eta = surf.eta(f);
    d.eps[3 * f + 0] = eta;
    d.eps[3 * f + 1] = -eta;
    d.eps[3 * f + 2] = eta;
    d.add_gluing({3 * f + 0, 2}, {3 * f + 1, 2}, {0, 1, 3});
    d.add_gluing({3 * f + 1, 1}, {3 * f + 2, 1}, {0, 2, 3});
  }
  // side squares across surface gluings
  for (int f = 0; f < nt; ++f)
    for (int s = 0; s < 3; ++s) {
      const auto& g = *surf.gluing(f, s);
      if (g.to < SideRef{f, s}) continue;
      auto sc = side_corners(s);
      int ra = surf.rank(f, sc[0]), rb = surf.rank(f, sc[1]);
      auto halves = detail::square_halves(std::min(ra, rb), std::max(ra, rb));
      auto sc2 = side_corners(g.to.side);
      int ra2 = surf.rank(g.to.tri, sc2[0]), rb2 = surf.rank(g.to.tri, sc2[1]);
      auto halves2 = detail::square_halves(std::min(ra2, rb2), std::max(ra2, rb2));
      auto link = [&](const detail::HalfSquare& ha, const detail::HalfSquare& hb) {
        FaceRef a{3 * f + ha.tet_off, 6 - ha.role_corners[0] - ha.role_corners[1] - ha.role_corners[2]};
        FaceRef b{3 * g.to.tri + hb.tet_off,
                  6 - hb.role_corners[0] - hb.role_corners[1] - hb.role_corners[2]};
        auto fa = face_corners(a.face);
        std::array<int, 3> m{};
        for (int p = 0; p < 3; ++p) {
          int role = -1;
          for (int r = 0; r < 3; ++r)
            if (ha.role_corners[r] == fa[p]) role = r;
          m[p] = hb.role_corners[role];
        }
        d.add_gluing(a, b, m);
      };
      link(halves.first, halves2.first);
      link(halves.second, halves2.second);
    }
  // boundary marks: bottom of prism f is face 3 of tet A, top is face 0 of C
  for (int f = 0; f < nt; ++f) {
    d.marks[3 * f + 0][3] = BoundaryMark{"in", false};
    d.marks[3 * f + 2][0] = BoundaryMark{"out", true};
  }
  Cobordism c{Triangulation(std::move(d)), surf, surf, {}, {}, {}, {}};
  c.tri.require_valid();
  for (int f = 0; f < nt; ++f) {
    c.in_faces.push_back(PortFace{3 * f + 0, {0, 1, 2}});
    c.out_faces.push_back(PortFace{3 * f + 2, {1, 2, 3}});
  }
  c.in_edges = detail::port_edge_map(c.tri, c.in_surface, c.in_faces);
  c.out_edges = detail::port_edge_map(c.tri, c.out_surface, c.out_faces);
  return c;
}

namespace detail {

inline bool same_surface(const SurfaceTriangulation& a, const SurfaceTriangulation& b) {
  if (a.tri_count() != b.tri_count()) return false;
  for (int t = 0; t < a.tri_count(); ++t) {
    if (a.eta(t) != b.eta(t)) return false;
    for (int s = 0; s < 3; ++s) {
      const auto& ga = *a.gluing(t, s);
      const auto& gb = *b.gluing(t, s);
      if (!(ga.to == gb.to) || ga.corner_map != gb.corner_map) return false;
      if (a.edge_sign(t, s) != b.edge_sign(t, s)) return false;
    }
  }
  return true;
}

}  // namespace detail

// Glues the outgoing boundary of `bottom` to the incoming boundary of `top`.
// Both must be cylinders over the same labeled surface triangulation (or
// stacks of such).
inline Cobordism stack(const Cobordism& bottom, const Cobordism& top) {
  if (!detail::same_surface(bottom.out_surface, top.in_surface))
    throw std::invalid_argument("stack: boundary surfaces do not match");
  TriData a = bottom.tri.data();
  TriData b = top.tri.data();
  int off = a.tets;
  TriData d;
  d.resize(a.tets + b.tets);
  for (int t = 0; t < a.tets; ++t) {
    d.eps[t] = a.eps[t];
    d.dir[t] = a.dir[t];
    d.marks[t] = a.marks[t];
  }
  for (int t = 0; t < b.tets; ++t) {
    d.eps[off + t] = b.eps[t];
    d.dir[off + t] = b.dir[t];
    d.marks[off + t] = b.marks[t];
  }
  for (int t = 0; t < a.tets; ++t)
    for (int f = 0; f < 4; ++f)
      if (a.glue[t][f] && (FaceRef{t, f} < a.glue[t][f]->to))
        d.add_gluing({t, f}, a.glue[t][f]->to, a.glue[t][f]->corner_map);
  for (int t = 0; t < b.tets; ++t)
    for (int f = 0; f < 4; ++f)
      if (b.glue[t][f] && (FaceRef{t, f} < b.glue[t][f]->to))
        d.add_gluing({off + t, f}, {off + b.glue[t][f]->to.tet, b.glue[t][f]->to.face},
                     b.glue[t][f]->corner_map);
  // connect rank-to-rank across the shared surface
  int nt = bottom.out_surface.tri_count();
  for (int f = 0; f < nt; ++f) {
    const PortFace& po = bottom.out_faces[f];
    PortFace pi = top.in_faces[f];
    pi.tet += off;
    d.marks[po.tet][po.face()].reset();
    d.marks[pi.tet][pi.face()].reset();
    auto fa = face_corners(po.face());
    std::array<int, 3> m{};
    for (int p = 0; p < 3; ++p) {
      int role = -1;
      for (int r = 0; r < 3; ++r)
        if (po.corner_by_rank[r] == fa[p]) role = r;
      m[p] = pi.corner_by_rank[role];
    }
    d.add_gluing({po.tet, po.face()}, {pi.tet, pi.face()}, m);
  }
  Cobordism c{Triangulation(std::move(d)), bottom.in_surface, top.out_surface,
              bottom.in_faces,             top.out_faces,     {},
              {}};
  c.tri.require_valid();
  for (auto& pf : c.out_faces) pf.tet += off;
  c.in_edges = detail::port_edge_map(c.tri, c.in_surface, c.in_faces);
  c.out_edges = detail::port_edge_map(c.tri, c.out_surface, c.out_faces);
  return c;
}

// The closed product S x S1: the cylinder over S with its top glued back to
// its bottom rank-to-rank.
inline Triangulation closed_product_with_circle(const SurfaceTriangulation& surf) {
  Cobordism cyl = cylinder_over(surf);
  TriData d = cyl.tri.data();
  int nt = surf.tri_count();
  for (int f = 0; f < nt; ++f) {
    const PortFace& po = cyl.out_faces[f];
    const PortFace& pi = cyl.in_faces[f];
    d.marks[po.tet][po.face()].reset();
    d.marks[pi.tet][pi.face()].reset();
    auto fa = face_corners(po.face());
    std::array<int, 3> m{};
    for (int p = 0; p < 3; ++p) {
      int role = -1;
      for (int r = 0; r < 3; ++r)
        if (po.corner_by_rank[r] == fa[p]) role = r;
      m[p] = pi.corner_by_rank[role];
    }
    d.add_gluing({po.tet, po.face()}, {pi.tet, pi.face()}, m);
  }
  Triangulation out(std::move(d));
  out.require_valid();
  return out;
}

inline Triangulation sigma_cross_s1(int g) { return closed_product_with_circle(sigma_surface(g)); }

}  // namespace dwtv
