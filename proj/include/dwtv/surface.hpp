#pragma once

// Closed triangulated surfaces with branching, the 2d counterpart of the
// 3-manifold structure: triangles with corner labels 0..2, sides indexed by
// their opposite corner, side gluings with corner correspondences, directed
// edge classes, and a per-triangle orientation sign relative to the
// branching order.

#include "dwtv/triangulation.hpp"  // reuse the union-find helpers

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dwtv {

inline std::array<int, 2> side_corners(int s) {
  std::array<int, 2> out{};
  int k = 0;
  for (int c = 0; c < 3; ++c)
    if (c != s) out[k++] = c;
  return out;
}

struct SideRef {
  int tri = -1;
  int side = -1;
  bool operator==(const SideRef& o) const { return tri == o.tri && side == o.side; }
  bool operator<(const SideRef& o) const { return tri != o.tri ? tri < o.tri : side < o.side; }
};

struct SideGluing {
  SideRef to;
  std::array<int, 2> corner_map{};  // image of side_corners(side)[i]
};

struct SurfData {
  int tris = 0;
  std::vector<std::array<std::optional<SideGluing>, 3>> glue;
  std::vector<int> eta;                 // +1/-1 relative to branching order
  std::vector<std::array<int, 3>> dir;  // per side slot: +1 directs the ascending corner pair

  void resize(int n) {
    tris = n;
    glue.assign(n, {});
    eta.assign(n, 1);
    dir.assign(n, {0, 0, 0});
  }

  void add_gluing(SideRef a, SideRef b, std::array<int, 2> map) {
    auto sa = side_corners(a.side);
    auto sb = side_corners(b.side);
    glue.at(a.tri).at(a.side) = SideGluing{b, map};
    std::array<int, 2> invm{};
    for (int i = 0; i < 2; ++i) {
      int pos = -1;
      for (int j = 0; j < 2; ++j)
        if (sb[j] == map[i]) pos = j;
      if (pos < 0) throw std::invalid_argument("side gluing map does not land on the target side");
      invm[pos] = sa[i];
    }
    glue.at(b.tri).at(b.side) = SideGluing{a, invm};
  }
};

class SurfaceTriangulation {
 public:
  explicit SurfaceTriangulation(SurfData data) : d_(std::move(data)) { analyze(); }

  int tri_count() const { return d_.tris; }
  int eta(int t) const { return d_.eta[t]; }
  const std::optional<SideGluing>& gluing(int t, int s) const { return d_.glue[t][s]; }

  bool valid() const { return violations_.empty(); }
  const std::vector<std::string>& violations() const { return violations_; }
  void require_valid() const {
    if (!valid()) throw std::runtime_error("invalid surface: " + violations_.front());
  }

  int vertex_class_count() const { return n0_; }
  int vertex_class(int t, int c) const { return vclass_[static_cast<size_t>(t) * 3 + c]; }
  int edge_class_count() const { return static_cast<int>(edge_rep_.size()); }
  int edge_class(int t, int s) const { return eclass_[static_cast<size_t>(t) * 3 + s]; }
  int edge_sign(int t, int s) const { return esign_[static_cast<size_t>(t) * 3 + s]; }
  std::pair<int, int> edge_rep_slot(int id) const { return {edge_rep_[id] / 3, edge_rep_[id] % 3}; }
  std::pair<int, int> edge_endpoints(int id) const { return edge_ends_[id]; }

  int rank(int t, int c) const { return rank_[static_cast<size_t>(t) * 3 + c]; }
  int corner_by_rank(int t, int r) const { return order_[static_cast<size_t>(t) * 3 + r]; }

  // (edge class, sign); sign +1 when the class direction runs u -> v
  std::pair<int, int> edge_of_corners(int t, int u, int v) const {
    int s = 3 - u - v;
    int sig = edge_sign(t, s);
    if (u > v) sig = -sig;
    return {edge_class(t, s), sig};
  }

  long long euler_characteristic() const {
    return static_cast<long long>(n0_) - edge_class_count() + d_.tris;
  }

  SurfData data() const {
    SurfData d = d_;
    for (int t = 0; t < d_.tris; ++t)
      for (int s = 0; s < 3; ++s) d.dir[t][s] = edge_sign(t, s);
    return d;
  }

 private:
  void analyze();
  void violation(const std::string& msg) { violations_.push_back(msg); }

  SurfData d_;
  std::vector<std::string> violations_;
  int n0_ = 0;
  std::vector<int> vclass_, eclass_, esign_, edge_rep_, rank_, order_;
  std::vector<std::pair<int, int>> edge_ends_;
};

inline void SurfaceTriangulation::analyze() {
  int n = d_.tris;
  // the empty surface is closed with nothing to check
  if (n == 0) return;
  bool structure_ok = true;
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < 3; ++s) {
      const auto& g = d_.glue[t][s];
      if (!g) {
        violation("triangle " + std::to_string(t) + " side " + std::to_string(s) +
                  " is unglued (surfaces must be closed)");
        structure_ok = false;
        continue;
      }
      if (g->to.tri < 0 || g->to.tri >= n || g->to.side < 0 || g->to.side > 2 ||
          (g->to == SideRef{t, s})) {
        violation("triangle " + std::to_string(t) + " side " + std::to_string(s) +
                  ": bad gluing target");
        structure_ok = false;
        continue;
      }
      auto sb = side_corners(g->to.side);
      std::set<int> img(g->corner_map.begin(), g->corner_map.end());
      if (img != std::set<int>(sb.begin(), sb.end())) {
        violation("triangle " + std::to_string(t) + " side " + std::to_string(s) +
                  ": corner map is not a bijection");
        structure_ok = false;
        continue;
      }
      const auto& back = d_.glue[g->to.tri][g->to.side];
      if (!back || !(back->to == SideRef{t, s})) {
        violation("gluing of triangle " + std::to_string(t) + " side " + std::to_string(s) +
                  " is not matched by its partner");
        structure_ok = false;
      }
    }
  if (!structure_ok) return;

  detail::UF vuf(3 * n);
  detail::SignedUF euf(3 * n);
  bool parity_ok = true;
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < 3; ++s) {
      const auto& g = d_.glue[t][s];
      auto sa = side_corners(s);
      for (int i = 0; i < 2; ++i) vuf.unite(t * 3 + sa[i], g->to.tri * 3 + g->corner_map[i]);
      int rel = (g->corner_map[0] < g->corner_map[1]) ? 0 : 1;
      if (!euf.unite(t * 3 + s, g->to.tri * 3 + g->to.side, rel)) parity_ok = false;
    }
  if (!parity_ok) {
    violation("an edge class is identified with itself orientation-reversed");
    return;
  }

  vclass_.assign(static_cast<size_t>(3) * n, -1);
  std::map<int, int> vroot;
  for (int s = 0; s < 3 * n; ++s) {
    int r = vuf.find(s);
    auto it = vroot.find(r);
    if (it == vroot.end()) it = vroot.emplace(r, static_cast<int>(vroot.size())).first;
    vclass_[s] = it->second;
  }
  n0_ = static_cast<int>(vroot.size());

  eclass_.assign(static_cast<size_t>(3) * n, -1);
  esign_.assign(static_cast<size_t>(3) * n, 0);
  edge_rep_.clear();
  std::map<int, std::pair<int, int>> eroot;
  for (int s = 0; s < 3 * n; ++s) {
    auto [r, p] = euf.find(s);
    auto it = eroot.find(r);
    if (it == eroot.end()) {
      it = eroot.emplace(r, std::make_pair(static_cast<int>(edge_rep_.size()), p)).first;
      edge_rep_.push_back(s);
    }
    eclass_[s] = it->second.first;
    esign_[s] = (p == it->second.second) ? 1 : -1;
  }

  // branching directions per class
  std::vector<int> forward(edge_rep_.size(), 0);
  bool branch_ok = true;
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < 3; ++s) {
      if (d_.dir[t][s] == 0) continue;
      int id = eclass_[static_cast<size_t>(t) * 3 + s];
      int root_dir = d_.dir[t][s] * esign_[static_cast<size_t>(t) * 3 + s];
      if (forward[id] == 0) forward[id] = root_dir;
      else if (forward[id] != root_dir) {
        violation("conflicting branching directions for surface edge class " + std::to_string(id));
        branch_ok = false;
      }
    }
  for (size_t id = 0; id < forward.size(); ++id)
    if (forward[id] == 0) {
      violation("surface edge class " + std::to_string(id) + " has no branching direction");
      branch_ok = false;
    }
  if (!branch_ok) return;
  for (int s = 0; s < 3 * n; ++s) esign_[s] *= forward[eclass_[s]];

  edge_ends_.assign(edge_rep_.size(), {-1, -1});
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < 3; ++s) {
      int id = eclass_[static_cast<size_t>(t) * 3 + s];
      if (edge_ends_[id].first >= 0) continue;
      auto [a, b] = side_corners(s);
      int u = vclass_[static_cast<size_t>(t) * 3 + a];
      int v = vclass_[static_cast<size_t>(t) * 3 + b];
      if (esign_[static_cast<size_t>(t) * 3 + s] < 0) std::swap(u, v);
      edge_ends_[id] = {u, v};
    }

  // local orders: the 3-vertex tournaments must be transitive
  rank_.assign(static_cast<size_t>(3) * n, -1);
  order_.assign(static_cast<size_t>(3) * n, -1);
  for (int t = 0; t < n; ++t) {
    std::array<int, 3> outdeg{0, 0, 0};
    for (int s = 0; s < 3; ++s) {
      auto [a, b] = side_corners(s);
      if (esign_[static_cast<size_t>(t) * 3 + s] > 0) ++outdeg[a];
      else ++outdeg[b];
    }
    std::array<bool, 3> used{false, false, false};
    bool ok = true;
    for (int c = 0; c < 3; ++c) {
      if (used[outdeg[c]]) ok = false;
      else used[outdeg[c]] = true;
    }
    if (!ok) {
      violation("branching is cyclic inside triangle " + std::to_string(t));
      return;
    }
    for (int c = 0; c < 3; ++c) {
      int r = 2 - outdeg[c];
      rank_[static_cast<size_t>(t) * 3 + c] = r;
      order_[static_cast<size_t>(t) * 3 + r] = c;
    }
  }

  // orientation consistency: eta'(t) * (-1)^s * sgn(map) = -eta'(t2) * (-1)^s2,
  // where eta' is the sign relative to the corner labeling
  auto eta_corner = [&](int t) {
    std::array<int, 3> rk{};
    for (int c = 0; c < 3; ++c) rk[c] = rank_[static_cast<size_t>(t) * 3 + c];
    int sgn = 1;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (rk[i] > rk[j]) sgn = -sgn;
    return d_.eta[t] * sgn;
  };
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < 3; ++s) {
      const auto& g = d_.glue[t][s];
      if (g->to < SideRef{t, s}) continue;
      int mapsgn = (g->corner_map[0] < g->corner_map[1]) ? 1 : -1;
      int lhs = eta_corner(t) * ((s % 2) ? -1 : 1) * mapsgn;
      int rhs = -eta_corner(g->to.tri) * ((g->to.side % 2) ? -1 : 1);
      if (lhs != rhs)
        violation("orientations disagree across the gluing of triangle " + std::to_string(t) +
                  " side " + std::to_string(s));
    }
}

// Boundary of the 3-simplex: four triangles, triangle i omitting vertex i.
inline SurfaceTriangulation sphere_surface() {
  SurfData d;
  d.resize(4);
  std::vector<std::array<int, 3>> gv(4);  // global vertex ids per corner
  for (int i = 0; i < 4; ++i) {
    int k = 0;
    for (int v = 0; v < 4; ++v)
      if (v != i) gv[i][k++] = v;
    d.eta[i] = (i % 2) ? -1 : 1;
    d.dir[i] = {1, 1, 1};
  }
  std::map<std::array<int, 2>, std::vector<SideRef>> by_pair;
  for (int t = 0; t < 4; ++t)
    for (int s = 0; s < 3; ++s) {
      auto sc = side_corners(s);
      std::array<int, 2> key{gv[t][sc[0]], gv[t][sc[1]]};
      by_pair[key].push_back(SideRef{t, s});
    }
  for (auto& [key, slots] : by_pair) {
    if (slots.size() != 2) throw std::logic_error("sphere_surface: bad pairing");
    auto corner_with = [&](int t, int id) {
      for (int c = 0; c < 3; ++c)
        if (gv[t][c] == id) return c;
      throw std::logic_error("sphere_surface: id missing");
    };
    auto sa = side_corners(slots[0].side);
    std::array<int, 2> m{corner_with(slots[1].tri, gv[slots[0].tri][sa[0]]),
                         corner_with(slots[1].tri, gv[slots[0].tri][sa[1]])};
    d.add_gluing(slots[0], slots[1], m);
  }
  return SurfaceTriangulation(std::move(d));
}

// Genus-g surface as the fan-triangulated 4g-gon with side word
// a1 b1 a1' b1' a2 b2 ... . Triangle F_i (idx = i-1, i = 1..4g-2) covers
// polygon corners (P0, P_i, P_{i+1}); corner 0 is always P0, so P0 is the
// branching source of every triangle. Side 0 of F_i is the polygon side s_i,
// sides 1 and 2 are the fan diagonals P0->P_{i+1} and P0->P_i. Polygon side
// s_j carries the class direction of its generator: forward along the polygon
// when j mod 4 is 0 or 1, backward otherwise.
inline SurfaceTriangulation sigma_surface(int g) {
  if (g < 1) throw std::invalid_argument("sigma_surface needs genus >= 1");
  int n = 4 * g - 2;
  SurfData d;
  d.resize(n);
  for (int i = 1; i <= n; ++i) {
    int idx = i - 1;
    bool fwd = (i % 4 == 0) || (i % 4 == 1);
    d.eta[idx] = fwd ? 1 : -1;
    d.dir[idx] = {fwd ? 1 : -1, 1, 1};
  }
  for (int i = 1; i <= n - 1; ++i) d.add_gluing(SideRef{i - 1, 1}, SideRef{i, 2}, {0, 1});
  for (int h = 0; h < g; ++h) {
    // a pair: s_{4h} ~ s_{4h+2}, matched endpoint-to-endpoint along the word
    if (h == 0) {
      d.add_gluing(SideRef{0, 2}, SideRef{1, 0}, {2, 1});  // P0 -> P3, P1 -> P2
    } else {
      d.add_gluing(SideRef{4 * h - 1, 0}, SideRef{4 * h + 1, 0}, {2, 1});
    }
    // b pair: s_{4h+1} ~ s_{4h+3}
    if (h == g - 1) {
      // the last polygon side is side 1 of the final triangle F_{4g-2}
      d.add_gluing(SideRef{4 * h, 0}, SideRef{4 * h + 1, 1}, {0, 2});  // tail -> P0
    } else {
      d.add_gluing(SideRef{4 * h, 0}, SideRef{4 * h + 2, 0}, {2, 1});
    }
  }
  return SurfaceTriangulation(std::move(d));
}

inline SurfaceTriangulation torus_surface() { return sigma_surface(1); }

// 1 -> 3 subdivision of one triangle: a new center vertex, locally maximal in
// the branching, splits triangle `tri` into three children, one per old side.
// Child c has corners (0, 1) = the two corners of old side c in label order
// and corner 2 = the center. Orientation signs of the children are solved by
// propagation from the untouched triangles.
inline SurfaceTriangulation refine_triangle(const SurfaceTriangulation& surf, int tri) {
  surf.require_valid();
  if (tri < 0 || tri >= surf.tri_count()) throw std::invalid_argument("refine_triangle: bad index");
  if (surf.tri_count() < 2)
    throw std::invalid_argument("refine_triangle needs another triangle as orientation anchor");
  SurfData base = surf.data();
  int n = base.tris;
  SurfData d;
  d.resize(n + 2);
  auto child = [&](int c) { return c == 0 ? tri : n + c - 1; };

  for (int t = 0; t < n; ++t) {
    if (t == tri) continue;
    d.eta[t] = base.eta[t];
    d.dir[t] = base.dir[t];
  }

  // Old slot (tri, c) becomes (child(c), 2); old corner side_corners(c)[k]
  // of that side becomes child corner k. Ascending corner order is preserved.
  auto translate_slot = [&](SideRef r) {
    return r.tri == tri ? SideRef{child(r.side), 2} : r;
  };
  auto translate_corner = [&](SideRef r, int corner) {
    if (r.tri != tri) return corner;
    auto sc = side_corners(r.side);
    return corner == sc[0] ? 0 : 1;
  };
  std::set<std::pair<SideRef, SideRef>> done;
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < 3; ++s) {
      const auto& g = base.glue[t][s];
      SideRef a{t, s}, b = g->to;
      if (done.count({a, b}) || done.count({b, a})) continue;
      done.insert({a, b});
      std::array<int, 2> m{translate_corner(b, g->corner_map[0]),
                           translate_corner(b, g->corner_map[1])};
      d.add_gluing(translate_slot(a), translate_slot(b), m);
    }

  // Internal gluings: children for old sides a < b share the edge from the
  // common old corner k = 3-a-b to the center. In child(x) that side omits
  // the other old corner, so its index is 1 - (corner index of k).
  auto pos_in_child = [&](int c, int oldcorner) {
    return side_corners(c)[0] == oldcorner ? 0 : 1;
  };
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      int k = 3 - a - b;
      int pa = pos_in_child(a, k);
      int pb = pos_in_child(b, k);
      // ascending corners of side 1-pa are (pa, 2): old corner k, then center
      d.add_gluing(SideRef{child(a), 1 - pa}, SideRef{child(b), 1 - pb}, {pb, 2});
    }

  // Directions: outer sides keep the old class direction; edges touching the
  // center (corner 2) point into it, so their ascending pairs are forward.
  for (int c = 0; c < 3; ++c) {
    d.dir[child(c)] = {1, 1, base.dir[tri][c]};
    d.eta[child(c)] = 1;  // placeholder until solved
  }

  // Solve the children's orientation signs from the anchors.
  SurfaceTriangulation shape(d);
  for (const auto& v : shape.violations())
    if (v.find("orientation") == std::string::npos)
      throw std::runtime_error("refine_triangle produced a broken surface: " + v);
  auto corner_sgn = [&](int t) {
    int sgn = 1;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (shape.rank(t, i) > shape.rank(t, j)) sgn = -sgn;
    return sgn;
  };
  std::vector<int> etac(d.tris, 0);  // corner-relative signs
  std::vector<int> stack;
  for (int t = 0; t < n; ++t)
    if (t != tri) {
      etac[t] = d.eta[t] * corner_sgn(t);
      stack.push_back(t);
    }
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    for (int s = 0; s < 3; ++s) {
      const auto& g = d.glue[t][s];
      int mapsgn = (g->corner_map[0] < g->corner_map[1]) ? 1 : -1;
      int want = -etac[t] * ((s % 2) ? -1 : 1) * mapsgn * ((g->to.side % 2) ? -1 : 1);
      if (etac[g->to.tri] == 0) {
        etac[g->to.tri] = want;
        stack.push_back(g->to.tri);
      } else if (etac[g->to.tri] != want) {
        throw std::runtime_error("refine_triangle: inconsistent orientation solve");
      }
    }
  }
  for (int c = 0; c < 3; ++c) d.eta[child(c)] = etac[child(c)] * corner_sgn(child(c));

  SurfaceTriangulation out(std::move(d));
  out.require_valid();
  return out;
}

}  // namespace dwtv
