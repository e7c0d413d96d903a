#pragma once

// Local modifications of a branched complex. Complexes are immutable, so
// every move copies into fresh data and returns a new triangulation. The
// expanding bistellar moves always apply; the 2-3 move and the relabeling
// moves can fail to keep every tetrahedron's branching acyclic, in which
// case they return nothing and the caller keeps the original.

#include "dwtv/rng.hpp"
#include "dwtv/triangulation.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dwtv {

namespace detail {

template <size_t N>
inline int perm_sign(const std::array<int, N>& p) {
  int s = 1;
  for (size_t i = 0; i < N; ++i)
    for (size_t j = i + 1; j < N; ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

// Orientation of a tet relative to its corner labels 0..3 (the stored sign is
// relative to branching rank order).
inline int label_orientation(const Triangulation& tri, int t) {
  std::array<int, 4> ranks{tri.rank(t, 0), tri.rank(t, 1), tri.rank(t, 2), tri.rank(t, 3)};
  return tri.eps(t) * perm_sign(ranks);
}

// Ranks of a complete 4-vertex tournament, or nothing if it has a cycle.
// adj[i][j] means an edge i -> j.
inline std::optional<std::array<int, 4>> tournament_ranks(
    const std::array<std::array<bool, 4>, 4>& adj) {
  std::array<int, 4> indeg{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (adj[i][j]) ++indeg[j];
  std::array<int, 4> rank{-1, -1, -1, -1};
  std::array<bool, 4> used{};
  for (int r = 0; r < 4; ++r) {
    int pick = -1;
    for (int i = 0; i < 4; ++i)
      if (!used[i] && indeg[i] == 0) pick = i;
    if (pick < 0) return std::nullopt;
    used[pick] = true;
    rank[pick] = r;
    for (int j = 0; j < 4; ++j)
      if (adj[pick][j]) --indeg[j];
  }
  return rank;
}

// Where a face slot of the old complex lives after a move: a new slot plus a
// corner relabeling valid on that face's corners.
struct PortSlot {
  FaceRef at;
  std::array<int, 4> corner{-1, -1, -1, -1};  // old corner label -> new corner label
};

// Reglue every old gluing and transfer every mark through the port table;
// pairs whose both endpoints map to the same new slot pair are added once.
inline void reglue_through(TriData& d, const Triangulation& tri,
                           const std::vector<std::array<PortSlot, 4>>& port,
                           const std::set<std::pair<FaceRef, FaceRef>>& dropped) {
  std::set<std::pair<FaceRef, FaceRef>> seen;
  for (int t = 0; t < tri.tet_count(); ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      FaceRef a{t, f};
      if (!g) {
        if (const auto& m = tri.mark(t, f)) {
          const PortSlot& pa = port[static_cast<size_t>(t)][static_cast<size_t>(f)];
          d.marks[static_cast<size_t>(pa.at.tet)][static_cast<size_t>(pa.at.face)] = *m;
        }
        continue;
      }
      FaceRef b = g->to;
      std::pair<FaceRef, FaceRef> key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
      if (dropped.count(key) || seen.count(key)) continue;
      seen.insert(key);

      const PortSlot& pa = port[static_cast<size_t>(a.tet)][static_cast<size_t>(a.face)];
      const PortSlot& pb = port[static_cast<size_t>(b.tet)][static_cast<size_t>(b.face)];
      auto old_fc = face_corners(a.face);
      auto new_fc = face_corners(pa.at.face);
      std::array<int, 3> map{};
      for (int i = 0; i < 3; ++i) {
        // new ascending corner i of the relocated face, traced back to the
        // old corner it came from, then forward through the old map
        int old_c = -1;
        for (int c : old_fc)
          if (pa.corner[static_cast<size_t>(c)] == new_fc[i]) old_c = c;
        int old_pos = static_cast<int>(std::find(old_fc.begin(), old_fc.end(), old_c) -
                                       old_fc.begin());
        map[static_cast<size_t>(i)] =
            pb.corner[static_cast<size_t>(g->corner_map[static_cast<size_t>(old_pos)])];
      }
      d.add_gluing(pa.at, pb.at, map);
    }
}

}  // namespace detail

// Expanding bistellar move: one tetrahedron becomes four around a new
// interior vertex. All new edges point at the new vertex, so it is locally
// maximal and acyclicity is never at risk. Orientation signs follow from the
// subdivision: the piece keeping face f flips parity with the position of f.
inline Triangulation pachner_14(const Triangulation& tri, int t) {
  tri.require_valid();
  if (t < 0 || t >= tri.tet_count()) throw std::invalid_argument("tet id out of range");

  TriData d = tri.data();
  int n = d.tets;
  d.tets = n + 3;
  d.glue.resize(static_cast<size_t>(d.tets));
  d.eps.resize(static_cast<size_t>(d.tets));
  d.marks.resize(static_cast<size_t>(d.tets));
  d.dir.resize(static_cast<size_t>(d.tets), {0, 0, 0, 0, 0, 0});

  auto piece_id = [&](int f) { return f == 0 ? t : n + f - 1; };

  // piece f keeps the corners of face f at labels 0,1,2 and the new vertex at 3
  int eps_label = detail::label_orientation(tri, t);
  for (int f = 0; f < 4; ++f) {
    int id = piece_id(f);
    auto fc = face_corners(f);
    d.glue[static_cast<size_t>(id)] = {};
    d.marks[static_cast<size_t>(id)] = {};
    std::array<int, 3> kept_rank{tri.rank(t, fc[0]), tri.rank(t, fc[1]), tri.rank(t, fc[2])};
    int piece_label_orient = ((3 - f) % 2 ? -1 : 1) * eps_label;
    d.eps[static_cast<size_t>(id)] = detail::perm_sign(kept_rank) * piece_label_orient;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j)
        d.dir[static_cast<size_t>(id)][static_cast<size_t>(edge_index(i, j))] =
            kept_rank[static_cast<size_t>(i)] < kept_rank[static_cast<size_t>(j)] ? 1 : -1;
      d.dir[static_cast<size_t>(id)][static_cast<size_t>(edge_index(i, 3))] = 1;
    }
  }

  // internal faces between pieces: piece f meets piece g across the face
  // spanned by their common old corners and the new vertex
  for (int f = 0; f < 4; ++f) {
    auto fcf = face_corners(f);
    auto pos_in = [](const std::array<int, 3>& fc, int c) {
      return static_cast<int>(std::find(fc.begin(), fc.end(), c) - fc.begin());
    };
    for (int g = f + 1; g < 4; ++g) {
      auto fcg = face_corners(g);
      int a = pos_in(fcf, g);  // label of corner g inside piece f
      int b = pos_in(fcg, f);
      auto face_a = face_corners(a);
      std::array<int, 3> map{};
      for (int i = 0; i < 3; ++i) {
        int l = face_a[static_cast<size_t>(i)];
        map[static_cast<size_t>(i)] = l == 3 ? 3 : pos_in(fcg, fcf[static_cast<size_t>(l)]);
      }
      d.add_gluing(FaceRef{piece_id(f), a}, FaceRef{piece_id(g), b}, map);
    }
  }

  // reattach the outside world
  std::vector<std::array<detail::PortSlot, 4>> port(static_cast<size_t>(n));
  for (int u = 0; u < n; ++u)
    for (int f = 0; f < 4; ++f)
      port[static_cast<size_t>(u)][static_cast<size_t>(f)] =
          detail::PortSlot{FaceRef{u, f}, {0, 1, 2, 3}};
  for (int f = 0; f < 4; ++f) {
    detail::PortSlot ps;
    ps.at = FaceRef{piece_id(f), 3};
    auto fc = face_corners(f);
    for (int i = 0; i < 3; ++i) ps.corner[static_cast<size_t>(fc[i])] = i;
    port[static_cast<size_t>(t)][static_cast<size_t>(f)] = ps;
  }
  detail::reglue_through(d, tri, port, {});
  return Triangulation(std::move(d));
}

// Bistellar 2-3 move across an interior face shared by two distinct
// tetrahedra: the pair becomes three tetrahedra around a fresh edge joining
// the two apexes. The fresh edge tries the apex-of-the-given-face direction
// first and the reverse second; if neither leaves all three tournaments
// acyclic the move is rejected and nothing is returned.
inline std::optional<Triangulation> pachner_23(const Triangulation& tri, FaceRef fr) {
  tri.require_valid();
  if (fr.tet < 0 || fr.tet >= tri.tet_count() || fr.face < 0 || fr.face > 3)
    throw std::invalid_argument("face out of range");
  const auto& g = tri.gluing(fr.tet, fr.face);
  if (!g) throw std::invalid_argument("move needs an interior face");
  int t1 = fr.tet, f1 = fr.face;
  int t2 = g->to.tet, f2 = g->to.face;
  if (t1 == t2) throw std::invalid_argument("move needs two distinct tetrahedra");

  auto fc1 = face_corners(f1);
  const std::array<int, 3>& m = g->corner_map;  // shared vertex i: fc1[i] in t1, m[i] in t2

  // directed relations among the shared vertices and the two apexes
  auto signed_dir = [&](int t, int u, int v) { return tri.edge_of_corners(t, u, v).second; };
  std::array<std::array<int, 3>, 3> ss{};  // ss[i][j]: +1 if S_i -> S_j
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) ss[static_cast<size_t>(i)][static_cast<size_t>(j)] = signed_dir(t1, fc1[i], fc1[j]);
  std::array<int, 3> sp{}, sq{};  // +1 if S_i -> apex
  for (int i = 0; i < 3; ++i) {
    sp[static_cast<size_t>(i)] = signed_dir(t1, fc1[i], f1);
    sq[static_cast<size_t>(i)] = signed_dir(t2, m[i], f2);
  }

  // local labels per piece k: 0 = S_i, 1 = S_j (i < j the other two indices),
  // 2 = first apex, 3 = second apex
  auto piece_ranks = [&](int k, int pq_dir) -> std::optional<std::array<int, 4>> {
    int i = k == 0 ? 1 : 0;
    int j = k == 2 ? 1 : 2;
    std::array<std::array<bool, 4>, 4> adj{};
    auto arc = [&](int a, int b, int s) { adj[static_cast<size_t>(s > 0 ? a : b)][static_cast<size_t>(s > 0 ? b : a)] = true; };
    arc(0, 1, ss[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    arc(0, 2, sp[static_cast<size_t>(i)]);
    arc(1, 2, sp[static_cast<size_t>(j)]);
    arc(0, 3, sq[static_cast<size_t>(i)]);
    arc(1, 3, sq[static_cast<size_t>(j)]);
    arc(2, 3, pq_dir);
    return detail::tournament_ranks(adj);
  };

  int pq_dir = 0;
  std::array<std::array<int, 4>, 3> ranks{};
  for (int d : {1, -1}) {
    bool ok = true;
    for (int k = 0; k < 3 && ok; ++k) {
      auto r = piece_ranks(k, d);
      if (!r)
        ok = false;
      else
        ranks[static_cast<size_t>(k)] = *r;
    }
    if (ok) {
      pq_dir = d;
      break;
    }
  }
  if (pq_dir == 0) return std::nullopt;

  TriData d = tri.data();
  int n = d.tets;
  d.tets = n + 1;
  d.glue.resize(static_cast<size_t>(d.tets));
  d.eps.resize(static_cast<size_t>(d.tets));
  d.marks.resize(static_cast<size_t>(d.tets));
  d.dir.resize(static_cast<size_t>(d.tets), {0, 0, 0, 0, 0, 0});
  auto piece_id = [&](int k) { return k == 0 ? t1 : (k == 1 ? t2 : n); };

  // orientation of (S_0, S_1, S_2, first apex) relative to corner labels
  int omega = ((3 - f1) % 2 ? -1 : 1) * detail::label_orientation(tri, t1);

  for (int k = 0; k < 3; ++k) {
    int id = piece_id(k);
    int i = k == 0 ? 1 : 0;
    int j = k == 2 ? 1 : 2;
    d.glue[static_cast<size_t>(id)] = {};
    d.marks[static_cast<size_t>(id)] = {};
    const auto& rk = ranks[static_cast<size_t>(k)];
    d.eps[static_cast<size_t>(id)] = detail::perm_sign(rk) * ((k % 2) ? 1 : -1) * omega;
    auto set_dir = [&](int a, int b, int s) {
      d.dir[static_cast<size_t>(id)][static_cast<size_t>(edge_index(a, b))] = s;
    };
    set_dir(0, 1, ss[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    set_dir(0, 2, sp[static_cast<size_t>(i)]);
    set_dir(1, 2, sp[static_cast<size_t>(j)]);
    set_dir(0, 3, sq[static_cast<size_t>(i)]);
    set_dir(1, 3, sq[static_cast<size_t>(j)]);
    set_dir(2, 3, pq_dir);
  }

  // pieces k < l share the face holding the remaining vertex and both apexes
  for (int k = 0; k < 3; ++k)
    for (int l = k + 1; l < 3; ++l) {
      int r = 3 - k - l;
      int face_k = (l < r) ? 0 : 1;  // label of S_l inside piece k
      int face_l = (k < r) ? 0 : 1;
      int pos_kr = 1 - face_k;  // label of S_r inside piece k
      int pos_lr = 1 - face_l;
      auto fck = face_corners(face_k);
      std::array<int, 3> map{};
      for (int x = 0; x < 3; ++x) {
        int lab = fck[static_cast<size_t>(x)];
        map[static_cast<size_t>(x)] = lab == pos_kr ? pos_lr : lab;
      }
      d.add_gluing(FaceRef{piece_id(k), face_k}, FaceRef{piece_id(l), face_l}, map);
    }

  // ports: the face of t1 opposite shared vertex k becomes face 3 of piece k,
  // the matching face of t2 becomes face 2
  std::vector<std::array<detail::PortSlot, 4>> port(static_cast<size_t>(n));
  for (int u = 0; u < n; ++u)
    for (int f = 0; f < 4; ++f)
      port[static_cast<size_t>(u)][static_cast<size_t>(f)] =
          detail::PortSlot{FaceRef{u, f}, {0, 1, 2, 3}};
  for (int k = 0; k < 3; ++k) {
    int i = k == 0 ? 1 : 0;
    int j = k == 2 ? 1 : 2;
    detail::PortSlot ps1;
    ps1.at = FaceRef{piece_id(k), 3};
    ps1.corner[static_cast<size_t>(fc1[i])] = 0;
    ps1.corner[static_cast<size_t>(fc1[j])] = 1;
    ps1.corner[static_cast<size_t>(f1)] = 2;
    port[static_cast<size_t>(t1)][static_cast<size_t>(fc1[k])] = ps1;
    detail::PortSlot ps2;
    ps2.at = FaceRef{piece_id(k), 2};
    ps2.corner[static_cast<size_t>(m[i])] = 0;
    ps2.corner[static_cast<size_t>(m[j])] = 1;
    ps2.corner[static_cast<size_t>(f2)] = 3;
    port[static_cast<size_t>(t2)][static_cast<size_t>(m[k])] = ps2;
  }
  detail::reglue_through(d, tri, port,
                         {t1 < t2 || (t1 == t2 && f1 < f2)
                              ? std::make_pair(FaceRef{t1, f1}, FaceRef{t2, f2})
                              : std::make_pair(FaceRef{t2, f2}, FaceRef{t1, f1})});
  return Triangulation(std::move(d));
}

// Redirect every edge by a new global order on vertex classes. Applies only
// when no tetrahedron has two corners in the same class (otherwise some edge
// cannot follow a global order); the result is rejected in that case.
inline std::optional<Triangulation> relabel_vertices(const Triangulation& tri,
                                                     const std::vector<int>& perm) {
  tri.require_valid();
  int n0 = tri.vertex_class_count();
  if (static_cast<int>(perm.size()) != n0)
    throw std::invalid_argument("permutation size does not match the vertex class count");
  {
    std::vector<bool> hit(static_cast<size_t>(n0), false);
    for (int x : perm) {
      if (x < 0 || x >= n0 || hit[static_cast<size_t>(x)])
        throw std::invalid_argument("not a permutation of the vertex classes");
      hit[static_cast<size_t>(x)] = true;
    }
  }

  TriData d = tri.data();
  for (int t = 0; t < tri.tet_count(); ++t) {
    std::array<int, 4> key{};
    for (int c = 0; c < 4; ++c)
      key[static_cast<size_t>(c)] = perm[static_cast<size_t>(tri.vertex_class(t, c))];
    for (int e = 0; e < 6; ++e) {
      auto [a, b] = kEdgeCorners[static_cast<size_t>(e)];
      if (key[static_cast<size_t>(a)] == key[static_cast<size_t>(b)]) return std::nullopt;
      d.dir[static_cast<size_t>(t)][static_cast<size_t>(e)] =
          key[static_cast<size_t>(a)] < key[static_cast<size_t>(b)] ? 1 : -1;
    }
    std::array<int, 4> new_rank{};
    for (int c = 0; c < 4; ++c)
      for (int c2 = 0; c2 < 4; ++c2)
        if (key[static_cast<size_t>(c2)] < key[static_cast<size_t>(c)])
          ++new_rank[static_cast<size_t>(c)];
    d.eps[static_cast<size_t>(t)] =
        detail::perm_sign(new_rank) * detail::label_orientation(tri, t);
  }
  return Triangulation(std::move(d));
}

// Flip the direction of one edge class everywhere it appears. Rejected when
// some tetrahedron's branching would become cyclic.
inline std::optional<Triangulation> reverse_edge(const Triangulation& tri, int edge_class) {
  tri.require_valid();
  if (edge_class < 0 || edge_class >= tri.edge_class_count())
    throw std::invalid_argument("edge class out of range");

  TriData d = tri.data();
  for (int t = 0; t < tri.tet_count(); ++t)
    for (int e = 0; e < 6; ++e)
      if (tri.edge_class(t, e) == edge_class)
        d.dir[static_cast<size_t>(t)][static_cast<size_t>(e)] *= -1;

  for (int t = 0; t < tri.tet_count(); ++t) {
    std::array<std::array<bool, 4>, 4> adj{};
    for (int e = 0; e < 6; ++e) {
      auto [a, b] = kEdgeCorners[static_cast<size_t>(e)];
      if (d.dir[static_cast<size_t>(t)][static_cast<size_t>(e)] > 0)
        adj[static_cast<size_t>(a)][static_cast<size_t>(b)] = true;
      else
        adj[static_cast<size_t>(b)][static_cast<size_t>(a)] = true;
    }
    auto ranks = detail::tournament_ranks(adj);
    if (!ranks) return std::nullopt;
    d.eps[static_cast<size_t>(t)] =
        detail::perm_sign(*ranks) * detail::label_orientation(tri, t);
  }
  return Triangulation(std::move(d));
}

// Deterministic random walk through accepted moves. Expanding 1-4 moves are
// rationed so downstream state sums stay enumerable; rejected attempts
// consume randomness but not steps, and a step with no applicable move after
// a fixed number of tries is skipped.
inline Triangulation apply_random_moves(Triangulation tri, int steps, SplitMix64& rng,
                                        int max_expansions = 2) {
  int expansions = 0;
  for (int step = 0; step < steps; ++step) {
    bool moved = false;
    for (int attempt = 0; attempt < 64 && !moved; ++attempt) {
      switch (rng.next() % 4) {
        case 0: {
          if (expansions >= max_expansions) break;
          int t = static_cast<int>(rng.next() % static_cast<std::uint64_t>(tri.tet_count()));
          tri = pachner_14(tri, t);
          ++expansions;
          moved = true;
          break;
        }
        case 1: {
          std::vector<FaceRef> cand;
          for (int t = 0; t < tri.tet_count(); ++t)
            for (int f = 0; f < 4; ++f) {
              const auto& g = tri.gluing(t, f);
              if (g && g->to.tet != t && FaceRef{t, f} < g->to) cand.push_back(FaceRef{t, f});
            }
          if (cand.empty()) break;
          auto fr = cand[static_cast<size_t>(rng.next() % cand.size())];
          if (auto next = pachner_23(tri, fr)) {
            tri = std::move(*next);
            moved = true;
          }
          break;
        }
        case 2: {
          int e = static_cast<int>(rng.next() % static_cast<std::uint64_t>(tri.edge_class_count()));
          if (auto next = reverse_edge(tri, e)) {
            tri = std::move(*next);
            moved = true;
          }
          break;
        }
        default: {
          std::vector<int> perm(static_cast<size_t>(tri.vertex_class_count()));
          for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
          for (size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[static_cast<size_t>(rng.next() % i)]);
          if (auto next = relabel_vertices(tri, perm)) {
            tri = std::move(*next);
            moved = true;
          }
          break;
        }
      }
    }
  }
  return tri;
}

}  // namespace dwtv
