#pragma once

// Generalized triangulations of oriented 3-manifolds: a set of abstract
// tetrahedra with corner labels 0..3, glued along faces by corner
// correspondences. Edges and vertices are identification classes. A branching
// (direction on every edge class inducing a linear order on each tet's
// corners) and a per-tet orientation sign complete the combinatorial data.
//
// Faces are indexed by their opposite corner. Edge slots within a tet are
// indexed 0..5 over ascending corner pairs.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwtv {

inline constexpr std::array<std::array<int, 2>, 6> kEdgeCorners{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline int edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  static constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  int e = table[a][b];
  if (e < 0) throw std::invalid_argument("edge_index: corners coincide");
  return e;
}

// Ascending corners of the face opposite corner f.
inline std::array<int, 3> face_corners(int f) {
  std::array<int, 3> out{};
  int k = 0;
  for (int c = 0; c < 4; ++c)
    if (c != f) out[k++] = c;
  return out;
}

struct FaceRef {
  int tet = -1;
  int face = -1;
  bool operator==(const FaceRef& o) const { return tet == o.tet && face == o.face; }
  bool operator<(const FaceRef& o) const { return tet != o.tet ? tet < o.tet : face < o.face; }
};

struct Gluing {
  FaceRef to;
  // corner_map[i] = corner of the target tet matched with face_corners(face)[i].
  std::array<int, 3> corner_map{};
};

struct BoundaryMark {
  std::string label;
  bool outgoing = false;  // false: incoming boundary, true: outgoing
};

struct TriData {
  int tets = 0;
  std::vector<std::array<std::optional<Gluing>, 4>> glue;
  std::vector<int> eps;  // +1/-1 relative to the branching order of each tet
  std::vector<std::array<std::optional<BoundaryMark>, 4>> marks;
  // Per-slot direction hints: +1 directs ascending corner pair low->high,
  // -1 the reverse, 0 unset. Builders fill these; files use branch_decls.
  std::vector<std::array<int, 6>> dir;
  std::vector<std::array<int, 3>> branch_decls;  // (tet, i, j): edge class of {i,j} directed i->j

  void resize(int n) {
    tets = n;
    glue.assign(n, {});
    eps.assign(n, 1);
    marks.assign(n, {});
    dir.assign(n, {0, 0, 0, 0, 0, 0});
  }

  // Records both directions of a gluing. The map sends ascending corners of
  // a's face to corners of b's tet.
  void add_gluing(FaceRef a, FaceRef b, std::array<int, 3> map) {
    auto fa = face_corners(a.face);
    auto fb = face_corners(b.face);
    glue[a.tet][a.face] = Gluing{b, map};
    std::array<int, 3> invm{};
    for (int i = 0; i < 3; ++i) {
      int img = map[i];
      int pos = -1;
      for (int j = 0; j < 3; ++j)
        if (fb[j] == img) pos = j;
      if (pos < 0) throw std::invalid_argument("gluing corner map does not land on the target face");
      invm[pos] = fa[i];
    }
    glue[b.tet][b.face] = Gluing{a, invm};
  }
};

namespace detail {

// Union-find with a parity bit on each link (tracks relative orientation of
// ascending corner pairs within an edge class).
class SignedUF {
 public:
  explicit SignedUF(int n) : parent_(n), parity_(n, 0) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  std::pair<int, int> find(int x) {
    int p = 0;
    int r = x;
    while (parent_[r] != r) {
      p ^= parity_[r];
      r = parent_[r];
    }
    // path compression
    int cur = x, cp = 0;
    while (parent_[cur] != cur) {
      int next = parent_[cur];
      int np = parity_[cur];
      parent_[cur] = r;
      parity_[cur] = p ^ cp;
      cp ^= np;
      cur = next;
    }
    return {r, p};
  }

  // rel = 0 if x and y have matching orientation. Returns false on a parity
  // conflict (the class would be glued to itself orientation-reversed).
  bool unite(int x, int y, int rel) {
    auto [rx, px] = find(x);
    auto [ry, py] = find(y);
    if (rx == ry) return (px ^ py) == rel;
    parent_[rx] = ry;
    parity_[rx] = px ^ py ^ rel;
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> parity_;
};

class UF {
 public:
  explicit UF(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int x, int y) { parent_[find(x)] = find(y); }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

struct BoundaryComponent {
  std::string label;
  bool outgoing = false;
  std::vector<FaceRef> faces;            // sorted
  std::vector<int> edge_classes;         // sorted canonical ids
  std::vector<int> vertex_classes;       // sorted canonical ids
};

class Triangulation {
 public:
  explicit Triangulation(TriData data) : d_(std::move(data)) { analyze(); }

  int tet_count() const { return d_.tets; }
  int eps(int t) const { return d_.eps[t]; }
  const std::optional<Gluing>& gluing(int t, int f) const { return d_.glue[t][f]; }
  const std::optional<BoundaryMark>& mark(int t, int f) const { return d_.marks[t][f]; }

  bool valid() const { return violations_.empty(); }
  const std::vector<std::string>& violations() const { return violations_; }
  void require_valid() const {
    if (!valid()) throw std::runtime_error("invalid triangulation: " + violations_.front());
  }

  // ---- derived combinatorics (meaningful once valid; classes are always
  // computed, order/orientation data only when the branching checks passed).

  int vertex_class_count() const { return n0_; }
  int vertex_class(int t, int c) const { return vclass_[static_cast<size_t>(t) * 4 + c]; }

  int edge_class_count() const { return static_cast<int>(edge_rep_.size()); }
  int edge_class(int t, int e) const { return eclass_[static_cast<size_t>(t) * 6 + e]; }
  // +1 when the class direction runs along the ascending corner pair of the slot.
  int edge_sign(int t, int e) const { return esign_[static_cast<size_t>(t) * 6 + e]; }
  std::pair<int, int> edge_rep_slot(int id) const { return {edge_rep_[id] / 6, edge_rep_[id] % 6}; }
  // Vertex classes at the tail and head of the class direction.
  std::pair<int, int> edge_endpoints(int id) const { return edge_ends_[id]; }
  bool edge_on_boundary(int id) const { return edge_boundary_[id] != 0; }

  int face_class_count() const { return static_cast<int>(face_reps_.size()); }
  const std::vector<FaceRef>& face_reps() const { return face_reps_; }

  int rank(int t, int c) const { return rank_[static_cast<size_t>(t) * 4 + c]; }
  int corner_by_rank(int t, int r) const { return order_[static_cast<size_t>(t) * 4 + r]; }

  // (edge class, sign) with sign +1 when the class direction is u -> v.
  std::pair<int, int> edge_of_corners(int t, int u, int v) const {
    int e = edge_index(u, v);
    int s = edge_sign(t, e);
    if (u > v) s = -s;
    return {edge_class(t, e), s};
  }

  bool closed() const { return boundary_faces_ == 0; }
  int boundary_face_count() const { return boundary_faces_; }
  const std::vector<BoundaryComponent>& boundary_components() const { return boundary_; }
  std::vector<int> boundary_edge_classes() const {
    std::vector<int> out;
    for (int i = 0; i < edge_class_count(); ++i)
      if (edge_boundary_[i]) out.push_back(i);
    return out;
  }

  long long euler_characteristic() const {
    return static_cast<long long>(n0_) - edge_class_count() + face_class_count() - d_.tets;
  }

  // Snapshot with per-slot directions regenerated from the classes; the
  // starting point for elementary move rewrites.
  TriData data() const {
    TriData d = d_;
    d.branch_decls.clear();
    for (int t = 0; t < d_.tets; ++t)
      for (int e = 0; e < 6; ++e) d.dir[t][e] = edge_sign(t, e);
    return d;
  }

  // ---- canonical text format

  std::string to_text() const;
  static Triangulation from_text(std::istream& in);

 private:
  void analyze();
  void analyze_structure();
  void analyze_classes();
  void analyze_branching();
  void analyze_orientation();
  void analyze_links();
  void analyze_boundary();

  void violation(const std::string& msg) { violations_.push_back(msg); }

  TriData d_;
  std::vector<std::string> violations_;

  int n0_ = 0;
  std::vector<int> vclass_;        // 4N canonical vertex class ids
  std::vector<int> eclass_;        // 6N canonical edge class ids
  std::vector<int> esign_;         // 6N signs
  std::vector<int> edge_rep_;      // class id -> representative slot (t*6+e)
  std::vector<std::pair<int, int>> edge_ends_;
  std::vector<char> edge_boundary_;
  std::vector<FaceRef> face_reps_;
  std::vector<int> rank_;   // 4N
  std::vector<int> order_;  // 4N
  int boundary_faces_ = 0;
  std::vector<BoundaryComponent> boundary_;
  bool structure_ok_ = true;
  bool branching_ok_ = true;
};

// ---------------------------------------------------------------------------

inline void Triangulation::analyze() {
  if (d_.tets <= 0) {
    violation("complex has no tetrahedra");
    return;
  }
  if (static_cast<int>(d_.glue.size()) != d_.tets || static_cast<int>(d_.eps.size()) != d_.tets ||
      static_cast<int>(d_.marks.size()) != d_.tets || static_cast<int>(d_.dir.size()) != d_.tets) {
    violation("raw data arrays disagree with the tetrahedron count");
    return;
  }
  analyze_structure();
  if (!structure_ok_) return;
  analyze_classes();
  analyze_branching();
  if (branching_ok_) analyze_orientation();
  analyze_links();
  analyze_boundary();
}

inline void Triangulation::analyze_structure() {
  for (int t = 0; t < d_.tets; ++t) {
    if (d_.eps[t] != 1 && d_.eps[t] != -1) {
      violation("tet " + std::to_string(t) + ": eps must be +1 or -1");
      structure_ok_ = false;
    }
    for (int f = 0; f < 4; ++f) {
      const auto& g = d_.glue[t][f];
      const auto& m = d_.marks[t][f];
      if (g && m) {
        violation("tet " + std::to_string(t) + " face " + std::to_string(f) +
                  ": both glued and marked as boundary");
        structure_ok_ = false;
      }
      if (!g && !m) {
        violation("tet " + std::to_string(t) + " face " + std::to_string(f) +
                  ": neither glued nor marked as boundary");
        structure_ok_ = false;
      }
      if (!g) continue;
      if (g->to.tet < 0 || g->to.tet >= d_.tets || g->to.face < 0 || g->to.face > 3) {
        violation("tet " + std::to_string(t) + " face " + std::to_string(f) +
                  ": gluing target out of range");
        structure_ok_ = false;
        continue;
      }
      if (g->to.tet == t && g->to.face == f) {
        violation("tet " + std::to_string(t) + " face " + std::to_string(f) + ": glued to itself");
        structure_ok_ = false;
        continue;
      }
      // corner map must biject onto the target face's corners
      auto fb = face_corners(g->to.face);
      std::set<int> img(g->corner_map.begin(), g->corner_map.end());
      if (img != std::set<int>(fb.begin(), fb.end())) {
        violation("tet " + std::to_string(t) + " face " + std::to_string(f) +
                  ": corner map is not a bijection onto the target face");
        structure_ok_ = false;
        continue;
      }
      // involution: partner must point back with the inverse map
      const auto& back = d_.glue[g->to.tet][g->to.face];
      if (!back || !(back->to == FaceRef{t, f})) {
        violation("gluing of tet " + std::to_string(t) + " face " + std::to_string(f) +
                  " is not matched by its partner");
        structure_ok_ = false;
        continue;
      }
      auto fa = face_corners(f);
      for (int i = 0; i < 3; ++i) {
        int pos = -1;
        for (int j = 0; j < 3; ++j)
          if (fb[j] == g->corner_map[i]) pos = j;
        if (back->corner_map[pos] != fa[i]) {
          violation("gluing maps of tet " + std::to_string(t) + " face " + std::to_string(f) +
                    " and its partner are not mutually inverse");
          structure_ok_ = false;
          break;
        }
      }
    }
  }
}

inline void Triangulation::analyze_classes() {
  int n = d_.tets;
  detail::UF vuf(4 * n);
  detail::SignedUF euf(6 * n);
  detail::UF fuf(4 * n);
  bool parity_ok = true;

  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = d_.glue[t][f];
      if (!g) continue;
      auto fa = face_corners(f);
      auto image = [&](int corner) {
        for (int i = 0; i < 3; ++i)
          if (fa[i] == corner) return g->corner_map[i];
        throw std::logic_error("corner not on face");
      };
      for (int i = 0; i < 3; ++i) vuf.unite(t * 4 + fa[i], g->to.tet * 4 + image(fa[i]));
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          int a = fa[i], b = fa[j];  // a < b
          int a2 = image(a), b2 = image(b);
          int rel = (a2 < b2) ? 0 : 1;
          if (!euf.unite(t * 6 + edge_index(a, b), g->to.tet * 6 + edge_index(a2, b2), rel))
            parity_ok = false;
        }
      fuf.unite(t * 4 + f, g->to.tet * 4 + g->to.face);
    }
  }
  if (!parity_ok) violation("an edge class is identified with itself orientation-reversed");

  // canonical vertex ids by smallest member slot
  vclass_.assign(static_cast<size_t>(4) * n, -1);
  std::map<int, int> vroot_to_id;
  for (int s = 0; s < 4 * n; ++s) {
    int r = vuf.find(s);
    auto it = vroot_to_id.find(r);
    if (it == vroot_to_id.end()) it = vroot_to_id.emplace(r, static_cast<int>(vroot_to_id.size())).first;
    vclass_[s] = it->second;
  }
  n0_ = static_cast<int>(vroot_to_id.size());

  // canonical edge ids + parity relative to the first (= representative) slot
  eclass_.assign(static_cast<size_t>(6) * n, -1);
  esign_.assign(static_cast<size_t>(6) * n, 0);
  edge_rep_.clear();
  std::map<int, std::pair<int, int>> eroot_to_id;  // root -> (id, parity of representative)
  for (int s = 0; s < 6 * n; ++s) {
    auto [r, p] = euf.find(s);
    auto it = eroot_to_id.find(r);
    if (it == eroot_to_id.end()) {
      it = eroot_to_id.emplace(r, std::make_pair(static_cast<int>(edge_rep_.size()), p)).first;
      edge_rep_.push_back(s);
    }
    eclass_[s] = it->second.first;
    // +1 when this slot's ascending orientation matches the representative's.
    esign_[s] = (p == it->second.second) ? 1 : -1;
  }

  // face classes: representative = smallest slot
  face_reps_.clear();
  std::set<int> seen_face_roots_ordered;
  std::map<int, int> froot_first;
  for (int s = 0; s < 4 * n; ++s) {
    int r = fuf.find(s);
    if (!froot_first.count(r)) {
      froot_first[r] = s;
      face_reps_.push_back(FaceRef{s / 4, s % 4});
    }
  }
}

inline void Triangulation::analyze_branching() {
  int n = d_.tets;
  // Class direction: +1 = along the representative slot's ascending pair.
  std::vector<int> forward(edge_rep_.size(), 0);
  auto apply = [&](int t, int e, int want) {
    int id = eclass_[static_cast<size_t>(t) * 6 + e];
    int rel = esign_[static_cast<size_t>(t) * 6 + e];  // slot vs representative
    int root_dir = want * rel;
    if (forward[id] == 0) forward[id] = root_dir;
    else if (forward[id] != root_dir) {
      violation("conflicting branching directions for edge class " + std::to_string(id));
      branching_ok_ = false;
    }
  };
  for (const auto& decl : d_.branch_decls) {
    int t = decl[0], i = decl[1], j = decl[2];
    if (t < 0 || t >= n || i < 0 || i > 3 || j < 0 || j > 3 || i == j) {
      violation("branch declaration out of range");
      branching_ok_ = false;
      continue;
    }
    apply(t, edge_index(i, j), i < j ? 1 : -1);
  }
  for (int t = 0; t < n; ++t)
    for (int e = 0; e < 6; ++e)
      if (d_.dir[t][e] != 0) apply(t, e, d_.dir[t][e]);

  for (size_t id = 0; id < forward.size(); ++id)
    if (forward[id] == 0) {
      violation("edge class " + std::to_string(id) + " has no branching direction");
      branching_ok_ = false;
    }
  if (!branching_ok_) return;

  // Final slot signs: +1 iff class direction runs ascending in the slot.
  for (int s = 0; s < 6 * n; ++s) esign_[s] *= forward[eclass_[s]];

  // Endpoints along the class direction.
  edge_ends_.assign(edge_rep_.size(), {-1, -1});
  for (int t = 0; t < n; ++t)
    for (int e = 0; e < 6; ++e) {
      int id = eclass_[static_cast<size_t>(t) * 6 + e];
      if (edge_ends_[id].first >= 0) continue;
      auto [a, b] = kEdgeCorners[e];
      int u = vclass_[static_cast<size_t>(t) * 4 + a];
      int v = vclass_[static_cast<size_t>(t) * 4 + b];
      if (esign_[static_cast<size_t>(t) * 6 + e] < 0) std::swap(u, v);
      edge_ends_[id] = {u, v};
    }

  // Local order per tet: the directed edges must form a transitive tournament.
  rank_.assign(static_cast<size_t>(4) * n, -1);
  order_.assign(static_cast<size_t>(4) * n, -1);
  for (int t = 0; t < n; ++t) {
    std::array<int, 4> outdeg{0, 0, 0, 0};
    for (int e = 0; e < 6; ++e) {
      auto [a, b] = kEdgeCorners[e];
      if (esign_[static_cast<size_t>(t) * 6 + e] > 0) ++outdeg[a];
      else ++outdeg[b];
    }
    std::array<bool, 4> used{false, false, false, false};
    bool ok = true;
    for (int c = 0; c < 4; ++c) {
      if (outdeg[c] < 0 || outdeg[c] > 3 || used[outdeg[c]]) ok = false;
      else used[outdeg[c]] = true;
    }
    if (!ok) {
      violation("branching is cyclic inside tet " + std::to_string(t));
      branching_ok_ = false;
      continue;
    }
    for (int c = 0; c < 4; ++c) {
      int r = 3 - outdeg[c];
      rank_[static_cast<size_t>(t) * 4 + c] = r;
      order_[static_cast<size_t>(t) * 4 + r] = c;
    }
  }
}

inline void Triangulation::analyze_orientation() {
  // Signs relative to corner labels: eps'(t) = eps(t) * sgn(rank permutation).
  auto perm_sign = [](const std::vector<int>& p) {
    int s = 1;
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = i + 1; j < p.size(); ++j)
        if (p[i] > p[j]) s = -s;
    return s;
  };
  std::vector<int> eps_corner(d_.tets);
  for (int t = 0; t < d_.tets; ++t) {
    std::vector<int> rk(4);
    for (int c = 0; c < 4; ++c) rk[c] = rank_[static_cast<size_t>(t) * 4 + c];
    eps_corner[t] = d_.eps[t] * perm_sign(rk);
  }
  // Across every gluing the induced face orientations must be opposite:
  // eps'(t) * (-1)^f * sgn(map) = -eps'(t2) * (-1)^f2.
  for (int t = 0; t < d_.tets; ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& g = d_.glue[t][f];
      if (!g) continue;
      if (FaceRef{t, f} < g->to || (g->to == FaceRef{t, f})) {
        auto fb = face_corners(g->to.face);
        std::vector<int> perm(3);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            if (fb[j] == g->corner_map[i]) perm[i] = j;
        int lhs = eps_corner[t] * ((f % 2) ? -1 : 1) * perm_sign(perm);
        int rhs = -eps_corner[g->to.tet] * ((g->to.face % 2) ? -1 : 1);
        if (lhs != rhs)
          violation("orientations disagree across the gluing of tet " + std::to_string(t) +
                    " face " + std::to_string(f));
      }
    }
}

inline void Triangulation::analyze_links() {
  // The tet-edge slots of each class must chain into a single fan: a cycle
  // for interior edges, a path ending on boundary faces otherwise.
  int n = d_.tets;
  std::vector<std::vector<int>> slots(edge_rep_.size());
  for (int s = 0; s < 6 * n; ++s) slots[eclass_[s]].push_back(s);

  for (size_t id = 0; id < slots.size(); ++id) {
    int start = slots[id][0];
    auto step = [&](int slot, int via_face) -> std::pair<int, int> {
      // returns (next slot, face we entered through), or (-1, -1) at boundary
      int t = slot / 6, e = slot % 6;
      const auto& g = d_.glue[t][via_face];
      if (!g) return {-1, -1};
      auto fa = face_corners(via_face);
      auto image = [&](int corner) {
        for (int i = 0; i < 3; ++i)
          if (fa[i] == corner) return g->corner_map[i];
        throw std::logic_error("corner not on face");
      };
      auto [a, b] = kEdgeCorners[e];
      int e2 = edge_index(image(a), image(b));
      return {g->to.tet * 6 + e2, g->to.face};
    };
    auto ports_of = [&](int slot) {
      int e = slot % 6;
      auto [a, b] = kEdgeCorners[e];
      std::array<int, 2> ports{};
      int k = 0;
      for (int c = 0; c < 4; ++c)
        if (c != a && c != b) ports[k++] = c;
      return ports;
    };

    int visited = 1;
    bool is_cycle = false;
    auto walk = [&](int first_port) {
      int slot = start, entry = -1, port = first_port;
      for (;;) {
        auto [next, in_face] = step(slot, port);
        if (next < 0) return false;  // boundary end
        if (next == start) {
          is_cycle = true;
          return true;
        }
        ++visited;
        slot = next;
        entry = in_face;
        auto ps = ports_of(slot);
        port = (ps[0] == entry) ? ps[1] : ps[0];
        if (visited > 6 * n) throw std::logic_error("edge link walk does not terminate");
      }
    };
    auto p0 = ports_of(start);
    bool closed0 = walk(p0[0]);
    if (!closed0) walk(p0[1]);  // path: also count the other side

    if (visited != static_cast<int>(slots[id].size()))
      violation("edge class " + std::to_string(id) + " has a disconnected link");
    else if (!is_cycle) {
      // path: both ends must be boundary; verified by construction (step
      // returned -1), but the class must actually touch a boundary face.
      bool touches = false;
      for (int s : slots[id]) {
        int t = s / 6;
        auto ps = ports_of(s);
        for (int c : ps)
          if (!d_.glue[t][c]) touches = true;
      }
      if (!touches) violation("edge class " + std::to_string(id) + " link is open without boundary");
    }
  }

  edge_boundary_.assign(edge_rep_.size(), 0);
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      if (d_.glue[t][f]) continue;
      auto fc = face_corners(f);
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          edge_boundary_[eclass_[static_cast<size_t>(t) * 6 + edge_index(fc[i], fc[j])]] = 1;
    }
}

inline void Triangulation::analyze_boundary() {
  std::map<std::string, BoundaryComponent> by_label;
  boundary_faces_ = 0;
  for (int t = 0; t < d_.tets; ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& m = d_.marks[t][f];
      if (!m) continue;
      ++boundary_faces_;
      auto& comp = by_label[m->label];
      if (comp.faces.empty()) {
        comp.label = m->label;
        comp.outgoing = m->outgoing;
      } else if (comp.outgoing != m->outgoing) {
        violation("boundary component '" + m->label + "' mixes in and out faces");
      }
      comp.faces.push_back(FaceRef{t, f});
      auto fc = face_corners(f);
      for (int i = 0; i < 3; ++i) {
        comp.vertex_classes.push_back(vclass_[static_cast<size_t>(t) * 4 + fc[i]]);
        for (int j = i + 1; j < 3; ++j)
          comp.edge_classes.push_back(eclass_[static_cast<size_t>(t) * 6 + edge_index(fc[i], fc[j])]);
      }
    }
  boundary_.clear();
  for (auto& [label, comp] : by_label) {
    auto dedup = [](std::vector<int>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedup(comp.edge_classes);
    dedup(comp.vertex_classes);
    std::sort(comp.faces.begin(), comp.faces.end());
    boundary_.push_back(std::move(comp));
  }
}

// ---------------------------------------------------------------------------

inline std::string Triangulation::to_text() const {
  std::ostringstream os;
  os << "format dwtv-tri 1\n";
  os << "tets " << d_.tets << "\n";
  os << "eps";
  for (int t = 0; t < d_.tets; ++t) os << " " << d_.eps[t];
  os << "\n";
  for (int t = 0; t < d_.tets; ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& g = d_.glue[t][f];
      if (!g) continue;
      if (g->to < FaceRef{t, f}) continue;  // print each pair once
      os << "gluing " << t << " " << f << " " << g->to.tet << " " << g->to.face;
      for (int i = 0; i < 3; ++i) os << " " << g->corner_map[i];
      os << "\n";
    }
  for (int id = 0; id < edge_class_count(); ++id) {
    auto [t, e] = edge_rep_slot(id);
    auto [a, b] = kEdgeCorners[e];
    if (edge_sign(t, e) < 0) std::swap(a, b);
    os << "branch " << id << " " << t << " " << a << " " << b << "\n";
  }
  for (int t = 0; t < d_.tets; ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& m = d_.marks[t][f];
      if (!m) continue;
      os << "boundary " << m->label << " " << (m->outgoing ? "out" : "in") << " " << t << " " << f
         << "\n";
    }
  return os.str();
}

inline Triangulation Triangulation::from_text(std::istream& in) {
  TriData d;
  bool have_format = false, have_tets = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("triangulation file line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "format") {
      std::string name;
      int ver = 0;
      if (!(ls >> name >> ver) || name != "dwtv-tri" || ver != 1) fail("expected 'format dwtv-tri 1'");
      have_format = true;
    } else if (kw == "tets") {
      int n;
      if (!(ls >> n) || n < 1) fail("bad tetrahedron count");
      d.resize(n);
      have_tets = true;
    } else if (kw == "eps") {
      if (!have_tets) fail("eps before tets");
      for (int t = 0; t < d.tets; ++t) {
        int s;
        if (!(ls >> s) || (s != 1 && s != -1)) fail("eps needs one +1/-1 entry per tet");
        d.eps[t] = s;
      }
    } else if (kw == "gluing") {
      if (!have_tets) fail("gluing before tets");
      int t, f, t2, f2, a, b, c;
      if (!(ls >> t >> f >> t2 >> f2 >> a >> b >> c)) fail("gluing needs 7 integers");
      if (t < 0 || t >= d.tets || t2 < 0 || t2 >= d.tets || f < 0 || f > 3 || f2 < 0 || f2 > 3)
        fail("gluing indices out of range");
      if (d.glue[t][f] || d.glue[t2][f2]) fail("face glued twice");
      d.add_gluing(FaceRef{t, f}, FaceRef{t2, f2}, {a, b, c});
    } else if (kw == "branch") {
      if (!have_tets) fail("branch before tets");
      int id, t, i, j;
      if (!(ls >> id >> t >> i >> j)) fail("branch needs 4 integers");
      d.branch_decls.push_back({t, i, j});
    } else if (kw == "boundary") {
      if (!have_tets) fail("boundary before tets");
      std::string label, side;
      int t, f;
      if (!(ls >> label >> side >> t >> f) || (side != "in" && side != "out"))
        fail("boundary needs: label in|out t f");
      if (t < 0 || t >= d.tets || f < 0 || f > 3) fail("boundary face out of range");
      d.marks[t][f] = BoundaryMark{label, side == "out"};
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  if (!have_format) throw std::invalid_argument("triangulation file: missing format line");
  if (!have_tets) throw std::invalid_argument("triangulation file: missing tets line");
  return Triangulation(std::move(d));
}

// Disjoint union; boundary labels of b get a suffix when they collide with a.
inline Triangulation disjoint_union(const Triangulation& a, const Triangulation& b) {
  TriData da = a.data(), db = b.data();
  TriData d;
  d.resize(da.tets + db.tets);
  std::set<std::string> labels_a;
  for (int t = 0; t < da.tets; ++t) {
    d.eps[t] = da.eps[t];
    d.dir[t] = da.dir[t];
    for (int f = 0; f < 4; ++f) {
      d.glue[t][f] = da.glue[t][f];
      d.marks[t][f] = da.marks[t][f];
      if (da.marks[t][f]) labels_a.insert(da.marks[t][f]->label);
    }
  }
  int off = da.tets;
  for (int t = 0; t < db.tets; ++t) {
    d.eps[off + t] = db.eps[t];
    d.dir[off + t] = db.dir[t];
    for (int f = 0; f < 4; ++f) {
      auto g = db.glue[t][f];
      if (g) {
        g->to.tet += off;
        d.glue[off + t][f] = g;
      }
      auto m = db.marks[t][f];
      if (m && labels_a.count(m->label)) m->label += "'";
      d.marks[off + t][f] = m;
    }
  }
  return Triangulation(std::move(d));
}

}  // namespace dwtv
