#pragma once

// Flat G-colorings of edge classes: directed edges carry group elements, and
// around every triangle the two short sides compose to the long one (in
// branching rank order). A small search program is compiled per complex:
// forced steps solve a triangle with one unknown edge, free steps branch over
// the group, and completed triangles and tetrahedra fire checks and weight
// contributions as soon as their last edge is set.

#include "dwtv/cochain.hpp"
#include "dwtv/group.hpp"
#include "dwtv/rational.hpp"
#include "dwtv/surface.hpp"
#include "dwtv/triangulation.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace dwtv {

struct TriangleRel {
  std::array<int, 3> var{};   // edge classes of (uv, vw, uw) with u < v < w by rank
  std::array<bool, 3> inv{};  // true when the class direction opposes the side
};

struct TetTerm {
  std::array<int, 3> var{};  // consecutive rank edges (01), (12), (23)
  std::array<bool, 3> inv{};
  int eps = 1;
};

struct ConstraintSystem {
  int vars = 0;
  int verts = 0;
  std::vector<std::pair<int, int>> ends;  // tail/head vertex class per edge class
  std::vector<TriangleRel> rels;
  std::vector<TetTerm> tets;  // empty for surfaces
};

inline ConstraintSystem constraint_system(const Triangulation& tri) {
  tri.require_valid();
  ConstraintSystem sys;
  sys.vars = tri.edge_class_count();
  sys.verts = tri.vertex_class_count();
  for (int i = 0; i < sys.vars; ++i) sys.ends.push_back(tri.edge_endpoints(i));
  for (const FaceRef& fr : tri.face_reps()) {
    auto fc = face_corners(fr.face);
    std::array<int, 3> byrank = fc;
    std::sort(byrank.begin(), byrank.end(),
              [&](int a, int b) { return tri.rank(fr.tet, a) < tri.rank(fr.tet, b); });
    TriangleRel r;
    const std::array<std::pair<int, int>, 3> sides{
        {{byrank[0], byrank[1]}, {byrank[1], byrank[2]}, {byrank[0], byrank[2]}}};
    for (int k = 0; k < 3; ++k) {
      auto [e, s] = tri.edge_of_corners(fr.tet, sides[k].first, sides[k].second);
      r.var[k] = e;
      r.inv[k] = s < 0;
    }
    sys.rels.push_back(r);
  }
  for (int t = 0; t < tri.tet_count(); ++t) {
    TetTerm tt;
    tt.eps = tri.eps(t);
    for (int k = 0; k < 3; ++k) {
      int u = tri.corner_by_rank(t, k);
      int v = tri.corner_by_rank(t, k + 1);
      auto [e, s] = tri.edge_of_corners(t, u, v);
      tt.var[k] = e;
      tt.inv[k] = s < 0;
    }
    sys.tets.push_back(tt);
  }
  return sys;
}

inline ConstraintSystem constraint_system(const SurfaceTriangulation& surf) {
  surf.require_valid();
  ConstraintSystem sys;
  sys.vars = surf.edge_class_count();
  sys.verts = surf.vertex_class_count();
  for (int i = 0; i < sys.vars; ++i) sys.ends.push_back(surf.edge_endpoints(i));
  for (int t = 0; t < surf.tri_count(); ++t) {
    std::array<int, 3> byrank{surf.corner_by_rank(t, 0), surf.corner_by_rank(t, 1),
                              surf.corner_by_rank(t, 2)};
    TriangleRel r;
    const std::array<std::pair<int, int>, 3> sides{
        {{byrank[0], byrank[1]}, {byrank[1], byrank[2]}, {byrank[0], byrank[2]}}};
    for (int k = 0; k < 3; ++k) {
      auto [e, s] = surf.edge_of_corners(t, sides[k].first, sides[k].second);
      r.var[k] = e;
      r.inv[k] = s < 0;
    }
    sys.rels.push_back(r);
  }
  return sys;
}

class ColoringProgram {
 public:
  // pinned[i] >= 0 fixes edge class i before the search; empty means all free.
  ColoringProgram(ConstraintSystem sys, std::vector<int> pinned = {})
      : sys_(std::move(sys)), pinned_(std::move(pinned)) {
    if (pinned_.empty()) pinned_.assign(sys_.vars, -1);
    if (static_cast<int>(pinned_.size()) != sys_.vars)
      throw std::invalid_argument("pinned vector size does not match the edge class count");
    compile();
  }

  int free_step_count() const { return free_steps_; }

  void run(const FiniteGroup& g, const std::function<void(const std::vector<int>&)>& leaf) const {
    exec(g, nullptr, [&](const std::vector<int>& vals, long long) { leaf(vals); });
  }

  BigInt count(const FiniteGroup& g) const {
    BigInt n = 0;
    exec(g, nullptr, [&](const std::vector<int>&, long long) { n += 1; });
    return n;
  }

  // Visits every coloring together with its accumulated weight exponent.
  void run_weighted(const FiniteGroup& g, const Cochain3& c3,
                    const std::function<void(const std::vector<int>&, long long)>& leaf) const {
    if (g.order() != c3.group->order())
      throw std::invalid_argument("cochain group order does not match");
    exec(g, &c3, leaf);
  }

  // Counts of colorings per total weight exponent modulo c3.modulus.
  std::vector<BigInt> weighted_histogram(const FiniteGroup& g, const Cochain3& c3) const {
    if (g.order() != c3.group->order())
      throw std::invalid_argument("cochain group order does not match");
    std::vector<BigInt> hist(static_cast<size_t>(c3.modulus), 0);
    exec(g, &c3, [&](const std::vector<int>&, long long e) { hist[static_cast<size_t>(e)] += 1; });
    return hist;
  }

 private:
  struct Step {
    bool free = false;
    int var = -1;
    int rel = -1;                  // solved relation when forced
    int solve_pos = -1;            // unknown position within the relation
    std::vector<int> checks;      // relations completed by this step
    std::vector<int> tets_done;   // tet terms completed by this step
  };

  void compile() {
    std::vector<bool> known(sys_.vars, false);
    int unknown = 0;
    for (int i = 0; i < sys_.vars; ++i) {
      if (pinned_[i] >= 0) known[i] = true;
      else ++unknown;
    }
    std::vector<bool> rel_done(sys_.rels.size(), false);
    std::vector<bool> tet_done(sys_.tets.size(), false);
    auto rel_unknowns = [&](const TriangleRel& r) {
      std::vector<int> pos;
      for (int k = 0; k < 3; ++k)
        if (!known[r.var[k]]) pos.push_back(k);
      return pos;
    };
    auto sweep_completions = [&](Step* step, int skip_rel) {
      for (size_t i = 0; i < sys_.rels.size(); ++i) {
        if (rel_done[i]) continue;
        if (!rel_unknowns(sys_.rels[i]).empty()) continue;
        rel_done[i] = true;
        if (static_cast<int>(i) == skip_rel) continue;
        if (step) step->checks.push_back(static_cast<int>(i));
        else init_checks_.push_back(static_cast<int>(i));
      }
      for (size_t i = 0; i < sys_.tets.size(); ++i) {
        if (tet_done[i]) continue;
        const auto& tt = sys_.tets[i];
        if (!known[tt.var[0]] || !known[tt.var[1]] || !known[tt.var[2]]) continue;
        tet_done[i] = true;
        if (step) step->tets_done.push_back(static_cast<int>(i));
        else init_tets_.push_back(static_cast<int>(i));
      }
    };
    sweep_completions(nullptr, -1);
    while (unknown > 0) {
      Step st;
      int forced_rel = -1;
      for (size_t i = 0; i < sys_.rels.size() && forced_rel < 0; ++i) {
        if (rel_done[i]) continue;
        auto pos = rel_unknowns(sys_.rels[i]);
        if (pos.size() == 1) {
          forced_rel = static_cast<int>(i);
          st.free = false;
          st.rel = forced_rel;
          st.solve_pos = pos[0];
          st.var = sys_.rels[i].var[pos[0]];
        }
      }
      if (forced_rel < 0) {
        st.free = true;
        for (int i = 0; i < sys_.vars; ++i)
          if (!known[i]) {
            st.var = i;
            break;
          }
        ++free_steps_;
      }
      known[st.var] = true;
      --unknown;
      sweep_completions(&st, st.rel);
      steps_.push_back(std::move(st));
    }
  }

  template <class Leaf>
  void exec(const FiniteGroup& g, const Cochain3* wt, Leaf&& leaf) const {
    std::vector<int> vals(sys_.vars, -1);
    for (int i = 0; i < sys_.vars; ++i)
      if (pinned_[i] >= 0) {
        if (pinned_[i] >= g.order()) throw std::invalid_argument("pinned value out of range");
        vals[i] = pinned_[i];
      }
    auto term = [&](int var, bool inv) { return inv ? g.inv(vals[var]) : vals[var]; };
    auto rel_holds = [&](const TriangleRel& r) {
      return g.mul(term(r.var[0], r.inv[0]), term(r.var[1], r.inv[1])) == term(r.var[2], r.inv[2]);
    };
    long long m = wt ? wt->modulus : 1;
    auto tet_exponent = [&](const TetTerm& tt) {
      int a = term(tt.var[0], tt.inv[0]);
      int b = term(tt.var[1], tt.inv[1]);
      int c = term(tt.var[2], tt.inv[2]);
      long long e = static_cast<long long>(tt.eps) * wt->at(a, b, c);
      e %= m;
      return e < 0 ? e + m : e;
    };
    long long base = 0;
    for (int r : init_checks_)
      if (!rel_holds(sys_.rels[r])) return;
    if (wt)
      for (int t : init_tets_) base = (base + tet_exponent(sys_.tets[t])) % m;

    std::function<void(size_t, long long)> go = [&](size_t si, long long expo) {
      if (si == steps_.size()) {
        leaf(vals, expo);
        return;
      }
      const Step& st = steps_[si];
      auto after_assign = [&](long long e) {
        for (int r : st.checks)
          if (!rel_holds(sys_.rels[r])) return;
        if (wt)
          for (int t : st.tets_done) e = (e + tet_exponent(sys_.tets[t])) % m;
        go(si + 1, e);
      };
      if (st.free) {
        for (int x = 0; x < g.order(); ++x) {
          vals[st.var] = x;
          after_assign(expo);
        }
        vals[st.var] = -1;
      } else {
        const TriangleRel& r = sys_.rels[st.rel];
        // solve a * b = c for the single unknown side
        int solved;
        if (st.solve_pos == 2) {
          solved = g.mul(term(r.var[0], r.inv[0]), term(r.var[1], r.inv[1]));
        } else if (st.solve_pos == 0) {
          solved = g.mul(term(r.var[2], r.inv[2]), g.inv(term(r.var[1], r.inv[1])));
        } else {
          solved = g.mul(g.inv(term(r.var[0], r.inv[0])), term(r.var[2], r.inv[2]));
        }
        vals[st.var] = r.inv[st.solve_pos] ? g.inv(solved) : solved;
        after_assign(expo);
        vals[st.var] = -1;
      }
    };
    go(0, base);
  }

  ConstraintSystem sys_;
  std::vector<int> pinned_;
  std::vector<Step> steps_;
  std::vector<int> init_checks_, init_tets_;
  int free_steps_ = 0;
};

inline std::vector<std::vector<int>> all_colorings(const ConstraintSystem& sys,
                                                   const FiniteGroup& g,
                                                   std::vector<int> pinned = {}) {
  ColoringProgram prog(sys, std::move(pinned));
  std::vector<std::vector<int>> out;
  prog.run(g, [&](const std::vector<int>& v) { out.push_back(v); });
  std::sort(out.begin(), out.end());
  return out;
}

// Gauge change: a group element at every vertex class acts by
// gamma'(e) = delta(tail) * gamma(e) * delta(head)^-1.
inline std::vector<int> gauge_transform(const ConstraintSystem& sys, const FiniteGroup& g,
                                        const std::vector<int>& col,
                                        const std::vector<int>& delta) {
  if (static_cast<int>(delta.size()) != sys.verts)
    throw std::invalid_argument("gauge vector size does not match the vertex class count");
  std::vector<int> out(col.size());
  for (size_t e = 0; e < col.size(); ++e) {
    auto [tail, head] = sys.ends[e];
    out[e] = g.mul(g.mul(delta[tail], col[e]), g.inv(delta[head]));
  }
  return out;
}

// Orbit id per coloring under the gauge action; ids are dense and ordered by
// first appearance.
inline std::vector<int> gauge_orbits(const ConstraintSystem& sys, const FiniteGroup& g,
                                     const std::vector<std::vector<int>>& cols) {
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < cols.size(); ++i) index[cols[i]] = static_cast<int>(i);
  std::vector<int> orbit(cols.size(), -1);
  int next = 0;
  for (size_t i = 0; i < cols.size(); ++i) {
    if (orbit[i] >= 0) continue;
    int id = next++;
    std::vector<size_t> queue{i};
    orbit[i] = id;
    while (!queue.empty()) {
      size_t cur = queue.back();
      queue.pop_back();
      for (int v = 0; v < sys.verts; ++v)
        for (int h = 1; h < g.order(); ++h) {
          std::vector<int> delta(sys.verts, FiniteGroup::kIdentity);
          delta[v] = h;
          auto img = gauge_transform(sys, g, cols[cur], delta);
          auto it = index.find(img);
          if (it == index.end())
            throw std::logic_error("gauge image is not in the provided solution set");
          if (orbit[it->second] < 0) {
            orbit[it->second] = id;
            queue.push_back(static_cast<size_t>(it->second));
          }
        }
    }
  }
  return orbit;
}

inline int gauge_orbit_count(const ConstraintSystem& sys, const FiniteGroup& g,
                             const std::vector<std::vector<int>>& cols) {
  if (cols.empty()) return 0;
  auto orbit = gauge_orbits(sys, g, cols);
  return *std::max_element(orbit.begin(), orbit.end()) + 1;
}

}  // namespace dwtv
