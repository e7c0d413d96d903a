#pragma once

// Exact state sums over group colorings. The twisted partition function of a
// closed complex pairs a 3-cocycle with the flat colorings found by the
// compiled search; the relative version pins a flat boundary coloring first.
// The dual formulation runs over a group category and, on its slow path, sums
// over every edge assignment so that vanishing terms are discovered rather
// than filtered away up front. All values stay in cyclotomic rationals.

#include "dwtv/cochain.hpp"
#include "dwtv/coloring.hpp"
#include "dwtv/cyclotomic.hpp"
#include "dwtv/group.hpp"
#include "dwtv/rational.hpp"
#include "dwtv/triangulation.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dwtv {

// A fusion category built from a finite group: one invertible simple object
// per element, tensor product given by multiplication, every dimension +1,
// and the associator read off a 3-cochain whose pentagon identity is checked
// on construction.
class GroupCategory {
 public:
  explicit GroupCategory(Cochain3 associator) : assoc_(std::move(associator)) {
    if (auto w = check_cocycle(assoc_)) {
      std::ostringstream os;
      os << "associator fails the pentagon identity at (" << (*w)[0] << ", " << (*w)[1] << ", "
         << (*w)[2] << ", " << (*w)[3] << ")";
      throw std::invalid_argument(os.str());
    }
  }

  GroupCategory(const GroupPtr& g, Cochain3 associator) : GroupCategory(std::move(associator)) {
    if (!g || g->order() != assoc_.group->order())
      throw std::invalid_argument("category group does not match the associator group");
  }

  const FiniteGroup& group() const { return *assoc_.group; }
  GroupPtr group_ptr() const { return assoc_.group; }
  const Cochain3& associator() const { return assoc_; }
  long long modulus() const { return assoc_.modulus; }

  int object_count() const { return assoc_.group->order(); }
  Rational dim(int) const { return Rational(1); }  // every simple object is invertible
  Rational total_dim() const { return Rational(assoc_.group->order()); }

  // Exponent of the tetrahedral symbol on three composable objects; the value
  // is the matching root of unity. Normalized associators return zero as soon
  // as any argument is the identity.
  long long sixj_exponent(int b, int c, int d) const { return assoc_.at(b, c, d); }
  CycNumber sixj(int b, int c, int d) const {
    return CycNumber::root(assoc_.modulus, sixj_exponent(b, c, d));
  }

 private:
  Cochain3 assoc_;
};

// Weight table for the convention that reads the returning edge of the bottom
// face: the third slot becomes the color along 2 -> 0, which on flat colorings
// is the inverse of the product of the first two. The table ignores its third
// argument, so it can be fed to the same accumulation machinery.
inline Cochain3 alt_weight_table(const Cochain3& a) {
  const FiniteGroup& g = *a.group;
  Cochain3 t(a.group, a.modulus);
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y) {
      long long v = a.at(x, y, g.inv(g.mul(x, y)));
      for (int z = 0; z < g.order(); ++z) t.set(x, y, z, v);
    }
  return t;
}

// Exponent contributed by one tetrahedron under a full edge coloring. The
// three arguments of the cochain are the colors along consecutive corners in
// branching rank order; the alternate convention replaces the last one by the
// color along the returning bottom edge. The orientation sign is not applied.
inline long long tet_weight_exponent(const Triangulation& tri, int t, const std::vector<int>& col,
                                     const Cochain3& a, bool alt_convention = false) {
  const FiniteGroup& g = *a.group;
  auto val = [&](int u, int v) {
    auto [e, s] = tri.edge_of_corners(t, u, v);
    int x = col.at(static_cast<size_t>(e));
    return s < 0 ? g.inv(x) : x;
  };
  int c0 = tri.corner_by_rank(t, 0);
  int c1 = tri.corner_by_rank(t, 1);
  int c2 = tri.corner_by_rank(t, 2);
  int c3 = tri.corner_by_rank(t, 3);
  int third = alt_convention ? val(c2, c0) : val(c2, c3);
  return a.at(val(c0, c1), val(c1, c2), third);
}

// Root of unity carried by one tetrahedron, orientation sign included.
inline CycNumber tet_weight(const Triangulation& tri, int t, const std::vector<int>& col,
                            const Cochain3& a, bool alt_convention = false) {
  long long e = tri.eps(t) * tet_weight_exponent(tri, t, col, a, alt_convention);
  return CycNumber::root(a.modulus, e);
}

// Edge classes that touch an unglued face, sorted.
inline std::vector<int> boundary_edge_classes(const Triangulation& tri) {
  tri.require_valid();
  std::vector<int> out;
  for (int t = 0; t < tri.tet_count(); ++t)
    for (int f = 0; f < 4; ++f) {
      if (tri.gluing(t, f).has_value()) continue;
      auto fc = face_corners(f);
      const std::array<std::pair<int, int>, 3> sides{
          {{fc[0], fc[1]}, {fc[1], fc[2]}, {fc[0], fc[2]}}};
      for (auto [u, v] : sides) out.push_back(tri.edge_of_corners(t, u, v).first);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

inline void require_matching(const FiniteGroup& g, const Cochain3& a) {
  if (g.order() != a.group->order())
    throw std::invalid_argument("cochain group order does not match the coloring group");
}

inline void require_pentagon(const Cochain3& a) {
  if (auto w = check_cocycle(a)) {
    std::ostringstream os;
    os << "weight cochain fails the pentagon identity at (" << (*w)[0] << ", " << (*w)[1] << ", "
       << (*w)[2] << ", " << (*w)[3] << ")";
    throw std::invalid_argument(os.str());
  }
}

inline CycNumber assemble_state_sum(const std::vector<BigInt>& hist, long long modulus,
                                    long long order, int n0) {
  CycNumber total;
  for (size_t r = 0; r < hist.size(); ++r)
    if (hist[r] != 0)
      total = total + Rational(hist[r]) * CycNumber::root(modulus, static_cast<long long>(r));
  return rat_pow(Rational(order), -n0) * total;
}

}  // namespace detail

// Partition function of a closed oriented complex: the flat colorings are
// weighted by the cocycle evaluated on each tetrahedron with its orientation
// sign, and the sum is divided by |G| once per vertex class.
inline CycNumber dw_invariant(const Triangulation& tri, const FiniteGroup& g, const Cochain3& a,
                              bool alt_convention = false) {
  tri.require_valid();
  if (!tri.closed()) {
    std::ostringstream os;
    os << "partition function needs a closed complex; found " << tri.boundary_face_count()
       << " boundary faces";
    throw std::invalid_argument(os.str());
  }
  detail::require_matching(g, a);
  detail::require_pentagon(a);
  Cochain3 wt = alt_convention ? alt_weight_table(a) : a;
  ColoringProgram prog(constraint_system(tri));
  auto hist = prog.weighted_histogram(g, wt);
  return detail::assemble_state_sum(hist, a.modulus, g.order(), tri.vertex_class_count());
}

// Relative partition function with a pinned boundary coloring. The coloring
// must cover exactly the boundary edge classes and be flat on every boundary
// face; the normalization still counts every vertex class, interior or not.
// With empty boundary and an empty pin this is the closed sum again, and over
// a disjoint union it multiplies.
inline CycNumber dw_relative(const Triangulation& tri, const FiniteGroup& g, const Cochain3& a,
                             const std::map<int, int>& tau, bool alt_convention = false) {
  tri.require_valid();
  detail::require_matching(g, a);
  detail::require_pentagon(a);

  std::vector<int> bdry = boundary_edge_classes(tri);
  if (tau.size() != bdry.size())
    throw std::invalid_argument("boundary coloring must pin exactly the boundary edge classes");
  for (int e : bdry) {
    auto it = tau.find(e);
    if (it == tau.end()) {
      std::ostringstream os;
      os << "boundary coloring misses edge class " << e;
      throw std::invalid_argument(os.str());
    }
    if (it->second < 0 || it->second >= g.order())
      throw std::invalid_argument("boundary coloring value out of range");
  }

  // Flatness of the pinned values over each boundary face.
  for (int t = 0; t < tri.tet_count(); ++t)
    for (int f = 0; f < 4; ++f) {
      if (tri.gluing(t, f).has_value()) continue;
      auto fc = face_corners(f);
      std::sort(fc.begin(), fc.end(),
                [&](int x, int y) { return tri.rank(t, x) < tri.rank(t, y); });
      auto side = [&](int u, int v) {
        auto [e, s] = tri.edge_of_corners(t, u, v);
        int x = tau.at(e);
        return s < 0 ? g.inv(x) : x;
      };
      int ab = g.mul(side(fc[0], fc[1]), side(fc[1], fc[2]));
      if (ab != side(fc[0], fc[2])) {
        std::ostringstream os;
        os << "boundary coloring is not flat on face " << f << " of tetrahedron " << t;
        throw std::invalid_argument(os.str());
      }
    }

  ConstraintSystem sys = constraint_system(tri);
  std::vector<int> pinned(static_cast<size_t>(sys.vars), -1);
  for (auto [e, v] : tau) pinned[static_cast<size_t>(e)] = v;
  Cochain3 wt = alt_convention ? alt_weight_table(a) : a;
  ColoringProgram prog(std::move(sys), std::move(pinned));
  auto hist = prog.weighted_histogram(g, wt);
  return detail::assemble_state_sum(hist, a.modulus, g.order(), tri.vertex_class_count());
}

struct StateSumStats {
  BigInt terms = 0;       // edge assignments visited
  BigInt admissible = 0;  // assignments flat on every face
};

// State sum of a group category over a closed complex. The slow path walks
// every assignment of group elements to edge classes and lets inadmissible
// triangles kill their own terms; it refuses state spaces beyond term_cap.
// The fast path enumerates only the admissible colorings and must agree.
inline CycNumber tv_invariant(const Triangulation& tri, const GroupCategory& cat,
                              bool fast = false, StateSumStats* stats = nullptr,
                              long long term_cap = 10000000) {
  tri.require_valid();
  if (!tri.closed()) {
    std::ostringstream os;
    os << "state sum needs a closed complex; found " << tri.boundary_face_count()
       << " boundary faces";
    throw std::invalid_argument(os.str());
  }
  const FiniteGroup& g = cat.group();
  const Cochain3& a = cat.associator();
  const int n0 = tri.vertex_class_count();

  if (fast) {
    ColoringProgram prog(constraint_system(tri));
    auto hist = prog.weighted_histogram(g, a);
    if (stats) {
      stats->terms = 0;
      for (const BigInt& h : hist) stats->terms += h;
      stats->admissible = stats->terms;
    }
    return detail::assemble_state_sum(hist, a.modulus, g.order(), n0);
  }

  ConstraintSystem sys = constraint_system(tri);
  BigInt space = 1;
  for (int i = 0; i < sys.vars; ++i) space *= g.order();
  if (space > term_cap) {
    std::ostringstream os;
    os << "state space has " << space << " assignments, above the cap of " << term_cap
       << "; use the fast path";
    throw std::runtime_error(os.str());
  }

  auto resolve = [&](const std::vector<int>& vals, int var, bool inv) {
    int x = vals[static_cast<size_t>(var)];
    return inv ? g.inv(x) : x;
  };
  std::vector<BigInt> hist(static_cast<size_t>(a.modulus), 0);
  std::vector<int> vals(static_cast<size_t>(sys.vars), 0);
  BigInt terms = 0, admissible = 0;
  for (;;) {
    ++terms;
    bool ok = true;
    for (const TriangleRel& r : sys.rels) {
      int lhs = g.mul(resolve(vals, r.var[0], r.inv[0]), resolve(vals, r.var[1], r.inv[1]));
      if (lhs != resolve(vals, r.var[2], r.inv[2])) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ++admissible;
      long long e = 0;
      for (const TetTerm& tt : sys.tets) {
        long long w = a.at(resolve(vals, tt.var[0], tt.inv[0]), resolve(vals, tt.var[1], tt.inv[1]),
                           resolve(vals, tt.var[2], tt.inv[2]));
        e = ((e + tt.eps * w) % a.modulus + a.modulus) % a.modulus;
      }
      hist[static_cast<size_t>(e)] += 1;
    }
    int i = 0;
    while (i < sys.vars && vals[static_cast<size_t>(i)] == g.order() - 1)
      vals[static_cast<size_t>(i++)] = 0;
    if (i == sys.vars) break;
    ++vals[static_cast<size_t>(i)];
  }
  if (stats) {
    stats->terms = terms;
    stats->admissible = admissible;
  }
  return detail::assemble_state_sum(hist, a.modulus, g.order(), n0);
}

}  // namespace dwtv
