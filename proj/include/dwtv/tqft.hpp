// Vector spaces and linear maps of the triangulated theory. A marked surface
// gets the free space on its flat colorings; a cobordism gets the matrix of
// relative invariants between the two coloring bases, under one of several
// boundary normalizations.
#pragma once

#include "dwtv/cochain.hpp"
#include "dwtv/coloring.hpp"
#include "dwtv/cyclotomic.hpp"
#include "dwtv/group.hpp"
#include "dwtv/prism.hpp"
#include "dwtv/rational.hpp"
#include "dwtv/statesum.hpp"
#include "dwtv/surface.hpp"
#include "dwtv/triangulation.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dwtv {

// Basis of the space attached to a branched surface: its flat colorings in
// the order produced by the coloring search (deterministic for a fixed
// triangulation and group).
struct ColoringSpace {
  SurfaceTriangulation surface;
  std::vector<std::vector<int>> basis;

  int dim() const { return static_cast<int>(basis.size()); }
};

inline ColoringSpace coloring_space(const SurfaceTriangulation& surf, const FiniteGroup& g) {
  surf.require_valid();
  return ColoringSpace{surf, all_colorings(constraint_system(surf), g)};
}

// How the bare relative sum is rescaled before it is used as a matrix entry.
// `none` keeps the raw gluing-anomalous pairing, `in_side` divides the raw
// pairing by the class count of the incoming boundary (making cylinders
// idempotent and composition strictly multiplicative), `out_side` divides by
// the outgoing one, and `mixed` splits the difference symmetrically, which
// can leave a residual square root.
enum class Normalization { none, in_side, out_side, mixed };

inline Normalization parse_normalization(const std::string& s) {
  if (s == "u") return Normalization::none;
  if (s == "i") return Normalization::in_side;
  if (s == "o") return Normalization::out_side;
  if (s == "m") return Normalization::mixed;
  throw std::invalid_argument("unknown normalization (expected u, i, o or m)");
}

namespace detail {

// Power of |G| applied to the bare relative invariant, as (integer exponent,
// extra half power). Only `mixed` with an odd class total produces the half.
inline std::pair<long long, bool> norm_exponent(Normalization norm, long long n0_in,
                                                long long n0_out) {
  switch (norm) {
    case Normalization::none:
      return {n0_in + n0_out, false};
    case Normalization::in_side:
      return {n0_out, false};
    case Normalization::out_side:
      return {n0_in, false};
    case Normalization::mixed: {
      long long s = n0_in + n0_out;
      if (s % 2 == 0) return {s / 2, false};
      return {(s - 1) / 2, true};
    }
  }
  throw std::logic_error("norm_exponent: bad normalization");
}

inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  BigInt num = rat_num(r), den = rat_den(r);
  BigInt sn = boost::multiprecision::sqrt(num);
  if (sn * sn != num) return std::nullopt;
  BigInt sd = boost::multiprecision::sqrt(den);
  if (sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

}  // namespace detail

// Matrix of a cobordism between coloring spaces. Rows are indexed by the
// outgoing basis, columns by the incoming one. The value represented is
// sqrt(sqrt_scale) times `entries`; sqrt_scale stays 1 except under the
// mixed normalization with an odd boundary class total, where the exact
// rational under the root is kept symbolically (its sign is not resolved).
struct CobordismMatrix {
  ColoringSpace domain;
  ColoringSpace codomain;
  std::vector<std::vector<CycNumber>> entries;
  Rational sqrt_scale{1};

  int rows() const { return static_cast<int>(entries.size()); }
  int cols() const { return entries.empty() ? domain.dim() : static_cast<int>(entries[0].size()); }
  const CycNumber& at(int row, int col) const {
    return entries.at(static_cast<size_t>(row)).at(static_cast<size_t>(col));
  }
};

inline bool same_space(const ColoringSpace& a, const ColoringSpace& b) {
  return detail::same_surface(a.surface, b.surface) && a.basis == b.basis;
}

inline CobordismMatrix cobordism_matrix(const Cobordism& cob, const FiniteGroup& g,
                                        const Cochain3& a, Normalization norm) {
  cob.tri.require_valid();
  detail::require_matching(g, a);
  detail::require_pentagon(a);

  // every undecorated face must be claimed by one of the two boundary ports
  std::vector<std::array<bool, 4>> claimed(static_cast<size_t>(cob.tri.tet_count()),
                                           {false, false, false, false});
  for (const PortFace& pf : cob.in_faces) claimed[static_cast<size_t>(pf.tet)][static_cast<size_t>(pf.face())] = true;
  for (const PortFace& pf : cob.out_faces) claimed[static_cast<size_t>(pf.tet)][static_cast<size_t>(pf.face())] = true;
  for (int t = 0; t < cob.tri.tet_count(); ++t)
    for (int f = 0; f < 4; ++f)
      if (!cob.tri.gluing(t, f).has_value() && !claimed[static_cast<size_t>(t)][static_cast<size_t>(f)])
        throw std::invalid_argument("cobordism has boundary faces not assigned to either end");

  ColoringSpace dom = coloring_space(cob.in_surface, g);
  ColoringSpace cod = coloring_space(cob.out_surface, g);

  std::map<std::vector<int>, int> row_of;
  for (int i = 0; i < cod.dim(); ++i) row_of[cod.basis[i]] = i;

  auto [expo, half] = detail::norm_exponent(norm, cob.in_surface.vertex_class_count(),
                                            cob.out_surface.vertex_class_count());
  Rational factor = rat_pow(Rational(g.order()), expo - cob.tri.vertex_class_count());

  const long long m = a.modulus;
  ConstraintSystem sys = constraint_system(cob.tri);
  std::vector<std::vector<CycNumber>> entries(
      static_cast<size_t>(cod.dim()),
      std::vector<CycNumber>(static_cast<size_t>(dom.dim()), CycNumber(0)));

  for (int c = 0; c < dom.dim(); ++c) {
    std::vector<int> pinned(static_cast<size_t>(cob.tri.edge_class_count()), -1);
    bool consistent = true;
    for (size_t k = 0; k < cob.in_edges.size(); ++k) {
      auto [cls, sign] = cob.in_edges[k];
      int v = dom.basis[static_cast<size_t>(c)][k];
      if (sign < 0) v = g.inv(v);
      if (pinned[static_cast<size_t>(cls)] >= 0 && pinned[static_cast<size_t>(cls)] != v)
        consistent = false;
      pinned[static_cast<size_t>(cls)] = v;
    }
    if (!consistent) continue;
    ColoringProgram prog(sys, pinned);
    prog.run_weighted(g, a, [&](const std::vector<int>& vals, long long ex) {
      std::vector<int> outc(cob.out_edges.size());
      for (size_t k = 0; k < cob.out_edges.size(); ++k) {
        auto [cls, sign] = cob.out_edges[k];
        int v = vals[static_cast<size_t>(cls)];
        outc[k] = sign < 0 ? g.inv(v) : v;
      }
      auto it = row_of.find(outc);
      if (it == row_of.end())
        throw std::logic_error("coloring restricts to a non-basis outgoing coloring");
      entries[static_cast<size_t>(it->second)][static_cast<size_t>(c)] += CycNumber::root(m, ex);
    });
  }

  CycNumber scale{factor};
  for (auto& row : entries)
    for (auto& e : row) e = e * scale;

  CobordismMatrix out{std::move(dom), std::move(cod), std::move(entries), Rational(1)};
  if (half) out.sqrt_scale = Rational(g.order());
  return out;
}

// Matrix product `after * before`, the map applying `before` first. The
// inner spaces must carry identical surface data and bases.
inline CobordismMatrix compose(const CobordismMatrix& after, const CobordismMatrix& before) {
  if (!same_space(after.domain, before.codomain))
    throw std::invalid_argument("compose: inner coloring spaces do not match");
  const int p = after.rows(), q = after.cols(), r = before.cols();
  std::vector<std::vector<CycNumber>> prod(
      static_cast<size_t>(p), std::vector<CycNumber>(static_cast<size_t>(r), CycNumber(0)));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      if (after.at(i, j).is_zero()) continue;
      for (int k = 0; k < r; ++k)
        prod[static_cast<size_t>(i)][static_cast<size_t>(k)] +=
            after.at(i, j) * before.at(j, k);
    }
  CobordismMatrix out{before.domain, after.codomain, std::move(prod), Rational(1)};
  Rational s = after.sqrt_scale * before.sqrt_scale;
  if (auto root = detail::exact_sqrt(s)) {
    if (*root != 1) {
      CycNumber f{*root};
      for (auto& row : out.entries)
        for (auto& e : row) e = e * f;
    }
  } else {
    out.sqrt_scale = s;
  }
  return out;
}

namespace detail {

// Exact rank by Gaussian elimination; for each column in order the pivot is
// the first not yet used row with a nonzero entry.
inline int matrix_rank(std::vector<std::vector<CycNumber>> m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (!m[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[static_cast<size_t>(piv)], m[static_cast<size_t>(rank)]);
    for (int r = rank + 1; r < rows; ++r) {
      if (m[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) continue;
      CycNumber f = m[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                    m[static_cast<size_t>(rank)][static_cast<size_t>(col)];
      for (int c = col; c < cols; ++c)
        m[static_cast<size_t>(r)][static_cast<size_t>(c)] =
            m[static_cast<size_t>(r)][static_cast<size_t>(c)] -
            f * m[static_cast<size_t>(rank)][static_cast<size_t>(c)];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

// Dimension of the theory's space at a surface: the rank of the cylinder
// projector in the incoming normalization. Independent of the triangulation
// chosen for the surface.
inline int tqft_dim(const SurfaceTriangulation& surf, const FiniteGroup& g, const Cochain3& a) {
  CobordismMatrix proj = cobordism_matrix(cylinder_over(surf), g, a, Normalization::in_side);
  return detail::matrix_rank(proj.entries);
}

}  // namespace dwtv
