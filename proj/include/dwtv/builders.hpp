#pragma once

// Closed example complexes and the plain ordered-simplicial input path.

#include "dwtv/triangulation.hpp"

#include <algorithm>
#include <istream>

namespace dwtv {

namespace detail {

// Glue faces whose global vertex id triples match, either exactly or after
// one of the given partial translations. Labels inside each tet must be
// branching-ordered already; directions are set ascending.
inline void glue_by_ids(TriData& d, const std::vector<std::array<long, 4>>& gv,
                        const std::vector<std::map<long, long>>& translations) {
  auto corner_with_id = [&](int t, long id) {
    for (int c = 0; c < 4; ++c)
      if (gv[t][c] == id) return c;
    throw std::logic_error("glue_by_ids: id not found in target tet");
  };
  auto glue_pair = [&](FaceRef a, FaceRef b, const std::map<long, long>* tr) {
    std::array<int, 3> m{};
    auto fa = face_corners(a.face);
    for (int i = 0; i < 3; ++i) {
      long id = gv[a.tet][fa[i]];
      if (tr) id = tr->at(id);
      m[i] = corner_with_id(b.tet, id);
    }
    d.add_gluing(a, b, m);
  };

  std::map<std::array<long, 3>, std::vector<FaceRef>> by_triple;
  for (int t = 0; t < d.tets; ++t)
    for (int f = 0; f < 4; ++f) {
      auto fc = face_corners(f);
      std::array<long, 3> key{gv[t][fc[0]], gv[t][fc[1]], gv[t][fc[2]]};
      std::sort(key.begin(), key.end());
      by_triple[key].push_back(FaceRef{t, f});
    }

  std::vector<std::pair<std::array<long, 3>, FaceRef>> singles;
  for (auto& [key, slots] : by_triple) {
    if (slots.size() == 2) glue_pair(slots[0], slots[1], nullptr);
    else if (slots.size() == 1) singles.emplace_back(key, slots[0]);
    else throw std::invalid_argument("face triple shared by more than two tetrahedra");
  }

  std::map<std::array<long, 3>, FaceRef> open;
  for (auto& [key, slot] : singles) open.emplace(key, slot);
  for (const auto& tr : translations) {
    for (auto it = open.begin(); it != open.end();) {
      auto [key, slot] = *it;
      bool in_domain = tr.count(key[0]) && tr.count(key[1]) && tr.count(key[2]);
      if (!in_domain) {
        ++it;
        continue;
      }
      std::array<long, 3> img{tr.at(key[0]), tr.at(key[1]), tr.at(key[2])};
      std::sort(img.begin(), img.end());
      auto jt = open.find(img);
      if (jt == open.end() || jt == it) {
        ++it;
        continue;
      }
      glue_pair(slot, jt->second, &tr);
      open.erase(jt);
      it = open.erase(it);
    }
  }
  if (!open.empty())
    throw std::invalid_argument("unmatched faces remain after identifications");

  for (int t = 0; t < d.tets; ++t) d.dir[t] = {1, 1, 1, 1, 1, 1};
}

}  // namespace detail

// Boundary of the 4-simplex: five tetrahedra on vertices {0..4}, tet i
// omitting vertex 4 - i, carrying the alternating orientation signs. Tets are
// ordered so the canonical vertex class ids coincide with the vertex order.
inline Triangulation sphere3() {
  TriData d;
  d.resize(5);
  std::vector<std::array<long, 4>> gv(5);
  for (int i = 0; i < 5; ++i) {
    int k = 0;
    for (long v = 0; v < 5; ++v)
      if (v != 4 - i) gv[i][k++] = v;
    d.eps[i] = (i % 2) ? -1 : 1;
  }
  detail::glue_by_ids(d, gv, {});
  return Triangulation(std::move(d));
}

// The 3-torus as the unit cube cut into six tetrahedra along coordinate
// staircases, opposite faces identified by translation. One vertex class,
// seven edge classes.
inline Triangulation torus3() {
  TriData d;
  d.resize(6);
  std::vector<std::array<long, 4>> gv(6);
  std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  auto perm_sign = [](const std::array<int, 3>& p) {
    int s = 1;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (p[i] > p[j]) s = -s;
    return s;
  };
  for (int t = 0; t < 6; ++t) {
    long v = 0;
    gv[t][0] = 0;
    for (int k = 0; k < 3; ++k) {
      v |= 1L << perms[t][k];
      gv[t][k + 1] = v;
    }
    d.eps[t] = perm_sign(perms[t]);
  }
  std::vector<std::map<long, long>> translations(3);
  for (int axis = 0; axis < 3; ++axis) {
    long bit = 1L << axis;
    for (long v = 0; v < 8; ++v)
      if (!(v & bit)) translations[axis][v] = v | bit;
  }
  detail::glue_by_ids(d, gv, translations);
  return Triangulation(std::move(d));
}

// Plain ordered-simplicial format:
//   format dwtv-simp 1
//   tet v0 v1 v2 v3        (global vertex ids; branching = global id order)
// Faces pair by matching id triples; the complex must be closed. Orientation
// signs are found by propagation with tet 0 set positive in each component.
inline Triangulation from_simplicial(std::istream& in) {
  std::vector<std::array<long, 4>> gv;
  std::string line;
  int lineno = 0;
  bool have_format = false;
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
      if (!(ls >> name >> ver) || name != "dwtv-simp" || ver != 1)
        throw std::invalid_argument("simplicial file: expected 'format dwtv-simp 1'");
      have_format = true;
    } else if (kw == "tet") {
      std::array<long, 4> v{};
      if (!(ls >> v[0] >> v[1] >> v[2] >> v[3]))
        throw std::invalid_argument("simplicial file line " + std::to_string(lineno) +
                                    ": tet needs 4 vertex ids");
      std::sort(v.begin(), v.end());
      if (v[0] == v[1] || v[1] == v[2] || v[2] == v[3])
        throw std::invalid_argument("simplicial file line " + std::to_string(lineno) +
                                    ": repeated vertex in tet");
      gv.push_back(v);
    } else {
      throw std::invalid_argument("simplicial file line " + std::to_string(lineno) +
                                  ": unknown keyword '" + kw + "'");
    }
  }
  if (!have_format) throw std::invalid_argument("simplicial file: missing format line");
  if (gv.empty()) throw std::invalid_argument("simplicial file: no tetrahedra");

  TriData d;
  d.resize(static_cast<int>(gv.size()));
  detail::glue_by_ids(d, gv, {});

  // Orientation propagation. Corner labels are ascending so branching order
  // and label order coincide and all gluing corner maps preserve order.
  std::vector<int> eps(d.tets, 0);
  for (int s = 0; s < d.tets; ++s) {
    if (eps[s]) continue;
    eps[s] = 1;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int f = 0; f < 4; ++f) {
        const auto& g = d.glue[t][f];
        if (!g) throw std::invalid_argument("simplicial complex is not closed");
        int want = -eps[t] * (((f + g->to.face) % 2) ? -1 : 1);
        if (eps[g->to.tet] == 0) {
          eps[g->to.tet] = want;
          stack.push_back(g->to.tet);
        } else if (eps[g->to.tet] != want) {
          throw std::invalid_argument("simplicial complex is not orientable with this vertex order");
        }
      }
    }
  }
  d.eps = eps;
  return Triangulation(std::move(d));
}

}  // namespace dwtv
