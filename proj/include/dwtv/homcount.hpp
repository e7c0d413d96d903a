#pragma once

// Counting homomorphisms from the fundamental group to a finite group,
// independently of the coloring machinery: a presentation is read off the
// 2-skeleton (spanning tree edges die, triangles become relator words),
// generators occurring once in a single relator are eliminated, and the
// remaining small presentation is brute forced. Conjugation orbits of the
// homomorphism set are counted by closure.

#include "dwtv/coloring.hpp"
#include "dwtv/group.hpp"
#include "dwtv/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace dwtv {

// Words are sequences of (generator, +1/-1).
using Word = std::vector<std::pair<int, int>>;

struct Presentation {
  int gens = 0;
  std::vector<Word> rels;
};

namespace detail {

inline void free_reduce(Word& w) {
  Word out;
  for (auto& t : w) {
    if (!out.empty() && out.back().first == t.first && out.back().second == -t.second)
      out.pop_back();
    else
      out.push_back(t);
  }
  w = std::move(out);
}

inline void cyclic_reduce(Word& w) {
  free_reduce(w);
  while (w.size() >= 2 && w.front().first == w.back().first &&
         w.front().second == -w.back().second) {
    w.erase(w.begin());
    w.pop_back();
    free_reduce(w);
  }
}

inline Word inverse_word(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.emplace_back(it->first, -it->second);
  return out;
}

inline Word substitute(const Word& w, int gen, const Word& repl) {
  Word out;
  Word repl_inv = inverse_word(repl);
  for (auto& t : w) {
    if (t.first != gen) {
      out.push_back(t);
      continue;
    }
    const Word& r = (t.second > 0) ? repl : repl_inv;
    out.insert(out.end(), r.begin(), r.end());
  }
  free_reduce(out);
  return out;
}

}  // namespace detail

// Presentation of the edge-path group: spanning tree edges are trivialized,
// each triangle contributes the relator t0 t1 t2^-1. Requires a connected
// complex.
inline Presentation fundamental_presentation(const ConstraintSystem& sys) {
  std::vector<int> tree_mark(sys.vars, 0);  // 1: tree edge (killed)
  if (sys.verts > 0) {
    std::vector<char> seen(sys.verts, 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    int visited = 1;
    // adjacency over edge classes
    std::vector<std::vector<std::pair<int, int>>> adj(sys.verts);  // (other vertex, edge)
    for (int e = 0; e < sys.vars; ++e) {
      auto [u, v] = sys.ends[e];
      adj[u].push_back({v, e});
      adj[v].push_back({u, e});
    }
    while (!queue.empty()) {
      int u = queue.back();
      queue.pop_back();
      for (auto [v, e] : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          tree_mark[e] = 1;
          ++visited;
          queue.push_back(v);
        }
    }
    if (visited != sys.verts)
      throw std::invalid_argument("fundamental_presentation requires a connected complex");
  }
  std::vector<int> gen_of(sys.vars, -1);
  Presentation p;
  for (int e = 0; e < sys.vars; ++e)
    if (!tree_mark[e]) gen_of[e] = p.gens++;
  for (const auto& r : sys.rels) {
    Word w;
    const std::array<int, 3> sign{r.inv[0] ? -1 : 1, r.inv[1] ? -1 : 1, r.inv[2] ? 1 : -1};
    for (int k = 0; k < 3; ++k) {
      int g = gen_of[r.var[k]];
      if (g >= 0) w.emplace_back(g, sign[k]);
    }
    detail::cyclic_reduce(w);
    if (!w.empty()) p.rels.push_back(std::move(w));
  }
  return p;
}

// Tietze reduction: a generator occurring exactly once within some relator is
// determined by the rest of that relator; substitute it away everywhere, drop
// the relator and the generator. Greedy, shortest defining relator first.
// Generators that never occur in a relator are genuinely free and stay.
inline Presentation reduce_presentation(Presentation p) {
  std::vector<char> alive(static_cast<size_t>(p.gens), 1);
  constexpr size_t kMaxWord = 20000;
  while (true) {
    for (auto& w : p.rels) detail::cyclic_reduce(w);
    p.rels.erase(std::remove_if(p.rels.begin(), p.rels.end(),
                                [](const Word& w) { return w.empty(); }),
                 p.rels.end());
    std::vector<long long> total(p.gens, 0);
    for (auto& w : p.rels)
      for (auto& t : w) ++total[t.first];
    int pick_gen = -1, pick_rel = -1;
    for (size_t i = 0; i < p.rels.size(); ++i) {
      std::map<int, int> cnt;
      for (auto& t : p.rels[i]) ++cnt[t.first];
      for (auto [g, c] : cnt) {
        if (c != 1) continue;
        if (pick_gen < 0 ||
            std::make_tuple(p.rels[i].size(), total[g], g) <
                std::make_tuple(p.rels[pick_rel].size(), total[pick_gen], pick_gen)) {
          pick_gen = g;
          pick_rel = static_cast<int>(i);
        }
      }
    }
    if (pick_gen < 0) break;
    Word w = p.rels[pick_rel];
    size_t pos = 0;
    while (w[pos].first != pick_gen) ++pos;
    Word rot(w.begin() + pos, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + pos);
    // rot = pick^s . tail = 1, so pick = inverse(tail) when s = +1, tail when -1
    int s = rot[0].second;
    Word tail(rot.begin() + 1, rot.end());
    Word repl = (s > 0) ? detail::inverse_word(tail) : tail;
    p.rels.erase(p.rels.begin() + pick_rel);
    bool blown = false;
    for (auto& other : p.rels) {
      other = detail::substitute(other, pick_gen, repl);
      if (other.size() > kMaxWord) blown = true;
    }
    alive[pick_gen] = 0;
    if (blown) break;  // give up on further reduction, keep correctness
  }
  // compact the surviving generator ids
  std::vector<int> remap(p.gens, -1);
  int next = 0;
  for (int g = 0; g < p.gens; ++g)
    if (alive[g]) remap[g] = next++;
  for (auto& w : p.rels)
    for (auto& t : w) t.first = remap[t.first];
  p.gens = next;
  return p;
}

inline BigInt hom_count_brute(const Presentation& p, const FiniteGroup& g,
                              std::vector<std::vector<int>>* keep = nullptr) {
  double size = 1;
  for (int i = 0; i < p.gens; ++i) size *= g.order();
  if (size > 2.5e8)
    throw std::runtime_error("presentation too large to brute force after reduction");
  std::vector<int> a(static_cast<size_t>(p.gens), 0);
  BigInt total = 0;
  while (true) {
    bool ok = true;
    for (const auto& w : p.rels) {
      int acc = FiniteGroup::kIdentity;
      for (auto& t : w) acc = g.mul(acc, t.second > 0 ? a[t.first] : g.inv(a[t.first]));
      if (acc != FiniteGroup::kIdentity) {
        ok = false;
        break;
      }
    }
    if (ok) {
      total += 1;
      if (keep) keep->push_back(a);
    }
    int i = 0;
    while (i < p.gens && ++a[i] == g.order()) {
      a[i] = 0;
      ++i;
    }
    if (i == p.gens) break;
  }
  return total;
}

inline BigInt hom_count(const ConstraintSystem& sys, const FiniteGroup& g) {
  return hom_count_brute(reduce_presentation(fundamental_presentation(sys)), g);
}

inline BigInt hom_count(const Triangulation& tri, const FiniteGroup& g) {
  return hom_count(constraint_system(tri), g);
}

inline BigInt hom_count(const SurfaceTriangulation& surf, const FiniteGroup& g) {
  return hom_count(constraint_system(surf), g);
}

// |Hom(pi_1, G)| / |G| as an exact rational.
inline Rational hom_mass(const ConstraintSystem& sys, const FiniteGroup& g) {
  return Rational(hom_count(sys, g)) / g.order();
}

inline Rational hom_mass(const Triangulation& tri, const FiniteGroup& g) {
  return hom_mass(constraint_system(tri), g);
}

inline Rational hom_mass(const SurfaceTriangulation& surf, const FiniteGroup& g) {
  return hom_mass(constraint_system(surf), g);
}

// Number of conjugation orbits on Hom(pi_1, G).
inline BigInt hom_count_mod_conj(const ConstraintSystem& sys, const FiniteGroup& g) {
  Presentation p = reduce_presentation(fundamental_presentation(sys));
  std::vector<std::vector<int>> homs;
  hom_count_brute(p, g, &homs);
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < homs.size(); ++i) index[homs[i]] = static_cast<int>(i);
  std::vector<int> orbit(homs.size(), -1);
  BigInt orbits = 0;
  for (size_t i = 0; i < homs.size(); ++i) {
    if (orbit[i] >= 0) continue;
    ++orbits;
    std::vector<size_t> queue{i};
    orbit[i] = 1;
    while (!queue.empty()) {
      auto cur = homs[queue.back()];
      queue.pop_back();
      for (int h = 1; h < g.order(); ++h) {
        std::vector<int> img(cur.size());
        for (size_t k = 0; k < cur.size(); ++k) img[k] = g.conj(h, cur[k]);
        auto it = index.find(img);
        if (it == index.end()) throw std::logic_error("conjugate of a homomorphism is missing");
        if (orbit[it->second] < 0) {
          orbit[it->second] = 1;
          queue.push_back(static_cast<size_t>(it->second));
        }
      }
    }
  }
  return orbits;
}

inline BigInt hom_count_mod_conj(const Triangulation& tri, const FiniteGroup& g) {
  return hom_count_mod_conj(constraint_system(tri), g);
}

inline BigInt hom_count_mod_conj(const SurfaceTriangulation& surf, const FiniteGroup& g) {
  return hom_count_mod_conj(constraint_system(surf), g);
}

}  // namespace dwtv
