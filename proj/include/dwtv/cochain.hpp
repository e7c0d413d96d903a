#pragma once

// Group cochains with values in Z_m, written additively: a 3-cochain alpha is
// a table of exponents e(g,h,k), the actual U(1) value being zeta_m^e. The
// cocycle condition, coboundaries and the commutator invariant all live here.

#include "dwtv/cyclotomic.hpp"
#include "dwtv/group.hpp"
#include "dwtv/rng.hpp"

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

namespace dwtv {

using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct Cochain2 {
  GroupPtr group;
  long long modulus = 1;
  std::vector<int> e;  // |G|^2 exponents in [0, modulus)

  Cochain2() = default;
  Cochain2(GroupPtr g, long long m) : group(std::move(g)), modulus(m) {
    if (m < 1) throw std::invalid_argument("cochain modulus must be >= 1");
    e.assign(static_cast<size_t>(group->order()) * group->order(), 0);
  }

  int at(int g, int h) const { return e[static_cast<size_t>(g) * group->order() + h]; }
  void set(int g, int h, long long v) {
    long long r = v % modulus;
    if (r < 0) r += modulus;
    e[static_cast<size_t>(g) * group->order() + h] = static_cast<int>(r);
  }
};

struct Cochain3 {
  GroupPtr group;
  long long modulus = 1;
  std::vector<int> e;  // |G|^3 exponents in [0, modulus)

  Cochain3() = default;
  Cochain3(GroupPtr g, long long m) : group(std::move(g)), modulus(m) {
    if (m < 1) throw std::invalid_argument("cochain modulus must be >= 1");
    int n = group->order();
    e.assign(static_cast<size_t>(n) * n * n, 0);
  }

  int at(int g, int h, int k) const {
    int n = group->order();
    return e[(static_cast<size_t>(g) * n + h) * n + k];
  }
  void set(int g, int h, int k, long long v) {
    long long r = v % modulus;
    if (r < 0) r += modulus;
    int n = group->order();
    e[(static_cast<size_t>(g) * n + h) * n + k] = static_cast<int>(r);
  }

  // Value as an exact root of unity.
  CycNumber value(int g, int h, int k) const { return CycNumber::root(modulus, at(g, h, k)); }

  // alpha vanishes whenever an argument is the identity.
  bool normalized() const {
    int n = group->order();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (at(0, a, b) || at(a, 0, b) || at(a, b, 0)) return false;
    return true;
  }
};

// First failing quadruple of the cocycle condition
//   e(y,z,t) - e(xy,z,t) + e(x,yz,t) - e(x,y,zt) + e(x,y,z) = 0 (mod m),
// scanning lexicographically; nullopt when alpha is a cocycle.
inline std::optional<std::array<int, 4>> check_cocycle(const Cochain3& a) {
  const FiniteGroup& g = *a.group;
  int n = g.order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int t = 0; t < n; ++t) {
          long long s = a.at(y, z, t) - a.at(g.mul(x, y), z, t) + a.at(x, g.mul(y, z), t) -
                        a.at(x, y, g.mul(z, t)) + a.at(x, y, z);
          if (s % a.modulus != 0) return std::array<int, 4>{x, y, z, t};
        }
  return std::nullopt;
}

// (delta b)(g,h,k) = b(h,k) - b(gh,k) + b(g,hk) - b(g,h)
inline Cochain3 coboundary(const Cochain2& b) {
  const FiniteGroup& g = *b.group;
  Cochain3 out(b.group, b.modulus);
  int n = g.order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        out.set(x, y, z,
                static_cast<long long>(b.at(y, z)) - b.at(g.mul(x, y), z) + b.at(x, g.mul(y, z)) -
                    b.at(x, y));
  return out;
}

inline Cochain3 trivial_cocycle(GroupPtr g) { return Cochain3(std::move(g), 1); }

// Pointwise product of U(1)-valued cochains = exponent sum after embedding
// both into the lcm modulus.
inline Cochain3 multiply(const Cochain3& a, const Cochain3& b) {
  if (!a.group->same_table(*b.group)) throw std::invalid_argument("cochain product: group mismatch");
  long long m = CycNumber::merge_order(a.modulus, b.modulus);
  Cochain3 out(a.group, m);
  int n = a.group->order();
  long long ka = m / a.modulus, kb = m / b.modulus;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) out.set(x, y, z, ka * a.at(x, y, z) + kb * b.at(x, y, z));
  return out;
}

inline Cochain3 inverse(const Cochain3& a) {
  Cochain3 out(a.group, a.modulus);
  int n = a.group->order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) out.set(x, y, z, -static_cast<long long>(a.at(x, y, z)));
  return out;
}

// Cyclic Z_n with modulus n^2: e(x,y,z) = x * (y + z - (y+z mod n)), i.e.
// n * x * carry(y,z). A 3-cocycle representing a generator of H^3(Z_n, U(1)).
inline Cochain3 zn_cocycle(int n) {
  auto g = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n));
  Cochain3 a(g, static_cast<long long>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        a.set(x, y, z, static_cast<long long>(x) * (y + z - (y + z) % n));
  return a;
}

// Symmetric group with modulus 4: e(x,y,z) = inv(x) * (inv(y) + inv(z)
// - inv(yz)). The second factor is always even, which is what makes this a
// mod-4 cocycle.
inline Cochain3 sn_cocycle(int n) {
  if (n < 2 || n > 5) throw std::invalid_argument("sn_cocycle supported for 2 <= n <= 5");
  auto g = std::make_shared<const FiniteGroup>(FiniteGroup::symmetric(n));
  int order = g->order();
  std::vector<int> inv_count(order);
  for (int p = 0; p < order; ++p) inv_count[p] = g->permutation(p).inversions();
  Cochain3 a(g, 4);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      for (int z = 0; z < order; ++z)
        a.set(x, y, z,
              static_cast<long long>(inv_count[x]) *
                  (inv_count[y] + inv_count[z] - inv_count[g->mul(y, z)]));
  return a;
}

// Commutator invariant exponent: alpha summed over the cyclic orderings of
// (g,h,k) minus the anti-cyclic ones.
inline long long beta_exponent(const Cochain3& a, int g, int h, int k) {
  long long s = static_cast<long long>(a.at(g, h, k)) + a.at(h, k, g) + a.at(k, g, h) -
                a.at(g, k, h) - a.at(h, g, k) - a.at(k, h, g);
  long long r = s % a.modulus;
  if (r < 0) r += a.modulus;
  return r;
}

inline CycNumber beta_value(const Cochain3& a, int g, int h, int k) {
  return CycNumber::root(a.modulus, beta_exponent(a, g, h, k));
}

inline Cochain2 random_cochain2(GroupPtr g, long long modulus, SplitMix64& rng) {
  Cochain2 b(std::move(g), modulus);
  int n = b.group->order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      b.set(x, y, static_cast<long long>(rng.below(static_cast<std::uint64_t>(modulus))));
  return b;
}

// ---- group / cocycle spec strings.
// Group specs: cyclic:<n> | symmetric:<n> | product:<spec>x<spec> | table:<path>

inline FiniteGroup parse_group_spec(const std::string& spec) {
  auto starts = [&spec](const char* p) { return spec.rfind(p, 0) == 0; };
  if (starts("cyclic:")) return FiniteGroup::cyclic(std::stoi(spec.substr(7)));
  if (starts("symmetric:")) return FiniteGroup::symmetric(std::stoi(spec.substr(10)));
  if (starts("table:")) return FiniteGroup::from_table_file(spec.substr(6));
  if (starts("product:")) {
    std::string rest = spec.substr(8);
    for (size_t i = 1; i + 1 < rest.size(); ++i) {
      if (rest[i] != 'x') continue;
      try {
        FiniteGroup a = parse_group_spec(rest.substr(0, i));
        FiniteGroup b = parse_group_spec(rest.substr(i + 1));
        return FiniteGroup::product(a, b);
      } catch (const std::exception&) {
        continue;  // try the next split point
      }
    }
    throw std::invalid_argument("cannot parse product group spec: " + spec);
  }
  throw std::invalid_argument("unknown group spec: " + spec);
}

inline GroupPtr parse_group_spec_shared(const std::string& spec) {
  return std::make_shared<const FiniteGroup>(parse_group_spec(spec));
}

namespace detail {

inline std::vector<std::string> cocycle_file_tokens(std::istream& in) {
  std::vector<std::string> toks;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) toks.push_back(t);
  }
  return toks;
}

}  // namespace detail

// File format for 3-cochains:
//   group <group-spec>
//   root-order <m>
//   <g> <h> <k> <e>   (one line per triple; omitted triples are 0)
inline void save_cocycle(std::ostream& os, const Cochain3& a, const std::string& group_spec) {
  os << "group " << group_spec << "\n";
  os << "root-order " << a.modulus << "\n";
  int n = a.group->order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) os << x << " " << y << " " << z << " " << a.at(x, y, z) << "\n";
}

inline Cochain3 load_cocycle(std::istream& in) {
  auto toks = detail::cocycle_file_tokens(in);
  if (toks.size() < 4 || toks[0] != "group" || toks[2] != "root-order")
    throw std::invalid_argument("cocycle file: expected 'group <spec>' then 'root-order <m>'");
  GroupPtr g = parse_group_spec_shared(toks[1]);
  long long m = std::stoll(toks[3]);
  Cochain3 a(g, m);
  if ((toks.size() - 4) % 4 != 0) throw std::invalid_argument("cocycle file: truncated entry line");
  int n = g->order();
  for (size_t i = 4; i + 4 <= toks.size(); i += 4) {
    int x = std::stoi(toks[i]), y = std::stoi(toks[i + 1]), z = std::stoi(toks[i + 2]);
    long long v = std::stoll(toks[i + 3]);
    if (x < 0 || x >= n || y < 0 || y >= n || z < 0 || z >= n)
      throw std::invalid_argument("cocycle file: element index out of range");
    if (v < 0 || v >= m) throw std::invalid_argument("cocycle file: exponent out of range");
    a.set(x, y, z, v);
  }
  return a;
}

inline Cochain3 load_cocycle_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open cocycle file: " + path);
  return load_cocycle(f);
}

// Same layout with "<g> <h> <e>" lines.
inline void save_cochain2(std::ostream& os, const Cochain2& b, const std::string& group_spec) {
  os << "group " << group_spec << "\n";
  os << "root-order " << b.modulus << "\n";
  int n = b.group->order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) os << x << " " << y << " " << b.at(x, y) << "\n";
}

inline Cochain2 load_cochain2(std::istream& in) {
  auto toks = detail::cocycle_file_tokens(in);
  if (toks.size() < 4 || toks[0] != "group" || toks[2] != "root-order")
    throw std::invalid_argument("cochain file: expected 'group <spec>' then 'root-order <m>'");
  GroupPtr g = parse_group_spec_shared(toks[1]);
  long long m = std::stoll(toks[3]);
  Cochain2 b(g, m);
  if ((toks.size() - 4) % 3 != 0) throw std::invalid_argument("cochain file: truncated entry line");
  int n = g->order();
  for (size_t i = 4; i + 3 <= toks.size(); i += 3) {
    int x = std::stoi(toks[i]), y = std::stoi(toks[i + 1]);
    long long v = std::stoll(toks[i + 2]);
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw std::invalid_argument("cochain file: element index out of range");
    if (v < 0 || v >= m) throw std::invalid_argument("cochain file: exponent out of range");
    b.set(x, y, v);
  }
  return b;
}

inline Cochain2 load_cochain2_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open cochain file: " + path);
  return load_cochain2(f);
}

// Cocycle specs: trivial | zn | sn | file:<path>, optionally suffixed with
// *coboundary:<path> to twist by the coboundary of a stored 2-cochain.
// The group argument is the group the caller already constructed; the spec
// must produce a cochain on a group with the identical table.
inline Cochain3 parse_cocycle_spec(const std::string& spec, const GroupPtr& group) {
  auto star = spec.find('*');
  if (star != std::string::npos) {
    std::string mod = spec.substr(star + 1);
    if (mod.rfind("coboundary:", 0) != 0)
      throw std::invalid_argument("unknown cocycle modifier: " + mod);
    Cochain3 base = parse_cocycle_spec(spec.substr(0, star), group);
    Cochain2 b = load_cochain2_file(mod.substr(11));
    if (!b.group->same_table(*group))
      throw std::invalid_argument("coboundary cochain group does not match");
    b.group = group;
    return multiply(base, coboundary(b));
  }
  Cochain3 out;
  if (spec == "trivial") {
    return trivial_cocycle(group);
  } else if (spec == "zn") {
    out = zn_cocycle(group->order());
  } else if (spec == "sn") {
    int n = 1, fact = 1;
    while (fact < group->order()) fact *= ++n;
    if (fact != group->order()) throw std::invalid_argument("sn cocycle: group order is not n!");
    out = sn_cocycle(n);
  } else if (spec.rfind("file:", 0) == 0) {
    out = load_cocycle_file(spec.substr(5));
  } else {
    throw std::invalid_argument("unknown cocycle spec: " + spec);
  }
  if (!out.group->same_table(*group))
    throw std::invalid_argument("cocycle spec '" + spec + "' does not match the given group");
  out.group = group;  // share the caller's instance
  return out;
}

}  // namespace dwtv
