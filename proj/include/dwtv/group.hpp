#pragma once

// Finite groups as explicit multiplication tables. Elements are dense ints
// 0..order-1 and the identity is always element 0. Symmetric groups carry
// their permutation images so inversion counts are available.

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwtv {

struct Permutation {
  std::vector<int> img;  // img[i] = image of i

  static Permutation identity(int n) {
    Permutation p;
    p.img.resize(n);
    std::iota(p.img.begin(), p.img.end(), 0);
    return p;
  }

  int size() const { return static_cast<int>(img.size()); }

  // (a * b)(i) = a(b(i))
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    Permutation r;
    r.img.resize(a.img.size());
    for (size_t i = 0; i < b.img.size(); ++i) r.img[i] = a.img[b.img[i]];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.img.resize(img.size());
    for (size_t i = 0; i < img.size(); ++i) r.img[img[i]] = static_cast<int>(i);
    return r;
  }

  int inversions() const {
    int c = 0;
    for (size_t i = 0; i < img.size(); ++i)
      for (size_t j = i + 1; j < img.size(); ++j)
        if (img[i] > img[j]) ++c;
    return c;
  }

  int sign() const { return inversions() % 2 ? -1 : 1; }

  bool operator==(const Permutation& o) const { return img == o.img; }
  bool operator<(const Permutation& o) const { return img < o.img; }
};

class FiniteGroup {
 public:
  static constexpr int kIdentity = 0;

  int order() const { return order_; }
  const std::string& name() const { return name_; }

  int mul(int g, int h) const { return mul_[static_cast<size_t>(g) * order_ + h]; }
  int inv(int g) const { return inv_[g]; }
  int conj(int h, int g) const { return mul(mul(h, g), inv(h)); }  // h g h^-1

  int pow(int g, long long k) const {
    long long r = k % order_;  // element order divides group order
    if (r < 0) r += order_;
    int acc = kIdentity;
    for (long long i = 0; i < r; ++i) acc = mul(acc, g);
    return acc;
  }

  bool is_abelian() const {
    for (int g = 0; g < order_; ++g)
      for (int h = g + 1; h < order_; ++h)
        if (mul(g, h) != mul(h, g)) return false;
    return true;
  }

  // For symmetric groups: the permutation image of an element. Empty otherwise.
  bool has_permutation_images() const { return !perms_.empty(); }
  const Permutation& permutation(int g) const {
    if (perms_.empty()) throw std::logic_error("group has no permutation images");
    return perms_[g];
  }

  bool same_table(const FiniteGroup& o) const { return order_ == o.order_ && mul_ == o.mul_; }

  // Full axiom check; throws std::invalid_argument with a witness on failure.
  void check_axioms() const {
    for (int g = 0; g < order_; ++g) {
      if (mul(kIdentity, g) != g || mul(g, kIdentity) != g)
        throw std::invalid_argument("element 0 is not an identity (witness " + std::to_string(g) + ")");
    }
    for (int g = 0; g < order_; ++g) {
      if (mul(g, inv(g)) != kIdentity || mul(inv(g), g) != kIdentity)
        throw std::invalid_argument("no two-sided inverse for element " + std::to_string(g));
    }
    for (int g = 0; g < order_; ++g)
      for (int h = 0; h < order_; ++h)
        for (int k = 0; k < order_; ++k)
          if (mul(mul(g, h), k) != mul(g, mul(h, k)))
            throw std::invalid_argument("associativity fails at (" + std::to_string(g) + "," +
                                        std::to_string(h) + "," + std::to_string(k) + ")");
  }

  static FiniteGroup cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group order must be >= 1");
    FiniteGroup g;
    g.order_ = n;
    g.name_ = "Z" + std::to_string(n);
    g.mul_.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) g.mul_[static_cast<size_t>(a) * n + b] = (a + b) % n;
    g.fill_inverses();
    return g;
  }

  // Elements enumerated in lexicographic order of their image vectors, so the
  // identity permutation is element 0.
  static FiniteGroup symmetric(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("symmetric group supported for 1 <= n <= 6");
    std::vector<Permutation> perms;
    Permutation p = Permutation::identity(n);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.img.begin(), p.img.end()));
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < perms.size(); ++i) index[perms[i].img] = static_cast<int>(i);
    FiniteGroup g;
    g.order_ = static_cast<int>(perms.size());
    g.name_ = "S" + std::to_string(n);
    g.mul_.resize(static_cast<size_t>(g.order_) * g.order_);
    for (int a = 0; a < g.order_; ++a)
      for (int b = 0; b < g.order_; ++b)
        g.mul_[static_cast<size_t>(a) * g.order_ + b] = index.at((perms[a] * perms[b]).img);
    g.perms_ = std::move(perms);
    g.fill_inverses();
    return g;
  }

  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b) {
    FiniteGroup g;
    g.order_ = a.order_ * b.order_;
    g.name_ = a.name_ + "x" + b.name_;
    g.mul_.resize(static_cast<size_t>(g.order_) * g.order_);
    auto id = [&](int i, int j) { return i * b.order_ + j; };
    for (int i1 = 0; i1 < a.order_; ++i1)
      for (int j1 = 0; j1 < b.order_; ++j1)
        for (int i2 = 0; i2 < a.order_; ++i2)
          for (int j2 = 0; j2 < b.order_; ++j2)
            g.mul_[static_cast<size_t>(id(i1, j1)) * g.order_ + id(i2, j2)] =
                id(a.mul(i1, i2), b.mul(j1, j2));
    g.fill_inverses();
    return g;
  }

  // Text format: '#' comments, then "order <n>", then n rows of n entries.
  // Element 0 must be the identity; the full axiom check runs on load.
  static FiniteGroup from_table(std::istream& in, const std::string& name = "table") {
    auto next_tokens = [&in]() {
      std::string line;
      while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) return toks;
      }
      return std::vector<std::string>{};
    };
    auto head = next_tokens();
    if (head.size() != 2 || head[0] != "order")
      throw std::invalid_argument("group table: expected 'order <n>' header");
    int n = std::stoi(head[1]);
    if (n < 1 || n > 5000) throw std::invalid_argument("group table: unreasonable order");
    FiniteGroup g;
    g.order_ = n;
    g.name_ = name;
    g.mul_.clear();
    g.mul_.reserve(static_cast<size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
      auto row = next_tokens();
      if (static_cast<int>(row.size()) != n)
        throw std::invalid_argument("group table: row " + std::to_string(r) + " needs " +
                                    std::to_string(n) + " entries");
      for (const auto& tok : row) {
        int v = std::stoi(tok);
        if (v < 0 || v >= n) throw std::invalid_argument("group table: entry out of range");
        g.mul_.push_back(v);
      }
    }
    g.fill_inverses_checked();
    g.check_axioms();
    return g;
  }

  static FiniteGroup from_table_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open group table file: " + path);
    return from_table(f, path);
  }

 private:
  void fill_inverses() {
    inv_.assign(order_, -1);
    for (int g = 0; g < order_; ++g)
      for (int h = 0; h < order_; ++h)
        if (mul(g, h) == kIdentity) {
          inv_[g] = h;
          break;
        }
  }

  void fill_inverses_checked() {
    fill_inverses();
    for (int g = 0; g < order_; ++g)
      if (inv_[g] < 0) throw std::invalid_argument("group table: element " + std::to_string(g) + " has no inverse");
  }

  int order_ = 1;
  std::vector<int> mul_{0};
  std::vector<int> inv_{0};
  std::string name_ = "Z1";
  std::vector<Permutation> perms_;
};

// Elements commuting with every entry of the tuple.
inline std::vector<int> centralizer(const FiniteGroup& g, const std::vector<int>& tuple) {
  std::vector<int> out;
  for (int h = 0; h < g.order(); ++h) {
    bool ok = true;
    for (int x : tuple)
      if (g.mul(h, x) != g.mul(x, h)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(h);
  }
  return out;
}

// Number of orbits of a set of equal-length tuples under simultaneous
// conjugation. The set must be closed under the action; a tuple conjugating
// outside the set is reported as an error.
inline int conjugacy_quotient(const FiniteGroup& g, const std::vector<std::vector<int>>& tuples) {
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < tuples.size(); ++i) index.emplace(tuples[i], static_cast<int>(i));
  std::vector<char> seen(tuples.size(), 0);
  int orbits = 0;
  for (size_t i = 0; i < tuples.size(); ++i) {
    if (seen[i]) continue;
    ++orbits;
    std::vector<int> stack{static_cast<int>(i)};
    seen[i] = 1;
    while (!stack.empty()) {
      std::vector<int> cur = tuples[static_cast<size_t>(stack.back())];
      stack.pop_back();
      for (int h = 0; h < g.order(); ++h) {
        std::vector<int> img(cur.size());
        for (size_t k = 0; k < cur.size(); ++k) img[k] = g.conj(h, cur[k]);
        auto it = index.find(img);
        if (it == index.end())
          throw std::invalid_argument("conjugacy_quotient: tuple set not closed under conjugation");
        if (!seen[it->second]) {
          seen[it->second] = 1;
          stack.push_back(it->second);
        }
      }
    }
  }
  return orbits;
}

}  // namespace dwtv
