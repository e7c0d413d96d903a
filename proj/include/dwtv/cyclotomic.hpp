#pragma once

// Exact cyclotomic numbers: elements of Q(zeta_m) held as rational coefficient
// vectors over the group algebra Q[Z_m] (so zeta^m wraps to 1 for free), with
// lazy canonical reduction modulo the m-th cyclotomic polynomial.
//
// Canonical form after reduce(): coefficients vanish from degree phi(m) up.
// Equality, rationality tests and printing all go through canonical forms.
// Mixed orders embed into the lcm; the lcm is capped (default 10000,
// overridable via the DWTV_ROOT_ORDER_CAP environment variable).

#include "dwtv/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

namespace dwtv {

inline long long cyc_default_order_cap() {
  if (const char* env = std::getenv("DWTV_ROOT_ORDER_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 10000;
}

// Mutable global cap so embedding code and the CLI agree on one knob.
inline long long& cyc_order_cap() {
  static long long cap = cyc_default_order_cap();
  return cap;
}

namespace detail {

// Monic integer coefficients of Phi_m, ascending degree. Computed by dividing
// x^m - 1 by all lower-order cyclotomic polynomials; memoized.
inline const std::vector<BigInt>& cyclotomic_poly(long long m) {
  static std::map<long long, std::vector<BigInt>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);

  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  // Exact division of integer polynomials, divisor monic.
  auto divide = [](std::vector<BigInt> num, const std::vector<BigInt>& den) {
    std::vector<BigInt> q(num.size() - den.size() + 1, BigInt(0));
    for (size_t i = num.size(); i-- > 0;) {
      if (i + 1 < den.size()) break;
      BigInt c = num[i];
      if (c == 0) continue;
      size_t shift = i + 1 - den.size();
      q[shift] = c;
      for (size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
    }
    return q;
  };

  // Iterative worklist to avoid deep recursion under the lock.
  std::vector<long long> work{m};
  while (!work.empty()) {
    long long k = work.back();
    if (cache.count(k)) {
      work.pop_back();
      continue;
    }
    bool ready = true;
    for (long long d = 1; d * d <= k; ++d) {
      if (k % d) continue;
      for (long long dd : {d, k / d}) {
        if (dd < k && !cache.count(dd)) {
          work.push_back(dd);
          ready = false;
        }
      }
    }
    if (!ready) continue;
    work.pop_back();
    std::vector<BigInt> poly(static_cast<size_t>(k) + 1, BigInt(0));
    poly[0] = -1;
    poly[static_cast<size_t>(k)] = 1;  // x^k - 1
    for (long long d = 1; d < k; ++d) {
      if (k % d == 0) poly = divide(std::move(poly), cache.at(d));
    }
    cache.emplace(k, std::move(poly));
  }
  return cache.at(m);
}

inline long long euler_phi(long long m) {
  return static_cast<long long>(cyclotomic_poly(m).size()) - 1;
}

}  // namespace detail

class CycNumber {
 public:
  CycNumber() : order_(1), coeff_(1, Rational(0)), reduced_(true) {}

  explicit CycNumber(const Rational& r) : order_(1), coeff_(1, r), reduced_(true) {}
  explicit CycNumber(long long n) : CycNumber(Rational(n)) {}

  // zeta_m ^ e
  static CycNumber root(long long m, long long e) {
    check_order(m);
    CycNumber z;
    z.order_ = m;
    z.coeff_.assign(static_cast<size_t>(m), Rational(0));
    long long r = ((e % m) + m) % m;
    z.coeff_[static_cast<size_t>(r)] = 1;
    z.reduced_ = false;
    return z;
  }

  static CycNumber from_coeffs(long long m, std::vector<Rational> c) {
    check_order(m);
    c.resize(static_cast<size_t>(m), Rational(0));
    CycNumber z;
    z.order_ = m;
    z.coeff_ = std::move(c);
    z.reduced_ = false;
    return z;
  }

  long long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeff_; }

  static long long merge_order(long long a, long long b) {
    long long g = std::gcd(a, b);
    long long l = a / g;
    if (l > cyc_order_cap() / b) throw std::overflow_error("cyclotomic order above cap");
    l *= b;
    return l;
  }

  CycNumber embedded(long long target) const {
    if (target == order_) return *this;
    if (target % order_ != 0) throw std::invalid_argument("embed: target order not a multiple");
    check_order(target);
    CycNumber z;
    z.order_ = target;
    z.coeff_.assign(static_cast<size_t>(target), Rational(0));
    long long k = target / order_;
    for (long long j = 0; j < order_; ++j) z.coeff_[static_cast<size_t>(j * k)] = coeff_[static_cast<size_t>(j)];
    z.reduced_ = false;
    return z;
  }

  friend CycNumber operator+(const CycNumber& a, const CycNumber& b) {
    long long m = merge_order(a.order_, b.order_);
    CycNumber x = a.embedded(m), y = b.embedded(m);
    for (size_t j = 0; j < x.coeff_.size(); ++j) x.coeff_[j] += y.coeff_[j];
    x.reduced_ = false;
    return x;
  }

  friend CycNumber operator-(const CycNumber& a, const CycNumber& b) { return a + (-b); }

  CycNumber operator-() const {
    CycNumber z = *this;
    for (auto& c : z.coeff_) c = -c;
    return z;
  }

  friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
    long long m = merge_order(a.order_, b.order_);
    CycNumber x = a.embedded(m), y = b.embedded(m);
    std::vector<Rational> out(static_cast<size_t>(m), Rational(0));
    for (long long i = 0; i < m; ++i) {
      if (x.coeff_[static_cast<size_t>(i)] == 0) continue;
      for (long long j = 0; j < m; ++j) {
        if (y.coeff_[static_cast<size_t>(j)] == 0) continue;
        out[static_cast<size_t>((i + j) % m)] += x.coeff_[static_cast<size_t>(i)] * y.coeff_[static_cast<size_t>(j)];
      }
    }
    CycNumber z;
    z.order_ = m;
    z.coeff_ = std::move(out);
    z.reduced_ = false;
    return z;
  }

  friend CycNumber operator*(const Rational& s, const CycNumber& a) {
    CycNumber z = a;
    for (auto& c : z.coeff_) c *= s;
    return z;
  }
  friend CycNumber operator*(const CycNumber& a, const Rational& s) { return s * a; }

  CycNumber& operator+=(const CycNumber& o) { return *this = *this + o; }
  CycNumber& operator-=(const CycNumber& o) { return *this = *this - o; }
  CycNumber& operator*=(const CycNumber& o) { return *this = *this * o; }

  CycNumber pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNumber acc(Rational(1)), b = *this;
    unsigned long long n = static_cast<unsigned long long>(e);
    while (n) {
      if (n & 1) acc = (acc * b).reduced();
      b = (b * b).reduced();
      n >>= 1;
    }
    return acc;
  }

  // Canonical form: degree below phi(order).
  CycNumber reduced() const {
    if (reduced_) return *this;
    const auto& phi = detail::cyclotomic_poly(order_);
    size_t deg = phi.size() - 1;
    CycNumber z = *this;
    for (size_t i = z.coeff_.size(); i-- > 0;) {
      if (i < deg) break;
      if (z.coeff_[i] == 0) continue;
      Rational c = z.coeff_[i];
      size_t shift = i - deg;
      for (size_t j = 0; j + 1 <= deg; ++j) z.coeff_[shift + j] -= c * Rational(phi[j]);
      z.coeff_[i] = 0;
    }
    z.reduced_ = true;
    return z;
  }

  bool is_zero() const {
    CycNumber r = reduced();
    return std::all_of(r.coeff_.begin(), r.coeff_.end(), [](const Rational& c) { return c == 0; });
  }

  friend bool operator==(const CycNumber& a, const CycNumber& b) {
    long long m = merge_order(a.order_, b.order_);
    CycNumber x = a.embedded(m).reduced(), y = b.embedded(m).reduced();
    return x.coeff_ == y.coeff_;
  }
  friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

  std::optional<Rational> as_rational() const {
    CycNumber r = reduced();
    for (size_t j = 1; j < r.coeff_.size(); ++j)
      if (r.coeff_[j] != 0) return std::nullopt;
    return r.coeff_[0];
  }

  // Multiplicative inverse via the extended Euclidean algorithm in Q[x]
  // modulo Phi_order. Throws on zero.
  CycNumber inverse() const {
    CycNumber a = reduced();
    if (a.is_zero()) throw std::domain_error("cyclotomic inverse of zero");
    using Poly = std::vector<Rational>;
    auto trim = [](Poly& p) {
      while (!p.empty() && p.back() == 0) p.pop_back();
    };
    const auto& phi_int = detail::cyclotomic_poly(order_);
    Poly r0(phi_int.size());
    for (size_t i = 0; i < phi_int.size(); ++i) r0[i] = Rational(phi_int[i]);
    Poly r1(a.coeff_.begin(), a.coeff_.end());
    trim(r1);
    auto divmod = [&trim](Poly num, const Poly& den) {
      Poly q;
      if (num.size() >= den.size()) q.assign(num.size() - den.size() + 1, Rational(0));
      trim(num);
      while (num.size() >= den.size() && !num.empty()) {
        Rational c = num.back() / den.back();
        size_t shift = num.size() - den.size();
        q[shift] += c;
        for (size_t j = 0; j < den.size(); ++j) num[shift + j] -= c * den[j];
        trim(num);
      }
      return std::pair<Poly, Poly>(std::move(q), std::move(num));
    };
    // Track t with r_i = s_i * Phi + t_i * a.
    Poly t0, t1{Rational(1)};
    while (!r1.empty()) {
      auto [q, rem] = divmod(r0, r1);
      // t_next = t0 - q * t1
      Poly qt(q.size() + t1.size(), Rational(0));
      for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        for (size_t j = 0; j < t1.size(); ++j) qt[i + j] += q[i] * t1[j];
      }
      Poly tn(std::max(t0.size(), qt.size()), Rational(0));
      for (size_t i = 0; i < t0.size(); ++i) tn[i] += t0[i];
      for (size_t i = 0; i < qt.size(); ++i) tn[i] -= qt[i];
      trim(tn);
      t0 = std::move(t1);
      t1 = std::move(tn);
      r0 = std::move(r1);
      r1 = std::move(rem);
    }
    // r0 is the gcd; Phi_m is squarefree and a != 0 so r0 is a nonzero constant.
    if (r0.size() != 1 || r0[0] == 0) throw std::logic_error("cyclotomic inverse: unexpected gcd");
    Rational c = r0[0];
    std::vector<Rational> inv(static_cast<size_t>(order_), Rational(0));
    for (size_t i = 0; i < t0.size() && i < inv.size(); ++i) inv[i] = t0[i] / c;
    CycNumber z;
    z.order_ = order_;
    z.coeff_ = std::move(inv);
    z.reduced_ = false;
    z = z.reduced();
    return z;
  }

  friend CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inverse(); }

  std::complex<double> to_complex() const {
    std::complex<double> acc(0.0, 0.0);
    for (long long j = 0; j < order_; ++j) {
      const Rational& c = coeff_[static_cast<size_t>(j)];
      if (c == 0) continue;
      double ang = 2.0 * 3.14159265358979323846 * static_cast<double>(j) / static_cast<double>(order_);
      acc += rat_to_double(c) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc;
  }

  // Canonical text: pure rationals as "num/den"; otherwise
  // "(num/den) * [c_0,...,c_{phi-1}] zeta:m" with integer content pulled out
  // and sign fixed so the first nonzero integer coefficient is positive.
  std::string to_string() const {
    CycNumber r = reduced();
    if (auto q = r.as_rational()) return rat_to_string(*q);
    size_t deg = static_cast<size_t>(detail::euler_phi(order_));
    BigInt den_lcm(1);
    for (size_t j = 0; j < deg; ++j) den_lcm = boost::multiprecision::lcm(den_lcm, rat_den(r.coeff_[j]));
    BigInt num_gcd(0);
    std::vector<BigInt> ints(deg);
    for (size_t j = 0; j < deg; ++j) {
      ints[j] = rat_num(r.coeff_[j]) * (den_lcm / rat_den(r.coeff_[j]));
      num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(ints[j]));
    }
    Rational content(num_gcd, den_lcm);
    for (size_t j = 0; j < deg; ++j) {
      if (ints[j] == 0) continue;
      if (ints[j] < 0) content = -content;
      break;
    }
    std::ostringstream os;
    os << "(" << rat_to_string(content) << ") * [";
    for (size_t j = 0; j < deg; ++j) {
      BigInt cj = ints[j] / num_gcd;
      if (content < 0) cj = -cj;
      os << (j ? "," : "") << cj.str();
    }
    os << "] zeta:" << order_;
    return os.str();
  }

 private:
  static void check_order(long long m) {
    if (m < 1) throw std::invalid_argument("cyclotomic order must be positive");
    if (m > cyc_order_cap()) throw std::overflow_error("cyclotomic order above cap");
  }

  long long order_;
  std::vector<Rational> coeff_;
  bool reduced_;
};

}  // namespace dwtv
