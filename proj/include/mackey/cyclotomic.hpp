#pragma once

#include "mackey/matrix.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace mackey {

/// Integer polynomial, coefficients from the constant term up.
using IntPoly = std::vector<Int>;

namespace detail {

inline IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
  // den is monic
  if (num.size() < den.size()) return {};
  IntPoly q(num.size() - den.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = num[k + den.size() - 1];
    if (q[k] == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= q[k] * den[j];
  }
  for (const auto& r : num)
    if (r != 0) throw Error("cyclotomic polynomial division left a remainder");
  return q;
}

}  // namespace detail

/// The n-th cyclotomic polynomial, by dividing x^n - 1 by Phi_d for the proper divisors d of n.
inline const IntPoly& cyclotomic_polynomial(int n) {
  static std::mutex mutex;
  static std::map<int, IntPoly> cache;
  if (n < 1) throw Error("cyclotomic_polynomial: conductor must be positive");
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  IntPoly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = detail::poly_divide_exact(p, cyclotomic_polynomial(d));
  std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(p)).first->second;
}

/// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^{phi(n)-1}.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(int conductor) : n_(conductor), coords_(euler_phi(conductor)) {
    if (conductor < 1) throw Error("Cyclotomic: conductor must be positive");
  }
  Cyclotomic(int conductor, std::vector<Rat> coords) : n_(conductor), coords_(std::move(coords)) {
    if (coords_.size() != static_cast<std::size_t>(euler_phi(n_))) throw Error("Cyclotomic: wrong coordinate count");
  }

  static Cyclotomic rational(int conductor, const Rat& q) {
    Cyclotomic x(conductor);
    x.coords_[0] = q;
    return x;
  }

  /// zeta_n^k for any integer k.
  static Cyclotomic root_power(int conductor, long long k) {
    std::vector<Rat> poly(conductor);
    poly[mod_pos(k, conductor)] = 1;
    return reduce(conductor, std::move(poly));
  }

  /// Reduces an arbitrary polynomial in zeta_n modulo Phi_n.
  static Cyclotomic reduce(int conductor, std::vector<Rat> poly) {
    const IntPoly& phi = cyclotomic_polynomial(conductor);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t k = poly.size(); k-- > deg;) {
      if (poly[k] == 0) continue;
      Rat lead = poly[k];
      for (std::size_t j = 0; j <= deg; ++j) poly[k - deg + j] -= lead * phi[j];
    }
    poly.resize(deg);
    return Cyclotomic(conductor, std::move(poly));
  }

  int conductor() const { return n_; }
  std::size_t degree() const { return coords_.size(); }
  const std::vector<Rat>& coords() const { return coords_; }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
      if (coords_[i] != 0) return false;
    return true;
  }
  const Rat& rational_part() const { return coords_[0]; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.n_ == b.n_ && a.coords_ == b.coords_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    check(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    check(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Cyclotomic& operator*=(const Rat& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rat& s) { return a *= s; }
  friend Cyclotomic operator-(Cyclotomic a) { return a *= Rat(-1); }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    a.check(b);
    std::vector<Rat> poly(a.coords_.size() + b.coords_.size());
    for (std::size_t i = 0; i < a.coords_.size(); ++i) {
      if (a.coords_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coords_.size(); ++j)
        if (b.coords_[j] != 0) poly[i + j] += a.coords_[i] * b.coords_[j];
    }
    return reduce(a.n_, std::move(poly));
  }

  /// Matrix of multiplication by this element in the power basis.
  RatMatrix multiplication_matrix() const {
    const std::size_t d = degree();
    RatMatrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      auto col = *this * root_power(n_, static_cast<long long>(j));
      for (std::size_t i = 0; i < d; ++i) m(i, j) = col.coords_[i];
    }
    return m;
  }

  Cyclotomic inverse() const {
    if (is_zero()) throw Error("Cyclotomic: inversion of zero");
    RatMatrix e(degree(), 1);
    e(0, 0) = 1;
    auto x = solve(multiplication_matrix(), e);
    if (!x) throw Error("Cyclotomic: inversion failed");
    return Cyclotomic(n_, x->col(0));
  }

  /// The automorphism zeta_n -> zeta_n^k, defined for gcd(k, n) = 1.
  Cyclotomic galois(long long k) const {
    if (gcd_ll(k, n_) != 1) throw Error("Cyclotomic::galois: exponent not a unit mod conductor");
    std::vector<Rat> poly(n_);
    for (std::size_t i = 0; i < coords_.size(); ++i)
      poly[mod_pos(static_cast<long long>(i) * k, n_)] += coords_[i];
    return reduce(n_, std::move(poly));
  }

  Cyclotomic conj() const { return galois(n_ - 1); }

  /// Same element viewed in Q(zeta_m), for m a multiple of the conductor.
  Cyclotomic embed(int m) const {
    if (m % n_ != 0) throw Error("Cyclotomic::embed: target conductor must be a multiple");
    const int step = m / n_;
    std::vector<Rat> poly(m);
    for (std::size_t i = 0; i < coords_.size(); ++i) poly[i * step] += coords_[i];
    return reduce(m, std::move(poly));
  }

  Cyclotomic pow(unsigned k) const {
    Cyclotomic result = rational(n_, 1), base = *this;
    while (k > 0) {
      if (k & 1) result = result * base;
      base = base * base;
      k >>= 1;
    }
    return result;
  }

  /// Renders as a polynomial in z = zeta_n, e.g. "-1-z".
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      const Rat& c = coords_[i];
      if (c == 0) continue;
      const bool neg = c < 0;
      const Rat mag = neg ? Rat(-c) : c;
      if (neg) os << "-";
      else if (!first) os << "+";
      if (i == 0) os << to_string(mag);
      else {
        if (mag != 1) os << to_string(mag) << "*";
        os << "z";
        if (i > 1) os << "^" << i;
      }
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.str() << " (n=" << x.n_ << ")"; }

 private:
  void check(const Cyclotomic& o) const {
    if (o.n_ != n_) throw Error("Cyclotomic: conductor mismatch");
  }

  int n_;
  std::vector<Rat> coords_;
};

}  // namespace mackey
