#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mackey {

using Int = mpz_class;
using Rat = mpq_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

inline Rat make_rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Int& z) { return z.get_str(); }

inline std::string to_string(const Rat& q) {
  if (is_integral(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat parse_rat(const std::string& text) {
  Rat q;
  if (q.set_str(text, 10) != 0) throw Error("malformed rational: " + text);
  q.canonicalize();
  return q;
}

inline long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_ll(a, b) * b;
}

inline long long mod_pos(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

/// Euler's totient by trial division.
inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

inline std::vector<long> prime_factors(Int n) {
  std::vector<long> out;
  if (n < 0) n = -n;
  for (long p = 2; n > 1; ++p) {
    if (Int(p) * p > n) {
      out.push_back(n.get_si());
      break;
    }
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  return out;
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline long long pow_mod(long long base, long long exp, long long m) {
  long long result = 1 % m;
  base = mod_pos(base, m);
  while (exp > 0) {
    if (exp & 1) result = static_cast<long long>((__int128)result * base % m);
    base = static_cast<long long>((__int128)base * base % m);
    exp >>= 1;
  }
  return result;
}

inline long long inv_mod(long long a, long long m) {
  long long g = m, x = 0, x1 = 1, a1 = mod_pos(a, m);
  while (a1 != 0) {
    long long q = g / a1;
    long long t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw Error("inv_mod: not invertible");
  return mod_pos(x, m);
}

}  // namespace mackey
