#pragma once

#include "mackey/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

namespace mackey {

inline constexpr int kDefaultMaxOrder = 48;

/// Finite group stored as an explicit multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// Takes ownership of a table (row-major, mult[a * order + b] = a*b) and checks the group axioms.
  FiniteGroup(std::string label, int order, std::vector<int> mult) : label_(std::move(label)), order_(order), mult_(std::move(mult)) {
    if (order_ < 1) throw Error("FiniteGroup: order must be positive");
    if (mult_.size() != static_cast<std::size_t>(order_) * order_) throw Error("FiniteGroup: table has wrong size");
    for (int x : mult_)
      if (x < 0 || x >= order_) throw Error("FiniteGroup: table entry out of range");
    for (int a = 0; a < order_; ++a)
      if (mul(0, a) != a || mul(a, 0) != a) throw Error("FiniteGroup: element 0 is not the identity");
    inv_.assign(order_, -1);
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        if (mul(a, b) == 0) inv_[a] = b;
    for (int a = 0; a < order_; ++a)
      if (inv_[a] < 0 || mul(inv_[a], a) != 0) throw Error("FiniteGroup: element without two-sided inverse");
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        for (int c = 0; c < order_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw Error("FiniteGroup: table is not associative");
  }

  const std::string& label() const { return label_; }
  int order() const { return order_; }
  int identity() const { return 0; }
  int mul(int a, int b) const { return mult_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inv_[a]; }
  const std::vector<int>& table() const { return mult_; }

  /// g x g^{-1}
  int conjugate(int g, int x) const { return mul(mul(g, x), inv(g)); }

  int power(int g, long long k) const {
    if (k < 0) {
      g = inv(g);
      k = -k;
    }
    int r = 0;
    for (long long i = 0; i < k; ++i) r = mul(r, g);
    return r;
  }

  int element_order(int g) const {
    int k = 1;
    for (int x = g; x != 0; x = mul(x, g)) ++k;
    return k;
  }

  int exponent() const {
    long long e = 1;
    for (int g = 0; g < order_; ++g) e = lcm_ll(e, element_order(g));
    return static_cast<int>(e);
  }

  bool is_abelian() const {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

 private:
  std::string label_;
  int order_ = 0;
  std::vector<int> mult_;
  std::vector<int> inv_;
};

/// Permutation of {0..n-1} as an image vector.
using Permutation = std::vector<int>;

/// Closure of permutation generators; (a*b)(x) = a(b(x)). Elements appear in breadth-first order from the identity.
inline FiniteGroup group_from_permutations(std::string label, const std::vector<Permutation>& gens, int max_order = kDefaultMaxOrder) {
  std::size_t degree = 0;
  for (const auto& g : gens) degree = std::max(degree, g.size());
  auto normalize = [&](Permutation p) {
    for (std::size_t i = p.size(); i < degree; ++i) p.push_back(static_cast<int>(i));
    std::vector<bool> seen(degree, false);
    for (int x : p) {
      if (x < 0 || static_cast<std::size_t>(x) >= degree || seen[x]) throw Error("malformed permutation");
      seen[x] = true;
    }
    return p;
  };
  std::vector<Permutation> generators;
  for (const auto& g : gens) generators.push_back(normalize(g));
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Permutation> elems{id};
  std::map<Permutation, int> index{{id, 0}};
  auto compose = [&](const Permutation& a, const Permutation& b) {
    Permutation c(degree);
    for (std::size_t x = 0; x < degree; ++x) c[x] = a[b[x]];
    return c;
  };
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const auto& g : generators) {
      Permutation p = compose(elems[head], g);
      if (index.count(p)) continue;
      if (static_cast<int>(elems.size()) >= max_order)
        throw Error("group closure exceeds the size limit of " + std::to_string(max_order));
      index.emplace(p, static_cast<int>(elems.size()));
      elems.push_back(std::move(p));
    }
  const int n = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = index.at(compose(elems[a], elems[b]));
  return FiniteGroup(std::move(label), n, std::move(table));
}

inline FiniteGroup cyclic_group(int n) {
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  return FiniteGroup("C" + std::to_string(n), n, std::move(t));
}

/// Dihedral group of order 2n; element r^a s^b has index a + n b.
inline FiniteGroup dihedral_group(int n) {
  const int order = 2 * n;
  std::vector<int> t(static_cast<std::size_t>(order) * order);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y) {
      int a = x % n, b = x / n, c = y % n, d = y / n;
      int rot = static_cast<int>(mod_pos(a + (b ? -c : c), n));
      t[static_cast<std::size_t>(x) * order + y] = rot + n * ((b + d) % 2);
    }
  return FiniteGroup("D" + std::to_string(n), order, std::move(t));
}

/// Quaternion group; element index 2u + s encodes (-1)^s times the unit u in (1, i, j, k).
inline FiniteGroup quaternion_group() {
  // unit product u*v = sign * unit
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<int> t(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int u = x / 2, v = y / 2;
      int s = (x % 2 + y % 2 + sign[u][v]) % 2;
      t[x * 8 + y] = 2 * unit[u][v] + s;
    }
  return FiniteGroup("Q8", 8, std::move(t));
}

/// Parses cycle notation over 1-indexed points, e.g. "(1 2)(3 4)".
inline Permutation parse_cycles(const std::string& text) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  int degree = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw Error("malformed permutation: expected '(' in \"" + text + "\"");
    ++i;
    std::vector<int> cycle;
    for (;;) {
      skip();
      if (i >= text.size()) throw Error("malformed permutation: unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw Error("malformed permutation: bad character");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
      if (v < 1) throw Error("malformed permutation: points are 1-indexed");
      cycle.push_back(v - 1);
      degree = std::max(degree, v);
    }
    cycles.push_back(std::move(cycle));
    skip();
  }
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::vector<bool> moved(degree, false);
  for (const auto& c : cycles)
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (moved[c[k]]) throw Error("malformed permutation: point repeated");
      moved[c[k]] = true;
      p[c[k]] = c[(k + 1) % c.size()];
    }
  return p;
}

/// Builds a group from a catalog token (C_n, D_n, S_n with n <= 4, Q8, A4) or "perm: g1; g2; ...".
inline FiniteGroup build_group(const std::string& spec, int max_order = kDefaultMaxOrder) {
  std::string s = spec;
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  if (s.rfind("perm:", 0) == 0) {
    std::vector<Permutation> gens;
    std::stringstream ss(s.substr(5));
    std::string item;
    while (std::getline(ss, item, ';')) {
      if (item.find_first_not_of(" \t") == std::string::npos) continue;
      gens.push_back(parse_cycles(item));
    }
    return group_from_permutations(s, gens, max_order);
  }
  auto number = [&](std::size_t from) -> int {
    if (from >= s.size()) throw Error("unknown group: " + spec);
    for (std::size_t k = from; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw Error("unknown group: " + spec);
    return std::stoi(s.substr(from));
  };
  auto guard = [&](FiniteGroup g) {
    if (g.order() > max_order) throw Error("group " + spec + " exceeds the size limit of " + std::to_string(max_order));
    return g;
  };
  if (s == "Q8") return guard(quaternion_group());
  if (s == "A4") {
    auto g = group_from_permutations("A4", {parse_cycles("(1 2 3)"), parse_cycles("(1 2)(3 4)")}, max_order);
    return g;
  }
  if (!s.empty() && s[0] == 'C') {
    int n = number(1);
    if (n < 1) throw Error("unknown group: " + spec);
    if (n > max_order) throw Error("group " + spec + " exceeds the size limit of " + std::to_string(max_order));
    return cyclic_group(n);
  }
  if (!s.empty() && s[0] == 'D') {
    int n = number(1);
    if (n < 1) throw Error("unknown group: " + spec);
    if (2 * n > max_order) throw Error("group " + spec + " exceeds the size limit of " + std::to_string(max_order));
    return dihedral_group(n);
  }
  if (!s.empty() && s[0] == 'S') {
    int n = number(1);
    if (n < 1 || n > 4) throw Error("unknown group: " + spec + " (S_n is cataloged for n <= 4)");
    if (n == 1) return FiniteGroup("S1", 1, {0});
    std::string cycle = "(";
    for (int k = 1; k <= n; ++k) cycle += std::to_string(k) + (k < n ? " " : ")");
    auto g = group_from_permutations("S" + std::to_string(n), {parse_cycles("(1 2)"), parse_cycles(cycle)}, max_order);
    return g;
  }
  throw Error("unknown group: " + spec);
}

}  // namespace mackey
