#pragma once

#include "mackey/matrix.hpp"

#include <map>

namespace mackey {

/// U * A * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...
struct SmithForm {
  IntMatrix left;          // U
  IntMatrix left_inverse;  // U^{-1}
  IntMatrix diagonal;      // D
  IntMatrix right;         // V
  std::vector<Int> divisors;  // nonzero diagonal entries, positive, in order
};

namespace detail {

struct SmithWorker {
  IntMatrix a, u, uinv, v;
  bool track_left, track_right;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    if (track_left) {
      for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
      for (std::size_t r = 0; r < uinv.rows(); ++r) std::swap(uinv(r, i), uinv(r, j));
    }
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    if (track_right)
      for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
  }
  // row_i -= q * row_t
  void sub_row(std::size_t i, std::size_t t, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(t, c) != 0) a(i, c) -= q * a(t, c);
    if (track_left) {
      for (std::size_t c = 0; c < u.cols(); ++c)
        if (u(t, c) != 0) u(i, c) -= q * u(t, c);
      for (std::size_t r = 0; r < uinv.rows(); ++r)
        if (uinv(r, i) != 0) uinv(r, t) += q * uinv(r, i);
    }
  }
  // col_j -= q * col_t
  void sub_col(std::size_t j, std::size_t t, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (a(r, t) != 0) a(r, j) -= q * a(r, t);
    if (track_right)
      for (std::size_t r = 0; r < v.rows(); ++r)
        if (v(r, t) != 0) v(r, j) -= q * v(r, t);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    if (track_left) {
      for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
      for (std::size_t r = 0; r < uinv.rows(); ++r) uinv(r, i) = -uinv(r, i);
    }
  }
};

inline Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& input, bool track_left = true, bool track_right = true) {
  detail::SmithWorker w{input,
                        track_left ? IntMatrix::identity(input.rows()) : IntMatrix(),
                        track_left ? IntMatrix::identity(input.rows()) : IntMatrix(),
                        track_right ? IntMatrix::identity(input.cols()) : IntMatrix(),
                        track_left, track_right};
  auto& a = w.a;
  const std::size_t rows = a.rows(), cols = a.cols();
  SmithForm out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a(i, j) != 0 && (pi == rows || abs(a(i, j)) < abs(a(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        w.sub_row(i, t, detail::tdiv(a(i, t), a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        w.sub_col(j, t, detail::tdiv(a(t, j), a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < abs(a(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < abs(a(bi, bj))) {
            bi = t;
            bj = j;
          }
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        continue;
      }
      // divisibility chain: fold in a row whose entries the pivot does not divide
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      w.sub_row(t, bad, Int(-1));
    }
    if (a(t, t) < 0) w.negate_row(t);
    out.divisors.push_back(a(t, t));
  }
  out.diagonal = std::move(w.a);
  out.left = std::move(w.u);
  out.left_inverse = std::move(w.uinv);
  out.right = std::move(w.v);
  return out;
}

/// Columns forming a basis of the lattice spanned by the columns of gens.
inline IntMatrix lattice_basis(const IntMatrix& gens) {
  const std::size_t n = gens.rows();
  std::map<std::size_t, std::vector<Int>> basis;  // leading row -> vector
  std::vector<Int> v(n);
  for (std::size_t c = 0; c < gens.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) v[i] = gens(i, c);
    for (;;) {
      std::size_t lead = 0;
      while (lead < n && v[lead] == 0) ++lead;
      if (lead == n) break;
      auto it = basis.find(lead);
      if (it == basis.end()) {
        if (v[lead] < 0)
          for (auto& x : v) x = -x;
        basis.emplace(lead, v);
        break;
      }
      auto& b = it->second;
      if (v[lead] % b[lead] == 0) {
        Int q = v[lead] / b[lead];
        for (std::size_t i = lead; i < n; ++i) v[i] -= q * b[i];
        continue;
      }
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[lead].get_mpz_t(), v[lead].get_mpz_t());
      Int bp = b[lead] / g, vp = v[lead] / g;
      for (std::size_t i = lead; i < n; ++i) {
        Int nb = s * b[i] + t * v[i];
        Int nv = vp * b[i] - bp * v[i];
        b[i] = nb;
        v[i] = nv;
      }
      if (b[lead] < 0)
        for (auto& x : b) x = -x;
    }
  }
  IntMatrix out(n, basis.size());
  std::size_t j = 0;
  for (const auto& [lead, b] : basis) {
    for (std::size_t i = 0; i < n; ++i) out(i, j) = b[i];
    ++j;
  }
  return out;
}

/// Finitely generated abelian group Z^ambient / relations, as Z^free_rank (+) (+)_i Z/torsion_i.
struct AbelianPresentation {
  std::size_t ambient = 0;
  std::size_t free_rank = 0;
  std::vector<Int> torsion;       // elementary divisors > 1, d_1 | d_2 | ...
  IntMatrix projection;           // (free_rank + torsion) x ambient; free rows first
  IntMatrix free_section;         // ambient x free_rank, free rows of projection * free_section = I

  IntMatrix free_projection() const { return projection.block(0, 0, free_rank, ambient); }
  IntMatrix torsion_projection() const { return projection.block(free_rank, 0, torsion.size(), ambient); }

  Int torsion_order() const {
    Int o = 1;
    for (const auto& d : torsion) o *= d;
    return o;
  }

  /// Whether an ambient vector maps to zero in the quotient.
  bool kills(const std::vector<Int>& v) const {
    auto img = projection.apply(v);
    for (std::size_t i = 0; i < free_rank; ++i)
      if (img[i] != 0) return false;
    for (std::size_t i = 0; i < torsion.size(); ++i)
      if (img[free_rank + i] % torsion[i] != 0) return false;
    return true;
  }
};

/// Presentation of Z^rows / column-span(relations).
inline AbelianPresentation cokernel(const IntMatrix& relations) {
  const std::size_t n = relations.rows();
  const IntMatrix basis = lattice_basis(relations);
  const SmithForm snf = smith_normal_form(basis, true, false);
  const std::size_t k = snf.divisors.size();
  AbelianPresentation p;
  p.ambient = n;
  p.free_rank = n - k;
  std::vector<std::size_t> free_rows, torsion_rows;
  for (std::size_t i = k; i < n; ++i) free_rows.push_back(i);
  for (std::size_t i = 0; i < k; ++i)
    if (snf.divisors[i] != 1) {
      torsion_rows.push_back(i);
      p.torsion.push_back(snf.divisors[i]);
    }
  p.projection = vstack(snf.left.select_rows(free_rows), snf.left.select_rows(torsion_rows));
  // reduce torsion coordinates into [0, d)
  for (std::size_t t = 0; t < p.torsion.size(); ++t)
    for (std::size_t j = 0; j < n; ++j) {
      Int& x = p.projection(p.free_rank + t, j);
      x %= p.torsion[t];
      if (x < 0) x += p.torsion[t];
    }
  p.free_section = snf.left_inverse.select_cols(free_rows);
  return p;
}

/// Quotient of Q^ambient by a subspace, with a projection and a section.
struct RationalQuotient {
  std::size_t ambient = 0;
  std::size_t dim = 0;
  RatMatrix projection;  // dim x ambient, kernel = span
  RatMatrix section;     // ambient x dim, projection * section = I
};

inline RationalQuotient rational_quotient(std::size_t ambient, const RatMatrix& span) {
  if (span.cols() > 0 && span.rows() != ambient) throw Error("rational_quotient: span lives in wrong ambient");
  RationalQuotient q;
  q.ambient = ambient;
  RatMatrix basis = span.cols() == 0 ? RatMatrix(ambient, 0) : column_basis(span);
  std::vector<bool> covered(ambient, false);
  if (basis.cols() > 0)
    for (auto p : rref(basis.transpose()).pivots) covered[p] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < ambient; ++i)
    if (!covered[i]) rest.push_back(i);
  q.dim = rest.size();
  q.section = RatMatrix(ambient, q.dim);
  for (std::size_t j = 0; j < rest.size(); ++j) q.section(rest[j], j) = 1;
  const RatMatrix full = hstack(basis, q.section);
  const auto inv = inverse(full);
  if (!inv) throw Error("rational_quotient: complement construction failed");
  q.projection = inv->block(basis.cols(), 0, q.dim, ambient);
  return q;
}

/// Z-basis (columns) of the integer kernel of m.
inline IntMatrix integer_kernel(const IntMatrix& m) {
  const SmithForm snf = smith_normal_form(m, false, true);
  std::vector<std::size_t> cols;
  for (std::size_t j = snf.divisors.size(); j < m.cols(); ++j) cols.push_back(j);
  return snf.right.select_cols(cols);
}

/// Integral solution of a x = b when a has full column rank and b lies in its lattice.
inline std::optional<IntMatrix> solve_integral(const IntMatrix& a, const IntMatrix& b) {
  auto x = solve(to_rat(a), to_rat(b));
  if (!x || !is_integral(*x)) return std::nullopt;
  if (to_rat(a) * *x != to_rat(b)) return std::nullopt;
  return to_int(*x);
}

/// Whether every prime factor of every nonzero divisor divides n.
inline bool primes_divide(const std::vector<Int>& divisors, const Int& n) {
  for (const auto& d : divisors)
    for (auto p : prime_factors(d))
      if (n % p != 0) return false;
  return true;
}

}  // namespace mackey
