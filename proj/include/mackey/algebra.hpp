#pragma once

#include "mackey/cyclotomic.hpp"

namespace mackey {

/// Finite-dimensional associative unital algebra over Q given by structure constants.
///
/// left[i] is the matrix of left multiplication by the basis element e_i, so the
/// product e_i * e_j is column j of left[i].
struct FiniteDimAlgebra {
  std::size_t dim = 0;
  std::vector<RatMatrix> left;
  RatVector unit;

  RatVector multiply(const RatVector& a, const RatVector& b) const { return left_multiplication(a).apply(b); }

  RatMatrix left_multiplication(const RatVector& a) const {
    RatMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      if (a[i] != 0) m += left[i] * a[i];
    return m;
  }

  RatVector basis_vector(std::size_t i) const {
    RatVector v(dim);
    v[i] = 1;
    return v;
  }

  /// Associativity on all basis triples and the two-sided unit law; returns a description of the first failure.
  std::optional<std::string> check_axioms() const {
    if (left.size() != dim || unit.size() != dim) return "structure constants have the wrong shape";
    for (std::size_t i = 0; i < dim; ++i)
      if (left[i].rows() != dim || left[i].cols() != dim) return "structure constants have the wrong shape";
    if (left_multiplication(unit) != RatMatrix::identity(dim)) return "unit is not a left unit";
    for (std::size_t j = 0; j < dim; ++j)
      if (multiply(basis_vector(j), unit) != basis_vector(j)) return "unit is not a right unit on e_" + std::to_string(j);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        // L(e_i e_j) = L(e_i) L(e_j) covers all triples at once
        if (left_multiplication(left[i].col(j)) != left[i] * left[j])
          return "associativity fails for (e_" + std::to_string(i) + ", e_" + std::to_string(j) + ", -)";
      }
    return std::nullopt;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j)
        if (left[i].col(j) != left[j].col(i)) return false;
    return true;
  }

  /// Gram matrix of the trace form T(a, b) = tr L(ab).
  RatMatrix trace_form() const {
    RatMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) g(i, j) = (left[i] * left[j]).trace();
    return g;
  }

  /// Basis (columns) of the center.
  RatMatrix center() const {
    RatMatrix eqs(0, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      RatMatrix block(dim, dim);
      for (std::size_t i = 0; i < dim; ++i) {
        auto ij = left[i].col(j);
        auto ji = left[j].col(i);
        for (std::size_t k = 0; k < dim; ++k) block(k, i) = ij[k] - ji[k];
      }
      eqs = vstack(eqs, block);
    }
    return kernel(eqs);
  }
};

struct SemisimplicityCertificate {
  bool semisimple = false;
  Rat gram_determinant;
  RatVector radical_vector;  // nonzero element of the radical when not semisimple
};

/// Characteristic-zero criterion: A is semisimple iff its trace form is nondegenerate.
inline SemisimplicityCertificate is_semisimple(const FiniteDimAlgebra& a) {
  SemisimplicityCertificate cert;
  const RatMatrix gram = a.trace_form();
  cert.gram_determinant = a.dim == 0 ? Rat(1) : determinant(gram);
  cert.semisimple = cert.gram_determinant != 0;
  if (!cert.semisimple) cert.radical_vector = kernel(gram).col(0);
  return cert;
}

/// Traces of the basis elements acting on a module given by one action matrix per basis element.
/// Throws if the matrices do not define a unital module.
inline RatVector module_character(const FiniteDimAlgebra& a, const std::vector<RatMatrix>& action) {
  if (action.size() != a.dim) throw Error("module_character: need one action matrix per basis element");
  const std::size_t d = a.dim == 0 ? 0 : action[0].rows();
  for (const auto& m : action)
    if (m.rows() != d || m.cols() != d) throw Error("module_character: action matrices must be square of equal size");
  auto act = [&](const RatVector& x) {
    RatMatrix m(d, d);
    for (std::size_t k = 0; k < a.dim; ++k)
      if (x[k] != 0) m += action[k] * x[k];
    return m;
  };
  if (act(a.unit) != RatMatrix::identity(d)) throw Error("module_character: unit does not act as the identity");
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      if (action[i] * action[j] != act(a.left[i].col(j)))
        throw Error("module_character: action violates the product of e_" + std::to_string(i) + " and e_" +
                    std::to_string(j));
  RatVector traces(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) traces[i] = action[i].trace();
  return traces;
}

/// Q(zeta_n) as a phi(n)-dimensional algebra in the power basis.
inline FiniteDimAlgebra cyclotomic_algebra(int n) {
  FiniteDimAlgebra a;
  a.dim = static_cast<std::size_t>(euler_phi(n));
  for (std::size_t i = 0; i < a.dim; ++i) a.left.push_back(Cyclotomic::root_power(n, static_cast<long long>(i)).multiplication_matrix());
  a.unit = Cyclotomic::rational(n, 1).coords();
  return a;
}

/// The automorphism zeta_n -> zeta_n^m of Q(zeta_n) in the power basis.
inline RatMatrix galois_matrix(int n, long long m) {
  const auto d = static_cast<std::size_t>(euler_phi(n));
  RatMatrix g(d, d);
  for (std::size_t j = 0; j < d; ++j) g.set_block(0, j, RatMatrix::column(Cyclotomic::root_power(n, static_cast<long long>(j)).galois(m).coords()));
  return g;
}

/// Q[x]/(p) for a monic integer polynomial p, in the basis 1, x, ..., x^{deg-1}.
inline FiniteDimAlgebra truncated_polynomial_algebra(const IntPoly& monic) {
  FiniteDimAlgebra a;
  a.dim = monic.size() - 1;
  RatMatrix companion(a.dim, a.dim);
  for (std::size_t i = 0; i + 1 < a.dim; ++i) companion(i + 1, i) = 1;
  for (std::size_t i = 0; i < a.dim; ++i) companion(i, a.dim - 1) = Rat(-monic[i]);
  RatMatrix power = RatMatrix::identity(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) {
    a.left.push_back(power);
    power = companion * power;
  }
  a.unit = RatVector(a.dim);
  if (a.dim > 0) a.unit[0] = 1;
  return a;
}

}  // namespace mackey
