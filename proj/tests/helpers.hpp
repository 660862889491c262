#pragma once

#include <cmath>
#include <complex>

#include "isorep/linalg.hpp"

namespace testing {

using isorep::Complex;
using isorep::ComplexMatrix;
using isorep::ComplexVector;

inline ComplexMatrix diag(std::initializer_list<Complex> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (const Complex& v : d) m(i, i) = v, ++i;
  return m;
}

inline ComplexVector basis_vector(Eigen::Index n, Eigen::Index k) {
  ComplexVector e = ComplexVector::Zero(n);
  e(k) = 1.0;
  return e;
}

// Projector onto the column span of `b` (orthonormal or not).
inline ComplexMatrix span_projector(const ComplexMatrix& b) {
  if (b.cols() == 0) return ComplexMatrix::Zero(b.rows(), b.rows());
  return b * (b.adjoint() * b).inverse() * b.adjoint();
}

// Brute-force rank through a full Jacobi SVD, independent of the library routines.
inline Eigen::Index jacobi_rank(const ComplexMatrix& a, double rel) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rel * s(0)) ++r;
  return r;
}

// dim ker(U - 1) counted from eigenvalues of a unitary.
inline Eigen::Index fixed_space_dim(const ComplexMatrix& u, double tol = 1e-8) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(u);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i) - Complex(1.0)) < tol) ++k;
  }
  return k;
}

// Number of connected components of the support graph of U. For standard-basis
// projections the commutant of {U, P_i} is the diagonal matrices constant on components.
inline int support_components(const ComplexMatrix& u, double tol = 1e-12) {
  const auto n = static_cast<int>(u.rows());
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (std::abs(u(i, j)) > tol) parent[static_cast<std::size_t>(find(i))] = find(j);
    }
  }
  int count = 0;
  for (int i = 0; i < n; ++i) count += find(i) == i ? 1 : 0;
  return count;
}

}  // namespace testing
