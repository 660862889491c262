#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace isorep {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Numeric thresholds shared by every module.
struct ToleranceConfig {
  /// Singular values below rank_tol * sigma_max count as zero.
  double rank_tol = 1e-9;
  /// Max-abs deviation allowed in operator identities.
  double identity_tol = 1e-10;
  /// Truncation-level increment used by stability checks.
  int stabilization_delta = 4;

  /// Throws InputError unless rank_tol, identity_tol lie in (0, 1) and delta >= 1.
  void validate() const;
};

/// Largest absolute entry; 0 for an empty matrix.
double max_abs(const ComplexMatrix& m);

/// Column-stacking vectorization and its inverse.
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

/// Kronecker product, row index of the result is i_a * rows(b) + i_b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Number of singular values above rank_tol * sigma_max.
Eigen::Index numerical_rank(const ComplexMatrix& a, const ToleranceConfig& tol = {});

/// Orthonormal basis (as columns) of the numerical kernel of `a`.
///
/// Tall inputs are first reduced to their triangular QR factor, wide inputs are handled
/// through a QR of the adjoint, so the SVD is always taken on a min(rows, cols) square.
/// The zero matrix yields the identity basis.
///
/// The cutoff is rank_tol * max(||a||, scale). Pass the norm of the operators `a` was
/// assembled from as `scale`, so that a constraint which is pure rounding (U - 1 for
/// U = 1 computed in floating point) is recognised as zero.
ComplexMatrix nullspace(const ComplexMatrix& a, const ToleranceConfig& tol = {}, double scale = 0.0);

/// Kernel of `a` with every singular value <= cutoff treated as zero (absolute cutoff).
ComplexMatrix nullspace_with_cutoff(const ComplexMatrix& a, double cutoff);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// Power-iteration estimate of the largest singular value from a fixed start vector.
/// Never exceeds spectral_norm(a); used to scale rank cutoffs without a full SVD.
double spectral_norm_estimate(const ComplexMatrix& a, int iterations = 60);

/// Orthonormal basis of the intersection of the kernels of `constraints`.
///
/// The constraints are eliminated one after another (K <- K * null(C K)), which is the
/// same kernel as the stacked system but never forms it. An empty list gives I.
/// Throws DimensionMismatch if a constraint does not have `ambient_dim` columns.
/// `scale` is a floor for each constraint's norm, as in nullspace().
ComplexMatrix joint_kernel(std::span<const ComplexMatrix> constraints, Eigen::Index ambient_dim,
                           const ToleranceConfig& tol = {}, double scale = 0.0);

/// One linear intertwining constraint lhs * T = T * rhs.
struct IntertwinerPair {
  ComplexMatrix lhs;
  ComplexMatrix rhs;
};

/// Basis of {T : lhs_i T = T rhs_i for all i} via the column-stacked system
/// (I (x) lhs - rhs^T (x) I) vec(T) = 0. Quadratic in the operator size; meant for
/// small operators and as the reference route for star_intertwiner_space.
std::vector<ComplexMatrix> intertwiner_space(std::span<const IntertwinerPair> pairs,
                                             const ToleranceConfig& tol = {});

/// Basis of {T : A_k T = T B_k and A_k^* T = T B_k^* for all k}.
///
/// Any such T also intertwines the Hermitian combination H = sum c_k (G_k + G_k^*) +
/// d_k i (G_k - G_k^*), so it maps each eigenspace of H_B into the eigenspace of H_A with
/// the same eigenvalue. The unknowns are restricted to those blocks and the full set of
/// constraints is then imposed exactly. Coefficients come from `seed`; the result does
/// not depend on them beyond rounding, only the size of the reduced system does.
std::vector<ComplexMatrix> star_intertwiner_space(std::span<const ComplexMatrix> gens_a,
                                                  std::span<const ComplexMatrix> gens_b,
                                                  const ToleranceConfig& tol = {},
                                                  std::uint64_t seed = 0x5eed);

/// star_intertwiner_space(gens, gens).
std::vector<ComplexMatrix> star_commutant(std::span<const ComplexMatrix> gens,
                                          const ToleranceConfig& tol = {},
                                          std::uint64_t seed = 0x5eed);

/// Haar-distributed unitary from a seeded generator.
ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed);

/// Matrix of i.i.d. standard complex Gaussians.
ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// Spectral condition number sigma_max / sigma_min (infinity if singular).
double condition_number(const ComplexMatrix& a);

}  // namespace isorep
