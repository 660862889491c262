#include "isorep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "isorep/errors.hpp"
#include "isorep/kernels.hpp"
#include "svd.hpp"

namespace isorep {
namespace {

// Upper-triangular factor of a QR of `a` (min(rows, cols) x cols); same kernel as `a`.
ComplexMatrix triangular_factor(const ComplexMatrix& a) {
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  const Eigen::Index k = std::min(a.rows(), a.cols());
  return qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
}

Eigen::Index rank_from_singular_values(const Eigen::VectorXd& sv, double rank_tol) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = rank_tol * sv(0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(rank_tol > 0.0 && rank_tol < 1.0)) throw InputError("must lie in (0, 1)", "tolerance.rank_tol");
  if (!(identity_tol > 0.0 && identity_tol < 1.0)) {
    throw InputError("must lie in (0, 1)", "tolerance.identity_tol");
  }
  if (stabilization_delta < 1) throw InputError("must be >= 1", "tolerance.stabilization_delta");
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw DimensionMismatch("unvec: length does not match shape");
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) { return kernels::parallel::kron(a, b); }

Eigen::Index numerical_rank(const ComplexMatrix& a, const ToleranceConfig& tol) {
  if (a.size() == 0) return 0;
  const ComplexMatrix r = a.rows() > a.cols() ? triangular_factor(a) : a;
  return rank_from_singular_values(detail::svd(r, false).values, tol.rank_tol);
}

ComplexMatrix nullspace_with_cutoff(const ComplexMatrix& a, double cutoff) {
  const Eigen::Index n = a.cols();
  if (n == 0) return ComplexMatrix(0, 0);
  if (a.rows() == 0) return ComplexMatrix::Identity(n, n);
  auto rank_of = [cutoff](const Eigen::VectorXd& sv) {
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cutoff) ++r;
    return r;
  };

  if (a.rows() >= n) {
    const ComplexMatrix r = triangular_factor(a);
    const detail::Svd svd = detail::svd(r, true);
    const Eigen::Index rank = rank_of(svd.values);
    return svd.v.rightCols(n - rank);
  }

  // Wide: ker(A) is the orthogonal complement of Ran(A^*). With A^* = Q [R; 0] and
  // R = U S W^*, Ran(A^*) = Q_1 U[:, :rank].
  const Eigen::Index m = a.rows();
  Eigen::HouseholderQR<ComplexMatrix> qr(a.adjoint());
  const ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  const detail::Svd svd = detail::svd(r, true);
  const Eigen::Index rank = rank_of(svd.values);
  ComplexMatrix basis(n, n - rank);
  basis.leftCols(m - rank) = q.leftCols(m) * svd.u.rightCols(m - rank);
  basis.rightCols(n - m) = q.rightCols(n - m);
  return basis;
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const ComplexMatrix r = a.rows() > a.cols() ? triangular_factor(a) : a;
  return detail::svd(r, false).values(0);
}

double spectral_norm_estimate(const ComplexMatrix& a, int iterations) {
  if (a.size() == 0) return 0.0;
  ComplexVector x(a.cols());
  for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = std::polar(1.0, 0.7 * static_cast<double>(j));
  x.normalize();
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const ComplexVector y = a * x;
    estimate = std::max(estimate, y.norm());
    ComplexVector z = a.adjoint() * y;
    const double nz = z.norm();
    if (nz == 0.0) break;
    x = z / nz;
  }
  return estimate;
}

ComplexMatrix nullspace(const ComplexMatrix& a, const ToleranceConfig& tol, double scale) {
  const Eigen::Index n = a.cols();
  if (n == 0) return ComplexMatrix(0, 0);
  if (a.rows() == 0 || max_abs(a) == 0.0) return ComplexMatrix::Identity(n, n);
  return nullspace_with_cutoff(a, tol.rank_tol * std::max(spectral_norm(a), scale));
}

ComplexMatrix joint_kernel(std::span<const ComplexMatrix> constraints, Eigen::Index ambient_dim,
                           const ToleranceConfig& tol, double scale) {
  for (const auto& c : constraints) {
    if (c.cols() != ambient_dim) {
      throw DimensionMismatch("joint_kernel: constraint has " + std::to_string(c.cols()) +
                              " columns, ambient dimension is " + std::to_string(ambient_dim));
    }
  }
  ComplexMatrix basis;
  bool identity = true;
  for (const auto& c : constraints) {
    if (!identity && basis.cols() == 0) break;
    // Rank decisions are relative to the constraint itself, not to its restriction.
    if (max_abs(c) == 0.0) continue;
    const double cutoff = tol.rank_tol * std::max(spectral_norm_estimate(c), scale);
    if (identity) {
      basis = nullspace_with_cutoff(c, cutoff);
      identity = false;
    } else {
      basis = basis * nullspace_with_cutoff(c * basis, cutoff);
    }
  }
  if (identity) return ComplexMatrix::Identity(ambient_dim, ambient_dim);
  return basis;
}

std::vector<ComplexMatrix> intertwiner_space(std::span<const IntertwinerPair> pairs,
                                             const ToleranceConfig& tol) {
  if (pairs.empty()) throw InputError("intertwiner_space: at least one pair is required");
  const Eigen::Index p = pairs.front().lhs.rows();
  const Eigen::Index q = pairs.front().rhs.rows();
  for (const auto& pr : pairs) {
    if (pr.lhs.rows() != p || pr.lhs.cols() != p || pr.rhs.rows() != q || pr.rhs.cols() != q) {
      throw DimensionMismatch("intertwiner_space: lhs must all be square of size " + std::to_string(p) +
                              ", rhs square of size " + std::to_string(q));
    }
  }
  const ComplexMatrix id_p = ComplexMatrix::Identity(p, p);
  const ComplexMatrix id_q = ComplexMatrix::Identity(q, q);
  std::vector<ComplexMatrix> constraints;
  constraints.reserve(pairs.size());
  double scale = 0.0;
  for (const auto& pr : pairs) {
    constraints.push_back(kron(id_q, pr.lhs) - kron(pr.rhs.transpose(), id_p));
    scale = std::max({scale, spectral_norm_estimate(pr.lhs), spectral_norm_estimate(pr.rhs)});
  }
  const ComplexMatrix basis = joint_kernel(constraints, p * q, tol, scale);
  std::vector<ComplexMatrix> out;
  out.reserve(basis.cols());
  for (Eigen::Index k = 0; k < basis.cols(); ++k) out.push_back(unvec(basis.col(k), p, q));
  return out;
}

namespace {

struct Cluster {
  double lo;
  double hi;
  Eigen::Index first;
  Eigen::Index count;
};

std::vector<Cluster> cluster_eigenvalues(const Eigen::VectorXd& ev, double gap) {
  std::vector<Cluster> out;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (!out.empty() && ev(i) - out.back().hi <= gap) {
      out.back().hi = ev(i);
      ++out.back().count;
    } else {
      out.push_back({ev(i), ev(i), i, 1});
    }
  }
  return out;
}

ComplexMatrix hermitian_mix(std::span<const ComplexMatrix> gens, std::span<const double> coeffs) {
  const Complex i_unit(0.0, 1.0);
  ComplexMatrix h = ComplexMatrix::Zero(gens.front().rows(), gens.front().cols());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    h += coeffs[2 * k] * (gens[k] + gens[k].adjoint()) + coeffs[2 * k + 1] * i_unit * (gens[k] - gens[k].adjoint());
  }
  return h;
}

struct BlockPair {
  Eigen::Index a_first, a_count, b_first, b_count;
};

}  // namespace

std::vector<ComplexMatrix> star_intertwiner_space(std::span<const ComplexMatrix> gens_a,
                                                  std::span<const ComplexMatrix> gens_b,
                                                  const ToleranceConfig& tol, std::uint64_t seed) {
  if (gens_a.empty() || gens_a.size() != gens_b.size()) {
    throw InputError("star_intertwiner_space: need the same positive number of generators on both sides");
  }
  const Eigen::Index p = gens_a.front().rows();
  const Eigen::Index q = gens_b.front().rows();
  for (std::size_t k = 0; k < gens_a.size(); ++k) {
    if (gens_a[k].rows() != p || gens_a[k].cols() != p || gens_b[k].rows() != q || gens_b[k].cols() != q) {
      throw DimensionMismatch("star_intertwiner_space: generators must be square of one size per side");
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(0.5, 1.5);
  std::vector<double> coeffs(2 * gens_a.size());
  for (auto& c : coeffs) c = coeff(rng);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig_a(hermitian_mix(gens_a, coeffs));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig_b(hermitian_mix(gens_b, coeffs));
  const Eigen::VectorXd& ev_a = eig_a.eigenvalues();
  const Eigen::VectorXd& ev_b = eig_b.eigenvalues();
  double scale = 1.0;
  if (ev_a.size() > 0) scale = std::max({scale, std::abs(ev_a(0)), std::abs(ev_a(ev_a.size() - 1))});
  if (ev_b.size() > 0) scale = std::max({scale, std::abs(ev_b(0)), std::abs(ev_b(ev_b.size() - 1))});
  // Eigenvalues of a Hermitian matrix are perturbed by O(eps * scale); anything within
  // this gap is treated as one eigenspace. Over-merging only enlarges the reduced system.
  const double gap = 1e-7 * scale;
  const auto clusters_a = cluster_eigenvalues(ev_a, gap);
  const auto clusters_b = cluster_eigenvalues(ev_b, gap);

  std::vector<BlockPair> blocks;
  Eigen::Index unknowns = 0;
  for (const auto& ca : clusters_a) {
    for (const auto& cb : clusters_b) {
      if (ca.lo - gap <= cb.hi && cb.lo - gap <= ca.hi) {
        blocks.push_back({ca.first, ca.count, cb.first, cb.count});
        unknowns += ca.count * cb.count;
      }
    }
  }
  if (unknowns == 0) return {};

  const ComplexMatrix& va = eig_a.eigenvectors();
  const ComplexMatrix& vb = eig_b.eigenvectors();

  // Column e of `c` is the stacked residual (G_A T_e - T_e G_B) over all generators and
  // their adjoints for the rank-one trial T_e = v_i w_j^*. Rows are compressed to a
  // triangular factor one generator at a time to bound memory.
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> ops;  // (G_A V_A, G_B^* V_B)
  for (std::size_t k = 0; k < gens_a.size(); ++k) {
    ops.emplace_back(gens_a[k] * va, gens_b[k].adjoint() * vb);
    ops.emplace_back(gens_a[k].adjoint() * va, gens_b[k] * vb);
  }

  std::vector<std::pair<Eigen::Index, Eigen::Index>> trial;  // (column of V_A, column of V_B)
  trial.reserve(unknowns);
  for (const auto& bp : blocks) {
    for (Eigen::Index j = 0; j < bp.b_count; ++j) {
      for (Eigen::Index i = 0; i < bp.a_count; ++i) trial.emplace_back(bp.a_first + i, bp.b_first + j);
    }
  }

  ComplexMatrix stacked(0, unknowns);
  double scale_c = 0.0;
  for (const auto& [ga_va, gbs_vb] : ops) {
    ComplexMatrix block(p * q, unknowns);
#pragma omp parallel for schedule(static)
    for (Eigen::Index e = 0; e < unknowns; ++e) {
      const auto [i, j] = trial[static_cast<std::size_t>(e)];
      // (G_A v) w^* - v (G_B^* w)^*, column-stacked.
      const ComplexMatrix r = ga_va.col(i) * vb.col(j).adjoint() - va.col(i) * gbs_vb.col(j).adjoint();
      block.col(e) = Eigen::Map<const ComplexVector>(r.data(), r.size());
    }
    scale_c = std::max(scale_c, max_abs(block));
    ComplexMatrix next(stacked.rows() + block.rows(), unknowns);
    next << stacked, block;
    stacked = next.rows() > unknowns ? triangular_factor(next) : next;
  }

  // `stacked` has the singular values of the full residual map, so a relative cutoff on
  // it is relative to the constraints.
  double gen_scale = 0.0;
  for (std::size_t k = 0; k < gens_a.size(); ++k) {
    gen_scale = std::max({gen_scale, spectral_norm_estimate(gens_a[k]), spectral_norm_estimate(gens_b[k])});
  }
  const ComplexMatrix null = scale_c == 0.0 ? ComplexMatrix::Identity(unknowns, unknowns)
                                            : nullspace(stacked, tol, gen_scale);

  std::vector<ComplexMatrix> out;
  out.reserve(null.cols());
  for (Eigen::Index k = 0; k < null.cols(); ++k) {
    ComplexMatrix coeffs_mat = ComplexMatrix::Zero(p, q);
    for (Eigen::Index e = 0; e < unknowns; ++e) {
      const auto [i, j] = trial[static_cast<std::size_t>(e)];
      coeffs_mat(i, j) = null(e, k);
    }
    out.push_back(va * coeffs_mat * vb.adjoint());
  }
  return out;
}

std::vector<ComplexMatrix> star_commutant(std::span<const ComplexMatrix> gens, const ToleranceConfig& tol,
                                          std::uint64_t seed) {
  return star_intertwiner_space(gens, gens, tol, seed);
}

ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_gaussian(n, n, seed));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR();
  // Fix column phases so the distribution is Haar.
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mod = std::abs(r(j, j));
    if (mod > 0.0) q.col(j) *= r(j, j) / mod;
  }
  return q;
}

double condition_number(const ComplexMatrix& a) {
  if (a.size() == 0) return 1.0;
  const Eigen::VectorXd sv = detail::svd(a, false).values;
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace isorep
