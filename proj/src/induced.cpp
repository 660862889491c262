#include "isorep/induced.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isorep/errors.hpp"

namespace isorep {

int grid_ticks(double t, int M) {
  const double scaled = t * M;
  const double rounded = std::round(scaled);
  if (!(t >= 0.0) || std::abs(scaled - rounded) > 1e-9) {
    throw InputError("time " + std::to_string(t) + " is not a non-negative multiple of 1/" + std::to_string(M), "t");
  }
  return static_cast<int>(rounded);
}

ComplexMatrix shift_isometry(int multiplicity, int L) {
  if (multiplicity < 0 || L < 1) throw InputError("shift_isometry: need multiplicity >= 0 and L >= 1");
  return kron(ComplexMatrix::Identity(multiplicity, multiplicity), truncated_shift(L));
}

namespace {

void check_ticks(int ticks) {
  if (ticks < 0) throw InputError("grid time must be non-negative", "ticks");
}

double max_norm(const ComplexVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

// ---- one parameter ---------------------------------------------------------------

GridRep1::GridRep1(ComplexMatrix sigma, int M, std::optional<ComplexMatrix> fiber_interior)
    : sigma_(std::move(sigma)),
      M_(M),
      powers_(std::make_shared<detail::MatrixCache<int>>()),
      operators_(std::make_shared<detail::MatrixCache<int>>()) {
  if (M < 2) throw InputError("grid needs M >= 2 cells per unit", "M");
  if (sigma_.rows() != sigma_.cols() || sigma_.rows() == 0) {
    throw InputError("sigma must be a non-empty square matrix", "sigma");
  }
  const Eigen::Index n = sigma_.rows();
  fiber_interior_ = fiber_interior ? std::move(*fiber_interior) : ComplexMatrix::Identity(n, n);
  if (fiber_interior_.rows() != n || fiber_interior_.cols() != n) {
    throw DimensionMismatch("fiber interior projector does not match sigma");
  }
}

ComplexMatrix GridRep1::interior_projector() const {
  return kron(ComplexMatrix::Identity(M_, M_), fiber_interior_);
}

const ComplexMatrix& GridRep1::sigma_power(int k) const {
  check_ticks(k);
  return powers_->get(k, [&] {
    if (k == 0) return ComplexMatrix(ComplexMatrix::Identity(base_dim(), base_dim()));
    return ComplexMatrix(sigma_ * sigma_power(k - 1));
  });
}

kernels::Shift1 GridRep1::shift(int ticks) const {
  check_ticks(ticks);
  const int q = ticks / M_;
  const int r = ticks % M_;
  return kernels::Shift1{&sigma_power(q), &sigma_power(q + 1), M_, r};
}

const ComplexMatrix& GridRep1::V(int ticks) const {
  return operators_->get(ticks, [&] { return kernels::parallel::shift_matrix_1d(shift(ticks)); });
}

ComplexMatrix GridRep1::adjoint_formula(int ticks) const {
  return kernels::parallel::adjoint_matrix_1d(shift(ticks));
}

ComplexVector GridRep1::apply(int ticks, const ComplexVector& x) const {
  return kernels::parallel::apply_shift_1d(shift(ticks), x);
}

GridRep1 induce_1d(const ComplexMatrix& sigma, int M, std::optional<ComplexMatrix> fiber_interior) {
  return GridRep1(sigma, M, std::move(fiber_interior));
}

ComplexMatrix adjoint_1d(const GridRep1& grid, double t) {
  return grid.adjoint_formula(grid_ticks(t, grid.M()));
}

std::vector<ComplexVector> discrete_cocycle_1d(const ComplexMatrix& sigma, const ComplexVector& eta1, int count) {
  if (count < 1) throw InputError("need at least eta_0 and eta_1", "count");
  if (eta1.size() != sigma.cols()) throw DimensionMismatch("eta_1 does not match sigma");
  std::vector<ComplexVector> eta;
  eta.push_back(ComplexVector::Zero(eta1.size()));
  ComplexVector step = eta1;
  for (int k = 0; k < count; ++k) {
    eta.push_back(eta.back() + step);
    step = sigma * step;
  }
  return eta;
}

StepCocycle lift_cocycle_1d(std::span<const ComplexVector> eta, const GridRep1& grid, const ToleranceConfig& tol) {
  if (eta.size() < 2) throw InputError("need eta_0 and eta_1 at least", "eta");
  const Eigen::Index n = grid.base_dim();
  for (std::size_t k = 0; k < eta.size(); ++k) {
    if (eta[k].size() != n) throw DimensionMismatch("eta[" + std::to_string(k) + "] does not match sigma");
  }
  if (max_norm(eta[0]) > tol.identity_tol) throw InputError("eta_0 must vanish", "eta[0]");
  if (max_norm(grid.sigma().adjoint() * eta[1]) > tol.identity_tol) {
    throw InputError("eta_1 is not in ker sigma(1)^*", "eta[1]");
  }
  for (std::size_t k = 1; k + 1 < eta.size(); ++k) {
    const ComplexVector expect = eta[k] + grid.sigma_power(static_cast<int>(k)) * eta[1];
    if (max_norm(eta[k + 1] - expect) > tol.identity_tol) {
      throw InputError("eta_{k+1} != eta_k + sigma(k) eta_1 at k = " + std::to_string(k),
                       "eta[" + std::to_string(k + 1) + "]");
    }
  }

  const int M = grid.M();
  const int last = static_cast<int>(eta.size() - 1) * M;
  StepCocycle xi;
  xi.M = M;
  xi.values.reserve(static_cast<std::size_t>(last + 1));
  for (int j = 0; j <= last; ++j) {
    const int whole = j / M;
    const int r = j % M;
    ComplexVector v(grid.dim());
    for (int c = 0; c < M; ++c) {
      const std::size_t level = static_cast<std::size_t>(c < M - r ? whole : whole + 1);
      v.segment(c * n, n) = eta[level];
    }
    xi.values.push_back(std::move(v));
  }
  return xi;
}

StepResiduals step_residuals(const StepCocycle& xi, const GridRep1& grid) {
  const int extent = xi.extent();
  double additivity = 0.0;
  double kernel = 0.0;
#pragma omp parallel for reduction(max : additivity, kernel) schedule(dynamic)
  for (int s = 1; s <= extent; ++s) {
    kernel = std::max(kernel, max_norm(grid.V(s).adjoint() * xi.values[static_cast<std::size_t>(s)]));
    for (int t = 1; s + t <= extent; ++t) {
      const ComplexVector rhs = xi.values[static_cast<std::size_t>(s)] + grid.apply(s, xi.values[static_cast<std::size_t>(t)]);
      additivity = std::max(additivity, max_norm(xi.values[static_cast<std::size_t>(s + t)] - rhs));
    }
  }
  return {additivity, kernel};
}

namespace {

// Basis of the kernel restricted to vectors with no weight where `guard_rows` is non-zero.
ComplexMatrix drop_guard(const ComplexMatrix& solutions, const ComplexMatrix& guard_rows, const ToleranceConfig& tol) {
  if (solutions.cols() == 0) return solutions;
  return solutions * nullspace_with_cutoff(guard_rows * solutions, tol.rank_tol);
}

ComplexMatrix block_diag_repeat(const ComplexMatrix& block, int copies) {
  return kron(ComplexMatrix::Identity(copies, copies), block);
}

}  // namespace

GridCocycleSolve1 grid_cocycle_space_1d(const GridRep1& grid, int horizon, const ToleranceConfig& tol) {
  if (horizon < 1) throw InputError("horizon must be at least 1", "horizon");
  const int J = horizon * grid.M();
  const Eigen::Index B = grid.dim();
  const Eigen::Index N = J * B;
  const ComplexMatrix id = ComplexMatrix::Identity(B, B);

  // Unknowns xi_1 .. xi_J, block j - 1 holding xi_{j/M}.
  std::vector<ComplexMatrix> constraints;
  for (int j = 1; j <= J; ++j) {
    ComplexMatrix c = ComplexMatrix::Zero(B, N);
    c.middleCols((j - 1) * B, B) = grid.V(j).adjoint();
    constraints.push_back(std::move(c));
  }
  for (int s = 1; s <= J; ++s) {
    for (int t = 1; s + t <= J; ++t) {
      ComplexMatrix c = ComplexMatrix::Zero(B, N);
      c.middleCols((s + t - 1) * B, B) += id;
      c.middleCols((s - 1) * B, B) -= id;
      c.middleCols((t - 1) * B, B) -= grid.V(s);
      constraints.push_back(std::move(c));
    }
  }
  const ComplexMatrix kernel = joint_kernel(constraints, N, tol);

  const ComplexMatrix guard_rows =
      block_diag_repeat(ComplexMatrix::Identity(B, B) - grid.interior_projector(), J);
  const ComplexMatrix kept = drop_guard(kernel, guard_rows, tol);

  GridCocycleSolve1 out;
  out.unfiltered_dim = static_cast<std::size_t>(kernel.cols());
  out.dim = static_cast<std::size_t>(kept.cols());
  for (Eigen::Index k = 0; k < kept.cols(); ++k) {
    StepCocycle xi;
    xi.M = grid.M();
    xi.values.push_back(ComplexVector::Zero(B));
    for (int j = 1; j <= J; ++j) xi.values.push_back(kept.col(k).segment((j - 1) * B, B));
    const StepResiduals r = step_residuals(xi, grid);
    out.residuals.additivity = std::max(out.residuals.additivity, r.additivity);
    out.residuals.kernel = std::max(out.residuals.kernel, r.kernel);
    out.basis.push_back(std::move(xi));
  }
  return out;
}

// ---- two parameters --------------------------------------------------------------

GridRep2::GridRep2(IsoRep2 rep, int M)
    : rep_(std::move(rep)),
      M_(M),
      powers_(std::make_shared<detail::MatrixCache<std::pair<int, int>>>()),
      operators_(std::make_shared<detail::MatrixCache<std::pair<int, int>>>()) {
  if (M < 2) throw InputError("grid needs M >= 2 cells per unit", "M");
}

ComplexMatrix GridRep2::interior_projector() const {
  return kron(ComplexMatrix::Identity(M_ * M_, M_ * M_), rep_.interior_projector);
}

const ComplexMatrix& GridRep2::sigma_power(Point2 p) const {
  if (p.m < 0 || p.n < 0) throw InputError("sigma(m, n) needs m, n >= 0");
  return powers_->get({p.m, p.n}, [&] {
    if (p.m > 0) return ComplexMatrix(rep_.w1 * sigma_power({p.m - 1, p.n}));
    if (p.n > 0) return ComplexMatrix(sigma_power({0, p.n - 1}) * rep_.w2);
    return ComplexMatrix(ComplexMatrix::Identity(base_dim(), base_dim()));
  });
}

kernels::Shift2 GridRep2::shift(int jx, int jy) const {
  check_ticks(jx);
  check_ticks(jy);
  const int qx = jx / M_;
  const int qy = jy / M_;
  kernels::Shift2 s;
  s.cells = M_;
  s.offset_x = jx % M_;
  s.offset_y = jy % M_;
  for (int wx = 0; wx < 2; ++wx) {
    for (int wy = 0; wy < 2; ++wy) s.op[wx][wy] = &sigma_power({qx + wx, qy + wy});
  }
  return s;
}

const ComplexMatrix& GridRep2::V(int jx, int jy) const {
  return operators_->get({jx, jy}, [&] { return kernels::parallel::shift_matrix_2d(shift(jx, jy)); });
}

ComplexMatrix GridRep2::adjoint_formula(int jx, int jy) const {
  return kernels::parallel::adjoint_matrix_2d(shift(jx, jy));
}

ComplexVector GridRep2::apply(int jx, int jy, const ComplexVector& x) const {
  return kernels::parallel::apply_shift_2d(shift(jx, jy), x);
}

ComplexVector GridRep2::apply_adjoint(int jx, int jy, const ComplexVector& x) const {
  return kernels::parallel::apply_adjoint_2d(shift(jx, jy), x);
}

GridRep1 GridRep2::axis(int i) const {
  if (i != 0 && i != 1) throw InputError("axis must be 0 or 1", "axis");
  return GridRep1(rep_.generator(i), M_, rep_.interior_projector);
}

GridRep2 induce_2d(const IsoRep2& rep, int M) { return GridRep2(rep, M); }

ComplexMatrix flip_matrix(int M, Eigen::Index base_dim) {
  const Eigen::Index n = static_cast<Eigen::Index>(M) * M * base_dim;
  ComplexMatrix f = ComplexMatrix::Zero(n, n);
  for (int x = 0; x < M; ++x) {
    for (int y = 0; y < M; ++y) {
      const Eigen::Index out = (static_cast<Eigen::Index>(x) * M + y) * base_dim;
      const Eigen::Index in = (static_cast<Eigen::Index>(y) * M + x) * base_dim;
      for (Eigen::Index v = 0; v < base_dim; ++v) f(out + v, in + v) = 1.0;
    }
  }
  return f;
}

ComplexVector apply_flip(int M, Eigen::Index base_dim, const ComplexVector& x) {
  if (x.size() != static_cast<Eigen::Index>(M) * M * base_dim) throw DimensionMismatch("apply_flip: wrong vector size");
  ComplexVector out(x.size());
  for (int cx = 0; cx < M; ++cx) {
    for (int cy = 0; cy < M; ++cy) {
      out.segment((static_cast<Eigen::Index>(cx) * M + cy) * base_dim, base_dim) =
          x.segment((static_cast<Eigen::Index>(cy) * M + cx) * base_dim, base_dim);
    }
  }
  return out;
}

StepCocycle2 lift_cocycle_2d(const Cocycle2& c, const GridRep2& grid, int extent, const ToleranceConfig& tol) {
  if (extent < 0) throw InputError("extent must be non-negative", "extent");
  const IsoRep2& rep = grid.rep();
  if (c.eta10.size() != rep.dim() || c.eta01.size() != rep.dim()) {
    throw DimensionMismatch("lift_cocycle_2d: cocycle does not match the representation");
  }
  const CocycleResiduals res = cocycle_residuals(c, rep);
  if (res.kernel_w1 > tol.identity_tol) throw InputError("eta_(1,0) is not in ker W1^*", "eta10");
  if (res.kernel_w2 > tol.identity_tol) throw InputError("eta_(0,1) is not in ker W2^*", "eta01");
  if (res.compatibility > tol.identity_tol) {
    throw InputError("eta_(1,0) + W1 eta_(0,1) != eta_(0,1) + W2 eta_(1,0)", "eta");
  }

  const int M = grid.M();
  const int units = extent / M + 1;
  std::vector<ComplexVector> eta(static_cast<std::size_t>((units + 1) * (units + 1)));
  auto eta_at = [&](int m, int n) -> ComplexVector& { return eta[static_cast<std::size_t>(m * (units + 1) + n)]; };
  for (int m = 0; m <= units; ++m) {
    for (int n = 0; n <= units; ++n) eta_at(m, n) = evaluate(c, rep, {m, n}, tol);
  }

  const Eigen::Index B = grid.base_dim();
  StepCocycle2 xi;
  xi.M = M;
  xi.extent = extent;
  xi.values.resize(static_cast<std::size_t>((extent + 1) * (extent + 1)));
  for (int j = 0; j <= extent; ++j) {
    for (int k = 0; k <= extent; ++k) {
      const int m = j / M;
      const int r1 = j % M;
      const int n = k / M;
      const int r2 = k % M;
      ComplexVector v(grid.dim());
      for (int x = 0; x < M; ++x) {
        for (int y = 0; y < M; ++y) {
          const int wx = x >= M - r1 ? 1 : 0;
          const int wy = y >= M - r2 ? 1 : 0;
          v.segment((static_cast<Eigen::Index>(x) * M + y) * B, B) = eta_at(m + wx, n + wy);
        }
      }
      xi.at(j, k) = std::move(v);
    }
  }
  return xi;
}

StepResiduals step_residuals(const StepCocycle2& xi, const GridRep2& grid) {
  const int e = xi.extent;
  const int points = (e + 1) * (e + 1);
  double additivity = 0.0;
  double kernel = 0.0;
#pragma omp parallel for reduction(max : additivity, kernel) schedule(dynamic)
  for (int p = 1; p < points; ++p) {
    const int j1 = p / (e + 1);
    const int k1 = p % (e + 1);
    kernel = std::max(kernel, max_norm(grid.apply_adjoint(j1, k1, xi.at(j1, k1))));
    for (int j2 = 0; j1 + j2 <= e; ++j2) {
      for (int k2 = 0; k1 + k2 <= e; ++k2) {
        if (j2 == 0 && k2 == 0) continue;
        const ComplexVector rhs = xi.at(j1, k1) + grid.apply(j1, k1, xi.at(j2, k2));
        additivity = std::max(additivity, max_norm(xi.at(j1 + j2, k1 + k2) - rhs));
      }
    }
  }
  return {additivity, kernel};
}

StepCocycle2 grid_cocycle_from_generators(const GridRep2& grid, const ComplexVector& xi_a, const ComplexVector& xi_b,
                                          int extent) {
  if (xi_a.size() != grid.dim() || xi_b.size() != grid.dim()) {
    throw DimensionMismatch("grid cocycle generators do not match the grid");
  }
  StepCocycle2 xi;
  xi.M = grid.M();
  xi.extent = extent;
  xi.values.assign(static_cast<std::size_t>((extent + 1) * (extent + 1)), ComplexVector::Zero(grid.dim()));
  for (int j = 0; j < extent; ++j) xi.at(j + 1, 0) = xi.at(j, 0) + grid.apply(j, 0, xi_a);
  for (int k = 0; k < extent; ++k) xi.at(0, k + 1) = xi.at(0, k) + grid.apply(0, k, xi_b);
  for (int j = 1; j <= extent; ++j) {
    for (int k = 1; k <= extent; ++k) xi.at(j, k) = xi.at(j, 0) + grid.apply(j, 0, xi.at(0, k));
  }
  return xi;
}

namespace {

void absorb(StepResiduals& into, const StepResiduals& r) {
  into.additivity = std::max(into.additivity, r.additivity);
  into.kernel = std::max(into.kernel, r.kernel);
}

}  // namespace

GridCocycleSolve2 grid_cocycle_space_2d(const GridRep2& grid, int horizon, const ToleranceConfig& tol) {
  if (horizon < 1) throw InputError("horizon must be at least 1", "horizon");
  const Eigen::Index B = grid.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(B, B);
  const ComplexMatrix& va = grid.V(1, 0);
  const ComplexMatrix& vb = grid.V(0, 1);

  // Unknowns (xi_a; xi_b): kernel membership on each generator and
  // xi_a + V_a xi_b = xi_b + V_b xi_a.
  std::vector<ComplexMatrix> constraints(3, ComplexMatrix::Zero(B, 2 * B));
  constraints[0].leftCols(B) = va.adjoint();
  constraints[1].rightCols(B) = vb.adjoint();
  constraints[2].leftCols(B) = id - vb;
  constraints[2].rightCols(B) = va - id;
  const ComplexMatrix kernel = joint_kernel(constraints, 2 * B, tol);
  const ComplexMatrix guard_rows = block_diag_repeat(id - grid.interior_projector(), 2);
  const ComplexMatrix solved = drop_guard(kernel, guard_rows, tol);

  GridCocycleSolve2 out;
  out.unfiltered_dim = static_cast<std::size_t>(kernel.cols());
  out.solved_dim = static_cast<std::size_t>(solved.cols());
  const int extent = horizon * grid.M();
  for (Eigen::Index k = 0; k < solved.cols(); ++k) {
    const StepCocycle2 xi = grid_cocycle_from_generators(grid, solved.col(k).head(B), solved.col(k).tail(B), extent);
    absorb(out.solved_residuals, step_residuals(xi, grid));
  }

  const CocycleSpace base = cocycle_space(grid.rep(), tol);
  out.lifted_dim = base.dim();
  ComplexMatrix lifted(2 * B, static_cast<Eigen::Index>(base.dim()));
  for (std::size_t k = 0; k < base.dim(); ++k) {
    const StepCocycle2 xi = lift_cocycle_2d(base.basis[k], grid, extent, tol);
    absorb(out.lifted_residuals, step_residuals(xi, grid));
    lifted.col(static_cast<Eigen::Index>(k)) << xi.at(1, 0), xi.at(0, 1);
  }

  const Eigen::Index lifted_rank = lifted.cols() == 0 ? 0 : numerical_rank(lifted, tol);
  out.lifted_independent = lifted_rank == lifted.cols();
  if (solved.cols() == 0) {
    out.solved_in_lifted_span = true;
  } else if (lifted.cols() == 0) {
    out.solved_in_lifted_span = false;
  } else {
    ComplexMatrix both(2 * B, lifted.cols() + solved.cols());
    both << lifted, solved;
    out.solved_in_lifted_span = numerical_rank(both, tol) == lifted_rank;
  }
  return out;
}

InducedCommutantReport induced_commutant_check_2d(const GridRep2& grid, const ToleranceConfig& tol, std::uint64_t seed) {
  const IsoRep2& rep = grid.rep();
  if (!rep.source.family) {
    throw InputError("induced commutant check needs a representation built from a projection family", "rep");
  }
  InducedCommutantReport out;
  const auto structured = structured_commutant_basis(*rep.source.family, tol);
  out.structured_dim = structured.size();

  const int M = grid.M();
  const int L = rep.trunc.L;
  const ComplexMatrix p = grid.interior_projector();
  const ComplexMatrix id = ComplexMatrix::Identity(grid.dim(), grid.dim());
  std::vector<ComplexMatrix> lifted;
  for (const auto& t0 : structured) {
    lifted.push_back(kron(ComplexMatrix::Identity(M * M, M * M), kron(t0, ComplexMatrix::Identity(L, L))));
  }

  const int times = (M + 1) * (M + 1);
  double inclusion = 0.0;
  double isometry = 0.0;
#pragma omp parallel for reduction(max : inclusion, isometry) schedule(dynamic)
  for (int idx = 0; idx < times; ++idx) {
    const int j = idx / (M + 1);
    const int k = idx % (M + 1);
    const ComplexMatrix& v = grid.V(j, k);
    const ComplexMatrix va = v.adjoint();
    isometry = std::max(isometry, max_abs(p * (va * v - id) * p));
    for (const auto& x : lifted) {
      inclusion = std::max(inclusion, kernels::serial::intertwining_residual(v, x, v));
      inclusion = std::max(inclusion, kernels::serial::intertwining_residual(va, x, va));
    }
  }
  out.inclusion_residual = inclusion;
  out.isometry_residual = isometry;
  out.inclusion_ok = inclusion <= tol.identity_tol && isometry <= tol.identity_tol;

  const std::array<ComplexMatrix, 2> gens{grid.V(1, 0), grid.V(0, 1)};
  const CommutantOracle oracle = interior_commutant(gens, p, tol, seed);
  out.grid_raw_dim = oracle.raw_dim;
  out.grid_dim = oracle.dim;
  out.dimension_ok = oracle.dim == out.structured_dim;
  return out;
}

// ---- padding ---------------------------------------------------------------------

PaddedGridRep::PaddedGridRep(GridRep2 base, int d) : base_(std::move(base)), d_(d) {
  if (d < 2) throw InputError("padding needs d >= 2", "d");
}

namespace {

void check_padded_ticks(std::span<const int> ticks, int d) {
  if (static_cast<int>(ticks.size()) != d) {
    throw DimensionMismatch("expected " + std::to_string(d) + " grid times, got " + std::to_string(ticks.size()));
  }
  for (int t : ticks) check_ticks(t);
}

}  // namespace

const ComplexMatrix& PaddedGridRep::V(std::span<const int> ticks) const {
  check_padded_ticks(ticks, d_);
  return base_.V(ticks[0], ticks[1]);
}

ComplexVector PaddedGridRep::apply(std::span<const int> ticks, const ComplexVector& x) const {
  check_padded_ticks(ticks, d_);
  return base_.apply(ticks[0], ticks[1], x);
}

PaddedGridRep pad_to_d(const GridRep2& grid, int d) { return PaddedGridRep(grid, d); }

std::size_t PaddedIndex::total() const {
  std::size_t t = base;
  for (std::size_t p : padding) t += p;
  return t;
}

PaddedIndex padded_index(const PaddedGridRep& pad, const ToleranceConfig& tol) {
  PaddedIndex out;
  out.base = index(pad.base().rep(), tol).value;
  const Eigen::Index n = pad.base().dim();
  for (int k = 2; k < pad.d(); ++k) {
    out.padding.push_back(cocycle_dim_1d(ComplexMatrix::Identity(n, n), tol));
  }
  return out;
}

}  // namespace isorep
