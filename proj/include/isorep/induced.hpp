#pragma once

// Induced representations of R_+ and R_+^2 on a grid of [0,1)^d with M cells per unit.
//
// Vectors are step functions: cell values stacked as index cell * base_dim + v. In two
// dimensions cell = x * M + y. Grid times are integer tick counts j (time j / M).

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <utility>
#include <vector>

#include "isorep/cocycle.hpp"
#include "isorep/commutant.hpp"
#include "isorep/kernels.hpp"
#include "isorep/linalg.hpp"
#include "isorep/rep_model.hpp"

namespace isorep {

/// Ticks j with t = j / M. Throws InputError when t is negative or not a multiple of 1/M.
int grid_ticks(double t, int M);

/// I_m (x) S_L: the truncated shift of multiplicity m on C^m (x) C^L.
ComplexMatrix shift_isometry(int multiplicity, int L);

namespace detail {

// Lazily filled, append-only matrix cache. Readers share the lock; a missing entry is
// built outside the lock and inserted under the exclusive lock. Map nodes never move, so
// returned references stay valid for the cache's lifetime.
template <class Key>
class MatrixCache {
 public:
  template <class Build>
  const ComplexMatrix& get(const Key& key, Build&& build) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    ComplexMatrix value = build();
    std::unique_lock lock(mutex_);
    return entries_.try_emplace(key, std::move(value)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Key, ComplexMatrix> entries_;
};

}  // namespace detail

/// Induced representation of R_+ from a single isometry sigma.
class GridRep1 {
 public:
  /// `fiber_interior` is the projection onto the part of C^{nL} where sigma is exact; it
  /// defaults to the identity. Throws InputError if M < 2 or sigma is not square.
  GridRep1(ComplexMatrix sigma, int M, std::optional<ComplexMatrix> fiber_interior = std::nullopt);

  int M() const { return M_; }
  Eigen::Index base_dim() const { return sigma_.rows(); }
  Eigen::Index dim() const { return M_ * sigma_.rows(); }
  const ComplexMatrix& sigma() const { return sigma_; }
  const ComplexMatrix& fiber_interior() const { return fiber_interior_; }
  /// I_M (x) fiber_interior.
  ComplexMatrix interior_projector() const;

  const ComplexMatrix& sigma_power(int k) const;
  kernels::Shift1 shift(int ticks) const;
  /// V(ticks / M), built on first use.
  const ComplexMatrix& V(int ticks) const;
  /// V(ticks / M)^* from the piecewise formula.
  ComplexMatrix adjoint_formula(int ticks) const;
  ComplexVector apply(int ticks, const ComplexVector& x) const;

 private:
  ComplexMatrix sigma_;
  int M_;
  ComplexMatrix fiber_interior_;
  std::shared_ptr<detail::MatrixCache<int>> powers_;
  std::shared_ptr<detail::MatrixCache<int>> operators_;
};

GridRep1 induce_1d(const ComplexMatrix& sigma, int M, std::optional<ComplexMatrix> fiber_interior = std::nullopt);

/// Adjoint formula at a real time; rejects times off the grid.
ComplexMatrix adjoint_1d(const GridRep1& grid, double t);

/// xi_{j/M} for j = 0 .. values.size() - 1.
struct StepCocycle {
  int M = 0;
  std::vector<ComplexVector> values;
  int extent() const { return static_cast<int>(values.size()) - 1; }
};

/// eta_0 .. eta_count of the discrete cocycle with eta_1 = eta1:
/// eta_{k+1} = eta_k + sigma^k eta_1.
std::vector<ComplexVector> discrete_cocycle_1d(const ComplexMatrix& sigma, const ComplexVector& eta1, int count);

/// Step cocycle xi_t = eta_n on cells below M - r and eta_{n+1} above (t = n + r / M),
/// for t up to eta.size() - 1. Throws InputError naming the violated relation when eta
/// is not a cocycle of sigma.
StepCocycle lift_cocycle_1d(std::span<const ComplexVector> eta, const GridRep1& grid,
                            const ToleranceConfig& tol = {});

struct StepResiduals {
  /// max |xi_{s+t} - xi_s - V_s xi_t| over grid pairs inside the extent.
  double additivity = 0.0;
  /// max |V_t^* xi_t|.
  double kernel = 0.0;
  double max() const { return std::max(additivity, kernel); }
};

StepResiduals step_residuals(const StepCocycle& xi, const GridRep1& grid);

struct GridCocycleSolve1 {
  std::size_t dim = 0;
  std::size_t unfiltered_dim = 0;
  std::vector<StepCocycle> basis;
  /// Worst residual of the basis.
  StepResiduals residuals;
};

/// Solves for families xi_{j/M}, j = 1 .. horizon * M, with xi_t in ker V_t^* and
/// additivity at every grid pair whose sum stays within the horizon. Solutions touching
/// the guard band of the fiber are dropped.
GridCocycleSolve1 grid_cocycle_space_1d(const GridRep1& grid, int horizon = 2, const ToleranceConfig& tol = {});

/// Induced representation of R_+^2 from a representation of N^2.
class GridRep2 {
 public:
  GridRep2(IsoRep2 rep, int M);

  int M() const { return M_; }
  Eigen::Index base_dim() const { return rep_.dim(); }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(M_) * M_ * rep_.dim(); }
  const IsoRep2& rep() const { return rep_; }
  /// I_{M^2} (x) interior projector of the base.
  ComplexMatrix interior_projector() const;

  /// sigma(m, n) = W1^m W2^n.
  const ComplexMatrix& sigma_power(Point2 p) const;
  kernels::Shift2 shift(int jx, int jy) const;
  const ComplexMatrix& V(int jx, int jy) const;
  ComplexMatrix adjoint_formula(int jx, int jy) const;
  ComplexVector apply(int jx, int jy, const ComplexVector& x) const;
  ComplexVector apply_adjoint(int jx, int jy, const ComplexVector& x) const;

  /// The one-parameter representation induced by sigma(., 0) (axis 0) or sigma(0, .).
  GridRep1 axis(int i) const;

 private:
  IsoRep2 rep_;
  int M_;
  std::shared_ptr<detail::MatrixCache<std::pair<int, int>>> powers_;
  std::shared_ptr<detail::MatrixCache<std::pair<int, int>>> operators_;
};

GridRep2 induce_2d(const IsoRep2& rep, int M);

/// Unitary xi(x, y) -> xi(y, x) on cells (x) C^{base_dim}.
ComplexMatrix flip_matrix(int M, Eigen::Index base_dim);
ComplexVector apply_flip(int M, Eigen::Index base_dim, const ComplexVector& x);

/// xi_{(j/M, k/M)} for 0 <= j, k <= extent.
struct StepCocycle2 {
  int M = 0;
  int extent = 0;
  std::vector<ComplexVector> values;
  const ComplexVector& at(int j, int k) const { return values[static_cast<std::size_t>(j * (extent + 1) + k)]; }
  ComplexVector& at(int j, int k) { return values[static_cast<std::size_t>(j * (extent + 1) + k)]; }
};

/// Lift of a cocycle of the base: on (s, t) = (m + r1/M, n + r2/M) the value is
/// eta_(m,n), eta_(m+1,n), eta_(m,n+1), eta_(m+1,n+1) on the rectangles cut at x-cell
/// M - r1 and y-cell M - r2. Throws InputError if `c` is not a cocycle of the base.
StepCocycle2 lift_cocycle_2d(const Cocycle2& c, const GridRep2& grid, int extent, const ToleranceConfig& tol = {});

StepResiduals step_residuals(const StepCocycle2& xi, const GridRep2& grid);

/// Grid cocycle from its values on the generators a = (1/M, 0) and b = (0, 1/M).
StepCocycle2 grid_cocycle_from_generators(const GridRep2& grid, const ComplexVector& xi_a, const ComplexVector& xi_b,
                                          int extent);

struct GridCocycleSolve2 {
  std::size_t solved_dim = 0;
  std::size_t unfiltered_dim = 0;
  std::size_t lifted_dim = 0;
  /// The lifted basis of cocycle_space is linearly independent on the grid.
  bool lifted_independent = false;
  /// Every solved grid cocycle lies in the span of the lifted ones.
  bool solved_in_lifted_span = false;
  StepResiduals solved_residuals;
  StepResiduals lifted_residuals;
  bool passed() const { return lifted_independent && solved_in_lifted_span && solved_dim == lifted_dim; }
};

/// Solves the grid cocycle relations on the generators (kernel membership and
/// compatibility), expands every solution to all grid points within `horizon` units,
/// and compares its span with the lifts of the base cocycle space.
GridCocycleSolve2 grid_cocycle_space_2d(const GridRep2& grid, int horizon = 1, const ToleranceConfig& tol = {});

struct InducedCommutantReport {
  std::size_t structured_dim = 0;
  /// Direction (i): every 1 (x) T_0 (x) 1 commutes with V and V^* at all grid times
  /// within one unit, and the grid generators are interior isometries.
  double inclusion_residual = 0.0;
  double isometry_residual = 0.0;
  bool inclusion_ok = false;
  /// Direction (ii): interior-filtered commutant of the grid generators.
  std::size_t grid_raw_dim = 0;
  std::size_t grid_dim = 0;
  bool dimension_ok = false;
  bool passed() const { return inclusion_ok && dimension_ok; }
};

/// Requires a representation built from a projection family.
InducedCommutantReport induced_commutant_check_2d(const GridRep2& grid, const ToleranceConfig& tol = {},
                                                  std::uint64_t seed = 0x5eed);

/// W(t_1, ..., t_d) = V(t_1, t_2).
class PaddedGridRep {
 public:
  PaddedGridRep(GridRep2 base, int d);
  int d() const { return d_; }
  const GridRep2& base() const { return base_; }
  /// Throws DimensionMismatch unless ticks.size() == d.
  const ComplexMatrix& V(std::span<const int> ticks) const;
  ComplexVector apply(std::span<const int> ticks, const ComplexVector& x) const;

 private:
  GridRep2 base_;
  int d_;
};

/// Throws InputError if d < 2.
PaddedGridRep pad_to_d(const GridRep2& grid, int d);

struct PaddedIndex {
  std::size_t base = 0;
  /// Cocycle dimension contributed by each padding direction (the identity isometry).
  std::vector<std::size_t> padding;
  std::size_t total() const;
};

PaddedIndex padded_index(const PaddedGridRep& pad, const ToleranceConfig& tol = {});

}  // namespace isorep
