#pragma once

// Named batteries of invariant checks, shared by `isorep verify-suite` and the tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isorep/induced.hpp"
#include "isorep/json_io.hpp"
#include "isorep/linalg.hpp"
#include "isorep/rep_model.hpp"

namespace isorep {

struct SuiteCheck {
  std::string name;
  /// The statement being checked.
  std::string anchor;
  double residual = 0.0;
  bool pass = false;
  Json detail = Json::object();
};

struct SuiteReport {
  std::string preset;
  std::vector<SuiteCheck> checks;
  bool passed() const;
};

struct SuiteOptions {
  /// Cells per unit for the induced checks; each preset has its own default.
  std::optional<int> grid;
  std::uint64_t seed = 0x5eed;
  ToleranceConfig tol;
};

const std::vector<std::string>& suite_presets();

/// Throws InputError for an unknown preset.
SuiteReport verify_suite(const std::string& preset, const SuiteOptions& options = {});

Json to_json(const SuiteReport& r);
/// name,anchor,residual,verdict
std::string to_csv(const SuiteReport& r);

/// Reflection family of the running example: a = (1/2, 1/2, 1/2, 1/2).
ComplexVector example2_vector();
/// (0.8, 0.1, 0.1, 0.1), normalized.
ComplexVector example2_other_vector();

/// A seeded family with standard projections on C^n, 2 <= n <= 5. U is block diagonal
/// (one or two blocks); each block is a Haar-rotated diagonal unitary with a random number
/// of eigenvalues equal to 1 and the remaining phases kept away from 1.
struct RandomFamily {
  ProjectionFamily family;
  /// Number of unit eigenvalues placed in U (= dim ker(U - 1) by construction).
  int fixed_dim = 0;
  std::vector<int> blocks;
};
RandomFamily random_family(std::uint64_t seed);

/// Operator identities of a one-parameter grid up to `horizon` units: adjoint formula,
/// semigroup law, interior isometry, ker V_t^* for 0 < t < 1.
std::vector<SuiteCheck> induced_identity_checks_1d(const GridRep1& grid, int horizon, const ToleranceConfig& tol);

/// Grid cocycle solve against `expected_dim`, plus additivity of every lifted basis
/// cocycle of sigma.
std::vector<SuiteCheck> induced_cocycle_checks_1d(const GridRep1& grid, std::size_t expected_dim, int horizon,
                                                  const ToleranceConfig& tol);

/// Matrix-free identities of a two-parameter grid on seeded unit vectors at all grid
/// times within one unit: adjoint region formula, semigroup law, flip identities,
/// interior isometry.
std::vector<SuiteCheck> induced_identity_checks_2d(const GridRep2& grid, int vectors, std::uint64_t seed,
                                                   const ToleranceConfig& tol);

struct GridTimeResidual {
  int ticks_x = 0;
  int ticks_y = 0;
  double adjoint = 0.0;
  double isometry = 0.0;
};

/// Adjoint-formula and interior-isometry residuals at each grid time (j, k), 0 <= j, k <= M.
std::vector<GridTimeResidual> induced_time_table_2d(const GridRep2& grid, int vectors, std::uint64_t seed);

}  // namespace isorep
