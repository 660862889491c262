#pragma once

// LAPACK singular value decomposition. Eigen 3.4.0's BDCSVD can return NaN singular
// vectors on structured inputs (exact zeros, repeated singular values), which is exactly
// what the truncated shift operators produce, so every SVD in the library goes here.

#include <Eigen/Dense>

#include "isorep/linalg.hpp"

namespace isorep::detail {

struct Svd {
  /// Descending.
  Eigen::VectorXd values;
  /// Full U (rows x rows) and V (cols x cols), or empty when not requested.
  ComplexMatrix u;
  ComplexMatrix v;
};

/// Divide and conquer (zgesdd), falling back to QR iteration (zgesvd) when it does not
/// converge. Throws Error if neither does.
Svd svd(const ComplexMatrix& a, bool vectors);

}  // namespace isorep::detail
