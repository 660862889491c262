#pragma once

// Data-parallel inner loops. Each kernel exists twice: `serial` is the reference used by
// the tests, `parallel` is the OpenMP version the library calls. Both must agree bit for
// bit, since every output entry is computed by the same expression in both.

#include <array>

#include "isorep/linalg.hpp"

namespace isorep::kernels {

/// Fiber operators for a one-parameter grid shift by r cells.
/// Output cell c takes `stay` * x[c + r] when c + r < cells, else `wrap` * x[c + r - cells].
struct Shift1 {
  const ComplexMatrix* stay = nullptr;
  const ComplexMatrix* wrap = nullptr;
  int cells = 0;
  int offset = 0;
};

/// Fiber operators for a two-parameter grid shift; op[i][j] is used when the x-index
/// wraps (i = 1) or not (i = 0), and likewise j for y. Cells are ordered x-major.
struct Shift2 {
  std::array<std::array<const ComplexMatrix*, 2>, 2> op{};
  int cells = 0;
  int offset_x = 0;
  int offset_y = 0;
};

namespace serial {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Dense matrix of the forward shift.
ComplexMatrix shift_matrix_1d(const Shift1& s);
ComplexMatrix shift_matrix_2d(const Shift2& s);

/// Dense matrix of the piecewise adjoint formula: output cell c < r takes
/// wrap^* x[c - r + cells], the remaining cells take stay^* x[c - r].
ComplexMatrix adjoint_matrix_1d(const Shift1& s);
/// Two-parameter adjoint formula over the four wrap regions.
ComplexMatrix adjoint_matrix_2d(const Shift2& s);

ComplexVector apply_shift_1d(const Shift1& s, const ComplexVector& x);
ComplexVector apply_shift_2d(const Shift2& s, const ComplexVector& x);
ComplexVector apply_adjoint_2d(const Shift2& s, const ComplexVector& x);

/// max |A T - T B|.
double intertwining_residual(const ComplexMatrix& a, const ComplexMatrix& t, const ComplexMatrix& b);

}  // namespace serial

namespace parallel {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix shift_matrix_1d(const Shift1& s);
ComplexMatrix shift_matrix_2d(const Shift2& s);
ComplexMatrix adjoint_matrix_1d(const Shift1& s);
ComplexMatrix adjoint_matrix_2d(const Shift2& s);
ComplexVector apply_shift_1d(const Shift1& s, const ComplexVector& x);
ComplexVector apply_shift_2d(const Shift2& s, const ComplexVector& x);
ComplexVector apply_adjoint_2d(const Shift2& s, const ComplexVector& x);
double intertwining_residual(const ComplexMatrix& a, const ComplexMatrix& t, const ComplexMatrix& b);

}  // namespace parallel

}  // namespace isorep::kernels
