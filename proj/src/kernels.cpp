#include "isorep/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "isorep/errors.hpp"

namespace isorep::kernels {
namespace {

struct Source {
  int cell;
  int wrap;
};

// Forward shift: the value at output cell c is read from c + r, wrapping once.
inline Source forward_source(int c, int offset, int cells) {
  const int src = c + offset;
  return src < cells ? Source{src, 0} : Source{src - cells, 1};
}

// Adjoint: output cell c reads c - r, wrapping from the top.
inline Source adjoint_source(int c, int offset, int cells) {
  const int src = c - offset;
  return src >= 0 ? Source{src, 0} : Source{src + cells, 1};
}

Eigen::Index fiber_dim(const Shift1& s) {
  if (s.stay == nullptr || s.wrap == nullptr || s.cells < 1 || s.offset < 0 || s.offset >= s.cells) {
    throw InputError("grid shift: missing fiber operator or offset outside [0, cells)");
  }
  const Eigen::Index n = s.stay->rows();
  if (s.stay->cols() != n || s.wrap->rows() != n || s.wrap->cols() != n) {
    throw DimensionMismatch("grid shift: fiber operators must be square of one size");
  }
  return n;
}

Eigen::Index fiber_dim(const Shift2& s) {
  if (s.cells < 1 || s.offset_x < 0 || s.offset_x >= s.cells || s.offset_y < 0 ||
      s.offset_y >= s.cells) {
    throw InputError("grid shift: offset outside [0, cells)");
  }
  Eigen::Index n = -1;
  for (const auto& row : s.op) {
    for (const ComplexMatrix* m : row) {
      if (m == nullptr) throw InputError("grid shift: missing fiber operator");
      if (n < 0) n = m->rows();
      if (m->rows() != n || m->cols() != n) {
        throw DimensionMismatch("grid shift: fiber operators must be square of one size");
      }
    }
  }
  return n;
}


inline void kron_row_block(const ComplexMatrix& a, const ComplexMatrix& b, Eigen::Index i,
                           ComplexMatrix& out) {
  const Eigen::Index br = b.rows();
  const Eigen::Index bc = b.cols();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  }
}

inline void shift1_cell(const Shift1& s, Eigen::Index n, int c, ComplexMatrix& out, bool adjoint) {
  if (!adjoint) {
    const Source src = forward_source(c, s.offset, s.cells);
    out.block(c * n, src.cell * n, n, n) = src.wrap ? *s.wrap : *s.stay;
  } else {
    const Source src = adjoint_source(c, s.offset, s.cells);
    out.block(c * n, src.cell * n, n, n) = (src.wrap ? *s.wrap : *s.stay).adjoint();
  }
}

inline void shift2_cell(const Shift2& s, Eigen::Index n, int cell, ComplexMatrix& out, bool adjoint) {
  const int cx = cell / s.cells;
  const int cy = cell % s.cells;
  const Source sx = adjoint ? adjoint_source(cx, s.offset_x, s.cells) : forward_source(cx, s.offset_x, s.cells);
  const Source sy = adjoint ? adjoint_source(cy, s.offset_y, s.cells) : forward_source(cy, s.offset_y, s.cells);
  const Eigen::Index src = static_cast<Eigen::Index>(sx.cell) * s.cells + sy.cell;
  const ComplexMatrix& op = *s.op[sx.wrap][sy.wrap];
  if (adjoint) {
    out.block(cell * n, src * n, n, n) = op.adjoint();
  } else {
    out.block(cell * n, src * n, n, n) = op;
  }
}

inline void apply1_cell(const Shift1& s, Eigen::Index n, int c, const ComplexVector& x, ComplexVector& y) {
  const Source src = forward_source(c, s.offset, s.cells);
  y.segment(c * n, n).noalias() = (src.wrap ? *s.wrap : *s.stay) * x.segment(src.cell * n, n);
}

inline void apply2_cell(const Shift2& s, Eigen::Index n, int cell, const ComplexVector& x,
                        ComplexVector& y, bool adjoint) {
  const int cx = cell / s.cells;
  const int cy = cell % s.cells;
  const Source sx = adjoint ? adjoint_source(cx, s.offset_x, s.cells) : forward_source(cx, s.offset_x, s.cells);
  const Source sy = adjoint ? adjoint_source(cy, s.offset_y, s.cells) : forward_source(cy, s.offset_y, s.cells);
  const Eigen::Index src = static_cast<Eigen::Index>(sx.cell) * s.cells + sy.cell;
  const ComplexMatrix& op = *s.op[sx.wrap][sy.wrap];
  if (adjoint) {
    y.segment(cell * n, n).noalias() = op.adjoint() * x.segment(src * n, n);
  } else {
    y.segment(cell * n, n).noalias() = op * x.segment(src * n, n);
  }
}

inline double column_residual(const ComplexMatrix& a, const ComplexMatrix& t, const ComplexMatrix& b,
                              Eigen::Index j) {
  const ComplexVector col = a * t.col(j) - t * b.col(j);
  return col.size() == 0 ? 0.0 : col.cwiseAbs().maxCoeff();
}

void check_residual_shapes(const ComplexMatrix& a, const ComplexMatrix& t, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || t.rows() != a.rows() || t.cols() != b.rows()) {
    throw DimensionMismatch("intertwining_residual: need square A (p), B (q) and T p x q");
  }
}

}  // namespace

namespace serial {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) kron_row_block(a, b, i, out);
  return out;
}

ComplexMatrix shift_matrix_1d(const Shift1& s) {
  const Eigen::Index n = fiber_dim(s);
  ComplexMatrix out = ComplexMatrix::Zero(s.cells * n, s.cells * n);
  for (int c = 0; c < s.cells; ++c) shift1_cell(s, n, c, out, false);
  return out;
}

ComplexMatrix adjoint_matrix_1d(const Shift1& s) {
  const Eigen::Index n = fiber_dim(s);
  ComplexMatrix out = ComplexMatrix::Zero(s.cells * n, s.cells * n);
  for (int c = 0; c < s.cells; ++c) shift1_cell(s, n, c, out, true);
  return out;
}

ComplexMatrix shift_matrix_2d(const Shift2& s) {
  const Eigen::Index n = fiber_dim(s);
  const int total = s.cells * s.cells;
  ComplexMatrix out = ComplexMatrix::Zero(total * n, total * n);
  for (int c = 0; c < total; ++c) shift2_cell(s, n, c, out, false);
  return out;
}

ComplexMatrix adjoint_matrix_2d(const Shift2& s) {
  const Eigen::Index n = fiber_dim(s);
  const int total = s.cells * s.cells;
  ComplexMatrix out = ComplexMatrix::Zero(total * n, total * n);
  for (int c = 0; c < total; ++c) shift2_cell(s, n, c, out, true);
  return out;
}

ComplexVector apply_shift_1d(const Shift1& s, const ComplexVector& x) {
  const Eigen::Index n = fiber_dim(s);
  if (x.size() != s.cells * n) throw DimensionMismatch("apply_shift_1d: vector length");
  ComplexVector y(x.size());
  for (int c = 0; c < s.cells; ++c) apply1_cell(s, n, c, x, y);
  return y;
}

ComplexVector apply_shift_2d(const Shift2& s, const ComplexVector& x) {
  const Eigen::Index n = fiber_dim(s);
  const int total = s.cells * s.cells;
  if (x.size() != total * n) throw DimensionMismatch("apply_shift_2d: vector length");
  ComplexVector y(x.size());
  for (int c = 0; c < total; ++c) apply2_cell(s, n, c, x, y, false);
  return y;
}

ComplexVector apply_adjoint_2d(const Shift2& s, const ComplexVector& x) {
  const Eigen::Index n = fiber_dim(s);
  const int total = s.cells * s.cells;
  if (x.size() != total * n) throw DimensionMismatch("apply_adjoint_2d: vector length");
  ComplexVector y(x.size());
  for (int c = 0; c < total; ++c) apply2_cell(s, n, c, x, y, true);
  return y;
}

double intertwining_residual(const ComplexMatrix& a, const ComplexMatrix& t, const ComplexMatrix& b) {
  check_residual_shapes(a, t, b);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < t.cols(); ++j) worst = std::max(worst, column_residual(a, t, b, j));
  return worst;
}

}  // namespace serial

namespace parallel {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  const Eigen::Index rows = a.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < rows; ++i) kron_row_block(a, b, i, out);
  return out;
}

ComplexMatrix shift_matrix_1d(const Shift1& s) {
  const Eigen::Index n = fiber_dim(s);
  ComplexMatrix out = ComplexMatrix::Zero(s.cells * n, s.cells * n);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < s.cells; ++c) shift1_cell(s, n, c, out, false);
  return out;
}

ComplexMatrix adjoint_matrix_1d(const Shift1& s) {
  const Eigen::Index n = fiber_dim(s);
  ComplexMatrix out = ComplexMatrix::Zero(s.cells * n, s.cells * n);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < s.cells; ++c) shift1_cell(s, n, c, out, true);
  return out;
}

ComplexMatrix shift_matrix_2d(const Shift2& s) {
  const Eigen::Index n = fiber_dim(s);
  const int total = s.cells * s.cells;
  ComplexMatrix out = ComplexMatrix::Zero(total * n, total * n);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < total; ++c) shift2_cell(s, n, c, out, false);
  return out;
}

ComplexMatrix adjoint_matrix_2d(const Shift2& s) {
  const Eigen::Index n = fiber_dim(s);
  const int total = s.cells * s.cells;
  ComplexMatrix out = ComplexMatrix::Zero(total * n, total * n);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < total; ++c) shift2_cell(s, n, c, out, true);
  return out;
}

ComplexVector apply_shift_1d(const Shift1& s, const ComplexVector& x) {
  const Eigen::Index n = fiber_dim(s);
  if (x.size() != s.cells * n) throw DimensionMismatch("apply_shift_1d: vector length");
  ComplexVector y(x.size());
#pragma omp parallel for schedule(static)
  for (int c = 0; c < s.cells; ++c) apply1_cell(s, n, c, x, y);
  return y;
}

ComplexVector apply_shift_2d(const Shift2& s, const ComplexVector& x) {
  const Eigen::Index n = fiber_dim(s);
  const int total = s.cells * s.cells;
  if (x.size() != total * n) throw DimensionMismatch("apply_shift_2d: vector length");
  ComplexVector y(x.size());
#pragma omp parallel for schedule(static)
  for (int c = 0; c < total; ++c) apply2_cell(s, n, c, x, y, false);
  return y;
}

ComplexVector apply_adjoint_2d(const Shift2& s, const ComplexVector& x) {
  const Eigen::Index n = fiber_dim(s);
  const int total = s.cells * s.cells;
  if (x.size() != total * n) throw DimensionMismatch("apply_adjoint_2d: vector length");
  ComplexVector y(x.size());
#pragma omp parallel for schedule(static)
  for (int c = 0; c < total; ++c) apply2_cell(s, n, c, x, y, true);
  return y;
}

double intertwining_residual(const ComplexMatrix& a, const ComplexMatrix& t, const ComplexMatrix& b) {
  check_residual_shapes(a, t, b);
  double worst = 0.0;
  const Eigen::Index cols = t.cols();
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (Eigen::Index j = 0; j < cols; ++j) worst = std::max(worst, column_residual(a, t, b, j));
  return worst;
}

}  // namespace parallel
}  // namespace isorep::kernels
