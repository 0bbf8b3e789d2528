#pragma once

#include <span>
#include <vector>

#include "shiftdet/node_kernel.h"
#include "shiftdet/quadrature.h"
#include "shiftdet/types.h"

namespace shiftdet {

struct DetResult {
  cplx value{1.0, 0.0};
  int rule_size = 0;
  // |value - value at half resolution| / |value|
  double convergence_delta = 0.0;
  double elapsed = 0.0;  // seconds, both resolutions
};

// I + K diag(w): block (j, k) = delta_jk I + w_k K(z_j, z_k).
Matrix assemble_nystrom(const NodeKernel& kernel, const QuadratureRule& rule, ExecPolicy policy);
Matrix assemble_nystrom_matrix(const NodeMatrixKernel& kernel, const QuadratureRule& rule, int dim,
                               ExecPolicy policy);

// Serial reference and OpenMP row-parallel assemblies; identical results.
Matrix assemble_nystrom_serial(const NodeKernel& kernel, const QuadratureRule& rule);
Matrix assemble_nystrom_omp(const NodeKernel& kernel, const QuadratureRule& rule);
Matrix assemble_nystrom_matrix_serial(const NodeMatrixKernel& kernel, const QuadratureRule& rule, int dim);
Matrix assemble_nystrom_matrix_omp(const NodeMatrixKernel& kernel, const QuadratureRule& rule, int dim);

// Dense LU with partial pivoting. Throws NumericError on exact singularity or non-finite input.
cplx lu_determinant(const Matrix& a);

DetResult nystrom_det(const NodeKernelFactory& kernel, const QuadratureRule& rule,
                      ExecPolicy policy = ExecPolicy::Serial);
DetResult nystrom_det(const ScalarKernel& kernel, const QuadratureRule& rule,
                      ExecPolicy policy = ExecPolicy::Serial);
DetResult nystrom_det_matrix(const NodeMatrixKernelFactory& kernel, const QuadratureRule& rule, int dim,
                             ExecPolicy policy = ExecPolicy::Serial);
DetResult nystrom_det_matrix(const MatrixKernel& kernel, const QuadratureRule& rule, int dim,
                             ExecPolicy policy = ExecPolicy::Serial);

// Determinant at each size. Entry i reports its delta against entry i-1
// (entry 0 against its own half resolution).
std::vector<DetResult> convergence_study(const NodeKernelFactory& kernel, const QuadratureRule& base,
                                         std::span<const int> sizes, ExecPolicy policy = ExecPolicy::Serial);

// True when each delta is at least `factor` times smaller than the previous one,
// or already below `floor`.
bool deltas_decrease_geometrically(const std::vector<DetResult>& study, double factor, double floor);

}  // namespace shiftdet
