#pragma once

#include <cstddef>
#include <functional>

#include "shiftdet/quadrature.h"
#include "shiftdet/types.h"

namespace shiftdet {

using ScalarKernel = std::function<cplx(cplx, cplx)>;
using MatrixKernel = std::function<Matrix(cplx, cplx)>;

// Kernel entry K(z_row, z_col) addressed by node index of a fixed rule.
using NodeKernel = std::function<cplx(std::size_t row, std::size_t col)>;
// N x N block K(z_row, z_col).
using NodeMatrixKernel = std::function<Matrix(std::size_t row, std::size_t col)>;

// Binds a kernel to the nodes of a rule; may tabulate expensive per-node data.
// The returned kernels must be safe to call concurrently.
using NodeKernelFactory = std::function<NodeKernel(const QuadratureRule&)>;
using NodeMatrixKernelFactory = std::function<NodeMatrixKernel(const QuadratureRule&)>;

inline NodeKernelFactory pointwise(ScalarKernel k) {
  return [k = std::move(k)](const QuadratureRule& rule) -> NodeKernel {
    return [k, nodes = rule.nodes()](std::size_t r, std::size_t c) { return k(nodes[r], nodes[c]); };
  };
}

inline NodeMatrixKernelFactory pointwise(MatrixKernel k) {
  return [k = std::move(k)](const QuadratureRule& rule) -> NodeMatrixKernel {
    return [k, nodes = rule.nodes()](std::size_t r, std::size_t c) { return k(nodes[r], nodes[c]); };
  };
}

}  // namespace shiftdet
