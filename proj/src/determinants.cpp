#include "shiftdet/determinants.h"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace shiftdet {

Matrix assemble_nystrom_serial(const NodeKernel& kernel, const QuadratureRule& rule) {
  const auto n = static_cast<Eigen::Index>(rule.size());
  const auto& w = rule.weights();
  Matrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      a(j, k) = w[k] * kernel(j, k);
    }
    a(j, j) += 1.0;
  }
  return a;
}

Matrix assemble_nystrom_omp(const NodeKernel& kernel, const QuadratureRule& rule) {
  const auto n = static_cast<Eigen::Index>(rule.size());
  const auto& w = rule.weights();
  Matrix a(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      a(j, k) = w[k] * kernel(j, k);
    }
    a(j, j) += 1.0;
  }
  return a;
}

Matrix assemble_nystrom_matrix_serial(const NodeMatrixKernel& kernel, const QuadratureRule& rule, int dim) {
  const auto n = static_cast<Eigen::Index>(rule.size());
  const auto& w = rule.weights();
  Matrix a(n * dim, n * dim);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      a.block(j * dim, k * dim, dim, dim) = w[k] * kernel(j, k);
    }
  }
  a.diagonal().array() += 1.0;
  return a;
}

Matrix assemble_nystrom_matrix_omp(const NodeMatrixKernel& kernel, const QuadratureRule& rule, int dim) {
  const auto n = static_cast<Eigen::Index>(rule.size());
  const auto& w = rule.weights();
  Matrix a(n * dim, n * dim);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      a.block(j * dim, k * dim, dim, dim) = w[k] * kernel(j, k);
    }
  }
  a.diagonal().array() += 1.0;
  return a;
}

Matrix assemble_nystrom(const NodeKernel& kernel, const QuadratureRule& rule, ExecPolicy policy) {
  return policy == ExecPolicy::Serial ? assemble_nystrom_serial(kernel, rule) : assemble_nystrom_omp(kernel, rule);
}

Matrix assemble_nystrom_matrix(const NodeMatrixKernel& kernel, const QuadratureRule& rule, int dim,
                               ExecPolicy policy) {
  return policy == ExecPolicy::Serial ? assemble_nystrom_matrix_serial(kernel, rule, dim)
                                      : assemble_nystrom_matrix_omp(kernel, rule, dim);
}

cplx lu_determinant(const Matrix& a) {
  if (!a.allFinite()) throw NumericError("determinant of a matrix with non-finite entries");
  Eigen::PartialPivLU<Matrix> lu(a);
  const auto& packed = lu.matrixLU();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    if (packed(i, i) == cplx(0.0)) throw NumericError("LU factorization hit an exactly singular pivot");
  }
  const cplx det = lu.determinant();
  if (!std::isfinite(det.real()) || !std::isfinite(det.imag())) throw NumericError("determinant overflowed");
  return det;
}

namespace {

using Clock = std::chrono::steady_clock;

double relative_change(cplx value, cplx reference) {
  const double scale = std::abs(value);
  const double diff = std::abs(value - reference);
  return scale > 0.0 ? diff / scale : diff;
}

template <class Eval>
DetResult with_half_resolution(const QuadratureRule& rule, Eval&& eval) {
  const auto start = Clock::now();
  DetResult r;
  r.value = eval(rule);
  r.rule_size = static_cast<int>(rule.size());
  const QuadratureRule half = rule.halved();
  r.convergence_delta = half.size() == rule.size() ? 0.0 : relative_change(r.value, eval(half));
  r.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace

DetResult nystrom_det(const NodeKernelFactory& kernel, const QuadratureRule& rule, ExecPolicy policy) {
  return with_half_resolution(rule, [&](const QuadratureRule& r) {
    return lu_determinant(assemble_nystrom(kernel(r), r, policy));
  });
}

DetResult nystrom_det(const ScalarKernel& kernel, const QuadratureRule& rule, ExecPolicy policy) {
  return nystrom_det(pointwise(kernel), rule, policy);
}

DetResult nystrom_det_matrix(const NodeMatrixKernelFactory& kernel, const QuadratureRule& rule, int dim,
                             ExecPolicy policy) {
  if (dim < 1) throw std::invalid_argument("matrix kernel dimension must be positive");
  return with_half_resolution(rule, [&](const QuadratureRule& r) {
    return lu_determinant(assemble_nystrom_matrix(kernel(r), r, dim, policy));
  });
}

DetResult nystrom_det_matrix(const MatrixKernel& kernel, const QuadratureRule& rule, int dim, ExecPolicy policy) {
  return nystrom_det_matrix(pointwise(kernel), rule, dim, policy);
}

std::vector<DetResult> convergence_study(const NodeKernelFactory& kernel, const QuadratureRule& base,
                                         std::span<const int> sizes, ExecPolicy policy) {
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) throw std::invalid_argument("convergence_study: sizes must increase");
  }
  std::vector<DetResult> out;
  out.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const QuadratureRule rule = base.resized(sizes[i]);
    if (i == 0) {
      out.push_back(nystrom_det(kernel, rule, policy));
      continue;
    }
    const auto start = Clock::now();
    DetResult r;
    r.value = lu_determinant(assemble_nystrom(kernel(rule), rule, policy));
    r.rule_size = static_cast<int>(rule.size());
    r.convergence_delta = relative_change(r.value, out.back().value);
    r.elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    out.push_back(r);
  }
  return out;
}

bool deltas_decrease_geometrically(const std::vector<DetResult>& study, double factor, double floor) {
  for (std::size_t i = 1; i < study.size(); ++i) {
    const double prev = study[i - 1].convergence_delta;
    const double cur = study[i].convergence_delta;
    if (cur < floor) continue;
    if (!(cur * factor <= prev)) return false;
  }
  return true;
}

}  // namespace shiftdet
