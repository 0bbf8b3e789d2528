#pragma once

#include "shiftdet/config.h"
#include "shiftdet/node_kernel.h"
#include "shiftdet/rhp.h"
#include "shiftdet/types.h"

namespace shiftdet {

// Kernels built from a solved chi. Factories hold a reference to `chi` (and
// `alpha`), which must outlive them. Node tables are built per rule, so the
// returned NodeKernels are safe to call concurrently.

// W(l, m) = -sum_n gamma_n (F_L(l), chi(m - i c_n) e_n) E_R,v_n(m) / (l - m + i c_n), on [a, b].
cplx W_kernel(cplx lambda, cplx mu, const ChiSolution& chi, const ShiftSpec& shift);
NodeKernelFactory W_on_nodes(const ChiSolution& chi, const ShiftSpec& shift);

// M_kl(l, m) = gamma_k [chi^{-1}(l) chi(m - i c_l)]_{v_k, l} / (2 i pi (l - m + i c_l)), on the loop.
// Throws std::invalid_argument when a denominator vanishes.
Matrix M_kernel(cplx lambda, cplx mu, const ChiSolution& chi, const ShiftSpec& shift);
NodeMatrixKernelFactory M_on_nodes(const ChiSolution& chi, const ShiftSpec& shift);

// N_kl(l, m) = sgn(c_k) gamma_k [I - chi^{-1}(l + i c_k/2) chi(m - i c_l/2)]_{v_k, l}
//              / (2 i pi (l - m + i (c_k + c_l)/2)), on the real line.
// For c_k + c_l = 0 and |l - m| < near_threshold the entry comes from the
// divided difference of chi^{-1}.
Matrix N_kernel(cplx lambda, cplx mu, const ChiSolution& chi, const ShiftSpec& shift, double near_threshold);
NodeMatrixKernelFactory N_on_nodes(const ChiSolution& chi, const ShiftSpec& shift, double near_threshold);

// U+(l, m) = alpha(m - ic) / alpha(l) / (2 i pi (l - m + ic))
// U-(l, m) = alpha(l) / alpha(m + ic) / (2 i pi (l - m - ic))
// M0 = diag(U-, U+)
cplx U_plus_kernel(cplx lambda, cplx mu, const AlphaEvaluator& alpha, double c);
cplx U_minus_kernel(cplx lambda, cplx mu, const AlphaEvaluator& alpha, double c);
Matrix M0_kernel(cplx lambda, cplx mu, const AlphaEvaluator& alpha, double c);

NodeKernelFactory U_plus_on_nodes(const AlphaEvaluator& alpha, double c);
NodeKernelFactory U_minus_on_nodes(const AlphaEvaluator& alpha, double c);
NodeMatrixKernelFactory M0_on_nodes(const AlphaEvaluator& alpha, double c);

}  // namespace shiftdet
