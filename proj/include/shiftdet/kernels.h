#pragma once

#include <functional>

#include "shiftdet/config.h"
#include "shiftdet/node_kernel.h"
#include "shiftdet/types.h"

namespace shiftdet {

// e(z) = exp(i x p(z) / 2)
cplx eval_e(cplx z, const ProblemConfig& cfg);
cplx eval_e_inverse(cplx z, const ProblemConfig& cfg);

// Generalized sine kernel F(l)[e(l)/e(m) - e(m)/e(l)] / (2 i pi (l - m)).
// Switches to the divided-difference form below cfg.near_diagonal_threshold().
cplx gsk_kernel(cplx lambda, cplx mu, const ProblemConfig& cfg);
cplx gsk_kernel_direct(cplx lambda, cplx mu, const ProblemConfig& cfg);
cplx gsk_kernel_near(cplx lambda, cplx mu, const ProblemConfig& cfg);

// Two-shift kernel
//   S(l, m) = i c F(l) / (2 i pi (l - m)) {e(l)/e(m) / (l - m + ic) + e(m)/e(l) / (l - m - ic)}.
// Throws std::invalid_argument at l - m = +-ic.
cplx shift_kernel(cplx lambda, cplx mu, const ProblemConfig& cfg);
cplx shift_kernel_direct(cplx lambda, cplx mu, const ProblemConfig& cfg);
cplx shift_kernel_near(cplx lambda, cplx mu, const ProblemConfig& cfg);

// Vector pair (E_L, E_R) of an integrable kernel (E_L(l), E_R(m)) / (l - m).
// right_divided_difference(l, m) = (E_R(m) - E_R(l)) / (m - l), equal to E_R'(l) at m == l.
struct VectorPair {
  int dim = 0;
  std::function<Vector(cplx)> left;
  std::function<Vector(cplx)> right;
  std::function<Vector(cplx, cplx)> right_divided_difference;
};

// E_L = F/(2 i pi) (-1/e, e), E_R = (e, 1/e).
VectorPair gsk_vector_pair(const ProblemConfig& cfg);
// gamma = (1, 1), c = (-c, c), v = (1, 2).
ShiftSpec gsk_shift_spec(double c);

// Largest |(E_L(l), E_R(l))| over a uniform grid of [a, b].
double regularity_defect(const VectorPair& pair, double a, double b, int samples = 257);

// V~(l, m) = (E_L(l), E_R(m)) / (l - m), with the regular diagonal -(E_L(l), E_R'(l)).
cplx integrable_kernel(cplx lambda, cplx mu, const VectorPair& pair, double near_threshold);

// V(l, m) = V~(l, m) - sum_a gamma_a f_a(l) e_{v_a}(m) / (l - m + i c_a).
// Throws std::invalid_argument at the shifted poles.
cplx general_kernel_V(cplx lambda, cplx mu, const VectorPair& pair, const ShiftSpec& shift,
                      double near_threshold);

// Tabulating node kernels for V~ and V.
NodeKernelFactory integrable_kernel_on_nodes(const VectorPair& pair, double near_threshold);
NodeKernelFactory general_kernel_on_nodes(const VectorPair& pair, const ShiftSpec& shift,
                                          double near_threshold);

}  // namespace shiftdet
