#pragma once

#include <span>
#include <utility>

#include "shiftdet/config.h"
#include "shiftdet/kernels.h"
#include "shiftdet/quadrature.h"
#include "shiftdet/types.h"

namespace shiftdet {

// Nystrom solution of the resolvent equations on an interval rule
//   F_R(l) + int V~(m, l) F_R(m) dm = E_R(l),
//   F_L(l) + int V~(l, m) F_L(m) dm = E_L(l),
// and the reconstruction
//   chi(z)   = I - int F_R(m) E_L(m)^T / (m - z) dm,
//   chi^{-1}(z) = I + int E_R(m) F_L(m)^T / (m - z) dm.
// Immutable after construction.
//
// Points whose Bernstein-ellipse parameter rho satisfies 2 n ln(rho) < 40 are
// "near" the interval: plain Gauss quadrature of the Cauchy integrals loses
// accuracy there, so the integrand value at z is subtracted and integrated
// in closed form.
class ChiSolution {
 public:
  ChiSolution(QuadratureRule rule, VectorPair pair, double near_threshold,
              ExecPolicy policy = ExecPolicy::Serial);

  const QuadratureRule& rule() const { return rule_; }
  const VectorPair& pair() const { return pair_; }
  int dim() const { return pair_.dim; }
  cplx det_tilde() const { return det_tilde_; }

  // Rows are nodes, columns are components.
  const Matrix& FR_nodes() const { return fr_; }
  const Matrix& FL_nodes() const { return fl_; }

  // Nystrom interpolants, valid anywhere E_L, E_R are defined.
  Vector FR_at(cplx z) const;
  Vector FL_at(cplx z) const;

  Matrix chi(cplx z) const;
  Matrix chi_inv(cplx z) const;
  // (chi^{-1}(z1) - chi^{-1}(z2)) / (z1 - z2); the derivative when z1 == z2. Off-interval points only.
  Matrix chi_inv_divided_difference(cplx z1, cplx z2) const;

  bool near_interval(cplx z) const;

  // Relative residuals of the two discrete systems at the nodes.
  double node_residual_R() const { return node_residual_r_; }
  double node_residual_L() const { return node_residual_l_; }

  // Max relative residual of both continuous equations at off-node probes,
  // integrating the Nystrom interpolants with a rule of 2n+1 points.
  std::pair<double, double> probe_residuals(std::span<const double> probes) const;

 private:
  QuadratureRule rule_;
  VectorPair pair_;
  double near_threshold_;
  double a_;
  double b_;
  Matrix el_;  // E_L at nodes
  Matrix er_;  // E_R at nodes
  Matrix fr_;
  Matrix fl_;
  cplx det_tilde_{1.0, 0.0};
  double node_residual_r_ = 0.0;
  double node_residual_l_ = 0.0;
};

ChiSolution solve_chi(const ProblemConfig& cfg, const VectorPair& pair, ExecPolicy policy = ExecPolicy::Serial);
ChiSolution solve_chi(const ProblemConfig& cfg, const QuadratureRule& rule, const VectorPair& pair,
                      ExecPolicy policy = ExecPolicy::Serial);

// alpha(z) = exp{ int_a^b ln(1 + F(m)) / (z - m) dm / (2 i pi) }, principal branch of ln.
class AlphaEvaluator {
 public:
  AlphaEvaluator(QuadratureRule rule, FunctionSpec F);

  cplx operator()(cplx z) const { return std::exp(log_alpha(z)); }
  cplx log_alpha(cplx z) const;
  bool near_interval(cplx z) const;
  const QuadratureRule& rule() const { return rule_; }

 private:
  QuadratureRule rule_;
  FunctionSpec F_;
  double a_;
  double b_;
  std::vector<cplx> log_f_;
};

AlphaEvaluator make_alpha(const ProblemConfig& cfg);

// Bernstein-ellipse test shared by the Cauchy-integral evaluators.
bool near_interval(cplx z, double a, double b, std::size_t n);
// int_a^b dm / (m - z), continuous on C \ [a, b].
cplx cauchy_log(cplx z, double a, double b);

enum class JumpOrientation {
  RightLeft,  // G = I + 2 i pi E_R E_L^T
  LeftRight   // G = I + 2 i pi E_L E_R^T
};

Matrix jump_matrix(double lambda, const VectorPair& pair, JumpOrientation orientation);

// ||chi_-(l0) - chi_+(l0) G(l0)|| / ||G(l0)||, with "+" the upper half-plane.
// Boundary values from offsets eps and eps/2, Richardson-combined when `richardson` is set.
double jump_residual_chi(double lambda0, double eps, const ChiSolution& chi,
                         JumpOrientation orientation = JumpOrientation::RightLeft, bool richardson = true);

// |alpha_-(l0) - alpha_+(l0)(1 + F(l0))| / |alpha_+(l0)(1 + F(l0))| with the same scheme.
double jump_residual_alpha(double lambda0, double eps, const AlphaEvaluator& alpha, const FunctionSpec& F,
                           bool richardson = true);

}  // namespace shiftdet
