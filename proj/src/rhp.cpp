#include "shiftdet/rhp.h"

#include <cmath>
#include <stdexcept>

#include "shiftdet/determinants.h"

namespace shiftdet {

bool near_interval(cplx z, double a, double b, std::size_t n) {
  const cplx w = (2.0 * z - (a + b)) / (b - a);
  const cplx r = w + std::sqrt(w - 1.0) * std::sqrt(w + 1.0);
  const double log_rho = std::abs(std::log(std::abs(r)));
  return 2.0 * static_cast<double>(n) * log_rho < 40.0;
}

cplx cauchy_log(cplx z, double a, double b) { return std::log(b - z) - std::log(a - z); }

namespace {

Eigen::VectorXcd cauchy_weights(const QuadratureRule& rule, cplx z) {
  const auto n = static_cast<Eigen::Index>(rule.size());
  Eigen::VectorXcd c(n);
  for (Eigen::Index k = 0; k < n; ++k) c(k) = rule.weights()[k] / (rule.nodes()[k] - z);
  return c;
}

double bounds(const QuadratureRule& rule, bool upper) {
  const auto& d = std::get<IntervalDescriptor>(rule.descriptor());
  return upper ? d.b : d.a;
}

}  // namespace

ChiSolution::ChiSolution(QuadratureRule rule, VectorPair pair, double near_threshold, ExecPolicy policy)
    : rule_(std::move(rule)), pair_(std::move(pair)), near_threshold_(near_threshold) {
  if (rule_.kind() != DomainKind::Interval) throw std::invalid_argument("ChiSolution needs an interval rule");
  a_ = bounds(rule_, false);
  b_ = bounds(rule_, true);
  const auto n = static_cast<Eigen::Index>(rule_.size());
  const int dim = pair_.dim;
  el_.resize(n, dim);
  er_.resize(n, dim);
  for (Eigen::Index k = 0; k < n; ++k) {
    el_.row(k) = pair_.left(rule_.nodes()[k]).transpose();
    er_.row(k) = pair_.right(rule_.nodes()[k]).transpose();
  }

  const NodeKernel vt = integrable_kernel_on_nodes(pair_, near_threshold_)(rule_);
  const NodeKernel vt_transposed = [&vt](std::size_t r, std::size_t c) { return vt(c, r); };
  const Matrix a_left = assemble_nystrom(vt, rule_, policy);
  const Matrix a_right = assemble_nystrom(vt_transposed, rule_, policy);

  Eigen::PartialPivLU<Matrix> lu_left(a_left);
  Eigen::PartialPivLU<Matrix> lu_right(a_right);
  if (!(lu_left.rcond() > 1e-13) || !(lu_right.rcond() > 1e-13)) {
    throw NumericError("I + V~ is numerically singular; the resolvent equations have no unique solution");
  }
  det_tilde_ = lu_left.determinant();
  if (!std::isfinite(std::abs(det_tilde_))) throw NumericError("det(I + V~) is not finite");
  fl_ = lu_left.solve(el_);
  fr_ = lu_right.solve(er_);

  auto rel = [](const Matrix& resid, const Matrix& rhs) {
    const double scale = rhs.norm();
    return scale > 0.0 ? resid.norm() / scale : resid.norm();
  };
  node_residual_l_ = rel(a_left * fl_ - el_, el_);
  node_residual_r_ = rel(a_right * fr_ - er_, er_);
}

bool ChiSolution::near_interval(cplx z) const { return shiftdet::near_interval(z, a_, b_, rule_.size()); }

Vector ChiSolution::FR_at(cplx z) const {
  // F_R(z) = E_R(z) - sum_k w_k V~(t_k, z) F_R(t_k)
  const Vector right = pair_.right(z);
  Vector out = right;
  const auto& t = rule_.nodes();
  const auto& w = rule_.weights();
  for (Eigen::Index k = 0; k < fr_.rows(); ++k) {
    const cplx d = t[k] - z;
    const Vector left_k = el_.row(k).transpose();
    const cplx kern = std::abs(d) < near_threshold_
                          ? -bilinear(left_k, pair_.right_divided_difference(t[k], z))
                          : bilinear(left_k, right) / d;
    out -= w[k] * kern * fr_.row(k).transpose();
  }
  return out;
}

Vector ChiSolution::FL_at(cplx z) const {
  // F_L(z) = E_L(z) - sum_k w_k V~(z, t_k) F_L(t_k)
  const Vector left = pair_.left(z);
  Vector out = left;
  const auto& t = rule_.nodes();
  const auto& w = rule_.weights();
  for (Eigen::Index k = 0; k < fl_.rows(); ++k) {
    const cplx d = z - t[k];
    const cplx kern = std::abs(d) < near_threshold_ ? -bilinear(left, pair_.right_divided_difference(z, t[k]))
                                                    : bilinear(left, er_.row(k).transpose()) / d;
    out -= w[k] * kern * fl_.row(k).transpose();
  }
  return out;
}

Matrix ChiSolution::chi(cplx z) const {
  const Eigen::VectorXcd c = cauchy_weights(rule_, z);
  Matrix integral = fr_.transpose() * c.asDiagonal() * el_;
  if (near_interval(z)) {
    const Matrix g = FR_at(z) * pair_.left(z).transpose();
    integral += g * (cauchy_log(z, a_, b_) - c.sum());
  }
  return Matrix::Identity(dim(), dim()) - integral;
}

Matrix ChiSolution::chi_inv(cplx z) const {
  const Eigen::VectorXcd c = cauchy_weights(rule_, z);
  Matrix integral = er_.transpose() * c.asDiagonal() * fl_;
  if (near_interval(z)) {
    const Matrix g = pair_.right(z) * FL_at(z).transpose();
    integral += g * (cauchy_log(z, a_, b_) - c.sum());
  }
  return Matrix::Identity(dim(), dim()) + integral;
}

Matrix ChiSolution::chi_inv_divided_difference(cplx z1, cplx z2) const {
  const auto n = static_cast<Eigen::Index>(rule_.size());
  Eigen::VectorXcd c(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx t = rule_.nodes()[k];
    c(k) = rule_.weights()[k] / ((t - z1) * (t - z2));
  }
  return er_.transpose() * c.asDiagonal() * fl_;
}

std::pair<double, double> ChiSolution::probe_residuals(std::span<const double> probes) const {
  const QuadratureRule fine = gauss_legendre_rule(2 * static_cast<int>(rule_.size()) + 1, a_, b_);
  const auto m = fine.size();
  std::vector<Vector> fr_fine, fl_fine, left_fine, right_fine;
  for (const auto& s : fine.nodes()) {
    fr_fine.push_back(FR_at(s));
    fl_fine.push_back(FL_at(s));
    left_fine.push_back(pair_.left(s));
    right_fine.push_back(pair_.right(s));
  }
  double worst_r = 0.0, worst_l = 0.0;
  for (double lambda : probes) {
    const Vector left = pair_.left(lambda);
    const Vector right = pair_.right(lambda);
    Vector res_r = FR_at(lambda) - right;
    Vector res_l = FL_at(lambda) - left;
    for (std::size_t k = 0; k < m; ++k) {
      const cplx s = fine.nodes()[k];
      const cplx w = fine.weights()[k];
      res_r += w * integrable_kernel(s, lambda, pair_, near_threshold_) * fr_fine[k];
      res_l += w * integrable_kernel(lambda, s, pair_, near_threshold_) * fl_fine[k];
    }
    const double sr = right.norm(), sl = left.norm();
    worst_r = std::max(worst_r, sr > 0.0 ? res_r.norm() / sr : res_r.norm());
    worst_l = std::max(worst_l, sl > 0.0 ? res_l.norm() / sl : res_l.norm());
  }
  return {worst_r, worst_l};
}

ChiSolution solve_chi(const ProblemConfig& cfg, const QuadratureRule& rule, const VectorPair& pair,
                      ExecPolicy policy) {
  return ChiSolution(rule, pair, cfg.near_diagonal_threshold(), policy);
}

ChiSolution solve_chi(const ProblemConfig& cfg, const VectorPair& pair, ExecPolicy policy) {
  return solve_chi(cfg, cfg.interval_rule(), pair, policy);
}

AlphaEvaluator::AlphaEvaluator(QuadratureRule rule, FunctionSpec F) : rule_(std::move(rule)), F_(std::move(F)) {
  if (rule_.kind() != DomainKind::Interval) throw std::invalid_argument("AlphaEvaluator needs an interval rule");
  a_ = bounds(rule_, false);
  b_ = bounds(rule_, true);
  log_f_.reserve(rule_.size());
  for (const auto& t : rule_.nodes()) {
    const cplx f = F_.value(t);
    if (!(std::abs(f) < 1.0)) throw std::invalid_argument("alpha: |F| must be < 1 at the interval nodes");
    log_f_.push_back(std::log(1.0 + f));
  }
}

bool AlphaEvaluator::near_interval(cplx z) const { return shiftdet::near_interval(z, a_, b_, rule_.size()); }

cplx AlphaEvaluator::log_alpha(cplx z) const {
  // int g(m) / (z - m) dm = -int g(m) / (m - z) dm
  const auto& t = rule_.nodes();
  const auto& w = rule_.weights();
  cplx sum = 0.0;
  if (!near_interval(z)) {
    for (std::size_t k = 0; k < t.size(); ++k) sum += w[k] * log_f_[k] / (t[k] - z);
  } else {
    const cplx gz = std::log(1.0 + F_.value(z));
    for (std::size_t k = 0; k < t.size(); ++k) sum += w[k] * (log_f_[k] - gz) / (t[k] - z);
    sum += gz * cauchy_log(z, a_, b_);
  }
  return -sum / kTwoPiI;
}

AlphaEvaluator make_alpha(const ProblemConfig& cfg) { return AlphaEvaluator(cfg.interval_rule(), cfg.F); }

Matrix jump_matrix(double lambda, const VectorPair& pair, JumpOrientation orientation) {
  const Vector left = pair.left(lambda);
  const Vector right = pair.right(lambda);
  const Matrix dyad = orientation == JumpOrientation::RightLeft ? Matrix(right * left.transpose())
                                                                : Matrix(left * right.transpose());
  return Matrix::Identity(pair.dim, pair.dim) + kTwoPiI * dyad;
}

namespace {

template <class Eval>
auto boundary_value(Eval&& eval, double lambda0, double eps, double side, bool richardson) {
  const auto full = eval(cplx(lambda0, side * eps));
  if (!richardson) return full;
  const auto half = eval(cplx(lambda0, side * 0.5 * eps));
  return decltype(full)(2.0 * half - full);
}

}  // namespace

double jump_residual_chi(double lambda0, double eps, const ChiSolution& chi, JumpOrientation orientation,
                         bool richardson) {
  auto eval = [&chi](cplx z) { return chi.chi(z); };
  const Matrix plus = boundary_value(eval, lambda0, eps, +1.0, richardson);
  const Matrix minus = boundary_value(eval, lambda0, eps, -1.0, richardson);
  const Matrix g = jump_matrix(lambda0, chi.pair(), orientation);
  return (minus - plus * g).norm() / g.norm();
}

double jump_residual_alpha(double lambda0, double eps, const AlphaEvaluator& alpha, const FunctionSpec& F,
                           bool richardson) {
  auto eval = [&alpha](cplx z) { return alpha(z); };
  const cplx plus = boundary_value(eval, lambda0, eps, +1.0, richardson);
  const cplx minus = boundary_value(eval, lambda0, eps, -1.0, richardson);
  const cplx target = plus * (1.0 + F.value(lambda0));
  return std::abs(minus - target) / std::abs(target);
}

}  // namespace shiftdet
