#include "shiftdet/kernels.h"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "shiftdet/functions.h"

namespace shiftdet {

cplx eval_e(cplx z, const ProblemConfig& cfg) { return std::exp(0.5 * kI * cfg.x * cfg.p.value(z)); }

cplx eval_e_inverse(cplx z, const ProblemConfig& cfg) { return std::exp(-0.5 * kI * cfg.x * cfg.p.value(z)); }

cplx gsk_kernel_direct(cplx lambda, cplx mu, const ProblemConfig& cfg) {
  const cplx num = eval_e(lambda, cfg) * eval_e_inverse(mu, cfg) - eval_e(mu, cfg) * eval_e_inverse(lambda, cfg);
  return cfg.F.value(lambda) * num / (kTwoPiI * (lambda - mu));
}

cplx gsk_kernel_near(cplx lambda, cplx mu, const ProblemConfig& cfg) {
  // e(l)/e(m) - e(m)/e(l) = 2i sin(theta), theta = x (p(l) - p(m)) / 2.
  const cplx dd = cfg.p.divided_difference(lambda, mu);
  const cplx theta = 0.5 * cfg.x * dd * (lambda - mu);
  return cfg.F.value(lambda) * 0.5 * cfg.x * dd * sinc(theta) / kPi;
}

cplx gsk_kernel(cplx lambda, cplx mu, const ProblemConfig& cfg) {
  if (std::abs(lambda - mu) < cfg.near_diagonal_threshold()) return gsk_kernel_near(lambda, mu, cfg);
  return gsk_kernel_direct(lambda, mu, cfg);
}

namespace {

void check_shift_poles(cplx d, double c) {
  const double scale = 1e-14 * (1.0 + c);
  if (std::abs(d + kI * c) < scale || std::abs(d - kI * c) < scale) {
    throw std::invalid_argument("shift kernel evaluated at a shifted pole lambda - mu = +-ic");
  }
}

}  // namespace

cplx shift_kernel_direct(cplx lambda, cplx mu, const ProblemConfig& cfg) {
  const cplx d = lambda - mu;
  const double c = cfg.c;
  check_shift_poles(d, c);
  const cplx ratio = eval_e(lambda, cfg) * eval_e_inverse(mu, cfg);
  const cplx brace = ratio / (d + kI * c) + 1.0 / ratio / (d - kI * c);
  return kI * c * cfg.F.value(lambda) / (kTwoPiI * d) * brace;
}

cplx shift_kernel_near(cplx lambda, cplx mu, const ProblemConfig& cfg) {
  // brace / d = [2 cos(theta) + 2c sin(theta)/d] / (d^2 + c^2)
  const cplx d = lambda - mu;
  const double c = cfg.c;
  check_shift_poles(d, c);
  const cplx dd = cfg.p.divided_difference(lambda, mu);
  const cplx theta = 0.5 * cfg.x * dd * d;
  const cplx numer = 2.0 * std::cos(theta) + c * cfg.x * dd * sinc(theta);
  return c * cfg.F.value(lambda) / (2.0 * kPi) * numer / (d * d + c * c);
}

cplx shift_kernel(cplx lambda, cplx mu, const ProblemConfig& cfg) {
  if (std::abs(lambda - mu) < cfg.near_diagonal_threshold()) return shift_kernel_near(lambda, mu, cfg);
  return shift_kernel_direct(lambda, mu, cfg);
}

VectorPair gsk_vector_pair(const ProblemConfig& cfg) {
  VectorPair pair;
  pair.dim = 2;
  pair.left = [cfg](cplx z) {
    const cplx e = eval_e(z, cfg);
    const cplx scale = cfg.F.value(z) / kTwoPiI;
    Vector v(2);
    v << -scale / e, scale * e;
    return v;
  };
  pair.right = [cfg](cplx z) {
    const cplx e = eval_e(z, cfg);
    Vector v(2);
    v << e, 1.0 / e;
    return v;
  };
  pair.right_divided_difference = [cfg](cplx lambda, cplx mu) {
    // e(m) - e(l) = e(l) (exp(i delta) - 1), delta = x (p(m) - p(l)) / 2.
    const cplx dd = cfg.p.divided_difference(mu, lambda);
    const cplx delta = 0.5 * cfg.x * dd * (mu - lambda);
    const cplx e = eval_e(lambda, cfg);
    const cplx slope = 0.5 * kI * cfg.x * dd;
    Vector v(2);
    v << e * slope * expm1_over(kI * delta), -slope / e * expm1_over(-kI * delta);
    return v;
  };
  return pair;
}

ShiftSpec gsk_shift_spec(double c) {
  ShiftSpec s;
  s.gamma = {1.0, 1.0};
  s.c = {-c, c};
  s.v = {0, 1};
  return s;
}

double regularity_defect(const VectorPair& pair, double a, double b, int samples) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = a + (b - a) * i / (samples - 1);
    worst = std::max(worst, std::abs(bilinear(pair.left(t), pair.right(t))));
  }
  return worst;
}

cplx integrable_kernel(cplx lambda, cplx mu, const VectorPair& pair, double near_threshold) {
  if (std::abs(lambda - mu) < near_threshold) {
    return -bilinear(pair.left(lambda), pair.right_divided_difference(lambda, mu));
  }
  return bilinear(pair.left(lambda), pair.right(mu)) / (lambda - mu);
}

namespace {

cplx shift_correction(const Vector& left_l, const Vector& right_m, cplx d, const ShiftSpec& shift) {
  cplx sum = 0.0;
  for (std::size_t a = 0; a < shift.size(); ++a) {
    if (shift.gamma[a] == cplx(0.0)) continue;
    const cplx den = d + kI * shift.c[a];
    if (std::abs(den) < 1e-14 * (1.0 + std::abs(shift.c[a]))) {
      throw std::invalid_argument("general kernel evaluated at a shifted pole lambda - mu = -i c_a");
    }
    sum += shift.gamma[a] * left_l(static_cast<Eigen::Index>(a)) * right_m(shift.v[a]) / den;
  }
  return sum;
}

}  // namespace

cplx general_kernel_V(cplx lambda, cplx mu, const VectorPair& pair, const ShiftSpec& shift,
                      double near_threshold) {
  const Vector left = pair.left(lambda);
  const Vector right = pair.right(mu);
  return integrable_kernel(lambda, mu, pair, near_threshold) - shift_correction(left, right, lambda - mu, shift);
}

namespace {

struct PairTable {
  std::vector<cplx> nodes;
  std::vector<Vector> left;
  std::vector<Vector> right;
};

PairTable tabulate(const VectorPair& pair, const QuadratureRule& rule) {
  PairTable t;
  t.nodes = rule.nodes();
  t.left.reserve(t.nodes.size());
  t.right.reserve(t.nodes.size());
  for (const auto& z : t.nodes) {
    t.left.push_back(pair.left(z));
    t.right.push_back(pair.right(z));
  }
  return t;
}

cplx tabulated_integrable(const PairTable& t, const VectorPair& pair, std::size_t r, std::size_t c,
                          double near_threshold) {
  const cplx d = t.nodes[r] - t.nodes[c];
  if (std::abs(d) < near_threshold) return -bilinear(t.left[r], pair.right_divided_difference(t.nodes[r], t.nodes[c]));
  return bilinear(t.left[r], t.right[c]) / d;
}

}  // namespace

NodeKernelFactory integrable_kernel_on_nodes(const VectorPair& pair, double near_threshold) {
  return [pair, near_threshold](const QuadratureRule& rule) -> NodeKernel {
    auto table = std::make_shared<const PairTable>(tabulate(pair, rule));
    return [pair, table, near_threshold](std::size_t r, std::size_t c) {
      return tabulated_integrable(*table, pair, r, c, near_threshold);
    };
  };
}

NodeKernelFactory general_kernel_on_nodes(const VectorPair& pair, const ShiftSpec& shift, double near_threshold) {
  return [pair, shift, near_threshold](const QuadratureRule& rule) -> NodeKernel {
    auto table = std::make_shared<const PairTable>(tabulate(pair, rule));
    return [pair, shift, table, near_threshold](std::size_t r, std::size_t c) {
      const cplx d = table->nodes[r] - table->nodes[c];
      return tabulated_integrable(*table, pair, r, c, near_threshold) -
             shift_correction(table->left[r], table->right[c], d, shift);
    };
  };
}

}  // namespace shiftdet
