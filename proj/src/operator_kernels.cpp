#include "shiftdet/operator_kernels.h"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace shiftdet {

namespace {

void check_shift(const ChiSolution& chi, const ShiftSpec& shift) {
  if (shift.size() != static_cast<std::size_t>(chi.dim())) {
    throw std::invalid_argument("shift table length must equal the vector-pair dimension");
  }
  for (int v : shift.v) {
    if (v < 0 || v >= chi.dim()) throw std::invalid_argument("shift index v_a out of range");
  }
}

cplx checked_denominator(cplx d) {
  if (std::abs(d) < 1e-12) {
    throw std::invalid_argument("kernel denominator vanishes; the loop leaves the strip |Im z| < min|c|/2");
  }
  return d;
}

double sgn(double v) { return v > 0.0 ? 1.0 : -1.0; }

bool opposite(double c1, double c2) { return std::abs(c1 + c2) <= 1e-14 * (std::abs(c1) + std::abs(c2)); }

struct WTable {
  std::vector<cplx> nodes;
  std::vector<Vector> fl;
  std::vector<Vector> er;
  std::vector<std::vector<Vector>> chi_cols;  // [node][n] = chi(t - i c_n) e_n
};

WTable w_table(const ChiSolution& chi, const ShiftSpec& shift, const std::vector<cplx>& nodes) {
  WTable t;
  t.nodes = nodes;
  for (const auto& z : nodes) {
    t.fl.push_back(chi.FL_at(z));
    t.er.push_back(chi.pair().right(z));
    std::vector<Vector> cols;
    for (std::size_t n = 0; n < shift.size(); ++n) {
      cols.push_back(chi.chi(z - kI * shift.c[n]).col(static_cast<Eigen::Index>(n)));
    }
    t.chi_cols.push_back(std::move(cols));
  }
  return t;
}

cplx w_entry(const WTable& t, const ShiftSpec& shift, std::size_t r, std::size_t c) {
  cplx sum = 0.0;
  for (std::size_t n = 0; n < shift.size(); ++n) {
    if (shift.gamma[n] == cplx(0.0)) continue;
    const cplx den = checked_denominator(t.nodes[r] - t.nodes[c] + kI * shift.c[n]);
    sum += shift.gamma[n] * bilinear(t.fl[r], t.chi_cols[c][n]) * t.er[c](shift.v[n]) / den;
  }
  return -sum;
}

struct MTable {
  std::vector<cplx> nodes;
  std::vector<Matrix> chi_inv;
  std::vector<std::vector<Vector>> chi_cols;  // [node][l] = chi(z - i c_l) e_l
};

MTable m_table(const ChiSolution& chi, const ShiftSpec& shift, const std::vector<cplx>& nodes) {
  MTable t;
  t.nodes = nodes;
  for (const auto& z : nodes) {
    t.chi_inv.push_back(chi.chi_inv(z));
    std::vector<Vector> cols;
    for (std::size_t l = 0; l < shift.size(); ++l) {
      cols.push_back(chi.chi(z - kI * shift.c[l]).col(static_cast<Eigen::Index>(l)));
    }
    t.chi_cols.push_back(std::move(cols));
  }
  return t;
}

Matrix m_entry(const MTable& t, const ShiftSpec& shift, std::size_t r, std::size_t c) {
  const auto n = static_cast<Eigen::Index>(shift.size());
  Matrix out(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx g = shift.gamma[k];
    for (Eigen::Index l = 0; l < n; ++l) {
      if (g == cplx(0.0)) {
        out(k, l) = 0.0;
        continue;
      }
      const cplx den = checked_denominator(t.nodes[r] - t.nodes[c] + kI * shift.c[l]);
      const cplx num = bilinear(t.chi_inv[r].row(shift.v[k]).transpose(), t.chi_cols[c][l]);
      out(k, l) = g * num / (kTwoPiI * den);
    }
  }
  return out;
}

struct NTable {
  std::vector<cplx> nodes;
  std::vector<std::vector<Vector>> inv_rows;  // [node][k] = e_{v_k}^T chi^{-1}(t + i c_k/2)
  std::vector<std::vector<Vector>> chi_cols;  // [node][l] = chi(t - i c_l/2) e_l
};

NTable n_table(const ChiSolution& chi, const ShiftSpec& shift, const std::vector<cplx>& nodes) {
  NTable t;
  t.nodes = nodes;
  for (const auto& z : nodes) {
    std::vector<Vector> rows, cols;
    for (std::size_t k = 0; k < shift.size(); ++k) {
      rows.push_back(chi.chi_inv(z + 0.5 * kI * shift.c[k]).row(shift.v[k]).transpose());
      cols.push_back(chi.chi(z - 0.5 * kI * shift.c[k]).col(static_cast<Eigen::Index>(k)));
    }
    t.inv_rows.push_back(std::move(rows));
    t.chi_cols.push_back(std::move(cols));
  }
  return t;
}

Matrix n_entry(const NTable& t, const ChiSolution& chi, const ShiftSpec& shift, double near_threshold,
               std::size_t r, std::size_t c) {
  const auto n = static_cast<Eigen::Index>(shift.size());
  const cplx lambda = t.nodes[r];
  const cplx mu = t.nodes[c];
  Matrix out(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const cplx pre = sgn(shift.c[k]) * shift.gamma[k] / kTwoPiI;
    for (Eigen::Index l = 0; l < n; ++l) {
      if (shift.gamma[k] == cplx(0.0)) {
        out(k, l) = 0.0;
        continue;
      }
      if (opposite(shift.c[k], shift.c[l]) && std::abs(lambda - mu) < near_threshold) {
        // [I - chi^{-1}(l') chi(m')] / (l' - m') = -DD[chi^{-1}](l', m') chi(m')
        const cplx lp = lambda + 0.5 * kI * shift.c[k];
        const cplx mp = mu - 0.5 * kI * shift.c[l];
        const Vector dd_row = chi.chi_inv_divided_difference(lp, mp).row(shift.v[k]).transpose();
        out(k, l) = -pre * bilinear(dd_row, t.chi_cols[c][l]);
        continue;
      }
      const cplx delta = shift.v[k] == l ? 1.0 : 0.0;
      const cplx den = checked_denominator(lambda - mu + 0.5 * kI * (shift.c[k] + shift.c[l]));
      out(k, l) = pre * (delta - bilinear(t.inv_rows[r][k], t.chi_cols[c][l])) / den;
    }
  }
  return out;
}

struct AlphaTable {
  std::vector<cplx> nodes;
  std::vector<cplx> at;
  std::vector<cplx> below;  // alpha(z - ic)
  std::vector<cplx> above;  // alpha(z + ic)
};

AlphaTable alpha_table(const AlphaEvaluator& alpha, double c, const std::vector<cplx>& nodes) {
  AlphaTable t;
  t.nodes = nodes;
  for (const auto& z : nodes) {
    t.at.push_back(alpha(z));
    t.below.push_back(alpha(z - kI * c));
    t.above.push_back(alpha(z + kI * c));
  }
  return t;
}

cplx u_plus_entry(const AlphaTable& t, double c, std::size_t r, std::size_t k) {
  const cplx den = checked_denominator(t.nodes[r] - t.nodes[k] + kI * c);
  return t.below[k] / t.at[r] / (kTwoPiI * den);
}

cplx u_minus_entry(const AlphaTable& t, double c, std::size_t r, std::size_t k) {
  const cplx den = checked_denominator(t.nodes[r] - t.nodes[k] - kI * c);
  return t.at[r] / t.above[k] / (kTwoPiI * den);
}

}  // namespace

cplx W_kernel(cplx lambda, cplx mu, const ChiSolution& chi, const ShiftSpec& shift) {
  check_shift(chi, shift);
  return w_entry(w_table(chi, shift, {lambda, mu}), shift, 0, 1);
}

NodeKernelFactory W_on_nodes(const ChiSolution& chi, const ShiftSpec& shift) {
  check_shift(chi, shift);
  return [&chi, shift](const QuadratureRule& rule) -> NodeKernel {
    auto t = std::make_shared<const WTable>(w_table(chi, shift, rule.nodes()));
    return [t, shift](std::size_t r, std::size_t c) { return w_entry(*t, shift, r, c); };
  };
}

Matrix M_kernel(cplx lambda, cplx mu, const ChiSolution& chi, const ShiftSpec& shift) {
  check_shift(chi, shift);
  return m_entry(m_table(chi, shift, {lambda, mu}), shift, 0, 1);
}

NodeMatrixKernelFactory M_on_nodes(const ChiSolution& chi, const ShiftSpec& shift) {
  check_shift(chi, shift);
  return [&chi, shift](const QuadratureRule& rule) -> NodeMatrixKernel {
    auto t = std::make_shared<const MTable>(m_table(chi, shift, rule.nodes()));
    return [t, shift](std::size_t r, std::size_t c) { return m_entry(*t, shift, r, c); };
  };
}

Matrix N_kernel(cplx lambda, cplx mu, const ChiSolution& chi, const ShiftSpec& shift, double near_threshold) {
  check_shift(chi, shift);
  return n_entry(n_table(chi, shift, {lambda, mu}), chi, shift, near_threshold, 0, 1);
}

NodeMatrixKernelFactory N_on_nodes(const ChiSolution& chi, const ShiftSpec& shift, double near_threshold) {
  check_shift(chi, shift);
  return [&chi, shift, near_threshold](const QuadratureRule& rule) -> NodeMatrixKernel {
    auto t = std::make_shared<const NTable>(n_table(chi, shift, rule.nodes()));
    return [t, &chi, shift, near_threshold](std::size_t r, std::size_t c) {
      return n_entry(*t, chi, shift, near_threshold, r, c);
    };
  };
}

cplx U_plus_kernel(cplx lambda, cplx mu, const AlphaEvaluator& alpha, double c) {
  return u_plus_entry(alpha_table(alpha, c, {lambda, mu}), c, 0, 1);
}

cplx U_minus_kernel(cplx lambda, cplx mu, const AlphaEvaluator& alpha, double c) {
  return u_minus_entry(alpha_table(alpha, c, {lambda, mu}), c, 0, 1);
}

Matrix M0_kernel(cplx lambda, cplx mu, const AlphaEvaluator& alpha, double c) {
  const AlphaTable t = alpha_table(alpha, c, {lambda, mu});
  Matrix out = Matrix::Zero(2, 2);
  out(0, 0) = u_minus_entry(t, c, 0, 1);
  out(1, 1) = u_plus_entry(t, c, 0, 1);
  return out;
}

NodeKernelFactory U_plus_on_nodes(const AlphaEvaluator& alpha, double c) {
  return [&alpha, c](const QuadratureRule& rule) -> NodeKernel {
    auto t = std::make_shared<const AlphaTable>(alpha_table(alpha, c, rule.nodes()));
    return [t, c](std::size_t r, std::size_t k) { return u_plus_entry(*t, c, r, k); };
  };
}

NodeKernelFactory U_minus_on_nodes(const AlphaEvaluator& alpha, double c) {
  return [&alpha, c](const QuadratureRule& rule) -> NodeKernel {
    auto t = std::make_shared<const AlphaTable>(alpha_table(alpha, c, rule.nodes()));
    return [t, c](std::size_t r, std::size_t k) { return u_minus_entry(*t, c, r, k); };
  };
}

NodeMatrixKernelFactory M0_on_nodes(const AlphaEvaluator& alpha, double c) {
  return [&alpha, c](const QuadratureRule& rule) -> NodeMatrixKernel {
    auto t = std::make_shared<const AlphaTable>(alpha_table(alpha, c, rule.nodes()));
    return [t, c](std::size_t r, std::size_t k) {
      Matrix out = Matrix::Zero(2, 2);
      out(0, 0) = u_minus_entry(*t, c, r, k);
      out(1, 1) = u_plus_entry(*t, c, r, k);
      return out;
    };
  };
}

}  // namespace shiftdet
