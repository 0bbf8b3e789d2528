#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "shiftdet/determinants.h"
#include "shiftdet/kernels.h"
#include "shiftdet/operator_kernels.h"
#include "shiftdet/rhp.h"

using namespace shiftdet;

namespace {

ProblemConfig trivial() {
  ProblemConfig cfg = standard_config();
  cfg.F = FunctionSpec::constant(0.0);
  return cfg;
}

ProblemConfig small() {
  ProblemConfig cfg = standard_config();
  cfg.x = 20.0;
  return cfg;
}

const cplx kLoopPoints[] = {cplx(0.3, 0.25), cplx(-0.8, -0.2), cplx(1.1, 0.1), cplx(-1.15, 0.05)};

}  // namespace

TEST_CASE("vanishing gamma gives vanishing W and M") {
  const ProblemConfig cfg = small();
  const ChiSolution chi = solve_chi(cfg, gsk_vector_pair(cfg));
  ShiftSpec zero = cfg.shift;
  zero.gamma = {0.0, 0.0};
  for (cplx l : kLoopPoints) {
    for (cplx m : kLoopPoints) {
      if (l == m) continue;
      CHECK(M_kernel(l, m, chi, zero).norm() == 0.0);
      CHECK(N_kernel(l.real(), m.real(), chi, zero, 1e-4).norm() == 0.0);
    }
  }
  CHECK(W_kernel(0.1, 0.4, chi, zero) == cplx(0.0));
  const QuadratureRule rule = cfg.interval_rule();
  CHECK(nystrom_det(W_on_nodes(chi, zero), rule).value == cplx(1.0));
  CHECK(nystrom_det_matrix(M_on_nodes(chi, zero), cfg.loop(), 2).value == cplx(1.0));
}

TEST_CASE("zero amplitude: W and N vanish, M is the bare shift kernel") {
  const ProblemConfig cfg = trivial();
  const ChiSolution chi = solve_chi(cfg, gsk_vector_pair(cfg));
  const double c = cfg.c;
  for (cplx l : kLoopPoints) {
    for (cplx m : kLoopPoints) {
      if (l == m) continue;
      CHECK(W_kernel(l, m, chi, cfg.shift) == cplx(0.0));
      const Matrix mk = M_kernel(l, m, chi, cfg.shift);
      CHECK(std::abs(mk(0, 0) - 1.0 / (kTwoPiI * (l - m - kI * c))) < 1e-15);
      CHECK(std::abs(mk(1, 1) - 1.0 / (kTwoPiI * (l - m + kI * c))) < 1e-15);
      CHECK(mk(0, 1) == cplx(0.0));
      CHECK(mk(1, 0) == cplx(0.0));
      CHECK(N_kernel(l.real(), m.real(), chi, cfg.shift, 1e-4).norm() == 0.0);
    }
  }
  CHECK(N_kernel(0.2, 0.2, chi, cfg.shift, 1e-4).norm() == 0.0);
  const DetResult dm = nystrom_det_matrix(M_on_nodes(chi, cfg.shift), cfg.loop(), 2);
  CHECK(std::abs(dm.value - 1.0) < 1e-10);
}

TEST_CASE("M entries against the two-shift sine-kernel display") {
  const ProblemConfig cfg = small();
  const ChiSolution chi = solve_chi(cfg, gsk_vector_pair(cfg));
  const double c = cfg.c;
  for (cplx l : kLoopPoints) {
    for (cplx m : kLoopPoints) {
      if (l == m) continue;
      const Matrix mk = M_kernel(l, m, chi, cfg.shift);
      const Matrix up = chi.chi_inv(l) * chi.chi(m + kI * c);
      const Matrix dn = chi.chi_inv(l) * chi.chi(m - kI * c);
      const cplx m11 = up(0, 0) / (kTwoPiI * (l - m - kI * c));
      const cplx m12 = dn(0, 1) / (kTwoPiI * (l - m + kI * c));
      const cplx m21 = up(1, 0) / (kTwoPiI * (l - m - kI * c));
      const cplx m22 = dn(1, 1) / (kTwoPiI * (l - m + kI * c));
      CHECK(std::abs(mk(0, 0) - m11) <= 1e-13 * (1.0 + std::abs(m11)));
      CHECK(std::abs(mk(0, 1) - m12) <= 1e-13 * (1.0 + std::abs(m12)));
      CHECK(std::abs(mk(1, 0) - m21) <= 1e-13 * (1.0 + std::abs(m21)));
      CHECK(std::abs(mk(1, 1) - m22) <= 1e-13 * (1.0 + std::abs(m22)));
    }
  }
}

TEST_CASE("node tables agree with pointwise kernels") {
  const ProblemConfig cfg = small();
  const ChiSolution chi = solve_chi(cfg, gsk_vector_pair(cfg));
  const QuadratureRule loop = ellipse_loop_rule(cfg.a, cfg.b, cfg.loop_h(), 16);
  const QuadratureRule interval = gauss_legendre_rule(12, cfg.a, cfg.b);
  const QuadratureRule line = compactified_line_rule(16, 1.0);
  const NodeMatrixKernel m = M_on_nodes(chi, cfg.shift)(loop);
  const NodeKernel w = W_on_nodes(chi, cfg.shift)(interval);
  const NodeMatrixKernel n = N_on_nodes(chi, cfg.shift, 1e-4)(line);
  for (std::size_t r : {0u, 3u, 7u}) {
    for (std::size_t k : {1u, 5u, 11u}) {
      CHECK((m(r, k) - M_kernel(loop.nodes()[r], loop.nodes()[k], chi, cfg.shift)).norm() < 1e-14);
      CHECK(std::abs(w(r, k) - W_kernel(interval.nodes()[r], interval.nodes()[k], chi, cfg.shift)) < 1e-14);
      CHECK((n(r, k) - N_kernel(line.nodes()[r], line.nodes()[k], chi, cfg.shift, 1e-4)).norm() < 1e-14);
    }
  }
}

TEST_CASE("N: divided-difference branch matches the direct formula") {
  const ProblemConfig cfg = small();
  const ChiSolution chi = solve_chi(cfg, gsk_vector_pair(cfg));
  for (double l : {-2.0, -0.4, 0.35, 3.0}) {
    const double d = 1e-3;
    const Matrix dd = N_kernel(l, l + d, chi, cfg.shift, 10.0 * d);
    const Matrix direct = N_kernel(l, l + d, chi, cfg.shift, 0.1 * d);
    CHECK((dd - direct).norm() < 1e-9 * (1.0 + direct.norm()));

    // diagonal limit against the symmetric average of nearby direct values
    const Matrix diag = N_kernel(l, l, chi, cfg.shift, 1e-4);
    const Matrix avg =
        0.5 * (N_kernel(l, l + d, chi, cfg.shift, 0.0) + N_kernel(l, l - d, chi, cfg.shift, 0.0));
    CHECK(std::isfinite(diag.norm()));
    CHECK((diag - avg).norm() < 1e-5 * (1.0 + diag.norm()));
  }
}

TEST_CASE("U+, U- and M0") {
  const ProblemConfig t = trivial();
  const AlphaEvaluator a0 = make_alpha(t);
  const QuadratureRule loop = t.loop();
  CHECK(std::abs(nystrom_det(U_plus_on_nodes(a0, t.c), loop).value - 1.0) < 1e-12);
  CHECK(std::abs(nystrom_det(U_minus_on_nodes(a0, t.c), loop).value - 1.0) < 1e-12);

  const ProblemConfig cfg = standard_config();
  const AlphaEvaluator alpha = make_alpha(cfg);
  const cplx up = nystrom_det(U_plus_on_nodes(alpha, cfg.c), loop).value;
  const cplx um = nystrom_det(U_minus_on_nodes(alpha, cfg.c), loop).value;
  const cplx m0 = nystrom_det_matrix(M0_on_nodes(alpha, cfg.c), loop, 2).value;
  CHECK(std::abs(m0 - up * um) <= 1e-12 * std::abs(m0));

  for (cplx l : kLoopPoints) {
    for (cplx m : kLoopPoints) {
      if (l == m) continue;
      const Matrix k = M0_kernel(l, m, alpha, cfg.c);
      CHECK(k(0, 0) == U_minus_kernel(l, m, alpha, cfg.c));
      CHECK(k(1, 1) == U_plus_kernel(l, m, alpha, cfg.c));
      CHECK(k(0, 1) == cplx(0.0));
      CHECK(k(1, 0) == cplx(0.0));
      const cplx expect = alpha(m - kI * cfg.c) / alpha(l) / (kTwoPiI * (l - m + kI * cfg.c));
      CHECK(std::abs(U_plus_kernel(l, m, alpha, cfg.c) - expect) < 1e-14 * std::abs(expect));
    }
  }
}

TEST_CASE("vanishing denominators and malformed shift tables are rejected") {
  const ProblemConfig cfg = small();
  const ChiSolution chi = solve_chi(cfg, gsk_vector_pair(cfg));
  // lambda - mu - i c = 0 when the loop is 0.5 away from the axis and c = 1
  CHECK_THROWS_AS(M_kernel(cplx(0.1, 0.5), cplx(0.1, -0.5), chi, cfg.shift), std::invalid_argument);
  const AlphaEvaluator alpha = make_alpha(cfg);
  CHECK_THROWS_AS(U_plus_kernel(cplx(0.1, -0.5), cplx(0.1, 0.5), alpha, cfg.c), std::invalid_argument);

  ShiftSpec bad = cfg.shift;
  bad.v = {0, 2};
  CHECK_THROWS_AS(W_on_nodes(chi, bad), std::invalid_argument);
  ShiftSpec shortspec;
  shortspec.gamma = {1.0};
  shortspec.c = {1.0};
  shortspec.v = {0};
  CHECK_THROWS_AS(M_on_nodes(chi, shortspec), std::invalid_argument);
}
