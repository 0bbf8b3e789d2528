#include "shiftdet/quadrature.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shiftdet {

QuadratureRule::QuadratureRule(std::vector<cplx> nodes, std::vector<cplx> weights,
                               RuleDescriptor descriptor)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), descriptor_(descriptor) {
  if (nodes_.size() != weights_.size() || nodes_.size() < 2) {
    throw std::invalid_argument("quadrature rule needs matching node/weight lists of length >= 2");
  }
}

DomainKind QuadratureRule::kind() const {
  switch (descriptor_.index()) {
    case 0: return DomainKind::Interval;
    case 1: return DomainKind::Loop;
    default: return DomainKind::Line;
  }
}

QuadratureRule QuadratureRule::resized(int count) const {
  if (const auto* d = std::get_if<IntervalDescriptor>(&descriptor_)) {
    return gauss_legendre_rule(count, d->a, d->b);
  }
  if (const auto* d = std::get_if<LoopDescriptor>(&descriptor_)) {
    return loop_rule(d->a, d->b, d->h, count, d->shape);
  }
  const auto& d = std::get<LineDescriptor>(descriptor_);
  return d.kind == LineKind::Tangent ? compactified_line_rule(count, d.map_scale)
                                     : truncated_line_rule(count, d.map_scale);
}

QuadratureRule QuadratureRule::halved() const {
  const int n = static_cast<int>(size());
  switch (kind()) {
    case DomainKind::Interval: return resized(std::max(2, n / 2));
    case DomainKind::Loop: {
      int half = std::max(8, n / 2);
      if (half % 2 != 0) ++half;
      return resized(half);
    }
    case DomainKind::Line: return resized(std::max(16, n / 2));
  }
  return *this;
}

cplx QuadratureRule::integrate(const std::function<cplx(cplx)>& f) const {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) sum += weights_[j] * f(nodes_[j]);
  return sum;
}

QuadratureRule gauss_legendre_rule(int n, double a, double b) {
  if (n < 2) throw std::invalid_argument("gauss_legendre_rule: n must be >= 2");
  if (!(a < b)) throw std::invalid_argument("gauss_legendre_rule: need a < b");

  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Derivative at the converged root.
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = weight;
    w[n - 1 - i] = weight;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;

  const double mid = 0.5 * (a + b);
  const double half_len = 0.5 * (b - a);
  std::vector<cplx> nodes(n), weights(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = mid + half_len * x[i];
    weights[i] = half_len * w[i];
  }
  return QuadratureRule(std::move(nodes), std::move(weights), IntervalDescriptor{a, b, n});
}

namespace {

void check_loop_args(double a, double b, double h, int m) {
  if (!(a < b)) throw std::invalid_argument("loop rule: need a < b");
  if (!(h > 0.0)) throw std::invalid_argument("loop rule: h must be positive");
  if (m < 8 || m % 2 != 0) throw std::invalid_argument("loop rule: m must be even and >= 8");
}

// C-infinity step psi(u) / (psi(u) + psi(1 - u)), psi(u) = exp(-1/u); all derivatives vanish at 0 and 1.
double bump(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

double smoothstep(double u) {
  const double p = bump(u), q = bump(1.0 - u);
  return p / (p + q);
}

double smoothstep_derivative(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double p = bump(u), q = bump(1.0 - u);
  const double s = p + q;
  return (p * q / (u * u) + p * q / ((1.0 - u) * (1.0 - u))) / (s * s);
}

}  // namespace

QuadratureRule stadium_loop_rule(double a, double b, double h, int m) {
  check_loop_args(a, b, h, m);
  const double seg = b - a;
  const double arc = kPi * h;
  const std::array<double, 4> lengths{seg, arc, seg, arc};
  const double perimeter = 2.0 * (seg + arc);
  std::array<double, 5> edges{};
  for (int k = 0; k < 4; ++k) edges[k + 1] = edges[k] + lengths[k] / perimeter;

  std::vector<cplx> nodes(m), weights(m);
  for (int j = 0; j < m; ++j) {
    const double t = static_cast<double>(j) / m;
    int piece = 0;
    while (piece < 3 && t >= edges[piece + 1]) ++piece;
    const double span = edges[piece + 1] - edges[piece];
    const double u = (t - edges[piece]) / span;
    const double s = smoothstep(u) * lengths[piece];
    const double ds_dt = smoothstep_derivative(u) * lengths[piece] / span;

    cplx z, dz_ds;
    switch (piece) {
      case 0:  // bottom, left to right
        z = cplx(a + s, -h);
        dz_ds = 1.0;
        break;
      case 1: {  // right semicircle, -pi/2 -> pi/2
        const cplx e = std::polar(1.0, s / h - 0.5 * kPi);
        z = b + h * e;
        dz_ds = kI * e;
        break;
      }
      case 2:  // top, right to left
        z = cplx(b - s, h);
        dz_ds = -1.0;
        break;
      default: {  // left semicircle, pi/2 -> 3pi/2
        const cplx e = std::polar(1.0, s / h + 0.5 * kPi);
        z = a + h * e;
        dz_ds = kI * e;
        break;
      }
    }
    nodes[j] = z;
    weights[j] = dz_ds * ds_dt / static_cast<double>(m);
  }
  return QuadratureRule(std::move(nodes), std::move(weights),
                        LoopDescriptor{a, b, h, m, LoopShape::Stadium});
}

QuadratureRule ellipse_loop_rule(double a, double b, double h, int m) {
  check_loop_args(a, b, h, m);
  const double mid = 0.5 * (a + b);
  const double half_len = 0.5 * (b - a);
  const double rho = std::asinh(h / half_len);
  const double major = half_len * std::cosh(rho);
  const double minor = half_len * std::sinh(rho);
  const double dt = 2.0 * kPi / m;

  std::vector<cplx> nodes(m), weights(m);
  for (int j = 0; j < m; ++j) {
    const double t = j * dt;
    nodes[j] = cplx(mid + major * std::cos(t), minor * std::sin(t));
    weights[j] = cplx(-major * std::sin(t), minor * std::cos(t)) * dt;
  }
  return QuadratureRule(std::move(nodes), std::move(weights),
                        LoopDescriptor{a, b, h, m, LoopShape::Ellipse});
}

QuadratureRule loop_rule(double a, double b, double h, int m, LoopShape shape) {
  return shape == LoopShape::Ellipse ? ellipse_loop_rule(a, b, h, m) : stadium_loop_rule(a, b, h, m);
}

QuadratureRule compactified_line_rule(int m, double map_scale) {
  if (m < 16) throw std::invalid_argument("compactified_line_rule: m must be >= 16");
  if (!(map_scale > 0.0)) throw std::invalid_argument("compactified_line_rule: map_scale must be positive");
  const double dtheta = kPi / m;
  std::vector<cplx> nodes(m), weights(m);
  for (int j = 0; j < m; ++j) {
    const double theta = -0.5 * kPi + (j + 0.5) * dtheta;
    const double c = std::cos(theta);
    nodes[j] = map_scale * std::tan(theta);
    weights[j] = map_scale * dtheta / (c * c);
  }
  // Exact antisymmetry of the grid.
  for (int j = 0; j < m / 2; ++j) nodes[m - 1 - j] = -nodes[j];
  return QuadratureRule(std::move(nodes), std::move(weights),
                        LineDescriptor{m, map_scale, LineKind::Tangent});
}

QuadratureRule truncated_line_rule(int m, double half_length) {
  if (m < 16) throw std::invalid_argument("truncated_line_rule: m must be >= 16");
  if (!(half_length > 0.0)) throw std::invalid_argument("truncated_line_rule: half_length must be positive");
  const auto gl = gauss_legendre_rule(m, -half_length, half_length);
  return QuadratureRule(gl.nodes(), gl.weights(), LineDescriptor{m, half_length, LineKind::Truncated});
}

cplx winding_number(const QuadratureRule& loop, cplx z0) {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < loop.size(); ++j) sum += loop.weights()[j] / (loop.nodes()[j] - z0);
  return sum / kTwoPiI;
}

}  // namespace shiftdet
