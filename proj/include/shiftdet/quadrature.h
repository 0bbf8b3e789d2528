#pragma once

#include <cstddef>
#include <functional>
#include <variant>
#include <vector>

#include "shiftdet/types.h"

namespace shiftdet {

enum class DomainKind { Interval, Loop, Line };

enum class LoopShape {
  Ellipse,  // ellipse with foci a, b and semi-minor axis h; analytic parameterization
  Stadium   // segments [a,b] -/+ ih joined by semicircles, graded at the four junctions
};

enum class LineKind {
  Tangent,   // z = s tan(theta) on a uniform open grid in (-pi/2, pi/2)
  Truncated  // Gauss-Legendre on [-L, L]
};

struct IntervalDescriptor {
  double a = -1.0;
  double b = 1.0;
  int n = 2;
};

struct LoopDescriptor {
  double a = -1.0;
  double b = 1.0;
  double h = 0.25;
  int m = 8;
  LoopShape shape = LoopShape::Ellipse;
};

struct LineDescriptor {
  int m = 16;
  double map_scale = 1.0;  // tangent scale s, or truncation half-length L
  LineKind kind = LineKind::Tangent;
};

using RuleDescriptor = std::variant<IntervalDescriptor, LoopDescriptor, LineDescriptor>;

// Nodes and weights of a quadrature rule. Contour weights already carry dz/dt.
// Immutable after construction.
class QuadratureRule {
 public:
  QuadratureRule(std::vector<cplx> nodes, std::vector<cplx> weights, RuleDescriptor descriptor);

  const std::vector<cplx>& nodes() const { return nodes_; }
  const std::vector<cplx>& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  DomainKind kind() const;
  const RuleDescriptor& descriptor() const { return descriptor_; }

  // Same family with `count` points (n for intervals, m for loops and lines).
  QuadratureRule resized(int count) const;
  // Same family at roughly half resolution, respecting each family's minimum size.
  QuadratureRule halved() const;

  cplx integrate(const std::function<cplx(cplx)>& f) const;

 private:
  std::vector<cplx> nodes_;
  std::vector<cplx> weights_;
  RuleDescriptor descriptor_;
};

// Gauss-Legendre rule on [a, b]; exact for polynomials of degree <= 2n-1.
QuadratureRule gauss_legendre_rule(int n, double a, double b);

// Closed counterclockwise stadium around [a, b] at distance h. Each of the four
// pieces is traversed with a degree-7 smoothstep in arclength so the
// parameterization is C^3 across the junctions; convergence is algebraic.
QuadratureRule stadium_loop_rule(double a, double b, double h, int m);

// Closed counterclockwise ellipse with foci a, b whose maximal |Im z| equals h.
// The trapezoidal rule converges like exp(-m asinh(2h/(b-a))) for integrands
// analytic off [a, b].
QuadratureRule ellipse_loop_rule(double a, double b, double h, int m);

QuadratureRule loop_rule(double a, double b, double h, int m, LoopShape shape);

// Real-line rule through the tangent map z = map_scale tan(theta).
QuadratureRule compactified_line_rule(int m, double map_scale);

// Gauss-Legendre on [-half_length, half_length], for cross-checking the tangent map.
QuadratureRule truncated_line_rule(int m, double half_length);

// (1/2 pi i) sum_j w_j / (z_j - z0); an integer for closed loops.
cplx winding_number(const QuadratureRule& loop, cplx z0);

}  // namespace shiftdet
