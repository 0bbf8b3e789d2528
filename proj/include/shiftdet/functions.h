#pragma once

#include <string>
#include <vector>

#include "shiftdet/types.h"

namespace shiftdet {

enum class FunctionKind { Constant, Polynomial, ScaledGaussian };

// Entire function from the admissible registry:
//   Constant        f(z) = c0
//   Polynomial      f(z) = sum_k c_k z^k
//   ScaledGaussian  f(z) = A exp(-((z - z0)/s)^2)
class FunctionSpec {
 public:
  static FunctionSpec constant(cplx value);
  static FunctionSpec polynomial(std::vector<cplx> coefficients);
  static FunctionSpec scaled_gaussian(cplx amplitude, double center, double width);
  static FunctionSpec identity() { return polynomial({0.0, 1.0}); }

  FunctionKind kind() const { return kind_; }
  const std::vector<cplx>& parameters() const { return params_; }

  cplx value(cplx z) const;
  cplx derivative(cplx z) const;
  // (f(z1) - f(z2)) / (z1 - z2), evaluated without cancellation; derivative at z1 == z2.
  cplx divided_difference(cplx z1, cplx z2) const;

  bool is_identically_zero() const;

 private:
  FunctionSpec(FunctionKind kind, std::vector<cplx> params) : kind_(kind), params_(std::move(params)) {}

  FunctionKind kind_;
  // Constant: {c0}; Polynomial: coefficients; ScaledGaussian: {A, z0, s}.
  std::vector<cplx> params_;
};

std::string to_string(FunctionKind kind);

// (exp(w) - 1) / w, accurate near 0.
cplx expm1_over(cplx w);
// sin(w) / w, accurate near 0.
cplx sinc(cplx w);

}  // namespace shiftdet
