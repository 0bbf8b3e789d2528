#include "shiftdet/functions.h"

#include <cmath>
#include <stdexcept>

namespace shiftdet {

FunctionSpec FunctionSpec::constant(cplx value) { return FunctionSpec(FunctionKind::Constant, {value}); }

FunctionSpec FunctionSpec::polynomial(std::vector<cplx> coefficients) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  return FunctionSpec(FunctionKind::Polynomial, std::move(coefficients));
}

FunctionSpec FunctionSpec::scaled_gaussian(cplx amplitude, double center, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("scaled gaussian width must be positive");
  return FunctionSpec(FunctionKind::ScaledGaussian, {amplitude, center, width});
}

cplx FunctionSpec::value(cplx z) const {
  switch (kind_) {
    case FunctionKind::Constant: return params_[0];
    case FunctionKind::Polynomial: {
      cplx acc = 0.0;
      for (auto it = params_.rbegin(); it != params_.rend(); ++it) acc = acc * z + *it;
      return acc;
    }
    case FunctionKind::ScaledGaussian: {
      const cplx u = (z - params_[1]) / params_[2];
      return params_[0] * std::exp(-u * u);
    }
  }
  return 0.0;
}

cplx FunctionSpec::derivative(cplx z) const {
  switch (kind_) {
    case FunctionKind::Constant: return 0.0;
    case FunctionKind::Polynomial: {
      cplx acc = 0.0;
      for (std::size_t k = params_.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * params_[k];
      return acc;
    }
    case FunctionKind::ScaledGaussian: {
      const cplx u = (z - params_[1]) / params_[2];
      return -2.0 * u / params_[2] * params_[0] * std::exp(-u * u);
    }
  }
  return 0.0;
}

cplx FunctionSpec::divided_difference(cplx z1, cplx z2) const {
  switch (kind_) {
    case FunctionKind::Constant: return 0.0;
    case FunctionKind::Polynomial: {
      // q_k = (z1^k - z2^k)/(z1 - z2) via q_k = z1 q_{k-1} + z2^{k-1}.
      cplx q = 0.0, z2pow = 1.0, acc = 0.0;
      for (std::size_t k = 1; k < params_.size(); ++k) {
        q = z1 * q + z2pow;
        z2pow *= z2;
        acc += params_[k] * q;
      }
      return acc;
    }
    case FunctionKind::ScaledGaussian: {
      const cplx s = params_[2];
      const cplx u1 = (z1 - params_[1]) / s;
      const cplx u2 = (z2 - params_[1]) / s;
      // exp(-u1^2) - exp(-u2^2) = exp(-u2^2) expm1(w), w = -(u1 - u2)(u1 + u2).
      const cplx w = -(u1 - u2) * (u1 + u2);
      return params_[0] * std::exp(-u2 * u2) * expm1_over(w) * (-(u1 + u2) / s);
    }
  }
  return 0.0;
}

bool FunctionSpec::is_identically_zero() const {
  if (kind_ == FunctionKind::ScaledGaussian) return params_[0] == cplx(0.0);
  for (const auto& c : params_) {
    if (c != cplx(0.0)) return false;
  }
  return true;
}

std::string to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::Constant: return "constant";
    case FunctionKind::Polynomial: return "polynomial";
    case FunctionKind::ScaledGaussian: return "scaled_gaussian_entire";
  }
  return "unknown";
}

cplx expm1_over(cplx w) {
  if (std::abs(w) < 0.5) {
    // 1 + w/2! + w^2/3! + ...; 24 terms reach 1e-17 at |w| = 0.5.
    cplx term = 1.0, sum = 1.0;
    for (int k = 2; k < 26; ++k) {
      term *= w / static_cast<double>(k);
      sum += term;
    }
    return sum;
  }
  return (std::exp(w) - 1.0) / w;
}

cplx sinc(cplx w) {
  if (std::abs(w) < 0.5) {
    const cplx w2 = w * w;
    cplx term = 1.0, sum = 1.0;
    for (int k = 1; k < 14; ++k) {
      term *= -w2 / static_cast<double>((2 * k) * (2 * k + 1));
      sum += term;
    }
    return sum;
  }
  return std::sin(w) / w;
}

}  // namespace shiftdet
