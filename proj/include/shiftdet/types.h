#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace shiftdet {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};
inline constexpr cplx kTwoPiI{0.0, 2.0 * std::numbers::pi};

// Serial is the reference path; Parallel distributes independent rows with OpenMP.
enum class ExecPolicy { Serial, Parallel };

// Rejected configuration or violated geometric constraint (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Singular system, non-finite determinant, or similar (CLI exit code 3).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bilinear pairing (u, v) = sum_i u_i v_i, no conjugation.
inline cplx bilinear(const Vector& u, const Vector& v) { return u.cwiseProduct(v).sum(); }

}  // namespace shiftdet
