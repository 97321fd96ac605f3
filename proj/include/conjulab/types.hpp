#ifndef CONJULAB_TYPES_HPP
#define CONJULAB_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace conjulab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Bad arguments or violated operation preconditions.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is mathematically admissible but cannot be represented at the
/// configured resolution (e.g. a Blaschke zero too close to the circle).
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructive routine whose mathematical precondition fails.
class NotConstructible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace conjulab

#endif  // CONJULAB_TYPES_HPP
