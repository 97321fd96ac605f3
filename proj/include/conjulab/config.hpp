#ifndef CONJULAB_CONFIG_HPP
#define CONJULAB_CONFIG_HPP

#include <cstdint>

#include "conjulab/fourier.hpp"
#include "conjulab/operators.hpp"

namespace conjulab {

/// Run-wide knobs for the certification suite. Tolerances follow a ladder:
/// construction identities at tol_construct, composed-operator identities at
/// tol_composed, randomized demonstrations against demo_floor.
struct RunConfig {
  int grid_log2 = 12;
  int band = 1024;
  double tol_construct = 1e-10;
  double tol_composed = 1e-9;
  double demo_floor = 1e-3;
  std::uint64_t seed = 42;
  int max_degree = 6;
  int trials = 100;

  /// Throws ParameterError when a field violates its invariant.
  void validate() const;

  GridParams grid() const;
  OpWindow window() const;
};

}  // namespace conjulab

#endif  // CONJULAB_CONFIG_HPP
