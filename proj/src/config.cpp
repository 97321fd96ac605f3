#include "conjulab/config.hpp"

#include <algorithm>

namespace conjulab {

void RunConfig::validate() const {
  if (grid_log2 < 4 || grid_log2 > 24) throw ParameterError("grid_log2 out of range [4, 24]");
  if (band < 1 || band > (1 << (grid_log2 - 1)) - 1)
    throw ParameterError("band must satisfy 1 <= band <= 2^(grid_log2 - 1) - 1");
  if (max_degree < 1) throw ParameterError("max_degree must be >= 1");
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (tol_construct <= 0 || tol_composed <= 0 || demo_floor <= 0)
    throw ParameterError("tolerances must be positive");
}

GridParams RunConfig::grid() const { return GridParams::make(grid_log2, band); }

OpWindow RunConfig::window() const {
  OpWindow w;
  w.half_width = std::min(384, band);
  w.margin = w.half_width / 2;
  return w;
}

}  // namespace conjulab
