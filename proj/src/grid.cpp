#include "cmclab/grid.hpp"

#include <cmath>
#include <string>

#include "cmclab/error.hpp"

namespace cmclab {

GridSpec::GridSpec(double x_min, double x_max, double y_min, double y_max, int nx, int ny)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), nx_(nx), ny_(ny) {
  if (nx < kMinSamples || ny < kMinSamples) {
    throw Error(ErrorKind::InvalidInput,
                "grid needs at least 5 samples per direction, got " + std::to_string(nx) +
                    "x" + std::to_string(ny));
  }
  if (!(x_max > x_min) || !(y_max > y_min) || !std::isfinite(x_max - x_min) ||
      !std::isfinite(y_max - y_min)) {
    throw Error(ErrorKind::InvalidInput, "grid extents must satisfy min < max");
  }
  hx_ = (x_max - x_min) / (nx - 1);
  hy_ = (y_max - y_min) / (ny - 1);
}

}  // namespace cmclab
