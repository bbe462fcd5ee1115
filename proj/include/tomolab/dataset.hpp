#pragma once

#include <cstdint>
#include <vector>

#include "tomolab/geometry.hpp"

namespace tomolab {

struct MeasurementRecord {
  std::uint32_t grid_index;
  double x;  // detected quadrature X'
};

// One simulated (or loaded) homodyne run: grid geometry, detection
// efficiency, and the raw measurement records.
struct QuadratureDataset {
  SamplingGrid grid;
  double eta = 1.0;
  std::uint64_t seed = 0;
  std::vector<MeasurementRecord> records;
  std::vector<std::uint32_t> per_point_counts;  // one entry per grid point

  void rebuild_counts();
  void check_consistent() const;  // throws io_error on index/count mismatch
};

}  // namespace tomolab
