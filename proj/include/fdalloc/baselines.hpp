#pragma once

#include "fdalloc/fd_problem.hpp"

namespace fdalloc {

/// Search grid for the brute-force oracle.
struct OracleGrid {
  int power_resolution = 400;  ///< samples along each peak-power edge
  int bw_resolution = 64;      ///< bandwidth-split samples (K=2 only)
  int box_resolution = 40;     ///< coarse full-rectangle samples per power axis
  void validate() const;
};

/// Equal-bandwidth optimal-power baseline: B_k = B/K, then per pair the
/// weighted quality is maximized over the two peak-power edges (an interior
/// point is dominated, since scaling both powers up raises both kernels).
/// Throws InfeasibleError when a pair cannot meet its quality floor at B/K.
Allocation ebop(const SystemSpec& spec);

/// Exhaustive grid search (K <= 2): peak-power edges at full resolution plus
/// a coarse full-box sweep, over bandwidth splits for K=2. Deterministic for
/// a fixed spec and grid. Throws std::domain_error for K > 2 and
/// InfeasibleError when no grid point is feasible.
Allocation grid_oracle(const SystemSpec& spec, const OracleGrid& grid);

}  // namespace fdalloc
