#ifndef CARPET_BOXCOUNT_HPP
#define CARPET_BOXCOUNT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "carpet/ifs.hpp"

namespace carpet {

// Empirical dimension estimate from occupied-cell counts at dyadic scales
// delta_k = 2^-k: the desk-scale oracle held against the closed forms.
struct BoxCountEstimate {
  std::vector<int> ks;
  std::vector<double> scales;       // 2^-k
  std::vector<std::size_t> counts;  // occupied cells at each scale
  double slope = 0.0;
  double r2 = 0.0;
  std::string method;  // "cylinder-cover" or "point-cloud"
};

// Deterministic cylinder covers rasterized conservatively at resolution 2^k.
// Requires 3 <= k_min < k_max <= 12.
BoxCountEstimate empirical_box_dimension(const TGLSystem& system, int k_min, int k_max);

// Lower-fidelity variant counting cells hit by a chaos-game cloud.
BoxCountEstimate empirical_box_dimension_points(const TGLSystem& system, int k_min, int k_max,
                                                std::size_t n_points, std::uint64_t seed);

// Same pipeline on the one-dimensional column IFS H: estimates s_H.
BoxCountEstimate empirical_projection_dimension(const TGLSystem& system, int k_min, int k_max);

std::string estimate_to_json(const BoxCountEstimate& est);
std::string estimate_to_csv(const BoxCountEstimate& est);

}  // namespace carpet

#endif  // CARPET_BOXCOUNT_HPP
