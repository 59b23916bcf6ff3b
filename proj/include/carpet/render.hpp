#ifndef CARPET_RENDER_HPP
#define CARPET_RENDER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "carpet/dimension.hpp"
#include "carpet/ifs.hpp"

namespace carpet {

struct PointCloud {
  std::vector<Vec2> points;
  std::uint64_t seed = 0;
  ProbVector weights;
};

// Random iteration x <- f_i(x), i sampled by `weights` (default: the natural
// box weights p~) from the fixed splitmix generator; 100-step burn-in per
// chunk. Identical (system, n_points, seed, weights, chunk plan) gives
// bit-identical output. Chunks are generated independently (chunk k is seeded
// with mix_seed(seed, k)) and concatenated in order, so the result does not
// depend on how many worker threads execute the plan.
PointCloud chaos_game(const TGLSystem& system, std::size_t n_points, std::uint64_t seed,
                      ProbVector weights = {}, int chunk_count = 1, int max_threads = 1);

// Complete prefix-free word set under the Moran stopping rule
// |b_w| <= delta < |b_(w minus last symbol)|. delta in (0, 1].
// Throws NumericError("CoverTooLarge") past 10^7 cylinders.
std::vector<Cylinder> cylinder_cover(const TGLSystem& system, double delta);

struct RasterGrid {
  int resolution = 0;
  std::vector<std::uint32_t> counts;  // row-major, row 0 at y = 0

  std::uint32_t& at(int ix, int iy) { return counts[static_cast<std::size_t>(iy) * resolution + ix]; }
  std::uint32_t at(int ix, int iy) const {
    return counts[static_cast<std::size_t>(iy) * resolution + ix];
  }
  std::size_t occupied() const;
};

// resolution must be a power of two in [2, 8192] (ResolutionOutOfRange).
// Point mode increments the containing cell; x = 1 maps to the last cell.
RasterGrid rasterize(const PointCloud& cloud, int resolution);
// Cylinder mode marks every cell whose closed square meets the parallelogram.
RasterGrid rasterize(const std::vector<Cylinder>& cylinders, int resolution);

// Binary PGM, header exactly "P5\n<w> <h>\n255\n", grayscale = log-scaled
// counts; byte-identical across runs for identical grids.
void write_pgm(const RasterGrid& grid, const std::string& path);
// Binary PPM (P6) with a fixed 256-entry palette.
void write_ppm(const RasterGrid& grid, const std::string& path);

}  // namespace carpet

#endif  // CARPET_RENDER_HPP
