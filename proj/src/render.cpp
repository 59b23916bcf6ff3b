#include "carpet/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <thread>

#include "carpet/numerics.hpp"

namespace carpet {

namespace {

constexpr int kBurnIn = 100;

void run_chunk(const TGLSystem& system, const ProbVector& cumulative, std::uint64_t chunk_seed,
               std::size_t count, Vec2* out) {
  SplitMix64 rng(chunk_seed);
  Vec2 x{0.0, 0.0};
  auto step = [&] {
    double u = rng.next_double();
    std::size_t i = 0;
    while (i + 1 < cumulative.size() && u >= cumulative[i]) ++i;
    x = system.maps[i].apply(x);
  };
  for (int k = 0; k < kBurnIn; ++k) step();
  for (std::size_t k = 0; k < count; ++k) {
    step();
    out[k] = x;
  }
}

}  // namespace

PointCloud chaos_game(const TGLSystem& system, std::size_t n_points, std::uint64_t seed,
                      ProbVector weights, int chunk_count, int max_threads) {
  if (n_points < 1) throw NumericError("BadConfig", "n_points must be >= 1");
  if (chunk_count < 1) chunk_count = 1;
  if (weights.empty()) {
    weights = natural_box_weights(system).p_tilde;
  } else {
    if (static_cast<int>(weights.size()) != system.map_count()) {
      throw NumericError("LengthMismatch", "weights length differs from map count");
    }
    for (double w : weights) {
      if (!(w > 0.0)) throw NumericError("ZeroEntry", "weights must be strictly positive");
    }
  }
  ProbVector cumulative(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cumulative[i] = acc;
  }
  for (double& c : cumulative) c /= acc;

  PointCloud cloud;
  cloud.seed = seed;
  cloud.weights = weights;
  cloud.points.resize(n_points);

  std::size_t base = n_points / static_cast<std::size_t>(chunk_count);
  std::size_t rem = n_points % static_cast<std::size_t>(chunk_count);
  std::vector<std::size_t> sizes(chunk_count, base);
  for (std::size_t c = 0; c < rem; ++c) sizes[c] += 1;

  std::vector<std::size_t> offsets(chunk_count, 0);
  for (int c = 1; c < chunk_count; ++c) offsets[c] = offsets[c - 1] + sizes[c - 1];

  auto chunk_seed = [&](int c) {
    return chunk_count == 1 ? seed : mix_seed(seed, static_cast<std::uint64_t>(c));
  };

  if (max_threads <= 1 || chunk_count == 1) {
    for (int c = 0; c < chunk_count; ++c) {
      if (sizes[c] > 0) {
        run_chunk(system, cumulative, chunk_seed(c), sizes[c], cloud.points.data() + offsets[c]);
      }
    }
  } else {
    std::vector<std::thread> pool;
    int workers = std::min(max_threads, chunk_count);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int c = w; c < chunk_count; c += workers) {
          if (sizes[c] > 0) {
            run_chunk(system, cumulative, chunk_seed(c), sizes[c], cloud.points.data() + offsets[c]);
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return cloud;
}

std::vector<Cylinder> cylinder_cover(const TGLSystem& system, double delta) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw NumericError("BadConfig", "delta must lie in (0, 1]");
  }
  constexpr std::size_t kMaxCover = 10'000'000;
  // decimal widths land one ulp off their nominal products; treat them as equal
  const double stop = delta * (1.0 + 1e-12);
  std::vector<Cylinder> out;
  std::vector<Cylinder> stack;
  stack.push_back(Cylinder{});
  while (!stack.empty()) {
    Cylinder top = std::move(stack.back());
    stack.pop_back();
    for (int i = system.map_count() - 1; i >= 0; --i) {
      Cylinder child = extend(system, top, i);
      if (std::abs(child.b) <= stop) {
        out.push_back(std::move(child));
        if (out.size() > kMaxCover) {
          throw NumericError("CoverTooLarge", "cover exceeds 10^7 cylinders");
        }
      } else {
        stack.push_back(std::move(child));
      }
    }
  }
  return out;
}

std::size_t RasterGrid::occupied() const {
  std::size_t n = 0;
  for (std::uint32_t c : counts) {
    if (c > 0) ++n;
  }
  return n;
}

namespace {

void check_resolution(int resolution) {
  bool pow2 = resolution > 0 && (resolution & (resolution - 1)) == 0;
  if (resolution < 2 || resolution > 8192 || !pow2) {
    throw NumericError("ResolutionOutOfRange", "resolution must be a power of two in [2, 8192]");
  }
}

int cell_index(double coord, int resolution) {
  int i = static_cast<int>(std::floor(coord * resolution));
  return std::clamp(i, 0, resolution - 1);  // x = 1 lands in the last cell
}

}  // namespace

RasterGrid rasterize(const PointCloud& cloud, int resolution) {
  check_resolution(resolution);
  RasterGrid grid;
  grid.resolution = resolution;
  grid.counts.assign(static_cast<std::size_t>(resolution) * resolution, 0);
  for (const Vec2& p : cloud.points) {
    grid.at(cell_index(p.x, resolution), cell_index(p.y, resolution)) += 1;
  }
  return grid;
}

RasterGrid rasterize(const std::vector<Cylinder>& cylinders, int resolution) {
  check_resolution(resolution);
  RasterGrid grid;
  grid.resolution = resolution;
  grid.counts.assign(static_cast<std::size_t>(resolution) * resolution, 0);
  const double cell = 1.0 / resolution;
  for (const Cylinder& c : cylinders) {
    Quad quad = c.image();
    double xlo = quad.v[0].x, xhi = quad.v[0].x, ylo = quad.v[0].y, yhi = quad.v[0].y;
    for (const Vec2& v : quad.v) {
      xlo = std::min(xlo, v.x);
      xhi = std::max(xhi, v.x);
      ylo = std::min(ylo, v.y);
      yhi = std::max(yhi, v.y);
    }
    int ix0 = std::clamp(static_cast<int>(std::floor(xlo * resolution)), 0, resolution - 1);
    int ix1 = std::clamp(static_cast<int>(std::floor(xhi * resolution)), 0, resolution - 1);
    int iy0 = std::clamp(static_cast<int>(std::floor(ylo * resolution)), 0, resolution - 1);
    int iy1 = std::clamp(static_cast<int>(std::floor(yhi * resolution)), 0, resolution - 1);
    for (int iy = iy0; iy <= iy1; ++iy) {
      for (int ix = ix0; ix <= ix1; ++ix) {
        Quad square = axis_aligned_cell(ix * cell, iy * cell, (ix + 1) * cell, (iy + 1) * cell);
        // closed cell meets the parallelogram: separated only by a strictly
        // positive gap
        if (separation_gap(square, quad) <= kGeomTol) grid.at(ix, iy) += 1;
      }
    }
  }
  return grid;
}

namespace {

std::vector<std::uint8_t> log_scaled(const RasterGrid& grid) {
  std::uint32_t max_count = 0;
  for (std::uint32_t c : grid.counts) max_count = std::max(max_count, c);
  std::vector<std::uint8_t> bytes(grid.counts.size(), 0);
  if (max_count == 0) return bytes;
  double denom = std::log1p(static_cast<double>(max_count));
  for (std::size_t i = 0; i < grid.counts.size(); ++i) {
    if (grid.counts[i] == 0) continue;
    double v = std::log1p(static_cast<double>(grid.counts[i])) / denom;
    int g = static_cast<int>(std::lround(v * 255.0));
    bytes[i] = static_cast<std::uint8_t>(std::clamp(g, 1, 255));
  }
  return bytes;
}

// Fixed heat palette: black, blue, red, yellow, white anchors, linearly
// interpolated. Entry 0 stays black for empty cells.
std::array<std::uint8_t, 3> palette_entry(int i) {
  static const int anchors[5][3] = {{0, 0, 0}, {24, 40, 160}, {200, 40, 32}, {255, 208, 48},
                                    {255, 255, 255}};
  double t = i / 255.0 * 4.0;
  int seg = std::min(static_cast<int>(t), 3);
  double frac = t - seg;
  std::array<std::uint8_t, 3> rgb{};
  for (int c = 0; c < 3; ++c) {
    double v = anchors[seg][c] + frac * (anchors[seg + 1][c] - anchors[seg][c]);
    rgb[c] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
  }
  return rgb;
}

}  // namespace

void write_pgm(const RasterGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("IoError", "cannot open " + path + " for writing");
  out << "P5\n" << grid.resolution << " " << grid.resolution << "\n255\n";
  std::vector<std::uint8_t> bytes = log_scaled(grid);
  // image rows run top-to-bottom; grid rows bottom-to-top
  for (int iy = grid.resolution - 1; iy >= 0; --iy) {
    out.write(reinterpret_cast<const char*>(bytes.data() + static_cast<std::size_t>(iy) * grid.resolution),
              grid.resolution);
  }
  if (!out) throw IoError("IoError", "failed writing " + path);
}

void write_ppm(const RasterGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("IoError", "cannot open " + path + " for writing");
  out << "P6\n" << grid.resolution << " " << grid.resolution << "\n255\n";
  std::vector<std::uint8_t> bytes = log_scaled(grid);
  for (int iy = grid.resolution - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.resolution; ++ix) {
      auto rgb = palette_entry(bytes[static_cast<std::size_t>(iy) * grid.resolution + ix]);
      out.write(reinterpret_cast<const char*>(rgb.data()), 3);
    }
  }
  if (!out) throw IoError("IoError", "failed writing " + path);
}

}  // namespace carpet
