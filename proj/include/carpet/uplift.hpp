#ifndef CARPET_UPLIFT_HPP
#define CARPET_UPLIFT_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "carpet/conditions.hpp"
#include "carpet/ifs.hpp"

namespace carpet {

// Third row and translation of the lower-triangular 3D extension
//   F_i(x, y, z) = (b x + tx, d x + a y + ty, u x + v y + lambda z + tz).
struct UpliftMap {
  double u = 0.0;
  double v = 0.0;
  double lambda = 0.0;
  double tz = 0.0;
};

using Mat3 = std::array<std::array<double, 3>, 3>;

struct UpliftSystem {
  TGLSystem base;
  std::vector<UpliftMap> ext;
  CheckStatus rosc3d = CheckStatus::kUnknown;
  std::optional<std::pair<int, int>> rosc3d_witness;
  std::string rosc3d_method;  // "aabb", "sat", or "sampled"

  Mat3 matrix(int i) const;
  std::array<double, 3> translation(int i) const;
  int map_count() const { return base.map_count(); }
};

// Checks 0 < |lambda_i| < |a_i| (LambdaOrderViolation), 3D containment
// (OutOfUnitCube) and pairwise empty-interior intersection of the cube images
// (bounding-box prefilter, then a separating-axis test over the 15 candidate
// axes of the two parallelepipeds, with a 64^3 sampled fallback).
UpliftSystem validate_uplift(const TGLSystem& base, const std::vector<UpliftMap>& ext);

struct UpliftDimension {
  double value = 0.0;
  bool conditions_met = false;
  std::string caveat;  // nonempty when the hypotheses could not be verified
};

// value = 1 + log(N b) / (-log a) for a diagonally homogeneous base with
// uniform vertical fibres and full-interval projection (M |b| = 1); otherwise
// throws TheoremHypothesisViolation. conditions_met records whether
// a < min(b^(log N / log M), b d* / (2 + d*)) and the 3D separation check hold.
UpliftDimension uplift_dimension(const UpliftSystem& u);

struct UpliftSkewBounds {
  double K_x = 0.0;
  double K_y = 0.0;
  double K_z = 0.0;
  double envelope_c = 0.0;  // |z_w| <= envelope_c * envelope_r^n
  double envelope_r = 0.0;
};

// Explicit constants bounding the composed third-row entries:
// |A_w(2,1)| <= K_x |b_w|, |A_w(3,1)| <= K_y |b_w|, |A_w(3,2)| <= K_z |b_w|.
// Throws SeriesDiverges if max |lambda_i| >= min |b_i| (impossible under the
// validity constraints, checked defensively).
UpliftSkewBounds uplift_skew_bounds(const UpliftSystem& u);

Mat3 mat3_mul(const Mat3& x, const Mat3& y);

// JSON uplift files extend the planar format: each map additionally carries
// {u, v, lambda, tz}.
struct UpliftSpec {
  SystemSpec base;
  std::vector<UpliftMap> ext;
};
UpliftSpec parse_uplift_spec(const std::string& json_text);
UpliftSpec load_uplift_spec(const std::string& path);
std::string uplift_spec_to_json(const UpliftSpec& spec);

}  // namespace carpet

#endif  // CARPET_UPLIFT_HPP
