#ifndef CARPET_IFS_HPP
#define CARPET_IFS_HPP

#include <span>
#include <string>
#include <vector>

#include "carpet/errors.hpp"
#include "carpet/geometry.hpp"

namespace carpet {

// One planar map f(x, y) = (b x + tx, d x + a y + ty). Signed a, b are stored;
// every dimension formula downstream consumes |a|, |b| only.
struct AffineMap2 {
  double b = 0.0;   // horizontal contraction (signed)
  double a = 0.0;   // vertical contraction (signed)
  double d = 0.0;   // off-diagonal shear
  double tx = 0.0;  // horizontal translation
  double ty = 0.0;  // vertical translation

  Vec2 apply(Vec2 p) const { return {b * p.x + tx, d * p.x + a * p.y + ty}; }
};

// The parallelogram f(R), R = [0,1]^2, with two vertical sides.
Quad map_image(const AffineMap2& m);

enum class SystemClass { kTGL, kShiftedTGL };

struct Column {
  int first = 0;       // index of the first map of the column
  int count = 0;       // N_hat
  double width = 0.0;  // r_hat (signed, common b of the column)
  double offset = 0.0; // u_hat (common tx of the column)
};

struct SystemSpec {
  SystemClass cls = SystemClass::kTGL;
  std::vector<AffineMap2> maps;
  std::vector<int> column_sizes;
};

// A validated system. Immutable after validate_system; all operations on it are
// pure, so instances can be shared freely across threads.
struct TGLSystem {
  SystemClass cls = SystemClass::kTGL;
  std::vector<AffineMap2> maps;
  std::vector<Column> columns;
  std::vector<int> column_of;  // map index -> column index (phi)

  bool diagonally_homogeneous = false;
  bool uniform_vertical_fibres = false;
  bool has_negative_entries = false;
  std::vector<std::string> warnings;  // soft findings, e.g. column fixed points not spanning [0,1]

  int map_count() const { return static_cast<int>(maps.size()); }
  int column_count() const { return static_cast<int>(columns.size()); }
  SystemSpec spec() const;
};

// Checks every structural axiom and returns the validated system.
// Throws ValidationError with kind one of:
//   DominationViolation    |a_i| >= |b_i|, or |b_i| >= 1, or a_i = 0
//   ColumnInconsistency    b or tx differ (or b changes sign) within a column
//   ColumnMassViolation    sum of |a_j| over a column exceeds 1
//   OverlapColumnsInTGLClass  column x-intervals overlap although class is "tgl"
//   OutOfUnitSquare        some f_i(R) leaves the unit square
//   BadPartition           sizes do not sum to the map count / too few maps or columns
TGLSystem validate_system(const SystemSpec& spec);

struct Cylinder {
  std::vector<int> word;  // 0-based map indices
  double b = 1.0;         // composed width  (product of b)
  double a = 1.0;         // composed height (product of a)
  double d = 0.0;         // composed shear
  Vec2 origin{0.0, 0.0};  // translation of the composed map

  AffineMap2 as_map() const { return {b, a, d, origin.x, origin.y}; }
  Quad image() const { return map_image(as_map()); }
};

// Left-to-right composition of the maps named by `word`; the empty word gives
// the identity (1, 1, 0, (0,0)). Throws ValidationError("IndexOutOfRange").
Cylinder cylinder(const TGLSystem& system, std::span<const int> word);

// Appends one more symbol on the right.
Cylinder extend(const TGLSystem& system, const Cylinder& c, int index);

// K0 = max |d_i/b_i| / (1 - max |a_i/b_i|): uniform bound on |d_w / b_w|.
double skewness_bound(const TGLSystem& system);

// JSON system files: {"class": "tgl"|"shifted", "maps": [{b,a,d,tx,ty}...],
// "columns": [sizes...]}. Unknown keys are rejected.
SystemSpec parse_system_spec(const std::string& json_text);
SystemSpec load_system_spec(const std::string& path);
std::string system_spec_to_json(const SystemSpec& spec);
void save_system_spec(const SystemSpec& spec, const std::string& path);

}  // namespace carpet

#endif  // CARPET_IFS_HPP
