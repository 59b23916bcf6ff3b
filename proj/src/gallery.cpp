#include "carpet/gallery.hpp"

#include <cmath>
#include <sstream>

namespace carpet {

namespace {

AffineMap2 mk(double b, double a, double d, double tx, double ty) { return {b, a, d, tx, ty}; }

SystemSpec smiley_spec() {
  // b = 0.2 throughout; mouth heights 0.1 with shears (-0.2, -0.1, 0, 0.1, 0.2),
  // nose and eyes height 0.13. One mouth piece per column, eyes above the
  // second and fourth mouth pieces, nose above the middle one. Translations
  // are a reconstruction (the published values fix only diagonals and shears);
  // the regression values pin the grouping.
  SystemSpec s;
  s.cls = SystemClass::kTGL;
  s.maps = {
      mk(0.2, 0.10, -0.2, 0.0, 0.50),  // mouth, leftmost
      mk(0.2, 0.10, -0.1, 0.2, 0.35),  // mouth
      mk(0.2, 0.13, 0.0, 0.2, 0.60),   // left eye
      mk(0.2, 0.10, 0.0, 0.4, 0.20),   // mouth, centre
      mk(0.2, 0.13, 0.2, 0.4, 0.38),   // nose
      mk(0.2, 0.10, 0.1, 0.6, 0.25),   // mouth
      mk(0.2, 0.13, 0.0, 0.6, 0.60),   // right eye
      mk(0.2, 0.10, 0.2, 0.8, 0.30),   // mouth, rightmost
  };
  s.column_sizes = {1, 2, 2, 2, 1};
  return s;
}

// Falconer-Miao family: three columns of width 1/3, two maps each, shears
// 0 and +-(1/2 - a). Maps are listed column by column (left to right).
SystemSpec fm_spec(double a, bool overlapping) {
  double d = 0.5 - a;
  SystemSpec s;
  s.cls = SystemClass::kTGL;
  const double third = 1.0 / 3.0;
  if (!overlapping) {
    s.maps = {
        mk(third, a, d, 0.0, 0.5),        mk(third, a, -d, 0.0, 0.5 - a),
        mk(third, a, 0.0, third, 0.0),    mk(third, a, 0.0, third, 1.0 - a),
        mk(third, a, d, 2 * third, 0.0),  mk(third, a, -d, 2 * third, 1.0 - a),
    };
  } else {
    s.maps = {
        mk(third, a, d, 0.0, 0.25),        mk(third, a, -d, 0.0, 0.75 - a),
        mk(third, a, 0.0, third, 0.25),    mk(third, a, 0.0, third, 0.75 - a),
        mk(third, a, d, 2 * third, 0.25),  mk(third, a, -d, 2 * third, 0.75 - a),
    };
  }
  s.column_sizes = {2, 2, 2};
  return s;
}

// "X=X": three occupied columns of width 0.28 with gaps; the outer columns
// hold a crossing pair, the middle column three horizontal bars. Translations
// reconstructed symmetric about both midlines.
SystemSpec x_equiv_x_spec(double a) {
  const double b = 0.28;
  double d = 0.5 - a;
  SystemSpec s;
  s.cls = SystemClass::kTGL;
  s.maps = {
      mk(b, a, d, 0.0, 0.25),          mk(b, a, -d, 0.0, 0.75 - a),
      mk(b, a, 0.0, 0.36, 0.125),      mk(b, a, 0.0, 0.36, 0.5 - 0.5 * a),
      mk(b, a, 0.0, 0.36, 0.875 - a),  mk(b, a, d, 0.72, 0.25),
      mk(b, a, -d, 0.72, 0.75 - a),
  };
  s.column_sizes = {2, 3, 2};
  return s;
}

// Self-affine continuous curve family; the middle column mixes orientations,
// so its dimensions come from the dedicated closed forms.
SystemSpec zipper_spec(double a) {
  double d = (1.0 - 5.0 * a) / 4.0;
  SystemSpec s;
  s.cls = SystemClass::kTGL;
  const double third = 1.0 / 3.0;
  s.maps = {
      mk(third, a, d, 0.0, 0.0),
      mk(third, a, d, third, a + d),
      mk(-third, a, 0.0, 2 * third, 2.0 * (a + d)),
      mk(third, a, d, third, 3.0 * a + 2.0 * d),
      mk(third, a, d, 2 * third, 4.0 * a + 3.0 * d),
  };
  s.column_sizes = {1, 3, 1};
  return s;
}

std::vector<UpliftMap> uplift_demo_ext(double lambda) {
  // Climbing ramps (u = 1 - lambda) for one member of each crossing pair, a
  // top slab for the other; the gap-free middle column descends full height.
  double up = 1.0 - lambda;
  return {
      UpliftMap{up, 0.0, lambda, 0.0},   UpliftMap{0.0, 0.0, lambda, up},
      UpliftMap{-up, 0.0, lambda, up},   UpliftMap{-up, 0.0, lambda, up},
      UpliftMap{up, 0.0, lambda, 0.0},   UpliftMap{0.0, 0.0, lambda, up},
  };
}

struct EntryDef {
  GalleryKind kind;
  std::vector<GalleryParam> params;
};

const std::map<std::string, EntryDef>& entry_defs() {
  static const std::map<std::string, EntryDef> defs = {
      {"smiley", {GalleryKind::kStandard, {}}},
      {"fm_carpet", {GalleryKind::kStandard, {{"a", 0.0, 1.0 / 3.0, false, 0.3}}}},
      {"fm_overlap", {GalleryKind::kStandard, {{"a", 0.0, 1.0 / 3.0, false, 0.15}}}},
      {"x_equiv_x", {GalleryKind::kStandard, {{"a", 0.0, 0.28, false, 0.045}}}},
      {"zipper", {GalleryKind::kZipper, {{"a", 0.0, 0.2, true, 0.2}}}},
      {"uplift_demo",
       {GalleryKind::kUplift,
        {{"a", 0.0, 1.0 / 6.0, false, 0.05}, {"lambda", 0.0, 1.0 / 6.0, false, 0.03}}}},
  };
  return defs;
}

double fm_dim(double a) { return 1.0 - std::log(2.0) / std::log(a); }

}  // namespace

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names = {"smiley",    "fm_carpet", "fm_overlap",
                                                 "x_equiv_x", "zipper",    "uplift_demo"};
  return names;
}

const std::vector<GalleryParam>& gallery_params(const std::string& name) {
  auto it = entry_defs().find(name);
  if (it == entry_defs().end()) throw ValidationError("UnknownEntry", "no gallery entry " + name);
  return it->second.params;
}

BuiltExample gallery_build(const std::string& name, const std::vector<double>& params) {
  auto it = entry_defs().find(name);
  if (it == entry_defs().end()) throw ValidationError("UnknownEntry", "no gallery entry " + name);
  const EntryDef& def = it->second;
  if (params.size() != def.params.size()) {
    throw ValidationError("ParamOutOfRange",
                          name + " takes " + std::to_string(def.params.size()) + " parameter(s)");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const GalleryParam& p = def.params[i];
    bool ok = params[i] > p.lo && (p.hi_inclusive ? params[i] <= p.hi : params[i] < p.hi);
    if (!ok) {
      std::ostringstream os;
      os << name << " parameter " << p.name << " = " << params[i] << " outside (" << p.lo << ", "
         << p.hi << (p.hi_inclusive ? "]" : ")");
      throw ValidationError("ParamOutOfRange", os.str());
    }
  }

  BuiltExample out;
  out.name = name;
  out.kind = def.kind;

  if (name == "smiley") {
    out.spec = smiley_spec();
    // published regression values; s and s_A refined to the full-precision
    // roots of their defining equations
    out.expected = {{"dim_H", 1.20665},
                    {"dim_B", 1.2133984980775854},
                    {"dim_Aff", 1.2133984980775854}};
    out.notes = {"translations and column grouping are a documented reconstruction",
                 "published values: dim_H 1.20665, dim_B = dim_Aff 1.21340"};
  } else if (name == "fm_carpet" || name == "fm_overlap") {
    double a = params[0];
    out.spec = fm_spec(a, name == "fm_overlap");
    double v = fm_dim(a);
    out.expected = {{"dim_H", v}, {"dim_B", v}, {"dim_Aff", v}};
    out.notes = {"dim formulas are translation-independent (uniform fibres, full projection)"};
    if (name == "fm_overlap") {
      if (a < 1.0 / 6.0) {
        double k1 = (1.0 / 9.0 - a / 3.0) / ((0.5 - a) * (1.0 / 3.0 - 2.0 * a));
        out.expected["K1_bound"] = k1;
        out.notes.push_back("transversality holds for a < 1/6 with the recorded K1 bound");
      } else {
        out.notes.push_back("closed forms stated for a < 1/6; attached for reference beyond");
      }
    }
  } else if (name == "x_equiv_x") {
    double a = params[0];
    const double b = 0.28;
    out.spec = x_equiv_x_spec(a);
    double x = std::log(b) / std::log(a);
    double dim_h = std::log(2.0 * std::pow(2.0, x) + std::pow(3.0, x)) / (-std::log(b));
    double dim_b = std::log(7.0 / 3.0) / (-std::log(a)) + std::log(3.0) / (-std::log(b));
    double dim_aff = 1.0 + std::log(1.96) / (-std::log(a));
    out.expected = {{"dim_H", dim_h}, {"dim_B", dim_b}, {"dim_Aff", dim_aff}};
    out.notes = {"translations are a documented reconstruction (columns (2,3,2), width 0.28)",
                 "dim_H formula valid for a < 0.10405, dim_B for a < 0.10254, dim_Aff for a < 0.28"};
    if (a < 0.14) {
      out.expected["K1_bound"] = b * (b - a) / ((0.5 - a) * (b - 2.0 * a));
      out.notes.push_back("transversality holds for a < 0.14 with the recorded K1 bound");
    }
  } else if (name == "zipper") {
    double a = params[0];
    out.spec = zipper_spec(a);
    double dim_h = std::log(2.0 + std::pow(3.0, std::log(3.0) / (-std::log(a)))) / std::log(3.0);
    double dim_b = 1.0 + std::log(3.0 / 5.0) / std::log(a);
    out.expected = {{"dim_H", dim_h}, {"dim_B", dim_b}};
    out.notes = {"mixed-sign middle column: dimensions served from the closed forms,"
                 " not the general pipeline"};
  } else {  // uplift_demo
    double a = params[0], lambda = params[1];
    if (lambda >= a) {
      throw ValidationError("ParamOutOfRange", "uplift_demo requires lambda < a");
    }
    out.spec = fm_spec(a, true);
    out.ext = uplift_demo_ext(lambda);
    out.expected = {{"dim", fm_dim(a)}};
    out.notes = {"planar base: fm_overlap; third coordinate separates the crossing pairs"};
  }
  return out;
}

BuiltExample gallery_build_defaults(const std::string& name) {
  std::vector<double> params;
  for (const GalleryParam& p : gallery_params(name)) params.push_back(p.default_value);
  return gallery_build(name, params);
}

}  // namespace carpet
