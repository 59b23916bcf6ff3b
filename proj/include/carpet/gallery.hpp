#ifndef CARPET_GALLERY_HPP
#define CARPET_GALLERY_HPP

#include <map>
#include <string>
#include <vector>

#include "carpet/ifs.hpp"
#include "carpet/uplift.hpp"

namespace carpet {

// Built-in example systems with their published dimension values attached as
// regression targets.
enum class GalleryKind {
  kStandard,  // builds a system that passes validate_system
  kZipper,    // mixed-sign column: served from closed forms, general pipeline bypassed
  kUplift,    // planar base plus third-coordinate extension
};

struct GalleryParam {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  bool hi_inclusive = false;
  double default_value = 0.0;
};

struct BuiltExample {
  std::string name;
  GalleryKind kind = GalleryKind::kStandard;
  SystemSpec spec;
  std::vector<UpliftMap> ext;                // kUplift only
  std::map<std::string, double> expected;    // quantity -> closed-form value
  std::vector<std::string> notes;
};

const std::vector<std::string>& gallery_names();
const std::vector<GalleryParam>& gallery_params(const std::string& name);  // UnknownEntry

// Throws ValidationError("UnknownEntry") / ValidationError("ParamOutOfRange").
BuiltExample gallery_build(const std::string& name, const std::vector<double>& params);
BuiltExample gallery_build_defaults(const std::string& name);

}  // namespace carpet

#endif  // CARPET_GALLERY_HPP
