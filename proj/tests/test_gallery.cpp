#include <doctest.h>

#include <cmath>

#include "carpet/dimension.hpp"
#include "carpet/gallery.hpp"

using namespace carpet;

TEST_CASE("every standard entry builds a valid system") {
  for (const std::string& name : gallery_names()) {
    BuiltExample ex = gallery_build_defaults(name);
    if (ex.kind == GalleryKind::kZipper) continue;
    CHECK_NOTHROW(validate_system(ex.spec));
  }
}

TEST_CASE("unknown entries and bad parameters are rejected") {
  CHECK_THROWS_AS(gallery_build("nonesuch", {}), ValidationError);
  try {
    gallery_build("zipper", {0.25});  // validity is (0, 1/5]
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(e.kind() == "ParamOutOfRange");
  }
  CHECK_NOTHROW(gallery_build("zipper", {0.2}));  // right endpoint included
  CHECK_THROWS_AS(gallery_build("fm_carpet", {1.0 / 3.0}), ValidationError);
  CHECK_THROWS_AS(gallery_build("fm_carpet", {0.1, 0.2}), ValidationError);
  CHECK_THROWS_AS(gallery_build("uplift_demo", {0.05, 0.05}), ValidationError);  // lambda < a
}

TEST_CASE("gallery regression: closed forms across the validity ranges") {
  SUBCASE("fm_carpet and fm_overlap") {
    for (const char* name : {"fm_carpet", "fm_overlap"}) {
      for (double a : {0.05, 0.1, 0.15, 0.22, 0.3}) {
        BuiltExample ex = gallery_build(name, {a});
        TGLSystem sys = validate_system(ex.spec);
        DimensionReport rep = dimension_report(sys);
        CHECK(std::abs(rep.alpha_star - ex.expected.at("dim_H")) <= 1e-6);
        CHECK(std::abs(rep.s - ex.expected.at("dim_B")) <= 1e-6);
        CHECK(std::abs(rep.s_A - ex.expected.at("dim_Aff")) <= 1e-6);
      }
    }
  }
  SUBCASE("x_equiv_x") {
    for (double a : {0.02, 0.045, 0.07, 0.1, 0.13}) {
      BuiltExample ex = gallery_build("x_equiv_x", {a});
      TGLSystem sys = validate_system(ex.spec);
      DimensionReport rep = dimension_report(sys);
      CHECK(std::abs(rep.alpha_star - ex.expected.at("dim_H")) <= 1e-6);
      CHECK(std::abs(rep.s - ex.expected.at("dim_B")) <= 1e-6);
      CHECK(std::abs(rep.s_A - ex.expected.at("dim_Aff")) <= 1e-6);
    }
  }
  SUBCASE("smiley regression values") {
    BuiltExample ex = gallery_build("smiley", {});
    TGLSystem sys = validate_system(ex.spec);
    DimensionReport rep = dimension_report(sys);
    CHECK(std::abs(rep.alpha_star - ex.expected.at("dim_H")) <= 1e-3);
    CHECK(std::abs(rep.s - ex.expected.at("dim_B")) <= 1e-6);
    CHECK(std::abs(rep.s_A - ex.expected.at("dim_Aff")) <= 1e-6);
  }
}

TEST_CASE("x_equiv_x expected values at the published parameter") {
  BuiltExample ex = gallery_build("x_equiv_x", {0.045});
  CHECK(ex.expected.at("dim_H") == doctest::Approx(1.1325945442069187).epsilon(1e-12));
  CHECK(ex.expected.at("dim_B") == doctest::Approx(1.1362592840089796).epsilon(1e-12));
  CHECK(ex.expected.at("dim_Aff") == doctest::Approx(1.2170023662573036).epsilon(1e-12));
  // published prints: 1.13259, 1.13626, 1.2170
  CHECK(std::abs(ex.expected.at("dim_H") - 1.13259) < 5e-6);
  CHECK(std::abs(ex.expected.at("dim_B") - 1.13626) < 5e-6);
  CHECK(std::abs(ex.expected.at("dim_Aff") - 1.21700) < 5e-6);
}

TEST_CASE("zipper closed forms") {
  BuiltExample ex = gallery_build("zipper", {0.2});
  // independent re-derivation pinned at high precision
  CHECK(ex.expected.at("dim_H") == doctest::Approx(1.2880644026336958).epsilon(1e-10));
  CHECK(ex.expected.at("dim_B") == doctest::Approx(1.3173938055140147).epsilon(1e-10));

  // the zipper spec itself carries a mixed-sign column: bespoke path only
  CHECK_THROWS_AS(validate_system(ex.spec), ValidationError);
  CHECK(ex.spec.maps.size() == 5);
  CHECK(ex.spec.maps[2].b == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("zipper dimensions are strictly increasing in a and dim_H < dim_B") {
  double prev_h = 0.0, prev_b = 0.0;
  for (double a : {0.05, 0.08, 0.12, 0.16, 0.2}) {
    BuiltExample ex = gallery_build("zipper", {a});
    double h = ex.expected.at("dim_H"), b = ex.expected.at("dim_B");
    CHECK(h < b);
    CHECK(h > prev_h);
    CHECK(b > prev_b);
    prev_h = h;
    prev_b = b;
  }
}

TEST_CASE("strict versus equal dimension gaps per entry") {
  // dim_H < dim_B strictly for smiley and x_equiv_x, equality for the fm family
  DimensionReport smiley = dimension_report(validate_system(gallery_build("smiley", {}).spec));
  CHECK(smiley.alpha_star < smiley.s - 1e-4);

  DimensionReport xx =
      dimension_report(validate_system(gallery_build("x_equiv_x", {0.045}).spec));
  CHECK(xx.alpha_star < xx.s - 1e-4);
  CHECK(xx.s < xx.s_A - 1e-4);

  DimensionReport fm = dimension_report(validate_system(gallery_build("fm_carpet", {0.18}).spec));
  CHECK(std::abs(fm.alpha_star - fm.s) < 1e-10);
}

TEST_CASE("transversality metadata") {
  BuiltExample ex = gallery_build("fm_overlap", {0.1});
  CHECK(ex.expected.at("K1_bound") == doctest::Approx(1.4583333333333333).epsilon(1e-12));
  CHECK(gallery_build("fm_overlap", {0.2}).expected.count("K1_bound") == 0);
  CHECK(gallery_build("x_equiv_x", {0.1}).expected.count("K1_bound") == 1);
  CHECK(gallery_build("x_equiv_x", {0.15}).expected.count("K1_bound") == 0);
}

TEST_CASE("uplift_demo expected value") {
  BuiltExample ex = gallery_build("uplift_demo", {0.05, 0.03});
  CHECK(ex.expected.at("dim") == doctest::Approx(1.2313782131597592).epsilon(1e-12));
  CHECK(ex.ext.size() == 6);
}

TEST_CASE("export and re-import reproduce identical reports") {
  for (const char* name : {"fm_carpet", "fm_overlap", "x_equiv_x"}) {
    BuiltExample ex = gallery_build_defaults(name);
    SystemSpec round = parse_system_spec(system_spec_to_json(ex.spec));
    DimensionReport a = dimension_report(validate_system(ex.spec));
    DimensionReport b = dimension_report(validate_system(round));
    CHECK(a.alpha_star == b.alpha_star);
    CHECK(a.s == b.s);
    CHECK(a.s_A == b.s_A);
    CHECK(dimension_report_to_json(a) == dimension_report_to_json(b));
  }
}
