// Acceptance suite: one numbered criterion per invocation (all when no
// argument). Prints one PASS/FAIL line per criterion; exit code 0 iff every
// requested criterion passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "carpet/boxcount.hpp"
#include "carpet/conditions.hpp"
#include "carpet/dimension.hpp"
#include "carpet/gallery.hpp"
#include "carpet/render.hpp"
#include "carpet/uplift.hpp"
#include "support/test_systems.hpp"

using namespace carpet;
using carpet_test::random_system;
using carpet_test::RandomSystemOptions;

namespace {

struct Criterion {
  int id;
  std::string description;
  std::function<bool(std::ostream&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool close(std::ostream& log, const char* what, double got, double want, double tol) {
  double diff = std::abs(got - want);
  if (diff <= tol) return true;
  log << "  " << what << ": got " << got << ", want " << want << " +- " << tol
      << " (diff " << diff << ")";
  return false;
}

TGLSystem sys_of(const std::string& name, std::vector<double> params = {}) {
  return validate_system(gallery_build(name, params).spec);
}

// ---------------------------------------------------------------------------

bool criterion1(std::ostream& log) {
  auto t0 = std::chrono::steady_clock::now();
  DimensionReport rep = dimension_report(sys_of("smiley"));
  double elapsed = seconds_since(t0);
  bool ok = true;
  // The published value 1.21340 is the 5-decimal rounding of the equation's
  // root; the 1e-6 check is pinned to the full-precision root (computed
  // independently by high-precision bisection) and the rounding is checked
  // against the published print.
  ok &= close(log, "s vs equation root", rep.s, 1.2133984980775854, 1e-6);
  ok &= close(log, "round(s, 5) vs published print", std::round(rep.s * 1e5) / 1e5, 1.21340, 1e-12);
  ok &= close(log, "alpha_star", rep.alpha_star, 1.20665, 1e-3);
  if (elapsed >= 5.0) {
    log << "  runtime " << elapsed << "s >= 5s";
    ok = false;
  }
  return ok;
}

bool criterion2(std::ostream& log) {
  TGLSystem sys = sys_of("x_equiv_x", {0.045});
  DimensionReport rep = dimension_report(sys);
  bool ok = true;
  ok &= close(log, "alpha_star", rep.alpha_star, 1.13259, 1e-3);
  ok &= close(log, "s", rep.s, 1.13626, 1e-5);
  ok &= close(log, "s_A", rep.s_A, 1.21700, 1e-5);
  ok &= close(log, "x0", diag_homo_threshold(sys), 0.56255, 1e-4);

  // condition boundaries in a, located by bisection on the margins
  auto main_margin = [](double a) {
    TGLSystem s = sys_of("x_equiv_x", {a});
    return check_cond_main(s, diag_homo_p_star(s)).margin;
  };
  auto box_margin = [](double a) { return check_cond_box(sys_of("x_equiv_x", {a})).margin; };
  double main_boundary = solve_monotone(main_margin, 0.05, 0.14);
  double box_boundary = solve_monotone(box_margin, 0.05, 0.14);
  ok &= close(log, "cond_main boundary", main_boundary, 0.10405, 1e-4);
  ok &= close(log, "cond_box boundary", box_boundary, 0.10254, 1e-4);
  return ok;
}

bool criterion3(std::ostream& log) {
  bool ok = true;
  for (const char* name : {"fm_carpet", "fm_overlap"}) {
    for (double a : {0.05, 0.10, 0.15, 0.20, 0.30}) {
      DimensionReport rep = dimension_report(sys_of(name, {a}));
      double want = 1.0 - std::log(2.0) / std::log(a);
      std::string tag = std::string(name) + " a=" + std::to_string(a);
      ok &= close(log, (tag + " alpha").c_str(), rep.alpha_star, want, 1e-8);
      ok &= close(log, (tag + " s").c_str(), rep.s, want, 1e-8);
    }
  }
  return ok;
}

bool criterion4(std::ostream& log) {
  bool ok = true;
  double prev_h = 0.0, prev_b = 0.0;
  for (double a : {0.08, 0.12, 0.2}) {
    BuiltExample ex = gallery_build("zipper", {a});
    double h = ex.expected.at("dim_H"), b = ex.expected.at("dim_B");
    if (!(h < b)) {
      log << "  dim_H >= dim_B at a = " << a;
      ok = false;
    }
    if (!(h > prev_h && b > prev_b)) {
      log << "  not strictly increasing at a = " << a;
      ok = false;
    }
    prev_h = h;
    prev_b = b;
  }
  // independent re-derivation of the closed forms at a = 0.2, pinned at high
  // precision (the 5-decimal prints are 1.28806 and 1.31739)
  BuiltExample ex = gallery_build("zipper", {0.2});
  ok &= close(log, "dim_H(0.2)", ex.expected.at("dim_H"), 1.2880644026336958, 1e-6);
  ok &= close(log, "dim_B(0.2)", ex.expected.at("dim_B"), 1.3173938055140147, 1e-6);
  return ok;
}

bool criterion5(std::ostream& log) {
  SplitMix64 rng(0xacce5501);
  bool ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    TGLSystem sys = validate_system(random_system(rng));
    BoxDimension box = box_dimension_upper(sys);
    HausdorffUpper hd = hausdorff_dimension_upper(sys);
    double s_a = affinity_dimension(sys);
    if (!(hd.alpha_star <= box.s + 1e-8) || !(box.s <= s_a + 1e-8)) {
      log << "  ordering chain violated at trial " << trial;
      ok = false;
      break;
    }
    NaturalWeights w = natural_box_weights(sys);
    EntropyLyapunov el = entropy_and_lyapunov(sys, w.p_tilde);
    double ly = el.h / el.chi2 + (1.0 - el.chi1 / el.chi2) * box.s_H;
    if (std::abs(box.s - ly) > 1e-9) {
      log << "  Ledrappier-Young identity off by " << std::abs(box.s - ly) << " at trial "
          << trial;
      ok = false;
      break;
    }
  }
  return ok;
}

bool criterion6(std::ostream& log) {
  SplitMix64 rng(0xacce5506);
  RandomSystemOptions opt;
  opt.diagonally_homogeneous = true;
  bool ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    TGLSystem sys = validate_system(random_system(rng, opt));
    double closed = diag_homo_alpha_star(sys);
    ProbVector q_closed = column_marginal(sys, diag_homo_p_star(sys));

    // plain optimizer run: default seeded starts, no closed-form warm start
    auto g = [&](const ProbVector& p) { return dim_formula_D(sys, p); };
    auto gr = [&](const ProbVector& p) { return dim_formula_D_gradient(sys, p); };
    SimplexResult res = maximize_simplex(g, sys.map_count(), {}, {}, gr);

    if (std::abs(res.value - closed) > 1e-7) {
      log << "  value gap " << std::abs(res.value - closed) << " at trial " << trial;
      ok = false;
      break;
    }
    ProbVector q = column_marginal(sys, res.argmax);
    for (std::size_t c = 0; c < q.size(); ++c) {
      if (std::abs(q[c] - q_closed[c]) > 1e-6) {
        log << "  column marginal gap " << std::abs(q[c] - q_closed[c]) << " at trial " << trial;
        ok = false;
        break;
      }
    }
    if (!ok) break;
  }
  return ok;
}

bool criterion7(std::ostream& log) {
  bool ok = true;
  struct Case {
    std::string label;
    TGLSystem sys;
    double s;
  };
  std::vector<Case> cases;
  cases.push_back({"smiley", sys_of("smiley"), box_dimension_upper(sys_of("smiley")).s});
  cases.push_back({"fm_carpet(0.3)", sys_of("fm_carpet", {0.3}), 1.575716642493445});
  TGLSystem mc = validate_system(carpet_test::mcmullen_spec());
  cases.push_back({"mcmullen", mc, box_dimension_upper(mc).s});
  for (const Case& c : cases) {
    auto t0 = std::chrono::steady_clock::now();
    BoxCountEstimate est = empirical_box_dimension(c.sys, 4, 10);
    double elapsed = seconds_since(t0);
    if (std::abs(est.slope - c.s) > 0.06) {
      log << "  " << c.label << ": slope " << est.slope << " vs s " << c.s;
      ok = false;
    }
    if (est.r2 < 0.995) {
      log << "  " << c.label << ": r2 " << est.r2 << " < 0.995";
      ok = false;
    }
    if (elapsed >= 60.0) {
      log << "  " << c.label << ": runtime " << elapsed << "s >= 60s";
      ok = false;
    }
  }
  return ok;
}

bool criterion8(std::ostream& log) {
  SplitMix64 rng(0xacce5508);
  bool ok = true;
  const int res = 1024;
  for (int trial = 0; trial < 50 && ok; ++trial) {
    RandomSystemOptions opt;
    opt.diagonally_homogeneous = (trial % 2 == 0);
    TGLSystem sys = validate_system(random_system(rng, opt));
    auto pairs = overlap_pairs(sys);
    RoscResult rosc = check_rosc(sys);
    bool sat_any_overlap = false;
    for (int i = 0; i < sys.map_count() && ok; ++i) {
      for (int j = i + 1; j < sys.map_count(); ++j) {
        // bbox-restricted pixel oracle
        Quad qi = map_image(sys.maps[i]), qj = map_image(sys.maps[j]);
        double lo_x = 1.0, hi_x = 0.0, lo_y = 1.0, hi_y = 0.0;
        for (const Vec2& v : qi.v) {
          lo_x = std::min(lo_x, v.x);
          hi_x = std::max(hi_x, v.x);
          lo_y = std::min(lo_y, v.y);
          hi_y = std::max(hi_y, v.y);
        }
        double lo_x2 = 1.0, hi_x2 = 0.0, lo_y2 = 1.0, hi_y2 = 0.0;
        for (const Vec2& v : qj.v) {
          lo_x2 = std::min(lo_x2, v.x);
          hi_x2 = std::max(hi_x2, v.x);
          lo_y2 = std::min(lo_y2, v.y);
          hi_y2 = std::max(hi_y2, v.y);
        }
        int ax0 = std::max(0, static_cast<int>(std::floor(std::max(lo_x, lo_x2) * res)) - 1);
        int ax1 = std::min(res - 1, static_cast<int>(std::floor(std::min(hi_x, hi_x2) * res)) + 1);
        int ay0 = std::max(0, static_cast<int>(std::floor(std::max(lo_y, lo_y2) * res)) - 1);
        int ay1 = std::min(res - 1, static_cast<int>(std::floor(std::min(hi_y, hi_y2) * res)) + 1);
        std::size_t hits = 0;
        for (int iy = ay0; iy <= ay1; ++iy) {
          for (int ix = ax0; ix <= ax1; ++ix) {
            Vec2 c{(ix + 0.5) / res, (iy + 0.5) / res};
            if (point_in_quad(qi, c) && point_in_quad(qj, c)) ++hits;
          }
        }
        bool oracle_overlap = hits > 0;

        bool sat_overlap = false;
        if (sys.column_of[i] == sys.column_of[j]) {
          for (const auto& p : pairs[sys.column_of[i]]) {
            sat_overlap |= (p == IndexPair{i, j});
          }
        } else {
          sat_overlap = interiors_intersect(qi, qj);
        }
        sat_any_overlap |= sat_overlap;
        if (sat_overlap != oracle_overlap) {
          // tolerated only when the configuration is a sub-pixel boundary case
          double gap = separation_gap(qi, qj);
          if (std::abs(gap) > 2.0 / res) {
            log << "  disagreement beyond boundary tolerance at trial " << trial << " pair ("
                << i << "," << j << "), gap " << gap << ", pixel hits " << hits;
            ok = false;
            break;
          }
        }
      }
    }
    // check_rosc must agree with the pairwise evidence it aggregates
    if ((rosc.status == CheckStatus::kHolds) == sat_any_overlap) {
      log << "  check_rosc verdict inconsistent with the pairwise tests at trial " << trial;
      ok = false;
    }
  }
  return ok;
}

bool criterion9(std::ostream& log) {
  bool ok = true;
  BuiltExample ex = gallery_build("uplift_demo", {0.05, 0.03});
  UpliftSystem u = validate_uplift(validate_system(ex.spec), ex.ext);
  UpliftDimension dim = uplift_dimension(u);
  double want = 1.0 - std::log(2.0) / std::log(0.05);
  ok &= close(log, "uplift value", dim.value, want, 1e-9);
  ok &= close(log, "uplift value vs print", dim.value, 1.231378, 1e-6);
  if (!dim.conditions_met) {
    log << "  conditions_met expected true";
    ok = false;
  }

  UpliftSkewBounds kb = uplift_skew_bounds(u);
  SplitMix64 rng(0xacce5509);
  int violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    int len = 1 + static_cast<int>(rng.next() % 15);
    Mat3 prod = u.matrix(static_cast<int>(rng.next() % 6));
    for (int k = 1; k < len; ++k) {
      prod = mat3_mul(prod, u.matrix(static_cast<int>(rng.next() % 6)));
    }
    double bw = std::pow(1.0 / 3.0, len);
    if (std::abs(prod[1][0]) > kb.K_x * bw + 1e-12 ||
        std::abs(prod[2][0]) > kb.K_y * bw + 1e-12 ||
        std::abs(prod[2][1]) > kb.K_z * bw + 1e-12) {
      ++violations;
    }
  }
  if (violations != 0) {
    log << "  " << violations << " entrywise bound violations over 10^4 words";
    ok = false;
  }
  return ok;
}

std::string run_and_capture(const std::string& args, const std::string& tag) {
  std::string out_file = "/tmp/carpet_acc_" + tag + ".txt";
  std::string cmd = std::string(CARPET_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  if (std::system(cmd.c_str()) != 0) return "<<exit failure>>";
  std::ifstream in(out_file, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

bool criterion10(std::ostream& log) {
  bool ok = true;
  std::string spec = "/tmp/carpet_acc_sys.json";
  run_and_capture("example x_equiv_x --param 0.045 --export " + spec, "export");

  for (const std::string& args :
       {std::string("dims ") + spec + " --json", std::string("check ") + spec + " --json",
        std::string("report ") + spec + " --kmin 4 --kmax 6",
        std::string("estimate ") + spec + " --kmin 4 --kmax 7 --json"}) {
    std::string a = run_and_capture(args, "runA");
    std::string b = run_and_capture(args, "runB");
    if (a != b || a == "<<exit failure>>") {
      log << "  non-deterministic or failing: " << args;
      ok = false;
    }
  }

  std::string render_args = "render " + spec +
                            " --out /tmp/carpet_acc_imgA.pgm --res 256 --points 80000 --seed 99 "
                            "--chunks 4";
  run_and_capture(render_args, "renderA");
  std::string render_args_b = "render " + spec +
                              " --out /tmp/carpet_acc_imgB.pgm --res 256 --points 80000 --seed 99 "
                              "--chunks 4";
  run_and_capture(render_args_b, "renderB");
  if (file_bytes("/tmp/carpet_acc_imgA.pgm") != file_bytes("/tmp/carpet_acc_imgB.pgm") ||
      file_bytes("/tmp/carpet_acc_imgA.pgm").empty()) {
    log << "  render outputs differ across identical invocations";
    ok = false;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "smiley regression: s to 1e-6 (equation root), alpha* to 1e-3, < 5 s", criterion1},
      {2, "X=X regression at a = 0.045 and its three thresholds", criterion2},
      {3, "Falconer-Miao family: alpha* = s = 1 - log2/log a to 1e-8, both builds", criterion3},
      {4, "zipper family: monotone closed forms, strict gap, values at a = 0.2", criterion4},
      {5, "ordering chain + Ledrappier-Young identity on 200 random systems", criterion5},
      {6, "optimizer matches the diagonally homogeneous closed form on 50 systems", criterion6},
      {7, "empirical box counts within 0.06 of s, r2 >= 0.995, < 60 s each", criterion7},
      {8, "overlap pairs / ROSC agree with the 1024^2 pixel oracle on 50 systems", criterion8},
      {9, "uplift value at (0.05, 0.03) to 1e-9, conditions met, skew bounds hold", criterion9},
      {10, "byte-identical CLI outputs across repeated invocations", criterion10},
  };

  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all_ok = true;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    std::ostringstream log;
    bool ok = false;
    try {
      ok = c.run(log);
    } catch (const std::exception& e) {
      log << "  exception: " << e.what();
    }
    std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << " - " << c.description
              << "\n";
    if (!ok) {
      std::cout << log.str() << "\n";
      all_ok = false;
    }
  }
  return all_ok ? 0 : 1;
}
