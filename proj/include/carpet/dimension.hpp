#ifndef CARPET_DIMENSION_HPP
#define CARPET_DIMENSION_HPP

#include <span>
#include <string>
#include <vector>

#include "carpet/ifs.hpp"
#include "carpet/numerics.hpp"

namespace carpet {

using ProbVector = std::vector<double>;

// |sum - 1| <= 1e-12 and nonnegative entries.
void check_prob_vector(const ProbVector& p);

// q_hat = sum of p over the column's maps.
ProbVector column_marginal(const TGLSystem& system, const ProbVector& p);

struct EntropyLyapunov {
  double h = 0.0;     // -sum p log p
  double chi1 = 0.0;  // -sum p log|b|
  double chi2 = 0.0;  // -sum p log|a|
};

// Requires strictly positive p (ZeroEntry otherwise). chi1 < chi2 by domination.
EntropyLyapunov entropy_and_lyapunov(const TGLSystem& system, const ProbVector& p);

// The Ledrappier-Young dimension expression
//   D(p) = log<q>_q / log<b>_p + (log<p>_p - log<q>_q) / log<a>_p
// with absolute values of a and b.
double dim_formula_D(const TGLSystem& system, const ProbVector& p);
ProbVector dim_formula_D_gradient(const TGLSystem& system, const ProbVector& p);

// Unique s >= 0 with sum r_i^s = 1. Throws EmptyInput / RatioOutOfRange.
double similarity_dimension(std::span<const double> ratios, const RootConfig& cfg = {});

// s_A: s_tilde_x when s_tilde_x < 1, else the root of sum |b_i| |a_i|^(s-1) = 1.
double affinity_dimension(const TGLSystem& system);

struct BoxDimension {
  double s = 0.0;
  double s_H = 0.0;
  std::string assumption;  // nonempty for shifted systems (s_H reported as s_x)
};

// s_H = similarity dimension of the column ratios; s solves
// sum |b_i|^s_H |a_i|^(s - s_H) = 1.
BoxDimension box_dimension_upper(const TGLSystem& system);

struct HausdorffUpper {
  double alpha_star = 0.0;
  ProbVector p_star;
};

// alpha* = sup D(p). Diagonally homogeneous systems use the Lagrange closed form;
// everything else goes through maximize_simplex warm-started with the uniform
// vector, the natural box weights and the diagonally homogeneous-style guess.
HausdorffUpper hausdorff_dimension_upper(const TGLSystem& system,
                                         const SimplexOptConfig& cfg = {});

// Closed forms valid for diagonally homogeneous systems.
ProbVector diag_homo_p_star(const TGLSystem& system);
double diag_homo_alpha_star(const TGLSystem& system);

struct NaturalWeights {
  ProbVector p_tilde;  // |b_i|^s_H |a_i|^(s-s_H), normalized
  ProbVector q_tilde;  // column sums
};

NaturalWeights natural_box_weights(const TGLSystem& system);

enum class Equality { kEqual, kStrict, kUnknown };

std::string to_string(Equality e);

struct DimensionReport {
  double alpha_star = 0.0;
  ProbVector p_star;
  double s = 0.0;
  double s_A = 0.0;
  double s_H = 0.0;
  double s_x = 0.0;        // similarity dimension of the column ratios
  double s_tilde_x = 0.0;  // root of sum |b_i|^s = 1
  double h = 0.0;          // entropy at p*
  double chi1 = 0.0;
  double chi2 = 0.0;
  Equality equal_HB = Equality::kUnknown;
  Equality equal_B_Aff = Equality::kUnknown;
  std::vector<std::string> assumptions;
};

// Aggregates every dimension quantity. The equality flags are evaluated under
// the separation assumptions listed in `assumptions`; callers holding actual
// separation evidence can refine them with apply_separation_evidence.
DimensionReport dimension_report(const TGLSystem& system, const SimplexOptConfig& cfg = {});

// rosc_established: the geometric ROSC check passed. scan_clean: the finite
// exact-overlap scan found no overlap. Downgrades the equality flags to
// kUnknown (and annotates) when the hypotheses they rest on are not established.
void apply_separation_evidence(DimensionReport& report, bool rosc_established, bool scan_clean,
                               bool exact_overlap_found);

std::string dimension_report_to_json(const DimensionReport& report);

}  // namespace carpet

#endif  // CARPET_DIMENSION_HPP
