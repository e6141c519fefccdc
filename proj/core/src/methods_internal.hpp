#pragma once

#include <cmath>
#include <vector>

#include "fri/methods.hpp"

namespace fri::detail {

// Everything the engines need about one interpolation call, resolved once.
struct Context {
  const RuleBase& rb;
  const Observation& obs;
  const InterpolationConfig& cfg;
  FlankingPair flank;
  std::vector<double> levels;   // resolved alpha levels, ascending, 0..1
  std::vector<double> aspects;  // per input dimension
  double out_aspect = 1.0;

  std::size_t dims() const { return rb.dimensions(); }
  const FuzzySet& lower_ant(std::size_t d) const {
    return rb.antecedent(flank.lower, d);
  }
  const FuzzySet& upper_ant(std::size_t d) const {
    return rb.antecedent(flank.upper, d);
  }
  const FuzzySet& lower_con() const { return rb.consequent(flank.lower); }
  const FuzzySet& upper_con() const { return rb.consequent(flank.upper); }
};

Context make_context(const RuleBase& rb, const Observation& obs,
                     const InterpolationConfig& cfg);

// Exact-match conclusion (the zero-distance limit), as a family or a shape.
Conclusion exact_match_conclusion(const Context& ctx, MethodId id,
                                  bool as_family);

// sqrt(sum of squares) aggregation helpers.
double agg_ratio(const std::vector<double>& num_gaps,
                 const std::vector<double>& den_gaps);

// Per-dimension reference points for observation and the two flanking rules.
struct RefPoints {
  std::vector<double> obs, lower, upper;
  double out_lower = 0.0, out_upper = 0.0;
};
RefPoints reference_points(const Context& ctx);

// lambda = ||rp_obs - rp_lower|| / ||rp_upper - rp_lower||.
double lambda_from(const RefPoints& rp);

// Builds a shape from per-level endpoints when they form a valid breakpoint
// sequence; otherwise leaves `shape` empty and fills `family` (abnormal
// geometry is representable only as a family).
void emit_levelwise(Conclusion& out, const std::vector<double>& levels,
                    const std::vector<double>& infs,
                    const std::vector<double>& sups, double tol);

// Uniform grid of n levels over [0, 1].
std::vector<double> uniform_levels(int n);

// Sorted union with tolerance-based dedup.
std::vector<double> merge_levels(std::vector<double> a,
                                 const std::vector<double>& b,
                                 double tol = kStructuralTol);

// ---- polar machinery (GM / FRIPOC) ----

struct PolarSampled {
  std::vector<double> thetas;  // ascending in [0, pi]
  std::vector<double> rhos;
};

// Corner angles of a set's boundary about origin_x (including walls).
void corner_angles(const FuzzySet& set, double aspect, double origin_x,
                   std::vector<double>& out);

PolarSampled sample_polar(const FuzzySet& set, double aspect, double origin_x,
                          const std::vector<double>& thetas);

// Shared shape finalization for the correction-based methods: sorts the
// points back into a function-valued curve, clips memberships, applies the
// unimodal envelope (noting any change beyond 1e-9) and drops collinear
// points.
FuzzySet finalize_shape(std::vector<Breakpoint> pts, const std::string& label,
                        std::vector<std::string>& notes, double tol);

// Reconstructs a valid fuzzy set from polar samples about origin_x.
FuzzySet set_from_polar(const PolarSampled& samples, double aspect,
                        double origin_x, const std::string& label,
                        std::vector<std::string>& notes, double tol);

}  // namespace fri::detail
