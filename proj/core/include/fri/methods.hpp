#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "fri/rulebase.hpp"

namespace fri {

enum class MethodId {
  kKh,
  kKhStabilized,
  kVkk,
  kMaci,
  kCrf,
  kImul,
  kGm,
  kFripoc,
  kLesfri,
  kScaleMove,
};

constexpr std::array<MethodId, 10> kAllMethods = {
    MethodId::kKh,     MethodId::kKhStabilized, MethodId::kVkk,
    MethodId::kMaci,   MethodId::kCrf,          MethodId::kImul,
    MethodId::kGm,     MethodId::kFripoc,       MethodId::kLesfri,
    MethodId::kScaleMove,
};

const char* method_name(MethodId id);                       // e.g. "KH_STAB"
std::optional<MethodId> method_from_name(std::string_view); // case-insensitive

struct InterpolationConfig {
  // Cut levels for the alpha-family methods; empty means the union of the
  // breakpoint levels of every involved set (always includes 0 and 1).
  std::vector<double> alpha_levels;
  int dense_levels = 1001;   // resolution of dense sweeps and verdicts
  RefPointMode rp_mode = RefPointMode::kCoreMid;
  int polar_thetas = 181;    // polar cut count over [0, pi]
  double power_p = 2.0;      // least-squares weight exponent
  double aspect = 0.0;       // membership-axis scale; <= 0 means range width
  DistanceKind vkk_distance = DistanceKind::kCenter;
  bool paper_literal_kh = false;  // keep the printed endpoint weighting
  bool imul_printed_sum = false;  // keep the printed (RB2 + RB1) term
  double tol = kStructuralTol;
};

struct InterpolationWeights {
  std::optional<double> lambda_core;
  std::optional<double> lambda_left;
  std::optional<double> lambda_right;
  std::optional<double> lambda_rep;
  std::vector<double> rule_weights;  // s_j / w_jk, where a method has them
};

// Flank geometry shared by the fuzziness-conserving methods.
struct FuzzinessDescriptor {
  double fl = 0.0;         // left flank length (lc - lf)
  double fu = 0.0;         // right flank length (rf - rc)
  double core_len = 0.0;   // rc - lc
  double gap_lower = 0.0;  // reference-point gap to the lower flanking rule
  double gap_upper = 0.0;  // reference-point gap to the upper flanking rule
};

FuzzinessDescriptor describe_fuzziness(const FuzzySet& set, double rp_lower,
                                       double rp_upper);

struct Conclusion {
  MethodId method = MethodId::kKh;
  std::optional<FuzzySet> shape;
  std::optional<std::vector<AlphaCut>> alpha_family;
  InterpolationWeights weights;
  std::vector<std::string> notes;

  bool has_shape() const { return shape.has_value(); }

  // Cut endpoints at an arbitrary level: shapes are cut through their
  // envelope, families interpolate linearly between stored levels.
  AlphaCut cut_at(double alpha) const;
  std::vector<AlphaCut> cuts_at(std::span<const double> levels) const;
};

// Envelope cut of an arbitrary (possibly non-CNF) breakpoint shape: first and
// last crossings of the level; levels above the peak clamp to the peak.
AlphaCut envelope_cut(const FuzzySet& set, double alpha);

Conclusion interpolate(MethodId id, const RuleBase& rb, const Observation& obs,
                       const InterpolationConfig& cfg = {});

Conclusion interpolate_kh(const RuleBase&, const Observation&,
                          const InterpolationConfig& = {});
Conclusion interpolate_kh_stabilized(const RuleBase&, const Observation&,
                                     const InterpolationConfig& = {});
Conclusion interpolate_vkk(const RuleBase&, const Observation&,
                           const InterpolationConfig& = {});
Conclusion interpolate_maci(const RuleBase&, const Observation&,
                            const InterpolationConfig& = {});
Conclusion interpolate_crf(const RuleBase&, const Observation&,
                           const InterpolationConfig& = {});
Conclusion interpolate_imul(const RuleBase&, const Observation&,
                            const InterpolationConfig& = {});
Conclusion interpolate_gm(const RuleBase&, const Observation&,
                          const InterpolationConfig& = {});
Conclusion interpolate_fripoc(const RuleBase&, const Observation&,
                              const InterpolationConfig& = {});
Conclusion interpolate_lesfri(const RuleBase&, const Observation&,
                              const InterpolationConfig& = {});
Conclusion interpolate_scale_move(const RuleBase&, const Observation&,
                                  const InterpolationConfig& = {});

// Representative value used by the scale-and-move transforms: the mean of the
// four characteristic points. Linear under vertex-wise set combination, which
// the area centroid is not for asymmetric trapezoids.
double scale_move_representative(const FuzzySet& set);

}  // namespace fri
