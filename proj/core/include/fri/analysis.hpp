#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fri/methods.hpp"

namespace fri {

enum class ViolationKind { kEndpointInversion, kNonNestedCuts, kNonNormal };

const char* violation_kind_name(ViolationKind kind);

struct AbnormalityReport {
  bool abnormal = false;
  std::optional<double> first_violation_alpha;
  ViolationKind violation_kind = ViolationKind::kEndpointInversion;
  double max_inversion = 0.0;
};

struct LinearityReport {
  bool piecewise_linear = false;
  double max_deviation = 0.0;
  double worst_alpha = 0.0;
};

struct MethodRow {
  MethodId method = MethodId::kKh;
  std::string status;  // "ok" or "error:<code>"
  std::optional<AbnormalityReport> abnormality;
  std::optional<LinearityReport> linearity;
  std::optional<AlphaCut> support;  // conclusion cut at alpha = 0
  std::optional<AlphaCut> core;     // conclusion cut at alpha = 1
  std::optional<Conclusion> conclusion;
};

struct ComparisonMatrix {
  std::vector<MethodRow> rows;  // ordered by MethodId
};

// Endpoint inversion, broken nesting or a sub-normal peak, evaluated over the
// conclusion's own levels joined with a dense grid; the first offending alpha
// is found scanning up from 0.
AbnormalityReport detect_abnormality(const Conclusion& c,
                                     const InterpolationConfig& cfg = {});

// Runs the method at its native resolution and at a dense one, and reports
// the worst cut-endpoint deviation over a dense level grid.
LinearityReport check_linearity(MethodId method, const RuleBase& rb,
                                const Observation& obs,
                                const InterpolationConfig& cfg = {});

ComparisonMatrix compare_methods(const RuleBase& rb, const Observation& obs,
                                 std::span<const MethodId> methods,
                                 const InterpolationConfig& cfg = {});

}  // namespace fri
