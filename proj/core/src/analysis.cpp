#include "fri/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace fri {

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kEndpointInversion: return "endpoint-inversion";
    case ViolationKind::kNonNestedCuts: return "non-nested-cuts";
    case ViolationKind::kNonNormal: return "non-normal";
  }
  return "?";
}

namespace {

std::vector<double> verdict_levels(const Conclusion& c,
                                   const InterpolationConfig& cfg) {
  std::vector<double> levels;
  if (c.alpha_family) {
    for (const AlphaCut& cut : *c.alpha_family) levels.push_back(cut.alpha);
  } else {
    for (const Breakpoint& p : c.shape->points()) levels.push_back(p.mu);
  }
  const int n = std::max(cfg.dense_levels, 2);
  for (int i = 0; i < n; ++i)
    levels.push_back(static_cast<double>(i) / static_cast<double>(n - 1));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end(),
                           [](double a, double b) { return b - a <= 1e-12; }),
               levels.end());
  return levels;
}

double geometry_scale(const Conclusion& c) {
  double lo = 0.0, hi = 0.0;
  if (c.alpha_family && !c.alpha_family->empty()) {
    lo = c.alpha_family->front().inf;
    hi = c.alpha_family->front().sup;
  } else if (c.shape) {
    lo = c.shape->support_lo();
    hi = c.shape->support_hi();
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) return 1.0;
  return std::max(1.0, std::abs(hi - lo));
}

}  // namespace

AbnormalityReport detect_abnormality(const Conclusion& c,
                                     const InterpolationConfig& cfg) {
  AbnormalityReport report;
  const double tol = 1e-9 * geometry_scale(c);

  // A shape that is not normal or not convex is abnormal regardless of its
  // envelope cuts (envelope extraction hides interior dips).
  if (c.shape) {
    const CnfReport cnf = is_cnf(*c.shape);
    if (!cnf.normal) {
      report.abnormal = true;
      report.violation_kind = ViolationKind::kNonNormal;
      report.first_violation_alpha = c.shape->peak();
      return report;
    }
    if (!cnf.convex) {
      report.abnormal = true;
      report.violation_kind = ViolationKind::kNonNestedCuts;
      // First level at which the cut is disconnected: the shallowest
      // interior dip.
      const auto& pts = c.shape->points();
      double dip = 1.0;
      bool falling = false;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1].mu < pts[i].mu) falling = true;
        else if (pts[i + 1].mu > pts[i].mu && falling)
          dip = std::min(dip, pts[i].mu);
      }
      report.first_violation_alpha = dip;
      return report;
    }
  }

  if (c.alpha_family) {
    double max_alpha = 0.0;
    for (const AlphaCut& cut : *c.alpha_family)
      max_alpha = std::max(max_alpha, cut.alpha);
    if (max_alpha < 1.0 - 1e-12) {
      report.abnormal = true;
      report.violation_kind = ViolationKind::kNonNormal;
      report.first_violation_alpha = max_alpha;
      return report;
    }
  }

  const std::vector<double> levels = verdict_levels(c, cfg);
  std::vector<AlphaCut> cuts = c.cuts_at(levels);

  // Endpoint inversion, scanning upward from 0.
  for (const AlphaCut& cut : cuts) {
    if (!std::isfinite(cut.inf) || !std::isfinite(cut.sup)) {
      report.abnormal = true;
      report.violation_kind = ViolationKind::kNonNestedCuts;
      report.first_violation_alpha = cut.alpha;
      return report;
    }
    const double excess = cut.inf - cut.sup;
    report.max_inversion = std::max(report.max_inversion, excess);
    if (excess > tol && !report.abnormal) {
      report.abnormal = true;
      report.violation_kind = ViolationKind::kEndpointInversion;
      report.first_violation_alpha = cut.alpha;
    }
  }
  if (report.abnormal) return report;
  report.max_inversion = std::max(0.0, report.max_inversion);

  // Nesting: each higher cut must sit inside every lower one; with sorted
  // levels, comparing neighbours is enough.
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1].inf < cuts[i].inf - tol ||
        cuts[i + 1].sup > cuts[i].sup + tol) {
      report.abnormal = true;
      report.violation_kind = ViolationKind::kNonNestedCuts;
      report.first_violation_alpha = cuts[i + 1].alpha;
      return report;
    }
  }
  return report;
}

LinearityReport check_linearity(MethodId method, const RuleBase& rb,
                                const Observation& obs,
                                const InterpolationConfig& cfg) {
  const Conclusion coarse = interpolate(method, rb, obs, cfg);

  InterpolationConfig dense_cfg = cfg;
  const int n = std::max(cfg.dense_levels, 2);
  dense_cfg.alpha_levels.clear();
  for (int i = 0; i < n; ++i)
    dense_cfg.alpha_levels.push_back(static_cast<double>(i) /
                                     static_cast<double>(n - 1));
  for (double a : cfg.alpha_levels) dense_cfg.alpha_levels.push_back(a);
  std::sort(dense_cfg.alpha_levels.begin(), dense_cfg.alpha_levels.end());
  dense_cfg.polar_thetas = std::max(cfg.polar_thetas, cfg.dense_levels);
  const Conclusion dense = interpolate(method, rb, obs, dense_cfg);

  LinearityReport report;
  report.worst_alpha = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = static_cast<double>(i) / static_cast<double>(n - 1);
    const AlphaCut cc = coarse.cut_at(a);
    const AlphaCut dc = dense.cut_at(a);
    double dev = std::max(std::abs(cc.inf - dc.inf), std::abs(cc.sup - dc.sup));
    if (!std::isfinite(dev)) dev = std::numeric_limits<double>::infinity();
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_alpha = a;
    }
  }
  report.piecewise_linear = report.max_deviation <= 1e-9;
  return report;
}

ComparisonMatrix compare_methods(const RuleBase& rb, const Observation& obs,
                                 std::span<const MethodId> methods,
                                 const InterpolationConfig& cfg) {
  std::vector<MethodId> ordered(methods.begin(), methods.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  ComparisonMatrix matrix;
  for (MethodId id : ordered) {
    MethodRow row;
    row.method = id;
    try {
      Conclusion c = interpolate(id, rb, obs, cfg);
      row.abnormality = detect_abnormality(c, cfg);
      row.support = c.cut_at(0.0);
      row.core = c.cut_at(1.0);
      row.conclusion = std::move(c);
      row.status = "ok";
      try {
        row.linearity = check_linearity(id, rb, obs, cfg);
      } catch (const Error& e) {
        row.status = std::string("error:") + error_code_name(e.code());
      }
    } catch (const Error& e) {
      row.status = std::string("error:") + error_code_name(e.code());
    }
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

}  // namespace fri
