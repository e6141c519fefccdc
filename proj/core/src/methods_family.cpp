#include <algorithm>
#include <cmath>
#include <limits>

#include "methods_internal.hpp"

namespace fri {
namespace {

using detail::Context;

// Weighted endpoint between the two flanking consequents with weights
// inverse to the endpoint distances; a zero distance returns that rule's
// endpoint exactly. `literal` keeps the printed weighting, under which the
// conclusion approaches the far rule instead.
double kh_endpoint(double d1, double d2, double b1, double b2, bool literal,
                   double tol) {
  if (d1 <= tol) return b1;
  if (d2 <= tol) return b2;
  if (literal) return (d1 * b1 + d2 * b2) / (d1 + d2);
  return (d2 * b1 + d1 * b2) / (d1 + d2);
}

std::vector<const FuzzySet*> rule_antecedents(const Context& ctx,
                                              std::size_t rule) {
  std::vector<const FuzzySet*> out;
  for (std::size_t d = 0; d < ctx.dims(); ++d)
    out.push_back(&ctx.rb.antecedent(rule, d));
  return out;
}

struct EndpointGaps {
  double lower = 0.0;  // sqrt of summed squared inf gaps
  double upper = 0.0;  // sqrt of summed squared sup gaps
};

EndpointGaps endpoint_gaps(const Context& ctx, std::size_t rule,
                           double alpha) {
  EndpointGaps g;
  double lo = 0.0, hi = 0.0;
  for (std::size_t d = 0; d < ctx.dims(); ++d) {
    const AlphaCut co = alpha_cut(ctx.obs.sets[d], alpha);
    const AlphaCut ca = alpha_cut(ctx.rb.antecedent(rule, d), alpha);
    lo += (co.inf - ca.inf) * (co.inf - ca.inf);
    hi += (co.sup - ca.sup) * (co.sup - ca.sup);
  }
  g.lower = std::sqrt(lo);
  g.upper = std::sqrt(hi);
  return g;
}

}  // namespace

Conclusion interpolate_kh(const RuleBase& rb, const Observation& obs,
                          const InterpolationConfig& cfg) {
  const Context ctx = detail::make_context(rb, obs, cfg);
  if (ctx.flank.exact_match())
    return detail::exact_match_conclusion(ctx, MethodId::kKh, true);

  Conclusion out;
  out.method = MethodId::kKh;
  std::vector<AlphaCut> fam;
  fam.reserve(ctx.levels.size());
  for (double a : ctx.levels) {
    const EndpointGaps g1 = endpoint_gaps(ctx, ctx.flank.lower, a);
    const EndpointGaps g2 = endpoint_gaps(ctx, ctx.flank.upper, a);
    const AlphaCut b1 = alpha_cut(ctx.lower_con(), a);
    const AlphaCut b2 = alpha_cut(ctx.upper_con(), a);
    AlphaCut c{a, 0.0, 0.0};
    c.inf = kh_endpoint(g1.lower, g2.lower, b1.inf, b2.inf,
                        cfg.paper_literal_kh, cfg.tol);
    c.sup = kh_endpoint(g1.upper, g2.upper, b1.sup, b2.sup,
                        cfg.paper_literal_kh, cfg.tol);
    fam.push_back(c);
  }
  out.alpha_family = std::move(fam);
  return out;
}

Conclusion interpolate_kh_stabilized(const RuleBase& rb,
                                     const Observation& obs,
                                     const InterpolationConfig& cfg) {
  const Context ctx = detail::make_context(rb, obs, cfg);
  if (ctx.flank.exact_match())
    return detail::exact_match_conclusion(ctx, MethodId::kKhStabilized, true);

  const double power = static_cast<double>(ctx.dims());
  Conclusion out;
  out.method = MethodId::kKhStabilized;
  std::vector<AlphaCut> fam;
  fam.reserve(ctx.levels.size());
  for (double a : ctx.levels) {
    double num_lo = 0.0, den_lo = 0.0, num_hi = 0.0, den_hi = 0.0;
    std::size_t exact_lo = rb.rules.size(), exact_hi = rb.rules.size();
    std::vector<AlphaCut> bcuts;
    bcuts.reserve(rb.rules.size());
    for (std::size_t r = 0; r < rb.rules.size(); ++r) {
      bcuts.push_back(alpha_cut(rb.consequent(r), a));
      const EndpointGaps g = endpoint_gaps(ctx, r, a);
      if (g.lower <= cfg.tol && exact_lo == rb.rules.size()) exact_lo = r;
      if (g.upper <= cfg.tol && exact_hi == rb.rules.size()) exact_hi = r;
      if (g.lower > cfg.tol) {
        const double w = 1.0 / std::pow(g.lower, power);
        num_lo += w * bcuts[r].inf;
        den_lo += w;
      }
      if (g.upper > cfg.tol) {
        const double w = 1.0 / std::pow(g.upper, power);
        num_hi += w * bcuts[r].sup;
        den_hi += w;
      }
    }
    AlphaCut c{a, 0.0, 0.0};
    c.inf = exact_lo < rb.rules.size() ? bcuts[exact_lo].inf : num_lo / den_lo;
    c.sup = exact_hi < rb.rules.size() ? bcuts[exact_hi].sup : num_hi / den_hi;
    fam.push_back(c);
  }
  out.alpha_family = std::move(fam);
  return out;
}

Conclusion interpolate_vkk(const RuleBase& rb, const Observation& obs,
                           const InterpolationConfig& cfg) {
  const Context ctx = detail::make_context(rb, obs, cfg);
  if (ctx.flank.exact_match())
    return detail::exact_match_conclusion(ctx, MethodId::kVkk, true);

  const auto lower_ants = rule_antecedents(ctx, ctx.flank.lower);
  const auto upper_ants = rule_antecedents(ctx, ctx.flank.upper);

  Conclusion out;
  out.method = MethodId::kVkk;
  bool singular = false;

  std::vector<AlphaCut> fam;
  fam.reserve(ctx.levels.size());
  for (double a : ctx.levels) {
    auto dist = [&](std::span<const FuzzySet> x, std::span<const FuzzySet> y) {
      return fuzzy_distance(x, y, a, cfg.vkk_distance).d_lower;
    };
    std::vector<FuzzySet> lowv, upv;
    for (auto* s : lower_ants) lowv.push_back(*s);
    for (auto* s : upper_ants) upv.push_back(*s);
    const double d1 = dist(lowv, ctx.obs.sets);
    const double d2 = dist(ctx.obs.sets, upv);
    const double d12 = dist(lowv, upv);
    if (d12 <= cfg.tol)
      throw Error(ErrorCode::DegenerateGeometry,
                  "flanking antecedents coincide at alpha = " +
                      std::to_string(a));

    const AlphaCut b1 = alpha_cut(ctx.lower_con(), a);
    const AlphaCut b2 = alpha_cut(ctx.upper_con(), a);
    const double center = (d2 * 0.5 * (b1.inf + b1.sup) +
                           d1 * 0.5 * (b2.inf + b2.sup)) /
                          d12;

    // Geometric mean of the per-dimension widths at this level.
    auto geo_width = [&](std::span<const FuzzySet> sets) {
      double prod = 1.0;
      for (const auto& s : sets) {
        const AlphaCut c = alpha_cut(s, a);
        prod *= std::max(0.0, c.sup - c.inf);
      }
      return std::pow(prod, 1.0 / static_cast<double>(sets.size()));
    };
    const double wa1 = geo_width(lowv);
    const double wa2 = geo_width(upv);
    const double wao = geo_width(ctx.obs.sets);

    auto ratio = [&](double bw, double aw) {
      if (aw > cfg.tol) return bw / aw;
      if (bw <= cfg.tol) return 1.0;  // degenerate over degenerate
      singular = true;
      return std::numeric_limits<double>::infinity();
    };
    const double bracket = (d2 * ratio(b1.sup - b1.inf, wa1) +
                            d1 * ratio(b2.sup - b2.inf, wa2)) /
                           d12;
    // A crisp observation cut keeps a crisp conclusion cut, except when the
    // singular ratio leaves the product undefined; the undefined level is
    // emitted as-is and flagged downstream.
    double width;
    if (wao <= cfg.tol)
      width = std::isfinite(bracket)
                  ? 0.0
                  : std::numeric_limits<double>::quiet_NaN();
    else
      width = wao * bracket;
    fam.push_back({a, center - 0.5 * width, center + 0.5 * width});
  }
  if (singular)
    out.notes.push_back("width ratio singular (zero antecedent width with "
                        "non-zero consequent width)");
  out.alpha_family = std::move(fam);
  return out;
}

}  // namespace fri
