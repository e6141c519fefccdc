#include <algorithm>
#include <cmath>
#include <numbers>

#include "methods_internal.hpp"

namespace fri {
namespace {

using detail::Context;
using detail::PolarSampled;
using detail::RefPoints;

std::vector<double> theta_grid(int count, const std::vector<double>& corners) {
  std::vector<double> grid;
  const int n = std::max(count, 3);
  grid.reserve(static_cast<std::size_t>(n) + corners.size());
  for (int i = 0; i < n; ++i)
    grid.push_back(std::numbers::pi * static_cast<double>(i) /
                   static_cast<double>(n - 1));
  for (double c : corners)
    if (c >= 0.0 && c <= std::numbers::pi) grid.push_back(c);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return b - a <= 1e-12; }),
             grid.end());
  return grid;
}

// Piecewise-linear support-to-support map fixing the reference point.
FuzzySet map_about(const FuzzySet& s, double rp, double left_ratio,
                   double right_ratio, const std::string& label) {
  std::vector<Breakpoint> pts;
  pts.reserve(s.size());
  for (const auto& p : s.points()) {
    const double x = p.x <= rp ? rp - (rp - p.x) * left_ratio
                               : rp + (p.x - rp) * right_ratio;
    pts.push_back({x, p.mu});
  }
  return make_set(std::move(pts), label);
}

double side_ratio(double num, double den, double tol) {
  if (den > tol) return std::max(0.0, num / den);
  if (num <= tol) return 1.0;
  throw Error(ErrorCode::DegenerateGeometry,
              "degenerate interpolated support against a fuzzy observation");
}

double geomean(const std::vector<double>& v) {
  double prod = 1.0;
  for (double x : v) prod *= std::max(0.0, x);
  return std::pow(prod, 1.0 / static_cast<double>(v.size()));
}

}  // namespace

// ---------------------------------------------------------------------------
// GM: a new rule is generated at the observation's reference points by polar
// blending of the flanking sets, then the observation/antecedent mismatch is
// carried over by the support-to-support map and a membership-difference
// correction.
// ---------------------------------------------------------------------------
Conclusion interpolate_gm(const RuleBase& rb, const Observation& obs,
                          const InterpolationConfig& cfg) {
  const Context ctx = detail::make_context(rb, obs, cfg);
  if (ctx.flank.exact_match())
    return detail::exact_match_conclusion(ctx, MethodId::kGm, false);

  const RefPoints rp = detail::reference_points(ctx);
  const double lambda = detail::lambda_from(rp);
  const double rb_star = rp.out_lower + lambda * (rp.out_upper - rp.out_lower);

  Conclusion out;
  out.method = MethodId::kGm;
  out.weights.lambda_core = lambda;

  auto polar_blend = [&](const FuzzySet& lo, const FuzzySet& hi, double t,
                         double aspect, double origin,
                         const std::string& label) {
    std::vector<double> corners;
    detail::corner_angles(lo, aspect, origin, corners);
    detail::corner_angles(hi, aspect, origin, corners);
    const std::vector<double> grid = theta_grid(cfg.polar_thetas, corners);
    PolarSampled blend;
    blend.thetas = grid;
    blend.rhos.reserve(grid.size());
    for (double th : grid) {
      const double r1 = polar_cut_from(lo, th, aspect, origin).rho;
      const double r2 = polar_cut_from(hi, th, aspect, origin).rho;
      blend.rhos.push_back((1.0 - t) * r1 + t * r2);
    }
    return detail::set_from_polar(blend, aspect, origin, label, out.notes,
                                  cfg.tol);
  };

  // Stage 1: the interpolated rule.
  std::vector<FuzzySet> interp_ants;
  for (std::size_t d = 0; d < ctx.dims(); ++d) {
    const double gap = rp.upper[d] - rp.lower[d];
    const double t = std::abs(gap) <= cfg.tol
                         ? lambda
                         : (rp.obs[d] - rp.lower[d]) / gap;
    interp_ants.push_back(polar_blend(
        ctx.lower_ant(d).translated(rp.obs[d] - rp.lower[d]),
        ctx.upper_ant(d).translated(rp.obs[d] - rp.upper[d]), t,
        ctx.aspects[d], rp.obs[d], "A^i"));
  }
  const FuzzySet interp_con = polar_blend(
      ctx.lower_con().translated(rb_star - rp.out_lower),
      ctx.upper_con().translated(rb_star - rp.out_upper), lambda,
      ctx.out_aspect, rb_star, "B^i");

  // Stage 2a: support-to-support transformation ratios per dimension.
  std::vector<double> left_ratios, right_ratios;
  std::vector<FuzzySet> mapped_ants;  // A^i carried onto the observation
  for (std::size_t d = 0; d < ctx.dims(); ++d) {
    const FuzzySet& star = ctx.obs.sets[d];
    const FuzzySet& ai = interp_ants[d];
    const double r = rp.obs[d];
    const double lk = side_ratio(r - star.support_lo(), r - ai.support_lo(),
                                 cfg.tol);
    const double rk = side_ratio(star.support_hi() - r, ai.support_hi() - r,
                                 cfg.tol);
    left_ratios.push_back(lk);
    right_ratios.push_back(rk);
    mapped_ants.push_back(map_about(ai, r, lk, rk, "A^i->A*"));
  }
  const FuzzySet mapped_con =
      map_about(interp_con, rb_star, geomean(left_ratios),
                geomean(right_ratios), "B^i->B*");

  // Stage 2b: membership-difference correction at interrelated points,
  // parameterized by the relative position between support end and the
  // reference point, each side independently.
  auto side_points = [&](bool left) {
    const double b_end = left ? mapped_con.support_lo() : mapped_con.support_hi();
    const double b_span = left ? rb_star - b_end : b_end - rb_star;
    std::vector<double> qs{0.0, 1.0};
    auto add_positions = [&](const FuzzySet& s, double r) {
      const double end = left ? s.support_lo() : s.support_hi();
      const double span = left ? r - end : end - r;
      if (span <= cfg.tol) return;
      for (const auto& p : s.points()) {
        const double q = left ? (p.x - end) / span : (end - p.x) / span;
        if (q >= 0.0 && q <= 1.0) qs.push_back(q);
      }
    };
    add_positions(mapped_con, rb_star);
    for (std::size_t d = 0; d < ctx.dims(); ++d) {
      add_positions(ctx.obs.sets[d], rp.obs[d]);
      add_positions(mapped_ants[d], rp.obs[d]);
    }
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end(),
                         [](double a, double b) { return b - a <= 1e-12; }),
             qs.end());
    std::vector<Breakpoint> pts;
    for (double q : qs) {
      const double xb = left ? b_end + q * b_span : b_end - q * b_span;
      double delta = 0.0;
      for (std::size_t d = 0; d < ctx.dims(); ++d) {
        const FuzzySet& star = ctx.obs.sets[d];
        const double r = rp.obs[d];
        const double end = left ? star.support_lo() : star.support_hi();
        const double span = left ? r - end : end - r;
        if (span <= cfg.tol) continue;  // degenerate side carries no mismatch
        const double xa = left ? end + q * span : end - q * span;
        delta += star.membership(xa) - mapped_ants[d].membership(xa);
      }
      delta /= static_cast<double>(ctx.dims());
      pts.push_back({xb, mapped_con.membership(xb) + delta});
    }
    return pts;
  };

  std::vector<Breakpoint> pts = side_points(true);
  const std::vector<Breakpoint> right = side_points(false);
  pts.insert(pts.end(), right.begin(), right.end());
  out.shape = detail::finalize_shape(std::move(pts), "B*", out.notes, cfg.tol);
  return out;
}

// ---------------------------------------------------------------------------
// FRIPOC: FEAT-p positions every partition term at the observation's
// reference point and blends polar distances with inverse-square position
// weights; the consequent follows the rule-weighted reference point; SURE-p
// transfers the per-polar-level differences onto the interpolated consequent.
// ---------------------------------------------------------------------------
Conclusion interpolate_fripoc(const RuleBase& rb, const Observation& obs,
                              const InterpolationConfig& cfg) {
  const Context ctx = detail::make_context(rb, obs, cfg);
  if (ctx.flank.exact_match())
    return detail::exact_match_conclusion(ctx, MethodId::kFripoc, false);

  const RefPoints rp = detail::reference_points(ctx);

  // Rule weights s_j from the squared per-dimension reference-point gaps.
  std::vector<double> ssq(rb.rules.size(), 0.0);
  for (std::size_t r = 0; r < rb.rules.size(); ++r)
    for (std::size_t d = 0; d < ctx.dims(); ++d) {
      const double g = rp.obs[d] -
                       reference_point(rb.antecedent(r, d), cfg.rp_mode);
      ssq[r] += g * g;
    }
  std::vector<double> s(rb.rules.size(), 0.0);
  std::size_t dominant = rb.rules.size();
  for (std::size_t r = 0; r < rb.rules.size(); ++r) {
    if (ssq[r] <= cfg.tol * cfg.tol) { dominant = r; break; }
    s[r] = 1.0 / ssq[r];
  }
  double rb_star = 0.0;
  if (dominant < rb.rules.size()) {
    rb_star = reference_point(rb.consequent(dominant), cfg.rp_mode);
    std::fill(s.begin(), s.end(), 0.0);
    s[dominant] = 1.0;
  } else {
    double num = 0.0, den = 0.0;
    for (std::size_t r = 0; r < rb.rules.size(); ++r) {
      num += s[r] * reference_point(rb.consequent(r), cfg.rp_mode);
      den += s[r];
    }
    rb_star = num / den;
  }

  // One global theta grid covering every participating corner.
  std::vector<double> corners;
  for (std::size_t d = 0; d < ctx.dims(); ++d) {
    for (const FuzzySet& term : rb.inputs[d].terms) {
      const double shift =
          rp.obs[d] - reference_point(term, cfg.rp_mode);
      detail::corner_angles(term.translated(shift), ctx.aspects[d], rp.obs[d],
                            corners);
    }
    detail::corner_angles(ctx.obs.sets[d], ctx.aspects[d], rp.obs[d], corners);
  }
  for (std::size_t r = 0; r < rb.rules.size(); ++r) {
    const FuzzySet& con = rb.consequent(r);
    const double shift = rb_star - reference_point(con, cfg.rp_mode);
    detail::corner_angles(con.translated(shift), ctx.out_aspect, rb_star,
                          corners);
  }
  const std::vector<double> grid = theta_grid(cfg.polar_thetas, corners);

  // FEAT-p antecedents: rho families of the interpolated sets per dimension.
  std::vector<std::vector<double>> rho_interp(ctx.dims());
  for (std::size_t d = 0; d < ctx.dims(); ++d) {
    const auto& terms = rb.inputs[d].terms;
    std::vector<double> w(terms.size(), 0.0);
    std::size_t exact = terms.size();
    for (std::size_t m = 0; m < terms.size(); ++m) {
      const double dist =
          std::abs(rp.obs[d] - reference_point(terms[m], cfg.rp_mode));
      if (dist <= cfg.tol) { exact = m; break; }
      w[m] = 1.0 / (dist * dist);
    }
    rho_interp[d].reserve(grid.size());
    for (double th : grid) {
      double value = 0.0;
      if (exact < terms.size()) {
        const double shift =
            rp.obs[d] - reference_point(terms[exact], cfg.rp_mode);
        value = polar_cut_from(terms[exact].translated(shift), th,
                               ctx.aspects[d], rp.obs[d])
                    .rho;
      } else {
        double num = 0.0, den = 0.0;
        for (std::size_t m = 0; m < terms.size(); ++m) {
          const double shift =
              rp.obs[d] - reference_point(terms[m], cfg.rp_mode);
          num += w[m] * polar_cut_from(terms[m].translated(shift), th,
                                       ctx.aspects[d], rp.obs[d])
                            .rho;
          den += w[m];
        }
        value = num / den;
      }
      rho_interp[d].push_back(value);
    }
  }

  // FEAT-p consequent at rb_star, blended with the rule weights.
  PolarSampled conc;
  conc.thetas = grid;
  conc.rhos.assign(grid.size(), 0.0);
  {
    double den = 0.0;
    for (double v : s) den += v;
    for (std::size_t r = 0; r < rb.rules.size(); ++r) {
      if (s[r] <= 0.0) continue;
      const FuzzySet& con = rb.consequent(r);
      const FuzzySet shifted =
          con.translated(rb_star - reference_point(con, cfg.rp_mode));
      for (std::size_t i = 0; i < grid.size(); ++i)
        conc.rhos[i] += s[r] / den *
                        polar_cut_from(shifted, grid[i], ctx.out_aspect,
                                       rb_star)
                            .rho;
    }
  }

  // SURE-p: transfer the mean polar difference between observation and
  // interpolated antecedent, converted into output units.
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double delta = 0.0;
    for (std::size_t d = 0; d < ctx.dims(); ++d) {
      const double rho_obs =
          polar_cut_from(ctx.obs.sets[d], grid[i], ctx.aspects[d], rp.obs[d])
              .rho;
      delta += (rho_obs - rho_interp[d][i]) * (ctx.out_aspect / ctx.aspects[d]);
    }
    delta /= static_cast<double>(ctx.dims());
    conc.rhos[i] = std::max(0.0, conc.rhos[i] + delta);
  }

  Conclusion out;
  out.method = MethodId::kFripoc;
  out.weights.rule_weights = s;
  out.shape = detail::set_from_polar(conc, ctx.out_aspect, rb_star, "B*",
                                     out.notes, cfg.tol);
  return out;
}

// ---------------------------------------------------------------------------
// LESFRI: FEAT-LS builds the interpolated sets by weighted least squares over
// the shifted terms' per-level endpoints (the minimizer is the weighted
// mean); SURE-LS transfers per-level endpoint offsets, each flank
// independently.
// ---------------------------------------------------------------------------
Conclusion interpolate_lesfri(const RuleBase& rb, const Observation& obs,
                              const InterpolationConfig& cfg) {
  const Context ctx = detail::make_context(rb, obs, cfg);
  if (ctx.flank.exact_match())
    return detail::exact_match_conclusion(ctx, MethodId::kLesfri, false);

  const RefPoints rp = detail::reference_points(ctx);

  auto feat_ls = [&](std::span<const FuzzySet> sets, double target_rp,
                     const FuzzySet* overlap_probe,
                     const std::string& label) {
    std::vector<std::size_t> candidates;
    if (overlap_probe != nullptr) {
      for (std::size_t m = 0; m < sets.size(); ++m) {
        const double lo = std::max(sets[m].support_lo(),
                                   overlap_probe->support_lo());
        const double hi = std::min(sets[m].support_hi(),
                                   overlap_probe->support_hi());
        if (hi - lo > cfg.tol) candidates.push_back(m);
      }
    }
    if (candidates.size() < 2) {
      candidates.clear();
      for (std::size_t m = 0; m < sets.size(); ++m) candidates.push_back(m);
    }
    std::vector<double> weights;
    std::size_t exact = sets.size();
    for (std::size_t m : candidates) {
      const double d =
          std::abs(target_rp - reference_point(sets[m], cfg.rp_mode));
      if (d <= cfg.tol) { exact = m; break; }
      weights.push_back(1.0 / std::pow(d, cfg.power_p));
    }
    if (exact < sets.size()) {
      const FuzzySet& t = sets[exact];
      return t.translated(target_rp - reference_point(t, cfg.rp_mode))
          .relabeled(label);
    }
    std::vector<FuzzySet> shifted;
    for (std::size_t m : candidates)
      shifted.push_back(sets[m].translated(
          target_rp - reference_point(sets[m], cfg.rp_mode)));
    const std::vector<double> levels =
        breakpoint_levels(std::span<const FuzzySet>(shifted), cfg.tol);
    std::vector<AlphaCut> cuts;
    for (double a : levels) {
      double wsum = 0.0, inf = 0.0, sup = 0.0;
      for (std::size_t i = 0; i < shifted.size(); ++i) {
        const AlphaCut c = alpha_cut(shifted[i], a);
        inf += weights[i] * c.inf;
        sup += weights[i] * c.sup;
        wsum += weights[i];
      }
      cuts.push_back({a, inf / wsum, sup / wsum});
    }
    return set_from_cuts(cuts, label, cfg.tol);
  };

  // FEAT-LS antecedents per dimension.
  std::vector<FuzzySet> interp_ants;
  for (std::size_t d = 0; d < ctx.dims(); ++d)
    interp_ants.push_back(feat_ls(rb.inputs[d].terms, rp.obs[d],
                                  &ctx.obs.sets[d], "A^i"));

  // Consequent position from the rule weights (inverse squared gaps).
  std::vector<double> s(rb.rules.size(), 0.0);
  std::size_t dominant = rb.rules.size();
  for (std::size_t r = 0; r < rb.rules.size(); ++r) {
    double ssq = 0.0;
    for (std::size_t d = 0; d < ctx.dims(); ++d) {
      const double g =
          rp.obs[d] - reference_point(rb.antecedent(r, d), cfg.rp_mode);
      ssq += g * g;
    }
    if (ssq <= cfg.tol * cfg.tol) { dominant = r; break; }
    s[r] = 1.0 / ssq;
  }
  double rb_star = 0.0;
  if (dominant < rb.rules.size()) {
    rb_star = reference_point(rb.consequent(dominant), cfg.rp_mode);
    std::fill(s.begin(), s.end(), 0.0);
    s[dominant] = 1.0;
  } else {
    double num = 0.0, den = 0.0;
    for (std::size_t r = 0; r < rb.rules.size(); ++r) {
      num += s[r] * reference_point(rb.consequent(r), cfg.rp_mode);
      den += s[r];
    }
    rb_star = num / den;
  }

  std::vector<FuzzySet> consequents;
  for (std::size_t r = 0; r < rb.rules.size(); ++r)
    consequents.push_back(rb.consequent(r));
  const FuzzySet interp_con =
      feat_ls(consequents, rb_star, nullptr, "B^i");

  // SURE-LS: per break-point level, move each conclusion endpoint by the
  // mean endpoint offset between observation and interpolated antecedent.
  std::vector<FuzzySet> level_sets{interp_con};
  for (std::size_t d = 0; d < ctx.dims(); ++d) {
    level_sets.push_back(interp_ants[d]);
    level_sets.push_back(ctx.obs.sets[d]);
  }
  const std::vector<double> levels =
      breakpoint_levels(std::span<const FuzzySet>(level_sets), cfg.tol);

  std::vector<double> infs, sups;
  for (double a : levels) {
    const AlphaCut base = alpha_cut(interp_con, a);
    double dl = 0.0, dr = 0.0;
    for (std::size_t d = 0; d < ctx.dims(); ++d) {
      const AlphaCut cs = alpha_cut(ctx.obs.sets[d], a);
      const AlphaCut ci = alpha_cut(interp_ants[d], a);
      const double scale = ctx.out_aspect / ctx.aspects[d];
      dl += (cs.inf - ci.inf) * scale;
      dr += (cs.sup - ci.sup) * scale;
    }
    dl /= static_cast<double>(ctx.dims());
    dr /= static_cast<double>(ctx.dims());
    infs.push_back(base.inf + dl);
    sups.push_back(base.sup + dr);
  }

  Conclusion out;
  out.method = MethodId::kLesfri;
  out.weights.rule_weights = s;
  detail::emit_levelwise(out, levels, infs, sups, cfg.tol);
  return out;
}

}  // namespace fri
