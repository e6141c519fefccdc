#include <algorithm>
#include <cmath>

#include "methods_internal.hpp"

namespace fri {
namespace {

using detail::Context;
using detail::RefPoints;

double lerp(double a, double b, double t) { return a + t * (b - a); }

// Reach of a set from its reference point to a cut endpoint.
double reach_left(const FuzzySet& s, double rp, double alpha) {
  return rp - alpha_cut(s, alpha).inf;
}
double reach_right(const FuzzySet& s, double rp, double alpha) {
  return alpha_cut(s, alpha).sup - rp;
}

// Geometric mean of per-dimension flank ratios; 0/0 counts as 1, a fuzzy
// numerator over a crisp denominator has no finite ratio.
double geo_flank_ratio(const std::vector<double>& nums,
                       const std::vector<double>& dens, double tol) {
  double prod = 1.0;
  for (std::size_t i = 0; i < nums.size(); ++i) {
    double r;
    if (dens[i] > tol) r = nums[i] / dens[i];
    else if (nums[i] <= tol) r = 1.0;
    else
      throw Error(ErrorCode::DegenerateGeometry,
                  "crisp antecedent flank against a fuzzy observation flank");
    prod *= std::max(0.0, r);
  }
  return std::pow(prod, 1.0 / static_cast<double>(nums.size()));
}

}  // namespace

// ---------------------------------------------------------------------------
// MACI: the reference point moves by lambda_core; flank reaches are blended
// in the transformed space (sqrt(2)-scaled reference axis, flank lengths as
// the second coordinate), which keeps them non-negative and the conclusion
// convex-normal. The blend weights aggregate the whole characteristic
// structure, so the result is independent of the evaluation grid.
// ---------------------------------------------------------------------------
Conclusion interpolate_maci(const RuleBase& rb, const Observation& obs,
                            const InterpolationConfig& cfg) {
  const Context ctx = detail::make_context(rb, obs, cfg);
  if (ctx.flank.exact_match())
    return detail::exact_match_conclusion(ctx, MethodId::kMaci, false);

  const RefPoints rp = detail::reference_points(ctx);
  const double lambda = detail::lambda_from(rp);
  const double rb_star = lerp(rp.out_lower, rp.out_upper, lambda);

  auto side_distance = [&](bool left, std::size_t rule,
                           const std::vector<double>& rp_rule) {
    double acc = 0.0;
    for (std::size_t d = 0; d < ctx.dims(); ++d) {
      const FuzzySet& o = ctx.obs.sets[d];
      const FuzzySet& a = ctx.rb.antecedent(rule, d);
      const double dr = rp.obs[d] - rp_rule[d];
      acc += 2.0 * dr * dr;
      for (double level : {0.0, 1.0}) {
        const double ro = left ? reach_left(o, rp.obs[d], level)
                               : reach_right(o, rp.obs[d], level);
        const double ra = left ? reach_left(a, rp_rule[d], level)
                               : reach_right(a, rp_rule[d], level);
        acc += (ro - ra) * (ro - ra);
      }
    }
    return std::sqrt(acc);
  };

  auto blended_reach = [&](bool left, double alpha) {
    const double d1 = side_distance(left, ctx.flank.lower, rp.lower);
    const double d2 = side_distance(left, ctx.flank.upper, rp.upper);
    const FuzzySet& b1 = ctx.lower_con();
    const FuzzySet& b2 = ctx.upper_con();
    const double r1 = left ? reach_left(b1, rp.out_lower, alpha)
                           : reach_right(b1, rp.out_lower, alpha);
    const double r2 = left ? reach_left(b2, rp.out_upper, alpha)
                           : reach_right(b2, rp.out_upper, alpha);
    if (d1 <= cfg.tol) return r1;
    if (d2 <= cfg.tol) return r2;
    const double w1 = 1.0 / d1, w2 = 1.0 / d2;
    return (w1 * r1 + w2 * r2) / (w1 + w2);
  };

  Conclusion out;
  out.method = MethodId::kMaci;
  out.weights.lambda_core = lambda;
  std::vector<double> infs, sups;
  for (double a : ctx.levels) {
    infs.push_back(rb_star - blended_reach(true, a));
    sups.push_back(rb_star + blended_reach(false, a));
  }
  detail::emit_levelwise(out, ctx.levels, infs, sups, cfg.tol);
  return out;
}

// ---------------------------------------------------------------------------
// CRF: the core midpoint moves by the range-normalized core-gap ratio and the
// core width interpolates with it; each conclusion flank conserves the
// relative fuzziness of the facing antecedent flank.
// ---------------------------------------------------------------------------
Conclusion interpolate_crf(const RuleBase& rb, const Observation& obs,
                           const InterpolationConfig& cfg) {
  const Context ctx = detail::make_context(rb, obs, cfg);
  if (ctx.flank.exact_match())
    return detail::exact_match_conclusion(ctx, MethodId::kCrf, false);

  std::vector<double> num, den;
  std::vector<double> obs_fl, obs_fu, a1_fu, a2_fl;
  for (std::size_t d = 0; d < ctx.dims(); ++d) {
    const CharacteristicPoints co = characteristic_points(ctx.obs.sets[d]);
    const CharacteristicPoints c1 = characteristic_points(ctx.lower_ant(d));
    const CharacteristicPoints c2 = characteristic_points(ctx.upper_ant(d));
    const double range = ctx.rb.inputs[d].range_width();
    num.push_back((co.core_mid() - c1.core_mid()) / range);
    den.push_back((c2.core_mid() - c1.core_mid()) / range);
    obs_fl.push_back(co.left_flank());
    obs_fu.push_back(co.right_flank());
    a1_fu.push_back(c1.right_flank());
    a2_fl.push_back(c2.left_flank());
  }
  const double ratio = detail::agg_ratio(num, den);

  const CharacteristicPoints b1 = characteristic_points(ctx.lower_con());
  const CharacteristicPoints b2 = characteristic_points(ctx.upper_con());
  const double core_mid = lerp(b1.core_mid(), b2.core_mid(), ratio);
  const double core_w = lerp(b1.core_width(), b2.core_width(), ratio);

  const double flank_l = b1.right_flank() * geo_flank_ratio(obs_fl, a1_fu, cfg.tol);
  const double flank_u = b2.left_flank() * geo_flank_ratio(obs_fu, a2_fl, cfg.tol);

  const double lc = core_mid - 0.5 * core_w;
  const double rc = core_mid + 0.5 * core_w;
  Conclusion out;
  out.method = MethodId::kCrf;
  out.weights.lambda_core = ratio;
  out.shape = make_set(
      {{lc - flank_l, 0.0}, {lc, 1.0}, {rc, 1.0}, {rc + flank_u, 0.0}}, "B*",
      cfg.tol);
  return out;
}

// ---------------------------------------------------------------------------
// IMUL: MACI-style core interpolation with separate left/right core lambdas
// and a skew-correction term, plus CRF-style flanks scaled by the mismatch
// between the observation's flank-to-gap ratio and the rules'.
// ---------------------------------------------------------------------------
Conclusion interpolate_imul(const RuleBase& rb, const Observation& obs,
                            const InterpolationConfig& cfg) {
  const Context ctx = detail::make_context(rb, obs, cfg);
  if (ctx.flank.exact_match())
    return detail::exact_match_conclusion(ctx, MethodId::kImul, false);

  const RefPoints rp = detail::reference_points(ctx);
  const double lambda_core = detail::lambda_from(rp);

  std::vector<CharacteristicPoints> co, c1, c2;
  for (std::size_t d = 0; d < ctx.dims(); ++d) {
    co.push_back(characteristic_points(ctx.obs.sets[d]));
    c1.push_back(characteristic_points(ctx.lower_ant(d)));
    c2.push_back(characteristic_points(ctx.upper_ant(d)));
  }
  std::vector<double> nl, dl, nr, dr;
  for (std::size_t d = 0; d < ctx.dims(); ++d) {
    nl.push_back(co[d].lc - c1[d].lc);
    dl.push_back(c2[d].lc - c1[d].lc);
    nr.push_back(co[d].rc - c1[d].rc);
    dr.push_back(c2[d].rc - c1[d].rc);
  }
  const double lambda_left = detail::agg_ratio(nl, dl);
  const double lambda_right = detail::agg_ratio(nr, dr);

  const CharacteristicPoints b1 = characteristic_points(ctx.lower_con());
  const CharacteristicPoints b2 = characteristic_points(ctx.upper_con());
  const double skew_base = cfg.imul_printed_sum
                               ? rp.out_upper + rp.out_lower
                               : rp.out_upper - rp.out_lower;
  const double rcb = lerp(b1.rc, b2.rc, lambda_right) +
                     (lambda_core - lambda_right) * skew_base;
  const double lcb = lerp(b1.lc, b2.lc, lambda_left) +
                     (lambda_core - lambda_left) * skew_base;

  // Rule gap, aggregated over dimensions.
  std::vector<double> gaps;
  for (std::size_t d = 0; d < ctx.dims(); ++d)
    gaps.push_back(rp.upper[d] - rp.lower[d]);
  double gap = 0.0;
  for (double g : gaps) gap += g * g;
  gap = std::sqrt(gap);
  if (gap <= cfg.tol)
    throw Error(ErrorCode::DegenerateGeometry, "zero rule gap");

  auto flank = [&](bool left, double lambda) {
    // r: the lambda-interpolated consequent flank for this side.
    const double r = left ? lerp(b1.left_flank(), b2.left_flank(), lambda)
                          : lerp(b1.right_flank(), b2.right_flank(), lambda);
    double s = 0.0, s_obs = 0.0;
    for (std::size_t d = 0; d < ctx.dims(); ++d) {
      const double fr = left ? lerp(c1[d].left_flank(), c2[d].left_flank(), lambda)
                             : lerp(c1[d].right_flank(), c2[d].right_flank(), lambda);
      const double fo = left ? co[d].left_flank() : co[d].right_flank();
      s += fr * fr;
      s_obs += fo * fo;
    }
    s = std::sqrt(s);
    s_obs = std::sqrt(s_obs);
    return r * (1.0 + std::abs(s_obs / gap - s / gap));
  };
  const double flank_l = flank(true, lambda_left);
  const double flank_u = flank(false, lambda_right);

  Conclusion out;
  out.method = MethodId::kImul;
  out.weights.lambda_core = lambda_core;
  out.weights.lambda_left = lambda_left;
  out.weights.lambda_right = lambda_right;
  const std::vector<double> levels{0.0, 1.0};
  detail::emit_levelwise(out, levels, {lcb - flank_l, lcb},
                         {rcb + flank_u, rcb}, cfg.tol);
  return out;
}

// ---------------------------------------------------------------------------
// Scale & move.
// ---------------------------------------------------------------------------

double scale_move_representative(const FuzzySet& set) {
  const CharacteristicPoints cp = characteristic_points(set);
  return 0.25 * (cp.lf + cp.lc + cp.rc + cp.rf);
}

namespace {

struct Char4 {
  double p[4];
  double rep() const { return 0.25 * (p[0] + p[1] + p[2] + p[3]); }
  double supp() const { return p[3] - p[0]; }
  double core() const { return p[2] - p[1]; }
  double fl() const { return p[1] - p[0]; }
  double fr() const { return p[3] - p[2]; }
};

Char4 char4_of(const FuzzySet& s) {
  const CharacteristicPoints cp = characteristic_points(s);
  return {{cp.lf, cp.lc, cp.rc, cp.rf}};
}

Char4 lerp4(const Char4& a, const Char4& b, double t) {
  Char4 out;
  for (int i = 0; i < 4; ++i) out.p[i] = a.p[i] + t * (b.p[i] - a.p[i]);
  return out;
}

// Trapezoid with the given support/core lengths, flank split and vertex mean.
Char4 build_char4(double rep, double supp, double core, double left_flank) {
  Char4 out;
  const double l = left_flank;
  out.p[0] = rep - (2.0 * l + core + supp) / 4.0;
  out.p[1] = out.p[0] + l;
  out.p[2] = out.p[1] + core;
  out.p[3] = out.p[0] + supp;
  return out;
}

}  // namespace

Conclusion interpolate_scale_move(const RuleBase& rb, const Observation& obs,
                                  const InterpolationConfig& cfg) {
  const Context ctx = detail::make_context(rb, obs, cfg);
  if (ctx.flank.exact_match())
    return detail::exact_match_conclusion(ctx, MethodId::kScaleMove, false);

  Conclusion out;
  out.method = MethodId::kScaleMove;

  // lambda_rep from the representative values, aggregated over dimensions.
  std::vector<double> num, den;
  std::vector<Char4> ao, a1, a2;
  for (std::size_t d = 0; d < ctx.dims(); ++d) {
    ao.push_back(char4_of(ctx.obs.sets[d]));
    a1.push_back(char4_of(ctx.lower_ant(d)));
    a2.push_back(char4_of(ctx.upper_ant(d)));
    num.push_back(ao.back().rep() - a1.back().rep());
    den.push_back(a2.back().rep() - a1.back().rep());
  }
  const double lambda = detail::agg_ratio(num, den);
  out.weights.lambda_rep = lambda;

  const Char4 b1 = char4_of(ctx.lower_con());
  const Char4 b2 = char4_of(ctx.upper_con());
  const Char4 bp = lerp4(b1, b2, lambda);  // B' of the new central rule

  // Per-dimension transformation rates from A'_d -> A*_d. A'_d uses its own
  // per-dimension lambda so its representative value lands on the
  // observation's.
  double sb_sum = 0.0, st_sum = 0.0, mv_sum = 0.0;
  bool core_rate_degenerate = false;
  for (std::size_t d = 0; d < ctx.dims(); ++d) {
    const double dn = den[d];
    const double ld = std::abs(dn) <= cfg.tol ? lambda : num[d] / dn;
    const Char4 ap = lerp4(a1[d], a2[d], ld);
    const Char4& st = ao[d];

    double sb, stc;
    if (ap.supp() > cfg.tol) sb = st.supp() / ap.supp();
    else if (st.supp() <= cfg.tol) sb = 1.0;
    else
      throw Error(ErrorCode::DegenerateGeometry,
                  "crisp interpolated antecedent against a fuzzy observation");
    if (ap.core() > cfg.tol) stc = st.core() / ap.core();
    else {
      stc = sb;  // core rate inexpressible from a degenerate core
      if (st.core() > cfg.tol) core_rate_degenerate = true;
    }

    // Move: compare left flanks after scaling, normalized by the total flank.
    const double supp_s = sb * ap.supp();
    const double core_s = std::min(stc * ap.core(), supp_s);
    const double total_flank = supp_s - core_s;
    double mv = 0.0;
    if (total_flank > cfg.tol) {
      const double ap_flank = ap.supp() - ap.core();
      const double kappa = ap_flank > cfg.tol ? ap.fl() / ap_flank : 0.5;
      const double l_scaled = kappa * total_flank;
      const double m = 0.5 * (st.fl() - l_scaled);
      mv = m / (0.5 * total_flank);
    }
    sb_sum += sb;
    st_sum += stc;
    mv_sum += mv;
  }
  const double k = static_cast<double>(ctx.dims());
  const double sb = sb_sum / k;
  const double st = st_sum / k;
  const double mv = mv_sum / k;

  // Replay on B': scale support and core about the representative value,
  // then move within the flank slack.
  const double supp_b = sb * bp.supp();
  double core_b = st * bp.core();
  if (core_b > supp_b) {
    core_b = supp_b;
    out.notes.push_back("core scale clamped to the support");
  }
  const double flank_b = supp_b - core_b;
  const double bp_flank = bp.supp() - bp.core();
  const double kappa_b = bp_flank > cfg.tol ? bp.fl() / bp_flank : 0.5;
  Char4 bs = build_char4(bp.rep(), supp_b, core_b, kappa_b * flank_b);

  double m_b = mv * 0.5 * flank_b;
  const double m_lo = -0.5 * bs.fr();
  const double m_hi = 0.5 * bs.fl();
  if (m_b < m_lo || m_b > m_hi) {
    m_b = std::clamp(m_b, m_lo, m_hi);
    out.notes.push_back("move clamped to the flank slack");
  }
  const Char4 bstar = {{bs.p[0] + m_b, bs.p[1] - m_b, bs.p[2] - m_b,
                        bs.p[3] + m_b}};

  if (core_rate_degenerate)
    out.notes.push_back("core scale rate taken from the support rate");
  out.shape = make_set({{bstar.p[0], 0.0},
                        {bstar.p[1], 1.0},
                        {bstar.p[2], 1.0},
                        {bstar.p[3], 0.0}},
                       "B*", cfg.tol);
  return out;
}

}  // namespace fri
