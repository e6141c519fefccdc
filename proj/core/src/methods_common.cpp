#include <algorithm>
#include <cctype>
#include <cmath>

#include "methods_internal.hpp"

namespace fri {

const char* method_name(MethodId id) {
  switch (id) {
    case MethodId::kKh: return "KH";
    case MethodId::kKhStabilized: return "KH_STAB";
    case MethodId::kVkk: return "VKK";
    case MethodId::kMaci: return "MACI";
    case MethodId::kCrf: return "CRF";
    case MethodId::kImul: return "IMUL";
    case MethodId::kGm: return "GM";
    case MethodId::kFripoc: return "FRIPOC";
    case MethodId::kLesfri: return "LESFRI";
    case MethodId::kScaleMove: return "SCALE_MOVE";
  }
  return "?";
}

std::optional<MethodId> method_from_name(std::string_view name) {
  std::string upper;
  upper.reserve(name.size());
  for (char c : name) upper.push_back(static_cast<char>(std::toupper(c)));
  for (MethodId id : kAllMethods)
    if (upper == method_name(id)) return id;
  if (upper == "SCALEMOVE" || upper == "SCALE&MOVE") return MethodId::kScaleMove;
  if (upper == "KH_STABILIZED" || upper == "KHSTAB") return MethodId::kKhStabilized;
  return std::nullopt;
}

FuzzinessDescriptor describe_fuzziness(const FuzzySet& set, double rp_lower,
                                       double rp_upper) {
  const CharacteristicPoints cp = characteristic_points(set);
  FuzzinessDescriptor d;
  d.fl = cp.left_flank();
  d.fu = cp.right_flank();
  d.core_len = cp.core_width();
  const double rp = cp.core_mid();
  d.gap_lower = rp - rp_lower;
  d.gap_upper = rp_upper - rp;
  return d;
}

AlphaCut envelope_cut(const FuzzySet& set, double alpha) {
  const auto& pts = set.points();
  const double peak = set.peak();
  const double a = std::min(alpha, peak);
  AlphaCut cut{alpha, pts.front().x, pts.back().x};
  if (a <= 0.0) return cut;
  double inf = pts.back().x;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].mu >= a) {
      if (i == 0 || pts[i].x == pts[i - 1].x) inf = pts[i].x;
      else {
        const auto& p = pts[i - 1];
        const auto& q = pts[i];
        inf = p.x + (a - p.mu) / (q.mu - p.mu) * (q.x - p.x);
      }
      break;
    }
  }
  double sup = pts.front().x;
  for (std::size_t i = pts.size(); i-- > 0;) {
    if (pts[i].mu >= a) {
      if (i + 1 == pts.size() || pts[i].x == pts[i + 1].x) sup = pts[i].x;
      else {
        const auto& p = pts[i];
        const auto& q = pts[i + 1];
        sup = p.x + (a - p.mu) / (q.mu - p.mu) * (q.x - p.x);
      }
      break;
    }
  }
  cut.inf = inf;
  cut.sup = sup;
  return cut;
}

AlphaCut Conclusion::cut_at(double alpha) const {
  if (shape) return envelope_cut(*shape, alpha);
  const auto& fam = *alpha_family;
  if (alpha <= fam.front().alpha)
    return {alpha, fam.front().inf, fam.front().sup};
  for (std::size_t i = 0; i + 1 < fam.size(); ++i) {
    if (alpha <= fam[i + 1].alpha) {
      const double span = fam[i + 1].alpha - fam[i].alpha;
      const double t = span <= 0.0 ? 0.0 : (alpha - fam[i].alpha) / span;
      return {alpha, fam[i].inf + t * (fam[i + 1].inf - fam[i].inf),
              fam[i].sup + t * (fam[i + 1].sup - fam[i].sup)};
    }
  }
  return {alpha, fam.back().inf, fam.back().sup};
}

std::vector<AlphaCut> Conclusion::cuts_at(std::span<const double> levels) const {
  std::vector<AlphaCut> out;
  out.reserve(levels.size());
  for (double a : levels) out.push_back(cut_at(a));
  return out;
}

Conclusion interpolate(MethodId id, const RuleBase& rb, const Observation& obs,
                       const InterpolationConfig& cfg) {
  switch (id) {
    case MethodId::kKh: return interpolate_kh(rb, obs, cfg);
    case MethodId::kKhStabilized: return interpolate_kh_stabilized(rb, obs, cfg);
    case MethodId::kVkk: return interpolate_vkk(rb, obs, cfg);
    case MethodId::kMaci: return interpolate_maci(rb, obs, cfg);
    case MethodId::kCrf: return interpolate_crf(rb, obs, cfg);
    case MethodId::kImul: return interpolate_imul(rb, obs, cfg);
    case MethodId::kGm: return interpolate_gm(rb, obs, cfg);
    case MethodId::kFripoc: return interpolate_fripoc(rb, obs, cfg);
    case MethodId::kLesfri: return interpolate_lesfri(rb, obs, cfg);
    case MethodId::kScaleMove: return interpolate_scale_move(rb, obs, cfg);
  }
  throw Error(ErrorCode::UnknownMethod, "bad method id");
}

namespace detail {

std::vector<double> uniform_levels(int n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 2)));
  const int m = std::max(n, 2);
  for (int i = 0; i < m; ++i)
    out.push_back(static_cast<double>(i) / static_cast<double>(m - 1));
  out.back() = 1.0;
  return out;
}

std::vector<double> merge_levels(std::vector<double> a,
                                 const std::vector<double>& b, double tol) {
  a.insert(a.end(), b.begin(), b.end());
  a.push_back(0.0);
  a.push_back(1.0);
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double v : a) {
    if (v < 0.0 || v > 1.0) continue;
    if (out.empty() || v - out.back() > tol) out.push_back(v);
  }
  out.front() = 0.0;
  if (std::abs(out.back() - 1.0) <= tol) out.back() = 1.0;
  return out;
}

Context make_context(const RuleBase& rb, const Observation& obs,
                     const InterpolationConfig& cfg) {
  Context ctx{rb, obs, cfg, {}, {}, {}, 1.0};
  ctx.flank = select_flanking(rb, obs);

  if (!cfg.alpha_levels.empty()) {
    ctx.levels = merge_levels(cfg.alpha_levels, {}, cfg.tol);
  } else {
    std::vector<FuzzySet> involved = obs.sets;
    for (const auto& part : rb.inputs)
      involved.insert(involved.end(), part.terms.begin(), part.terms.end());
    involved.insert(involved.end(), rb.output.terms.begin(),
                    rb.output.terms.end());
    ctx.levels = breakpoint_levels(involved, cfg.tol);
  }

  for (const auto& part : rb.inputs) {
    const double w = part.range_width();
    ctx.aspects.push_back(cfg.aspect > 0.0 ? cfg.aspect
                                           : (w > 0.0 ? w : 1.0));
  }
  const double ow = rb.output.range_width();
  ctx.out_aspect = cfg.aspect > 0.0 ? cfg.aspect : (ow > 0.0 ? ow : 1.0);
  return ctx;
}

Conclusion exact_match_conclusion(const Context& ctx, MethodId id,
                                  bool as_family) {
  const FuzzySet& b = ctx.lower_con();
  Conclusion out;
  out.method = id;
  out.notes.push_back("observation matches rule " +
                      std::to_string(ctx.flank.lower + 1) + " exactly");
  if (as_family) {
    std::vector<AlphaCut> fam;
    for (double a : ctx.levels) fam.push_back(alpha_cut(b, a));
    out.alpha_family = std::move(fam);
  } else {
    out.shape = b.relabeled("B*");
  }
  return out;
}

double agg_ratio(const std::vector<double>& num_gaps,
                 const std::vector<double>& den_gaps) {
  double num = 0.0, den = 0.0;
  for (double g : num_gaps) num += g * g;
  for (double g : den_gaps) den += g * g;
  if (den <= 0.0)
    throw Error(ErrorCode::DegenerateGeometry,
                "flanking rules coincide in every dimension");
  return std::sqrt(num) / std::sqrt(den);
}

RefPoints reference_points(const Context& ctx) {
  RefPoints rp;
  for (std::size_t d = 0; d < ctx.dims(); ++d) {
    rp.obs.push_back(reference_point(ctx.obs.sets[d], ctx.cfg.rp_mode));
    rp.lower.push_back(reference_point(ctx.lower_ant(d), ctx.cfg.rp_mode));
    rp.upper.push_back(reference_point(ctx.upper_ant(d), ctx.cfg.rp_mode));
  }
  rp.out_lower = reference_point(ctx.lower_con(), ctx.cfg.rp_mode);
  rp.out_upper = reference_point(ctx.upper_con(), ctx.cfg.rp_mode);
  return rp;
}

double lambda_from(const RefPoints& rp) {
  std::vector<double> num, den;
  for (std::size_t d = 0; d < rp.obs.size(); ++d) {
    num.push_back(rp.obs[d] - rp.lower[d]);
    den.push_back(rp.upper[d] - rp.lower[d]);
  }
  return agg_ratio(num, den);
}

void emit_levelwise(Conclusion& out, const std::vector<double>& levels,
                    const std::vector<double>& infs,
                    const std::vector<double>& sups, double tol) {
  bool valid = true;
  for (std::size_t i = 0; i + 1 < levels.size() && valid; ++i) {
    if (infs[i + 1] < infs[i] - tol) valid = false;   // left flank must rise
    if (sups[i + 1] > sups[i] + tol) valid = false;   // right flank must fall
  }
  if (valid && infs.back() > sups.back() + tol) valid = false;
  for (std::size_t i = 0; i < levels.size() && valid; ++i)
    if (!std::isfinite(infs[i]) || !std::isfinite(sups[i])) valid = false;

  if (valid) {
    std::vector<Breakpoint> pts;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double x = i + 1 == levels.size() ? std::min(infs[i], sups[i])
                                              : infs[i];
      pts.push_back({std::max(x, i == 0 ? x : pts.back().x), levels[i]});
    }
    for (std::size_t i = levels.size(); i-- > 0;) {
      const double x = std::max(sups[i], pts.back().x);
      pts.push_back({x, levels[i]});
    }
    out.shape = make_set(std::move(pts), "B*", tol);
  } else {
    std::vector<AlphaCut> fam;
    for (std::size_t i = 0; i < levels.size(); ++i)
      fam.push_back({levels[i], infs[i], sups[i]});
    out.alpha_family = std::move(fam);
    out.notes.push_back(
        "endpoints do not form a valid breakpoint shape; emitted as an "
        "alpha family");
  }
}

void corner_angles(const FuzzySet& set, double aspect, double origin_x,
                   std::vector<double>& out) {
  auto push = [&](double x, double y) {
    out.push_back(std::atan2(y, x - origin_x));
  };
  const auto& pts = set.points();
  if (pts.front().mu > 0.0) push(pts.front().x, 0.0);
  for (const auto& p : pts) push(p.x, aspect * p.mu);
  if (pts.back().mu > 0.0) push(pts.back().x, 0.0);
}

PolarSampled sample_polar(const FuzzySet& set, double aspect, double origin_x,
                          const std::vector<double>& thetas) {
  PolarSampled out;
  out.thetas = thetas;
  out.rhos.reserve(thetas.size());
  for (double t : thetas)
    out.rhos.push_back(polar_cut_from(set, t, aspect, origin_x).rho);
  return out;
}

FuzzySet finalize_shape(std::vector<Breakpoint> pts, const std::string& label,
                        std::vector<std::string>& notes, double tol) {
  // Correction steps can break the x-order; re-sort to keep a function-valued
  // curve before the envelope pass.
  std::stable_sort(pts.begin(), pts.end(),
                   [](const Breakpoint& a, const Breakpoint& b) {
                     return a.x < b.x;
                   });
  for (auto& p : pts) p.mu = std::clamp(p.mu, 0.0, 1.0);
  // Unimodal envelope about the peak: cumulative max from both ends.
  std::size_t peak = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].mu > pts[peak].mu) peak = i;
  double changed = 0.0;
  double run = 0.0;
  for (std::size_t i = 0; i <= peak; ++i) {
    run = std::max(run, pts[i].mu);
    changed = std::max(changed, run - pts[i].mu);
    pts[i].mu = run;
  }
  run = 0.0;
  for (std::size_t i = pts.size(); i-- > peak;) {
    run = std::max(run, pts[i].mu);
    changed = std::max(changed, run - pts[i].mu);
    pts[i].mu = run;
  }
  if (changed > 1e-9)
    notes.push_back("validity control raised memberships by up to " +
                    std::to_string(changed));
  // Drop redundant collinear points to keep the shape compact.
  std::vector<Breakpoint> compact;
  for (const auto& p : pts) {
    if (compact.size() >= 2) {
      const auto& a = compact[compact.size() - 2];
      auto& b = compact.back();
      const double cross =
          (b.x - a.x) * (p.mu - a.mu) - (b.mu - a.mu) * (p.x - a.x);
      const double scale = std::max({1.0, std::abs(p.x - a.x)});
      if (std::abs(cross) <= 1e-12 * scale) {
        b = p;
        continue;
      }
    }
    compact.push_back(p);
  }
  return make_set(std::move(compact), label, tol);
}

FuzzySet set_from_polar(const PolarSampled& samples, double aspect,
                        double origin_x, const std::string& label,
                        std::vector<std::string>& notes, double tol) {
  std::vector<Breakpoint> pts;
  pts.reserve(samples.thetas.size());
  for (std::size_t i = samples.thetas.size(); i-- > 0;) {
    const double th = samples.thetas[i];
    const double rho = std::max(0.0, samples.rhos[i]);
    const double x = origin_x + rho * std::cos(th);
    double mu = rho * std::sin(th) / aspect;
    if (mu < 1e-12) mu = 0.0;
    if (mu > 1.0 - 1e-12) mu = 1.0;
    pts.push_back({x, mu});
  }
  return finalize_shape(std::move(pts), label, notes, tol);
}

}  // namespace detail
}  // namespace fri
