#include "fri/fuzzy_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fri {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::UnorderedAbscissae: return "UnorderedAbscissae";
    case ErrorCode::MembershipOutOfRange: return "MembershipOutOfRange";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::NotCnf: return "NotCnf";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::DegenerateArea: return "DegenerateArea";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NoFlankingRules: return "NoFlankingRules";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::MethodInapplicable: return "MethodInapplicable";
    case ErrorCode::UnknownMethod: return "UnknownMethod";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ParamsyLengthMismatch: return "ParamsyLengthMismatch";
    case ErrorCode::ParamsyShapeMismatch: return "ParamsyShapeMismatch";
    case ErrorCode::UnknownShapeCode: return "UnknownShapeCode";
    case ErrorCode::MissingSection: return "MissingSection";
    case ErrorCode::DimensionGap: return "DimensionGap";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

FuzzySet FuzzySet::make(std::vector<Breakpoint> points, std::string label) {
  return make_set(std::move(points), std::move(label));
}

bool FuzzySet::is_singleton() const {
  return points_.size() == 1 && std::abs(points_.front().mu - 1.0) <= kStructuralTol;
}

double FuzzySet::peak() const {
  double m = 0.0;
  for (const auto& p : points_) m = std::max(m, p.mu);
  return m;
}

double FuzzySet::membership(double x) const {
  if (x < points_.front().x || x > points_.back().x) return 0.0;
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const auto& p = points_[i];
    const auto& q = points_[i + 1];
    if (x < p.x || x > q.x) continue;
    if (q.x == p.x) {
      best = std::max({best, p.mu, q.mu});
    } else {
      const double t = (x - p.x) / (q.x - p.x);
      best = std::max(best, p.mu + t * (q.mu - p.mu));
    }
  }
  if (points_.size() == 1) best = points_.front().mu;
  return best;
}

FuzzySet FuzzySet::translated(double dx) const {
  FuzzySet out = *this;
  for (auto& p : out.points_) p.x += dx;
  return out;
}

FuzzySet FuzzySet::relabeled(std::string label) const {
  FuzzySet out = *this;
  out.label_ = std::move(label);
  return out;
}

FuzzySet make_set(std::vector<Breakpoint> points, std::string label,
                  double tol) {
  if (points.empty()) throw Error(ErrorCode::EmptySet, "no breakpoints");
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.mu))
      throw Error(ErrorCode::NonFiniteValue, "breakpoint not finite");
    if (p.mu < -tol || p.mu > 1.0 + tol)
      throw Error(ErrorCode::MembershipOutOfRange,
                  "mu = " + std::to_string(p.mu));
  }
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1].x < points[i].x)
      throw Error(ErrorCode::UnorderedAbscissae,
                  "x decreases at breakpoint " + std::to_string(i + 1));
  }
  std::vector<Breakpoint> canon;
  canon.reserve(points.size());
  for (auto& p : points) {
    p.mu = std::clamp(p.mu, 0.0, 1.0);
    if (!canon.empty() && std::abs(canon.back().x - p.x) <= tol &&
        std::abs(canon.back().mu - p.mu) <= tol) {
      continue;  // identical consecutive duplicate
    }
    canon.push_back(p);
  }
  FuzzySet out;
  out.points_ = std::move(canon);
  out.label_ = std::move(label);
  return out;
}

FuzzySet make_triangle(double a, double b, double c, std::string label) {
  return make_set({{a, 0.0}, {b, 1.0}, {c, 0.0}}, std::move(label));
}

FuzzySet make_trapezoid(double a, double b, double c, double d,
                        std::string label) {
  return make_set({{a, 0.0}, {b, 1.0}, {c, 1.0}, {d, 0.0}}, std::move(label));
}

FuzzySet make_singleton(double x, std::string label) {
  return make_set({{x, 1.0}}, std::move(label));
}

CnfReport is_cnf(const FuzzySet& set, double tol) {
  CnfReport report;
  report.bounded = true;  // finite breakpoints enforced at construction
  report.normal = std::abs(set.peak() - 1.0) <= tol;

  // Convex iff the membership sequence rises monotonically to the maximum
  // and falls monotonically afterwards.
  const auto& pts = set.points();
  bool falling = false;
  bool convex = true;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double d = pts[i + 1].mu - pts[i].mu;
    if (d < -tol) falling = true;
    else if (d > tol && falling) { convex = false; break; }
  }
  report.convex = convex;
  return report;
}

namespace {

void require_cnf(const FuzzySet& set, ErrorCode code) {
  const CnfReport r = is_cnf(set);
  if (!r.convex)
    throw Error(code, "set '" + set.label() + "' is not convex");
  if (!r.normal)
    throw Error(code == ErrorCode::NotConvex ? ErrorCode::NotCnf : code,
                "set '" + set.label() + "' is not normal");
}

}  // namespace

AlphaCut alpha_cut(const FuzzySet& set, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::AlphaOutOfRange, "alpha = " + std::to_string(alpha));
  require_cnf(set, ErrorCode::NotConvex);
  const auto& pts = set.points();
  AlphaCut cut{alpha, pts.front().x, pts.back().x};
  if (alpha == 0.0) return cut;  // closed support

  // inf: first abscissa where mu reaches alpha, by linear inversion of the
  // rising flank.
  double inf = pts.back().x;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].mu >= alpha) {
      if (i == 0 || pts[i].x == pts[i - 1].x) {
        inf = pts[i].x;
      } else {
        const auto& p = pts[i - 1];
        const auto& q = pts[i];
        inf = p.x + (alpha - p.mu) / (q.mu - p.mu) * (q.x - p.x);
      }
      break;
    }
  }
  double sup = pts.front().x;
  for (std::size_t i = pts.size(); i-- > 0;) {
    if (pts[i].mu >= alpha) {
      if (i + 1 == pts.size() || pts[i].x == pts[i + 1].x) {
        sup = pts[i].x;
      } else {
        const auto& p = pts[i];
        const auto& q = pts[i + 1];
        sup = p.x + (alpha - p.mu) / (q.mu - p.mu) * (q.x - p.x);
      }
      break;
    }
  }
  cut.inf = inf;
  cut.sup = sup;
  return cut;
}

CharacteristicPoints characteristic_points(const FuzzySet& set) {
  require_cnf(set, ErrorCode::NotCnf);
  const AlphaCut support = alpha_cut(set, 0.0);
  const AlphaCut core = alpha_cut(set, 1.0);
  return {support.inf, core.inf, core.sup, support.sup};
}

double reference_point(const FuzzySet& set, RefPointMode mode) {
  switch (mode) {
    case RefPointMode::kCoreMid: return characteristic_points(set).core_mid();
    case RefPointMode::kSupportMid:
      return characteristic_points(set).support_mid();
    case RefPointMode::kCog: return representative_value(set);
  }
  throw Error(ErrorCode::MethodInapplicable, "unknown reference point mode");
}

double representative_value(const FuzzySet& set) {
  if (set.size() == 1) return set.points().front().x;
  const auto& pts = set.points();
  double area = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double x1 = pts[i].x, x2 = pts[i + 1].x;
    const double m1 = pts[i].mu, m2 = pts[i + 1].mu;
    const double w = x2 - x1;
    if (w <= 0.0) continue;
    area += 0.5 * w * (m1 + m2);
    // x(t) = x1 + w t, mu(t) = m1 + (m2-m1) t, t in [0,1]:
    // integral of x mu dx = w [x1 m1 + (x1 (m2-m1) + w m1)/2 + w (m2-m1)/3]
    moment += w * (x1 * m1 + 0.5 * (x1 * (m2 - m1) + w * m1) +
                   w * (m2 - m1) / 3.0);
  }
  if (area <= kStructuralTol) {
    if (set.support_width() <= kStructuralTol && set.peak() > kStructuralTol) {
      return set.support_lo();  // vertical-segment degenerate, treated as crisp
    }
    throw Error(ErrorCode::DegenerateArea,
                "zero area under '" + set.label() + "'");
  }
  return moment / area;
}

namespace {

struct Seg {
  double x1, y1, x2, y2;
};

// Boundary polyline of the set in the scaled plane (x, aspect*mu), including
// the vertical walls at support ends where membership jumps to zero.
std::vector<Seg> boundary_segments(const FuzzySet& set, double aspect) {
  const auto& pts = set.points();
  std::vector<Seg> segs;
  if (pts.front().mu > 0.0)
    segs.push_back({pts.front().x, 0.0, pts.front().x, aspect * pts.front().mu});
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    segs.push_back({pts[i].x, aspect * pts[i].mu, pts[i + 1].x,
                    aspect * pts[i + 1].mu});
  if (pts.back().mu > 0.0)
    segs.push_back({pts.back().x, aspect * pts.back().mu, pts.back().x, 0.0});
  if (segs.empty())  // single zero-membership point
    segs.push_back({pts.front().x, 0.0, pts.front().x, 0.0});
  return segs;
}

}  // namespace

PolarCut polar_cut_from(const FuzzySet& set, double theta, double aspect,
                        double origin_x) {
  if (!(theta >= 0.0 && theta <= 3.14159265358979323846 + 1e-9))
    throw Error(ErrorCode::AlphaOutOfRange,
                "theta = " + std::to_string(theta));
  if (!(aspect > 0.0))
    throw Error(ErrorCode::DegenerateGeometry, "aspect must be positive");
  const double dx = std::cos(theta);
  const double dy = std::sin(theta);
  double best = -1.0;
  for (const Seg& s : boundary_segments(set, aspect)) {
    const double ex = s.x2 - s.x1;
    const double ey = s.y2 - s.y1;
    const double det = dx * ey - dy * ex;  // cross of unit ray and segment
    const double rx = s.x1 - origin_x;
    const double ry = s.y1;
    const double seg_len = std::abs(ex) + std::abs(ey);
    if (std::abs(det) <= 1e-12 * std::max(seg_len, 1e-30)) {
      // Parallel; a collinear segment contributes its endpoint projections.
      const double cross = dx * ry - dy * rx;
      if (std::abs(cross) <=
          1e-9 * std::max(1.0, std::abs(rx) + std::abs(ry))) {
        const double t1 = dx * rx + dy * ry;
        const double t2 = dx * (s.x2 - origin_x) + dy * s.y2;
        if (t1 >= -1e-12) best = std::max(best, t1);
        if (t2 >= -1e-12) best = std::max(best, t2);
      }
      continue;
    }
    // origin + t*(dx,dy) = (s.x1,s.y1) + u*(ex,ey)
    const double t = (rx * ey - ry * ex) / det;
    const double u = (rx * dy - ry * dx) / det;
    if (u >= -1e-9 && u <= 1.0 + 1e-9 && t >= -1e-12) best = std::max(best, t);
  }
  PolarCut out{theta, 0.0, false};
  if (best >= 0.0) {
    out.rho = std::max(0.0, best);
    out.hit = true;
  }
  return out;
}

PolarCut polar_cut(const FuzzySet& set, double theta, double aspect) {
  return polar_cut_from(set, theta, aspect,
                        reference_point(set, RefPointMode::kCoreMid));
}

bool less_than(const FuzzySet& a, const FuzzySet& b,
               std::span<const double> levels, double tol) {
  require_cnf(a, ErrorCode::NotCnf);
  require_cnf(b, ErrorCode::NotCnf);
  for (double alpha : levels) {
    const AlphaCut ca = alpha_cut(a, alpha);
    const AlphaCut cb = alpha_cut(b, alpha);
    if (!(cb.inf - ca.inf > tol) || !(cb.sup - ca.sup > tol)) return false;
  }
  return true;
}

bool sets_equal(const FuzzySet& a, const FuzzySet& b, double tol) {
  if (std::abs(a.support_lo() - b.support_lo()) > tol) return false;
  if (std::abs(a.support_hi() - b.support_hi()) > tol) return false;
  std::vector<double> xs;
  for (const auto& p : a.points()) xs.push_back(p.x);
  for (const auto& p : b.points()) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  for (double x : xs) {
    if (std::abs(a.membership(x) - b.membership(x)) > tol) return false;
    // probe just off the abscissa to catch vertical-jump mismatches
    const double eps = 1e-9 * std::max(1.0, std::abs(x));
    if (std::abs(a.membership(x - eps) - b.membership(x - eps)) > 1e-6) return false;
    if (std::abs(a.membership(x + eps) - b.membership(x + eps)) > 1e-6) return false;
  }
  return true;
}

std::vector<double> breakpoint_levels(std::span<const FuzzySet> sets,
                                      double tol) {
  std::vector<double> levels{0.0, 1.0};
  for (const auto& s : sets)
    for (const auto& p : s.points()) levels.push_back(p.mu);
  std::sort(levels.begin(), levels.end());
  std::vector<double> out;
  for (double a : levels)
    if (out.empty() || a - out.back() > tol) out.push_back(a);
  if (std::abs(out.back() - 1.0) > tol) out.push_back(1.0);
  out.back() = 1.0;
  out.front() = 0.0;
  return out;
}

FuzzySet set_from_cuts(std::span<const AlphaCut> cuts, std::string label,
                       double tol) {
  if (cuts.empty()) throw Error(ErrorCode::EmptySet, "no cuts");
  std::vector<Breakpoint> pts;
  pts.reserve(cuts.size() * 2);
  for (const AlphaCut& c : cuts) pts.push_back({c.inf, c.alpha});
  for (std::size_t i = cuts.size(); i-- > 0;)
    pts.push_back({cuts[i].sup, cuts[i].alpha});
  return make_set(std::move(pts), std::move(label), tol);
}

}  // namespace fri
