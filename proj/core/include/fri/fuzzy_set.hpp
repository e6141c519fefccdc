#pragma once

#include <span>
#include <string>
#include <vector>

#include "fri/errors.hpp"

namespace fri {

// Absolute tolerance for structural predicates (plateau detection,
// strictness of orderings, duplicate collapsing).
inline constexpr double kStructuralTol = 1e-12;

struct Breakpoint {
  double x = 0.0;   // universe coordinate
  double mu = 0.0;  // membership level in [0, 1]
};

// A convex-normal piecewise-linear fuzzy set candidate: an ordered breakpoint
// sequence. Membership between breakpoints is linear, zero outside the
// support. Vertical jumps are expressed by repeated abscissae. Immutable
// after construction.
class FuzzySet {
 public:
  static FuzzySet make(std::vector<Breakpoint> points, std::string label = "");

  const std::vector<Breakpoint>& points() const { return points_; }
  const std::string& label() const { return label_; }

  std::size_t size() const { return points_.size(); }
  bool is_singleton() const;

  double support_lo() const { return points_.front().x; }
  double support_hi() const { return points_.back().x; }
  double support_width() const { return support_hi() - support_lo(); }

  double peak() const;  // maximum membership over the breakpoints

  // Linear-interpolated membership; for repeated abscissae the largest value
  // at that x wins.
  double membership(double x) const;

  FuzzySet translated(double dx) const;
  FuzzySet relabeled(std::string label) const;

 private:
  FuzzySet() = default;
  friend FuzzySet make_set(std::vector<Breakpoint>, std::string, double);
  std::vector<Breakpoint> points_;
  std::string label_;
};

struct AlphaCut {
  double alpha = 0.0;
  double inf = 0.0;
  double sup = 0.0;
};

struct CharacteristicPoints {
  double lf = 0.0;  // left flank (support infimum)
  double lc = 0.0;  // left core
  double rc = 0.0;  // right core
  double rf = 0.0;  // right flank (support supremum)

  double core_mid() const { return 0.5 * (lc + rc); }
  double support_mid() const { return 0.5 * (lf + rf); }
  double left_flank() const { return lc - lf; }
  double right_flank() const { return rf - rc; }
  double core_width() const { return rc - lc; }
  double support_width() const { return rf - lf; }
};

struct PolarCut {
  double theta = 0.0;  // angle about the reference point, in [0, pi]
  double rho = 0.0;    // polar distance, >= 0
  bool hit = true;     // false when the ray misses the curve (rho forced 0)
};

struct CnfReport {
  bool normal = false;
  bool convex = false;
  bool bounded = false;
  bool ok() const { return normal && convex && bounded; }
};

enum class RefPointMode { kCoreMid, kSupportMid, kCog };

// Validates and canonicalizes a breakpoint sequence (collapses consecutive
// duplicates that agree within tol in both coordinates).
FuzzySet make_set(std::vector<Breakpoint> points, std::string label = "",
                  double tol = kStructuralTol);

// Convenience constructors for the common shape codes.
FuzzySet make_triangle(double a, double b, double c, std::string label = "");
FuzzySet make_trapezoid(double a, double b, double c, double d,
                        std::string label = "");
FuzzySet make_singleton(double x, std::string label = "");

CnfReport is_cnf(const FuzzySet& set, double tol = kStructuralTol);

// Alpha-cut of a CNF set. alpha = 0 yields the closed support.
AlphaCut alpha_cut(const FuzzySet& set, double alpha);

CharacteristicPoints characteristic_points(const FuzzySet& set);

double reference_point(const FuzzySet& set, RefPointMode mode);

// Centroid of the area under the membership curve; a singleton maps to its
// abscissa.
double representative_value(const FuzzySet& set);

// Distance from (origin_x, 0) to the set's boundary curve along the ray at
// angle theta in the plane (x, aspect*mu). theta = 0 points toward +x.
PolarCut polar_cut_from(const FuzzySet& set, double theta, double aspect,
                        double origin_x);

// Same, with the origin at the core-mid reference point.
PolarCut polar_cut(const FuzzySet& set, double theta, double aspect);

// Strict partial order: true iff inf and sup of a precede b's at every
// supplied level by more than tol.
bool less_than(const FuzzySet& a, const FuzzySet& b,
               std::span<const double> levels, double tol = kStructuralTol);

// Membership-function equality at the union of breakpoint abscissae.
bool sets_equal(const FuzzySet& a, const FuzzySet& b,
                double tol = kStructuralTol);

// Sorted union of the membership levels appearing in the set's breakpoints,
// always containing 0 and 1.
std::vector<double> breakpoint_levels(std::span<const FuzzySet> sets,
                                      double tol = kStructuralTol);

// Rebuilds a piecewise-linear CNF set from per-level cuts (levels ascending).
FuzzySet set_from_cuts(std::span<const AlphaCut> cuts, std::string label = "",
                       double tol = kStructuralTol);

}  // namespace fri
