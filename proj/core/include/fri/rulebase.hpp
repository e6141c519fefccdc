#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fri/fuzzy_set.hpp"

namespace fri {

struct LinguisticPartition {
  std::string dimension_name;
  double range_lo = 0.0;
  double range_hi = 1.0;
  std::vector<FuzzySet> terms;

  double range_width() const { return range_hi - range_lo; }
};

struct Rule {
  std::vector<std::size_t> antecedents;  // term index per input dimension
  std::size_t consequent = 0;
  double weight = 1.0;  // parsed, ignored by the v1 methods
};

struct RuleBase {
  std::vector<LinguisticPartition> inputs;
  LinguisticPartition output;
  std::vector<Rule> rules;

  std::size_t dimensions() const { return inputs.size(); }
  const FuzzySet& antecedent(std::size_t rule, std::size_t dim) const {
    return inputs[dim].terms[rules[rule].antecedents[dim]];
  }
  const FuzzySet& consequent(std::size_t rule) const {
    return output.terms[rules[rule].consequent];
  }
};

struct Observation {
  std::vector<FuzzySet> sets;  // one per input dimension
};

struct FlankingPair {
  std::size_t lower = 0;  // rule index
  std::size_t upper = 0;
  bool exact_match() const { return lower == upper; }
};

struct DistancePair {
  double d_lower = 0.0;
  double d_upper = 0.0;
};

enum class DistanceKind { kEuclideanEndpoints, kCenter, kReferencePoint };

struct ValidationIssue {
  enum class Kind {
    NonCnfSet,
    OrderingViolation,
    DuplicateAntecedents,
    BadIndex,
    BadRange,
    SupportOutsideRange,
    TooFewRules,
  };
  Kind kind;
  std::string where;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

// Default level set for the partial-order checks. Boundary behaviour at
// alpha = 1 is a caller decision, so the levels stay a parameter everywhere.
inline const std::vector<double>& default_order_levels() {
  static const std::vector<double> levels{0.0, 0.5, 1.0};
  return levels;
}

ValidationReport validate_rulebase(const RuleBase& rb,
                                   std::span<const double> levels);
inline ValidationReport validate_rulebase(const RuleBase& rb) {
  return validate_rulebase(rb, default_order_levels());
}

ValidationReport validate_observation(const RuleBase& rb,
                                      const Observation& obs);

// The unique rule pair flanking the observation in every dimension; an exact
// match returns that rule on both sides; ties are broken by the smallest
// aggregated reference-point distance.
FlankingPair select_flanking(const RuleBase& rb, const Observation& obs,
                             std::span<const double> levels);
inline FlankingPair select_flanking(const RuleBase& rb,
                                    const Observation& obs) {
  return select_flanking(rb, obs, default_order_levels());
}

// Lower/upper endpoint distances at a level, aggregated over dimensions by
// the square root of the sum of squares.
DistancePair fuzzy_distance(std::span<const FuzzySet> a,
                            std::span<const FuzzySet> b, double alpha,
                            DistanceKind kind);

// Aggregated reference-point distance between the observation and a rule's
// antecedents.
double reference_point_distance(const RuleBase& rb, const Observation& obs,
                                std::size_t rule, RefPointMode mode);

}  // namespace fri
