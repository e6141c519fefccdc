#include "fri/rulebase.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace fri {

namespace {

const char* issue_kind_name(ValidationIssue::Kind k) {
  using K = ValidationIssue::Kind;
  switch (k) {
    case K::NonCnfSet: return "non-cnf set";
    case K::OrderingViolation: return "ordering violation";
    case K::DuplicateAntecedents: return "duplicate antecedents";
    case K::BadIndex: return "bad index";
    case K::BadRange: return "bad range";
    case K::SupportOutsideRange: return "support outside range";
    case K::TooFewRules: return "too few rules";
  }
  return "issue";
}

void check_partition(const LinguisticPartition& part, const std::string& name,
                     std::span<const double> levels, ValidationReport& report) {
  using K = ValidationIssue::Kind;
  if (!(part.range_lo < part.range_hi)) {
    report.issues.push_back({K::BadRange, name, "range is empty"});
    return;
  }
  const double slack = 1e-9 * part.range_width();
  for (std::size_t i = 0; i < part.terms.size(); ++i) {
    const FuzzySet& t = part.terms[i];
    const std::string where = name + "/" + (t.label().empty()
                                                ? "term " + std::to_string(i + 1)
                                                : t.label());
    if (!is_cnf(t).ok()) {
      report.issues.push_back({K::NonCnfSet, where, "not convex-normal"});
      continue;
    }
    if (t.support_lo() < part.range_lo - slack ||
        t.support_hi() > part.range_hi + slack)
      report.issues.push_back({K::SupportOutsideRange, where, ""});
  }
  for (std::size_t i = 0; i + 1 < part.terms.size(); ++i) {
    if (!is_cnf(part.terms[i]).ok() || !is_cnf(part.terms[i + 1]).ok()) continue;
    if (!less_than(part.terms[i], part.terms[i + 1], levels))
      report.issues.push_back(
          {K::OrderingViolation, name,
           "term " + std::to_string(i + 1) + " not below term " +
               std::to_string(i + 2)});
  }
}

}  // namespace

std::string ValidationReport::to_string() const {
  if (issues.empty()) return "ok";
  std::ostringstream os;
  for (const auto& issue : issues) {
    os << issue_kind_name(issue.kind) << " at " << issue.where;
    if (!issue.detail.empty()) os << ": " << issue.detail;
    os << '\n';
  }
  return os.str();
}

ValidationReport validate_rulebase(const RuleBase& rb,
                                   std::span<const double> levels) {
  using K = ValidationIssue::Kind;
  ValidationReport report;
  for (std::size_t d = 0; d < rb.inputs.size(); ++d)
    check_partition(rb.inputs[d], "input " + std::to_string(d + 1), levels,
                    report);
  check_partition(rb.output, "output", levels, report);

  if (rb.rules.size() < 2)
    report.issues.push_back({K::TooFewRules, "rules", "need at least 2"});

  std::map<std::vector<std::size_t>, std::size_t> seen;
  for (std::size_t r = 0; r < rb.rules.size(); ++r) {
    const Rule& rule = rb.rules[r];
    const std::string where = "rule " + std::to_string(r + 1);
    if (rule.antecedents.size() != rb.inputs.size()) {
      report.issues.push_back({K::BadIndex, where, "antecedent arity"});
      continue;
    }
    bool ok = true;
    for (std::size_t d = 0; d < rule.antecedents.size(); ++d) {
      if (rule.antecedents[d] >= rb.inputs[d].terms.size()) {
        report.issues.push_back({K::BadIndex, where,
                                 "antecedent " + std::to_string(d + 1)});
        ok = false;
      }
    }
    if (rule.consequent >= rb.output.terms.size()) {
      report.issues.push_back({K::BadIndex, where, "consequent"});
      ok = false;
    }
    if (!ok) continue;
    auto [it, inserted] = seen.emplace(rule.antecedents, r);
    if (!inserted)
      report.issues.push_back(
          {K::DuplicateAntecedents, where,
           "same antecedents as rule " + std::to_string(it->second + 1)});
  }
  return report;
}

ValidationReport validate_observation(const RuleBase& rb,
                                      const Observation& obs) {
  using K = ValidationIssue::Kind;
  ValidationReport report;
  if (obs.sets.size() != rb.inputs.size()) {
    report.issues.push_back({K::BadIndex, "observation",
                             "expected " + std::to_string(rb.inputs.size()) +
                                 " dimensions, got " +
                                 std::to_string(obs.sets.size())});
    return report;
  }
  for (std::size_t d = 0; d < obs.sets.size(); ++d) {
    const FuzzySet& s = obs.sets[d];
    const auto& part = rb.inputs[d];
    const std::string where = "observation dim " + std::to_string(d + 1);
    if (!is_cnf(s).ok()) {
      report.issues.push_back({K::NonCnfSet, where, ""});
      continue;
    }
    const double slack = 1e-9 * part.range_width();
    if (s.support_lo() < part.range_lo - slack ||
        s.support_hi() > part.range_hi + slack)
      report.issues.push_back({K::SupportOutsideRange, where, ""});
  }
  return report;
}

DistancePair fuzzy_distance(std::span<const FuzzySet> a,
                            std::span<const FuzzySet> b, double alpha,
                            DistanceKind kind) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  double lo = 0.0, hi = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    switch (kind) {
      case DistanceKind::kEuclideanEndpoints: {
        const AlphaCut ca = alpha_cut(a[d], alpha);
        const AlphaCut cb = alpha_cut(b[d], alpha);
        lo += (ca.inf - cb.inf) * (ca.inf - cb.inf);
        hi += (ca.sup - cb.sup) * (ca.sup - cb.sup);
        break;
      }
      case DistanceKind::kCenter: {
        const AlphaCut ca = alpha_cut(a[d], alpha);
        const AlphaCut cb = alpha_cut(b[d], alpha);
        const double ctr =
            0.5 * (ca.inf + ca.sup) - 0.5 * (cb.inf + cb.sup);
        lo += ctr * ctr;
        hi += ctr * ctr;
        break;
      }
      case DistanceKind::kReferencePoint: {
        const double ra = reference_point(a[d], RefPointMode::kCoreMid);
        const double rb = reference_point(b[d], RefPointMode::kCoreMid);
        lo += (ra - rb) * (ra - rb);
        hi += (ra - rb) * (ra - rb);
        break;
      }
    }
  }
  return {std::sqrt(lo), std::sqrt(hi)};
}

double reference_point_distance(const RuleBase& rb, const Observation& obs,
                                std::size_t rule, RefPointMode mode) {
  double acc = 0.0;
  for (std::size_t d = 0; d < rb.inputs.size(); ++d) {
    const double ro = reference_point(obs.sets[d], mode);
    const double ra = reference_point(rb.antecedent(rule, d), mode);
    acc += (ro - ra) * (ro - ra);
  }
  return std::sqrt(acc);
}

FlankingPair select_flanking(const RuleBase& rb, const Observation& obs,
                             std::span<const double> levels) {
  const ValidationReport obs_report = validate_observation(rb, obs);
  if (!obs_report.ok())
    throw Error(ErrorCode::DimensionMismatch, obs_report.to_string());

  // Classify each rule against the observation, dimension by dimension.
  constexpr int kBelow = 0, kEqual = 1, kAbove = 2, kIncomparable = 3;
  std::vector<std::size_t> lower_candidates, upper_candidates;
  std::size_t exact = rb.rules.size();
  for (std::size_t r = 0; r < rb.rules.size(); ++r) {
    bool all_leq = true, all_geq = true;
    for (std::size_t d = 0; d < rb.inputs.size(); ++d) {
      const FuzzySet& ant = rb.antecedent(r, d);
      const FuzzySet& o = obs.sets[d];
      int rel;
      if (sets_equal(ant, o)) rel = kEqual;
      else if (less_than(ant, o, levels)) rel = kBelow;
      else if (less_than(o, ant, levels)) rel = kAbove;
      else rel = kIncomparable;
      if (rel == kAbove || rel == kIncomparable) all_leq = false;
      if (rel == kBelow || rel == kIncomparable) all_geq = false;
    }
    if (all_leq && all_geq) { exact = r; break; }
    if (all_leq) lower_candidates.push_back(r);
    if (all_geq) upper_candidates.push_back(r);
  }
  if (exact < rb.rules.size()) return {exact, exact};
  if (lower_candidates.empty() || upper_candidates.empty())
    throw Error(ErrorCode::NoFlankingRules,
                "observation is not flanked in every dimension");

  auto closest = [&](const std::vector<std::size_t>& candidates) {
    std::size_t best = candidates.front();
    double best_d = reference_point_distance(rb, obs, best,
                                             RefPointMode::kCoreMid);
    for (std::size_t r : candidates) {
      const double d = reference_point_distance(rb, obs, r,
                                                RefPointMode::kCoreMid);
      if (d < best_d) { best = r; best_d = d; }
    }
    return best;
  };
  return {closest(lower_candidates), closest(upper_candidates)};
}

}  // namespace fri
