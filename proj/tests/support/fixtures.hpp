#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fri/fis_io.hpp"
#include "fri/rulebase.hpp"

namespace fri::testing {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
  }
  int pick(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
};

struct Fixture {
  RuleBase rb;
  Observation obs;
};

inline RuleBase two_rule_base(const FuzzySet& a1, const FuzzySet& a2,
                              const FuzzySet& b1, const FuzzySet& b2,
                              double in_lo, double in_hi, double out_lo,
                              double out_hi) {
  RuleBase rb;
  LinguisticPartition in;
  in.dimension_name = "X1";
  in.range_lo = in_lo;
  in.range_hi = in_hi;
  in.terms = {a1, a2};
  rb.inputs.push_back(in);
  rb.output.dimension_name = "Y";
  rb.output.range_lo = out_lo;
  rb.output.range_hi = out_hi;
  rb.output.terms = {b1, b2};
  rb.rules = {Rule{{0}, 0, 1.0}, Rule{{1}, 1, 1.0}};
  return rb;
}

// S1: congruent triangles, equidistant observation.
inline Fixture fixture_s1() {
  Fixture f;
  f.rb = two_rule_base(make_triangle(0, 1, 2, "A1"), make_triangle(8, 9, 10, "A2"),
                       make_triangle(20, 21, 22, "B1"),
                       make_triangle(28, 29, 30, "B2"), 0, 10, 18, 32);
  f.obs.sets = {make_triangle(4, 5, 6, "A*")};
  return f;
}

// I1: the observation coincides with the first antecedent.
inline Fixture fixture_i1() {
  Fixture f = fixture_s1();
  f.obs.sets = {make_triangle(0, 1, 2, "A*")};
  return f;
}

// D1: asymmetric rules, off-center observation.
inline Fixture fixture_d1() {
  Fixture f;
  f.rb = two_rule_base(make_triangle(0, 1, 2, "A1"), make_triangle(7, 9, 11, "A2"),
                       make_triangle(1, 2, 4, "B1"),
                       make_triangle(8, 10, 11, "B2"), 0, 12, 0, 12);
  f.obs.sets = {make_triangle(3, 4, 5, "A*")};
  return f;
}

// S1-class instance: congruent symmetric shapes, equidistant observation.
// Returns the fixture and the expected conclusion (the midpoint-shifted
// consequent shape).
struct SymmetricInstance {
  Fixture fixture;
  FuzzySet expected;
};

inline SymmetricInstance symmetric_instance(std::uint64_t seed) {
  Rng rng(seed);
  const bool ant_trap = rng.pick(2) == 1;
  const bool con_trap = rng.pick(2) == 1;
  const double fa = rng.uniform(0.5, 4.0);
  const double ca = ant_trap ? rng.uniform(0.5, 4.0) : 0.0;
  const double fb = rng.uniform(0.5, 4.0);
  const double cb = con_trap ? rng.uniform(0.5, 4.0) : 0.0;
  const double da = rng.uniform(ca + 2 * fa + 1.0, ca + 2 * fa + 20.0);
  const double db = rng.uniform(cb + 2 * fb + 1.0, cb + 2 * fb + 20.0);
  const double pa = rng.uniform(ca / 2 + fa + 1.0, ca / 2 + fa + 10.0);
  const double pb = rng.uniform(cb / 2 + fb + 1.0, cb / 2 + fb + 10.0);

  auto ant = [&](double pos, const std::string& label) {
    if (ant_trap)
      return make_trapezoid(pos - ca / 2 - fa, pos - ca / 2, pos + ca / 2,
                            pos + ca / 2 + fa, label);
    return make_triangle(pos - fa, pos, pos + fa, label);
  };
  auto con = [&](double pos, const std::string& label) {
    if (con_trap)
      return make_trapezoid(pos - cb / 2 - fb, pos - cb / 2, pos + cb / 2,
                            pos + cb / 2 + fb, label);
    return make_triangle(pos - fb, pos, pos + fb, label);
  };

  SymmetricInstance out{{two_rule_base(ant(pa, "A1"), ant(pa + 2 * da, "A2"),
                                       con(pb, "B1"), con(pb + 2 * db, "B2"),
                                       0, pa + 2 * da + ca / 2 + fa + 2,
                                       0, pb + 2 * db + cb / 2 + fb + 2),
                         {}},
                        con(pb + db, "B*")};
  out.fixture.obs.sets = {ant(pa + da, "A*")};
  return out;
}

// Single-dimension two-rule triangular instance whose antecedents and
// observation are congruent (translated copies); the consequents are free
// ordered triangles. On this family the per-level endpoint formulas stay
// linear in alpha.
inline Fixture congruent_triangular_instance(std::uint64_t seed) {
  Rng rng(seed);
  const double f = rng.uniform(0.5, 4.0);
  const double p1 = rng.uniform(f + 1.0, f + 8.0);
  const double gap = rng.uniform(2.0 * f + 1.0, 2.0 * f + 25.0);
  const double p2 = p1 + gap;
  const double x = rng.uniform(p1 + 0.05 * gap, p2 - 0.05 * gap);

  const double b1l = rng.uniform(0.3, 5.0), b1r = rng.uniform(0.3, 5.0);
  const double b2l = rng.uniform(0.3, 5.0), b2r = rng.uniform(0.3, 5.0);
  const double q1 = rng.uniform(b1l + 1.0, b1l + 8.0);
  const double q2 = q1 + std::max(b1r + b2l, b1l + b2r) +
                    rng.uniform(1.0, 20.0);

  Fixture fx;
  fx.rb = two_rule_base(
      make_triangle(p1 - f, p1, p1 + f, "A1"),
      make_triangle(p2 - f, p2, p2 + f, "A2"),
      make_triangle(q1 - b1l, q1, q1 + b1r, "B1"),
      make_triangle(q2 - b2l, q2, q2 + b2r, "B2"),
      0, p2 + f + 2, 0, q2 + b2r + 2);
  fx.obs.sets = {make_triangle(x - f, x, x + f, "A*")};
  return fx;
}

// Random CNF piecewise-linear set with strictly monotone flanks.
inline FuzzySet random_cnf_set(Rng& rng) {
  const int kind = rng.pick(4);
  const double c = rng.uniform(-20.0, 20.0);
  if (kind == 0) return make_singleton(c);
  if (kind == 1)
    return make_triangle(c - rng.uniform(0.2, 5.0), c,
                         c + rng.uniform(0.2, 5.0));
  if (kind == 2) {
    const double half = rng.uniform(0.2, 3.0);
    return make_trapezoid(c - half - rng.uniform(0.2, 5.0), c - half, c + half,
                          c + half + rng.uniform(0.2, 5.0));
  }
  // Piecewise-linear with one interior level per flank.
  const double half = rng.uniform(0.2, 2.0);
  const double l1 = c - half - rng.uniform(0.2, 3.0);
  const double l0 = l1 - rng.uniform(0.2, 3.0);
  const double r1 = c + half + rng.uniform(0.2, 3.0);
  const double r0 = r1 + rng.uniform(0.2, 3.0);
  const double ml = rng.uniform(0.2, 0.8);
  const double mr = rng.uniform(0.2, 0.8);
  return make_set({{l0, 0.0},
                   {l1, ml},
                   {c - half, 1.0},
                   {c + half, 1.0},
                   {r1, mr},
                   {r0, 0.0}});
}

// Random well-formed document for round-trip checks.
inline RuleBaseDocument random_document(std::uint64_t seed) {
  Rng rng(seed);
  RuleBaseDocument doc;
  doc.name = "doc" + std::to_string(seed);
  if (rng.pick(2)) doc.default_method = "KH";

  const int dims = 1 + rng.pick(3);
  const int terms = 2 + rng.pick(3);
  auto partition = [&](const std::string& name, const std::string& stem) {
    LinguisticPartition part;
    part.dimension_name = name;
    const double f = rng.uniform(0.25, 3.0);
    const double core = rng.pick(2) ? rng.uniform(0.25, 3.0) : 0.0;
    const double w = core + 2 * f;
    const double gap = w + rng.uniform(0.5, 10.0);
    const double start = w / 2 + rng.uniform(0.5, 5.0);
    part.range_lo = 0.0;
    part.range_hi = start + (terms - 1) * gap + w / 2 + 1.0;
    for (int j = 0; j < terms; ++j) {
      const double pos = start + j * gap;
      const std::string label = stem + std::to_string(j + 1);
      const int kind = rng.pick(4);
      if (kind == 0) part.terms.push_back(make_singleton(pos, label));
      else if (kind == 1 || core == 0.0)
        part.terms.push_back(make_triangle(pos - f, pos, pos + f, label));
      else if (kind == 2)
        part.terms.push_back(make_trapezoid(pos - core / 2 - f, pos - core / 2,
                                            pos + core / 2, pos + core / 2 + f,
                                            label));
      else
        part.terms.push_back(make_set({{pos - f, 0.0},
                                       {pos - f / 2, rng.uniform(0.2, 0.9)},
                                       {pos, 1.0},
                                       {pos + f, 0.0}},
                                      label));
    }
    return part;
  };
  for (int d = 0; d < dims; ++d)
    doc.rulebase.inputs.push_back(partition("X" + std::to_string(d + 1), "A"));
  doc.rulebase.output = partition("Y", "B");
  for (int j = 0; j < terms; ++j) {
    Rule rule;
    for (int d = 0; d < dims; ++d)
      rule.antecedents.push_back(static_cast<std::size_t>(j));
    rule.consequent = static_cast<std::size_t>(j);
    rule.weight = rng.pick(2) ? 1.0 : rng.uniform(0.1, 1.0);
    doc.rulebase.rules.push_back(rule);
  }
  return doc;
}

}  // namespace fri::testing
