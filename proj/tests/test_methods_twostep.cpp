#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fri/analysis.hpp"
#include "fri/methods.hpp"
#include "fri/suite.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace fri;
using fri::testing::deviation_from_set;
using fri::testing::fixture_d1;
using fri::testing::fixture_i1;
using fri::testing::fixture_s1;

TEST_CASE("GM") {
  SUBCASE("fixtures") {
    const auto i1 = fixture_i1();
    CHECK(deviation_from_set(interpolate_gm(i1.rb, i1.obs),
                             make_triangle(20, 21, 22)) <= 1e-12);
    const auto s1 = fixture_s1();
    CHECK(deviation_from_set(interpolate_gm(s1.rb, s1.obs),
                             make_triangle(24, 25, 26)) <= 1e-9);
  }
  SUBCASE("D1: the reference point solves the fundamental equation") {
    const auto f = fixture_d1();
    const Conclusion c = interpolate_gm(f.rb, f.obs);
    REQUIRE(c.shape.has_value());
    CHECK(is_cnf(*c.shape).ok());
    // lambda = (4-1)/(9-1); RB* = 2 + lambda*8 = 5; the core sits there.
    const AlphaCut core = alpha_cut(*c.shape, 1.0);
    CHECK(core.inf == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(core.sup == doctest::Approx(5.0).epsilon(1e-9));
    REQUIRE(c.weights.lambda_core.has_value());
    CHECK(*c.weights.lambda_core == doctest::Approx(0.375).epsilon(1e-12));
  }
  SUBCASE("stays convex-normal across sampled instances") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
      const BenchInstance inst =
          sample_example(1 + static_cast<int>(seed % 7), 911, seed);
      const Conclusion c = interpolate_gm(inst.rb, inst.obs);
      REQUIRE(c.shape.has_value());
      CHECK(is_cnf(*c.shape).ok());
    }
  }
}

TEST_CASE("FRIPOC") {
  SUBCASE("fixtures") {
    const auto i1 = fixture_i1();
    CHECK(deviation_from_set(interpolate_fripoc(i1.rb, i1.obs),
                             make_triangle(20, 21, 22)) <= 1e-12);
    const auto s1 = fixture_s1();
    CHECK(deviation_from_set(interpolate_fripoc(s1.rb, s1.obs),
                             make_triangle(24, 25, 26)) <= 1e-9);
  }
  SUBCASE("identical antecedent shapes: rule-weighted consequent blend") {
    // Both rules share the antecedent shape (translated); the observation is
    // the same shape between them, so the single-rule correction vanishes
    // and the conclusion is the rule-weighted polar blend of the shifted
    // consequents.
    RuleBase rb = fri::testing::two_rule_base(
        make_triangle(1, 2, 3, "A1"), make_triangle(9, 10, 11, "A2"),
        make_triangle(19, 20, 21, "B1"), make_trapezoid(30, 31, 33, 34, "B2"),
        0, 14, 15, 40);
    Observation obs;
    obs.sets = {make_triangle(3, 4, 5, "A*")};  // RP gaps 2 and 6

    const Conclusion c = interpolate_fripoc(rb, obs);
    REQUIRE(c.shape.has_value());

    const double s1 = 1.0 / 4.0, s2 = 1.0 / 36.0;  // inverse squared gaps
    REQUIRE(c.weights.rule_weights.size() == 2);
    CHECK(c.weights.rule_weights[0] == doctest::Approx(s1));
    CHECK(c.weights.rule_weights[1] == doctest::Approx(s2));
    const double rp_b = (s1 * 20.0 + s2 * 32.0) / (s1 + s2);

    // Polar-space oracle at 181 angles: blend the shifted consequents'
    // polar distances with the rule weights.
    const double aspect = 25.0;  // output range width
    const FuzzySet b1 = make_triangle(19, 20, 21).translated(rp_b - 20.0);
    const FuzzySet b2 = make_trapezoid(30, 31, 33, 34).translated(rp_b - 32.0);
    double worst = 0.0;
    for (int i = 0; i < 181; ++i) {
      const double theta = std::numbers::pi * i / 180.0;
      const double expected =
          (s1 * polar_cut_from(b1, theta, aspect, rp_b).rho +
           s2 * polar_cut_from(b2, theta, aspect, rp_b).rho) /
          (s1 + s2);
      const double got = polar_cut_from(*c.shape, theta, aspect, rp_b).rho;
      worst = std::max(worst, std::abs(expected - got));
    }
    CHECK(worst <= 1e-6);  // reconstruction is sampled between corners
  }
  SUBCASE("zero-distance branch snaps to the coincident term") {
    // Three terms; the observation is flanked by the outer pair while its
    // reference point lands exactly on the middle term's, which therefore
    // dominates both FEAT-p stages.
    RuleBase rb;
    LinguisticPartition in;
    in.dimension_name = "X1";
    in.range_lo = 0;
    in.range_hi = 40;
    in.terms = {make_triangle(2, 4, 6, "A1"), make_triangle(14, 16, 18, "A2"),
                make_triangle(26, 28, 30, "A3")};
    rb.inputs.push_back(in);
    rb.output.dimension_name = "Y";
    rb.output.range_lo = 0;
    rb.output.range_hi = 40;
    rb.output.terms = {make_triangle(3, 5, 7, "B1"),
                       make_triangle(15, 17, 19, "B2"),
                       make_triangle(27, 29, 31, "B3")};
    rb.rules = {Rule{{0}, 0, 1.0}, Rule{{1}, 1, 1.0}, Rule{{2}, 2, 1.0}};
    Observation obs;
    obs.sets = {make_triangle(15, 16, 17, "A*")};

    const FlankingPair pair = select_flanking(rb, obs);
    CHECK(pair.lower == 0);
    CHECK(pair.upper == 2);
    const Conclusion c = interpolate_fripoc(rb, obs);
    REQUIRE(c.weights.rule_weights.size() == 3);
    CHECK(c.weights.rule_weights[1] == doctest::Approx(1.0));
    CHECK(c.weights.rule_weights[0] == doctest::Approx(0.0));
  }
}

TEST_CASE("LESFRI") {
  SUBCASE("fixtures") {
    const auto i1 = fixture_i1();
    CHECK(deviation_from_set(interpolate_lesfri(i1.rb, i1.obs),
                             make_triangle(20, 21, 22)) <= 1e-12);
    const auto s1 = fixture_s1();
    CHECK(deviation_from_set(interpolate_lesfri(s1.rb, s1.obs),
                             make_triangle(24, 25, 26)) <= 1e-9);
  }
  SUBCASE("weighted least squares reduces to the weighted mean") {
    const std::vector<double> values{1.0, 4.0, 10.0};
    const std::vector<double> weights{2.0, 1.0, 0.25};
    const double q = fri::testing::weighted_ls(values, weights);
    // The normal-equation minimizer of sum w (x - q)^2.
    double best = q;
    double best_cost = 1e300;
    for (double cand = 0.0; cand <= 12.0; cand += 1e-4) {
      double cost = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i)
        cost += weights[i] * (values[i] - cand) * (values[i] - cand);
      if (cost < best_cost) {
        best_cost = cost;
        best = cand;
      }
    }
    CHECK(q == doctest::Approx(best).epsilon(1e-3));
  }
  SUBCASE("identical-shape partition reproduces the shape at a term's point") {
    // Three congruent terms; the observation sits exactly on the middle
    // term's reference point, so the zero-distance branch returns that
    // shape and the conclusion matches the corresponding consequent.
    RuleBase rb;
    LinguisticPartition in;
    in.dimension_name = "X1";
    in.range_lo = 0;
    in.range_hi = 40;
    in.terms = {make_triangle(2, 4, 6, "A1"), make_triangle(14, 16, 18, "A2"),
                make_triangle(26, 28, 30, "A3")};
    rb.inputs.push_back(in);
    rb.output.dimension_name = "Y";
    rb.output.range_lo = 0;
    rb.output.range_hi = 40;
    rb.output.terms = {make_triangle(3, 5, 7, "B1"),
                       make_triangle(15, 17, 19, "B2"),
                       make_triangle(27, 29, 31, "B3")};
    rb.rules = {Rule{{0}, 0, 1.0}, Rule{{1}, 1, 1.0}, Rule{{2}, 2, 1.0}};
    Observation obs;
    obs.sets = {make_triangle(15, 16, 17, "A*")};  // RP on A2's, but narrower

    const Conclusion c = interpolate_lesfri(rb, obs);
    REQUIRE(c.shape.has_value());
    // FEAT-LS snaps the antecedent to A2's shape; SURE-LS then transfers the
    // observation-vs-A2 flank offsets (obs is 1 narrower per side) onto B2.
    CHECK(deviation_from_set(c, make_triangle(16, 17, 18)) <= 1e-9);
  }
  SUBCASE("abnormal witnesses emit alpha families") {
    const SearchBudget budget{20000, 4242};
    const SearchResult sr =
        search_witness(6, MethodId::kLesfri, SearchTarget::kAbnormal, budget);
    REQUIRE(sr.witness.has_value());
    InterpolationConfig cfg;
    for (int i = 0; i < 101; ++i) cfg.alpha_levels.push_back(i / 100.0);
    const Conclusion c =
        interpolate_lesfri(sr.witness->rb, sr.witness->obs, cfg);
    CHECK(detect_abnormality(c, cfg).abnormal);
    // Inverted endpoint geometry cannot be a breakpoint shape.
    CHECK(c.alpha_family.has_value());
  }
}

TEST_CASE("compatibility: every method reproduces every rule it is fed") {
  for (int ex = 1; ex <= 7; ++ex) {
    const BenchInstance inst = build_example(ex, 42);
    for (std::size_t r = 0; r < inst.rb.rules.size(); ++r) {
      Observation obs;
      for (std::size_t d = 0; d < inst.rb.dimensions(); ++d)
        obs.sets.push_back(inst.rb.antecedent(r, d));
      for (MethodId id : kAllMethods) {
        const Conclusion c = interpolate(id, inst.rb, obs);
        CHECK(deviation_from_set(c, inst.rb.consequent(r)) <= 1e-9);
      }
    }
  }
}
