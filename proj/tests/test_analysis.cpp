#include <doctest.h>

#include "fri/analysis.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace fri;
using fri::testing::fixture_d1;
using fri::testing::fixture_s1;

namespace {

Conclusion family_conclusion(std::vector<AlphaCut> cuts) {
  Conclusion c;
  c.method = MethodId::kKh;
  c.alpha_family = std::move(cuts);
  return c;
}

}  // namespace

TEST_CASE("detect_abnormality") {
  SUBCASE("the D1 family is normal (oracle-confirmed nesting)") {
    const auto f = fixture_d1();
    const auto sweep = fri::testing::kh_sweep(f.rb, f.obs, 0, 1, 101);
    for (std::size_t i = 0; i + 1 < sweep.cuts.size(); ++i) {
      CHECK(sweep.cuts[i + 1].inf >= sweep.cuts[i].inf - 1e-12);
      CHECK(sweep.cuts[i + 1].sup <= sweep.cuts[i].sup + 1e-12);
    }
    const Conclusion c = interpolate_kh(f.rb, f.obs);
    CHECK_FALSE(detect_abnormality(c).abnormal);
  }

  SUBCASE("constructed inversion at 0.5") {
    const Conclusion c = family_conclusion(
        {{0.0, 0.0, 10.0}, {0.5, 7.0, 6.0}, {1.0, 5.0, 5.5}});
    const AbnormalityReport r = detect_abnormality(c);
    CHECK(r.abnormal);
    CHECK(r.violation_kind == ViolationKind::kEndpointInversion);
    CHECK(*r.first_violation_alpha == doctest::Approx(0.5));
    CHECK(r.max_inversion == doctest::Approx(1.0));
  }

  SUBCASE("shapes") {
    Conclusion c;
    c.method = MethodId::kMaci;
    c.shape = make_triangle(24, 25, 26);
    CHECK_FALSE(detect_abnormality(c).abnormal);

    c.shape = make_set({{0, 0}, {1, 0.8}, {2, 0}});
    const AbnormalityReport low = detect_abnormality(c);
    CHECK(low.abnormal);
    CHECK(low.violation_kind == ViolationKind::kNonNormal);

    c.shape = make_set({{0, 0}, {1, 1}, {2, 0.2}, {3, 1}, {4, 0}});
    const AbnormalityReport dip = detect_abnormality(c);
    CHECK(dip.abnormal);
    CHECK(dip.violation_kind == ViolationKind::kNonNestedCuts);
  }

  SUBCASE("non-nested family") {
    const Conclusion c = family_conclusion(
        {{0.0, 2.0, 8.0}, {0.5, 1.0, 7.0}, {1.0, 4.0, 5.0}});
    const AbnormalityReport r = detect_abnormality(c);
    CHECK(r.abnormal);
    CHECK(r.violation_kind == ViolationKind::kNonNestedCuts);
    CHECK(*r.first_violation_alpha == doctest::Approx(0.5));
  }

  SUBCASE("refinement never flips abnormal back to normal") {
    const Conclusion c = family_conclusion(
        {{0.0, 0.0, 10.0}, {0.5, 7.0, 6.0}, {1.0, 5.0, 5.5}});
    for (int dense : {11, 101, 1001, 5001}) {
      InterpolationConfig cfg;
      cfg.dense_levels = dense;
      CHECK(detect_abnormality(c, cfg).abnormal);
    }
  }
}

TEST_CASE("check_linearity") {
  SUBCASE("symmetric fixture is exactly linear") {
    const auto f = fixture_s1();
    const LinearityReport r =
        check_linearity(MethodId::kKh, f.rb, f.obs);
    CHECK(r.piecewise_linear);
    CHECK(r.max_deviation <= 1e-12);
  }
  SUBCASE("D1's upper flank is a hyperbolic arc, reported honestly") {
    // With congruent lower flanks the inf side is linear, but the sup-side
    // distances vary with the level, so the dense family bends away from
    // the two-level interpolation; the peak deviation is known in closed
    // form at alpha = 1/2: 48/8.5 against the chord value 17/3.
    const auto f = fixture_d1();
    const LinearityReport r = check_linearity(MethodId::kKh, f.rb, f.obs);
    CHECK_FALSE(r.piecewise_linear);
    const double expected = 17.0 / 3.0 - 48.0 / 8.5;
    CHECK(r.max_deviation == doctest::Approx(expected).epsilon(1e-6));
  }
  SUBCASE("congruent instances are linear for the family methods") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const auto f = fri::testing::congruent_triangular_instance(seed + 50);
      for (MethodId id :
           {MethodId::kKh, MethodId::kKhStabilized, MethodId::kVkk}) {
        const LinearityReport r = check_linearity(id, f.rb, f.obs);
        CHECK(r.piecewise_linear);
      }
    }
  }
}

TEST_CASE("compare_methods") {
  SUBCASE("S1: ten rows, all normal, all centered at 25") {
    const auto f = fixture_s1();
    const ComparisonMatrix m =
        compare_methods(f.rb, f.obs, kAllMethods);
    REQUIRE(m.rows.size() == 10);
    for (const auto& row : m.rows) {
      CHECK(row.status == "ok");
      REQUIRE(row.abnormality.has_value());
      CHECK_FALSE(row.abnormality->abnormal);
      REQUIRE(row.core.has_value());
      CHECK(0.5 * (row.core->inf + row.core->sup) ==
            doctest::Approx(25.0).epsilon(1e-9));
    }
  }
  SUBCASE("rows equal the standalone runs") {
    const auto f = fixture_d1();
    const ComparisonMatrix m = compare_methods(f.rb, f.obs, kAllMethods);
    for (const auto& row : m.rows) {
      const Conclusion standalone = interpolate(row.method, f.rb, f.obs);
      REQUIRE(row.conclusion.has_value());
      CHECK(fri::testing::cut_deviation(*row.conclusion, standalone, 51) <=
            1e-12);
    }
  }
  SUBCASE("a method error becomes a row status") {
    auto f = fixture_s1();
    f.rb.inputs[0].terms[0] = make_set({{0, 0}, {1, 1}, {1, 0}}, "A1");
    const ComparisonMatrix m = compare_methods(f.rb, f.obs, kAllMethods);
    bool found_error = false;
    for (const auto& row : m.rows)
      if (row.method == MethodId::kCrf)
        found_error = row.status == "error:DegenerateGeometry";
    CHECK(found_error);
  }
  SUBCASE("empty method list yields an empty matrix") {
    const auto f = fixture_s1();
    const ComparisonMatrix m = compare_methods(f.rb, f.obs, {});
    CHECK(m.rows.empty());
  }
}
