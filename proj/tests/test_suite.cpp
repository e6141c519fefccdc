#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fri/suite.hpp"
#include "support/fixtures.hpp"

using namespace fri;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("build_example matches the Table-1 skeletons") {
  SUBCASE("example 1: one dimension, triangular, two terms") {
    const BenchInstance inst = build_example(1, 42);
    CHECK(inst.rb.dimensions() == 1);
    CHECK(inst.rb.inputs[0].terms.size() == 2);
    CHECK(inst.rb.output.terms.size() == 2);
    for (const auto& t : inst.rb.inputs[0].terms) CHECK(t.size() == 3);
    for (const auto& t : inst.rb.output.terms) CHECK(t.size() == 3);
    CHECK(inst.obs.sets[0].size() == 3);
  }
  SUBCASE("example 4: trapezoidal rules, singleton observation, four terms") {
    const BenchInstance inst = build_example(4, 42);
    CHECK(inst.rb.inputs[0].terms.size() == 4);
    for (const auto& t : inst.rb.inputs[0].terms) CHECK(t.size() == 4);
    for (const auto& t : inst.rb.output.terms) CHECK(t.size() == 4);
    CHECK(inst.obs.sets[0].is_singleton());
  }
  SUBCASE("example 6: three dimensions, trapezoidal consequents") {
    const BenchInstance inst = build_example(6, 42);
    CHECK(inst.rb.dimensions() == 3);
    for (const auto& part : inst.rb.inputs) {
      CHECK(part.terms.size() == 3);
      for (const auto& t : part.terms) CHECK(t.size() == 3);
    }
    for (const auto& t : inst.rb.output.terms) CHECK(t.size() == 4);
  }
  SUBCASE("example 7: singleton observations per dimension") {
    const BenchInstance inst = build_example(7, 42);
    for (const auto& s : inst.obs.sets) CHECK(s.is_singleton());
  }
  SUBCASE("instances validate and are deterministic") {
    for (int id = 1; id <= 7; ++id) {
      const BenchInstance a = build_example(id, 42);
      const BenchInstance b = build_example(id, 42);
      CHECK(validate_rulebase(a.rb).ok());
      CHECK(validate_observation(a.rb, a.obs).ok());
      REQUIRE_NOTHROW(select_flanking(a.rb, a.obs));
      for (std::size_t d = 0; d < a.rb.dimensions(); ++d) {
        const auto& pa = a.rb.inputs[d].terms;
        const auto& pb = b.rb.inputs[d].terms;
        REQUIRE(pa.size() == pb.size());
        for (std::size_t j = 0; j < pa.size(); ++j)
          CHECK(sets_equal(pa[j], pb[j]));
      }
      const BenchInstance c = build_example(id, 43);
      CHECK_FALSE(sets_equal(a.obs.sets[0], c.obs.sets[0]));
    }
  }
}

TEST_CASE("search_witness is reproducible") {
  const SearchBudget budget{2000, 42};
  const SearchResult a =
      search_witness(6, MethodId::kKh, SearchTarget::kAbnormal, budget);
  const SearchResult b =
      search_witness(6, MethodId::kKh, SearchTarget::kAbnormal, budget);
  REQUIRE(a.witness.has_value());
  REQUIRE(b.witness.has_value());
  CHECK(a.log.iteration == b.log.iteration);
  CHECK(a.log.samples == b.log.samples);
  for (std::size_t d = 0; d < a.witness->rb.dimensions(); ++d)
    CHECK(sets_equal(a.witness->obs.sets[d], b.witness->obs.sets[d]));
}

TEST_CASE("rendered figures") {
  fri::testing::Fixture f = fri::testing::fixture_s1();
  BenchInstance inst;
  inst.example_id = 1;
  inst.rb = f.rb;
  inst.obs = f.obs;
  std::vector<std::pair<MethodId, Conclusion>> cs;
  cs.emplace_back(MethodId::kKh, interpolate_kh(f.rb, f.obs));

  SUBCASE("five set polylines plus one conclusion polyline") {
    const std::string svg = render_svg_text(inst, cs);
    CHECK(count_occurrences(svg, "<polyline") == 6);
    CHECK(svg.find("KH") != std::string::npos);
  }
  SUBCASE("byte determinism") {
    CHECK(render_svg_text(inst, cs) == render_svg_text(inst, cs));
  }
  SUBCASE("an abnormal family gets a marker and annotation") {
    Conclusion bad;
    bad.method = MethodId::kVkk;
    bad.alpha_family = std::vector<AlphaCut>{
        {0.0, 20.0, 30.0}, {0.5, 27.0, 26.0}, {1.0, 25.0, 25.0}};
    std::vector<std::pair<MethodId, Conclusion>> abnormal;
    abnormal.emplace_back(MethodId::kVkk, bad);
    const std::string svg = render_svg_text(inst, abnormal);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("endpoint-inversion at alpha=0.5") != std::string::npos);
  }
}

TEST_CASE("suite CSV schema") {
  SuiteReport report;
  SuiteCell cell;
  cell.status = "ok";
  cell.abnormal = false;
  cell.linear = true;
  cell.support = AlphaCut{0.0, 24.0, 26.0};
  cell.core = AlphaCut{1.0, 25.0, 25.0};
  report.cells[{1, MethodId::kKh}] = cell;
  const std::string csv = report.to_csv();
  CHECK(csv.find("example,method,status,abnormal,linear,lf,lc,rc,rf\n") == 0);
  CHECK(csv.find("1,KH,ok,false,true,24,25,25,26") != std::string::npos);
}
