#include <doctest.h>

#include "fri/fis_io.hpp"
#include "support/fixtures.hpp"

using namespace fri;

namespace {

const char* kSampleFis = R"(# extended rule-base sample
[System]
Name='sample'
DefaultMethod='KH'
NumInputs=1
NumOutputs=1
NumRules=2

[Input1]
Name='X1'
Range=[0 40]
NumMFs=2
MF1='A_{1;1}':'trimf',[10 20 30]|[0 1 0]
MF2='A_{2;1}':'trapmf',[4.5 5 5.5 6]|[0 1 1 0]

[Output1]
Name='Y'
Range=[0 1]
NumMFs=2
MF1='B_{1;1}':'singlmf',[0.46]|[1]
MF2='B_{2;1}':'singlmf',[0.9]|[1]

[Rules]
1, 1 (1) : 1
2, 2 (1) : 1
)";

bool structurally_equal(const RuleBaseDocument& a, const RuleBaseDocument& b) {
  if (a.name != b.name || a.default_method != b.default_method) return false;
  auto part_eq = [](const LinguisticPartition& x, const LinguisticPartition& y) {
    if (x.dimension_name != y.dimension_name) return false;
    if (x.range_lo != y.range_lo || x.range_hi != y.range_hi) return false;
    if (x.terms.size() != y.terms.size()) return false;
    for (std::size_t i = 0; i < x.terms.size(); ++i) {
      if (x.terms[i].label() != y.terms[i].label()) return false;
      const auto& p = x.terms[i].points();
      const auto& q = y.terms[i].points();
      if (p.size() != q.size()) return false;
      for (std::size_t j = 0; j < p.size(); ++j)
        if (p[j].x != q[j].x || p[j].mu != q[j].mu) return false;
    }
    return true;
  };
  if (a.rulebase.inputs.size() != b.rulebase.inputs.size()) return false;
  for (std::size_t d = 0; d < a.rulebase.inputs.size(); ++d)
    if (!part_eq(a.rulebase.inputs[d], b.rulebase.inputs[d])) return false;
  if (!part_eq(a.rulebase.output, b.rulebase.output)) return false;
  if (a.rulebase.rules.size() != b.rulebase.rules.size()) return false;
  for (std::size_t r = 0; r < a.rulebase.rules.size(); ++r) {
    const Rule& x = a.rulebase.rules[r];
    const Rule& y = b.rulebase.rules[r];
    if (x.antecedents != y.antecedents || x.consequent != y.consequent ||
        x.weight != y.weight)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("membership-function lines parse to exact shapes") {
  const RuleBaseDocument doc = parse_fis(kSampleFis);
  CHECK(doc.name == "sample");
  CHECK(doc.default_method == "KH");

  const FuzzySet& tri = doc.rulebase.inputs[0].terms[0];
  CHECK(tri.label() == "A_{1;1}");
  REQUIRE(tri.size() == 3);
  CHECK(tri.points()[0].x == 10.0);
  CHECK(tri.points()[1].x == 20.0);
  CHECK(tri.points()[1].mu == 1.0);
  CHECK(tri.points()[2].x == 30.0);

  const FuzzySet& trap = doc.rulebase.inputs[0].terms[1];
  REQUIRE(trap.size() == 4);
  CHECK(trap.points()[0].x == 4.5);
  CHECK(trap.points()[1].x == 5.0);
  CHECK(trap.points()[2].x == 5.5);
  CHECK(trap.points()[3].x == 6.0);

  const FuzzySet& single = doc.rulebase.output.terms[0];
  CHECK(single.is_singleton());
  CHECK(single.points()[0].x == 0.46);
}

TEST_CASE("parse errors carry their code") {
  auto code_of = [](const std::string& text) {
    try {
      parse_fis(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;  // not reached on the error inputs below
  };

  std::string bad = kSampleFis;
  const auto pos = bad.find("MF2='A_{2;1}':'trapmf',[4.5 5 5.5 6]|[0 1 1 0]");
  REQUIRE(pos != std::string::npos);

  SUBCASE("paramsy length mismatch") {
    std::string t = bad;
    t.replace(pos, 46, "MF2='A_{2;1}':'trapmf',[1 2 3]|[0 1 1 0]");
    CHECK(code_of(t) == ErrorCode::ParamsyLengthMismatch);
  }
  SUBCASE("paramsy shape mismatch") {
    std::string t = bad;
    t.replace(pos, 46, "MF2='A_{2;1}':'trapmf',[1 2 3 4]|[0 1 0 0]");
    CHECK(code_of(t) == ErrorCode::ParamsyShapeMismatch);
  }
  SUBCASE("unknown shape code") {
    std::string t = bad;
    t.replace(pos, 46, "MF2='A_{2;1}':'gaussmf',[1 2]|[0 1]");
    CHECK(code_of(t) == ErrorCode::UnknownShapeCode);
  }
  SUBCASE("missing section") {
    CHECK(code_of("[System]\nName='x'\n") == ErrorCode::MissingSection);
  }
  SUBCASE("don't-care rule index is rejected") {
    std::string t = bad;
    const auto rp = t.find("1, 1 (1) : 1");
    t.replace(rp, 12, "0, 1 (1) : 1");
    CHECK(code_of(t) == ErrorCode::SyntaxError);
  }
  SUBCASE("syntax error carries line and column") {
    try {
      parse_fis("[System]\nName='x\n");
      CHECK(false);
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("serialize/parse round trips") {
  const RuleBaseDocument doc = parse_fis(kSampleFis);
  const std::string once = serialize_fis(doc);
  const RuleBaseDocument doc2 = parse_fis(once);
  CHECK(structurally_equal(doc, doc2));
  CHECK(serialize_fis(doc2) == once);  // fixpoint

  SUBCASE("generated documents") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const RuleBaseDocument d = fri::testing::random_document(seed);
      const std::string text = serialize_fis(d);
      const RuleBaseDocument back = parse_fis(text);
      CHECK(structurally_equal(d, back));
      CHECK(serialize_fis(back) == text);
    }
  }
}

TEST_CASE("observation files") {
  const Observation obs = parse_observation(
      "OBS1='A*':'trapmf',[4.5 5 5.5 6]|[0 1 1 0]\n");
  REQUIRE(obs.sets.size() == 1);
  CHECK(obs.sets[0].points()[0].x == 4.5);

  const Observation crisp = parse_observation(
      "OBS1='o1':'singlmf',[1]|[1]\n"
      "OBS2='o2':'singlmf',[2]|[1]\n"
      "OBS3='o3':'singlmf',[3]|[1]\n");
  CHECK(crisp.sets.size() == 3);
  CHECK(crisp.sets[2].is_singleton());

  bool gap = false;
  try {
    parse_observation(
        "OBS1='o1':'singlmf',[1]|[1]\nOBS3='o3':'singlmf',[3]|[1]\n");
  } catch (const Error& e) {
    gap = e.code() == ErrorCode::DimensionGap;
  }
  CHECK(gap);

  const std::string text = serialize_observation(crisp);
  const Observation back = parse_observation(text);
  CHECK(back.sets.size() == 3);
  CHECK(serialize_observation(back) == text);
}

TEST_CASE("numeral fidelity under round trip") {
  fri::testing::Rng rng(911);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(-1e6, 1e6) * std::pow(10.0, rng.pick(7) - 3);
    const std::string s = format_double(x);
    const RuleBaseDocument doc = parse_fis(
        "[System]\nName='n'\n[Input1]\nName='X'\nRange=[" + s + " " +
        format_double(x + 1) +
        "]\nNumMFs=1\nMF1='a':'singlmf',[" + s +
        "]|[1]\n[Output1]\nName='Y'\nRange=[0 1]\nNumMFs=1\n"
        "MF1='b':'singlmf',[0.5]|[1]\n[Rules]\n1, 1 (1) : 1\n");
    CHECK(doc.rulebase.inputs[0].terms[0].points()[0].x == x);  // zero drift
  }
}

TEST_CASE("csv rows") {
  CHECK(csv_header() == "example,method,status,abnormal,linear,lf,lc,rc,rf");
  CsvRow row;
  row.example = "1";
  row.method = "KH";
  row.status = "ok";
  row.abnormal = false;
  row.linear = true;
  row.lf = 24.0;
  row.lc = 25.0;
  row.rc = 25.0;
  row.rf = 26.0;
  CHECK(csv_row(row) == "1,KH,ok,false,true,24,25,25,26");
  CsvRow err;
  err.example = "2";
  err.method = "VKK";
  err.status = "error:NoFlankingRules";
  CHECK(csv_row(err) == "2,VKK,error:NoFlankingRules,,,,,,");
}
