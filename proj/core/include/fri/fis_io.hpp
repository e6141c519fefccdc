#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fri/rulebase.hpp"

namespace fri {

// Shortest round-trip decimal rendering (std::to_chars); every parsed
// numeral survives serialize/parse with zero ulp drift.
std::string format_double(double value);

struct RuleBaseDocument {
  std::string name;
  std::string default_method;  // empty when absent
  RuleBase rulebase;
  std::string source_text;  // original text, retained for round-trips
};

// Parses the extended rule-base format:
//   [System] with Name= and optional DefaultMethod=,
//   [Input<k>]/[Output1] with Name=, Range=[lo hi], NumMFs= and
//   MF<i>='label':'<shape>',[params]|[paramsy] lines,
//   [Rules] with `a1 a2 ..., c (w) : 1` lines (1-based indices).
// Shape codes: trimf, trapmf, singlmf, pwlmf. `#` starts a comment.
RuleBaseDocument parse_fis(const std::string& text);

// Canonical rendering; parse(serialize(doc)) equals doc structurally and
// serialize . parse is a fixpoint.
std::string serialize_fis(const RuleBaseDocument& doc);

// Observation files: one `OBS<k>='label':'<shape>',[params]|[paramsy]` line
// per input dimension, ordered by k with no gaps.
Observation parse_observation(const std::string& text);
std::string serialize_observation(const Observation& obs);

// One row of the reporting CSV (schema: example, method, status, abnormal,
// linear, lf, lc, rc, rf). Empty optionals render as empty fields.
struct CsvRow {
  std::string example;
  std::string method;
  std::string status;  // "ok" or "error:<code>"
  std::optional<bool> abnormal;
  std::optional<bool> linear;
  std::optional<double> lf, lc, rc, rf;
};

std::string csv_header();
std::string csv_row(const CsvRow& row);

// Builds a fuzzy set from a shape code and its params/paramsy vectors,
// enforcing the canonical paramsy per shape code.
FuzzySet set_from_shape(const std::string& shape,
                        const std::vector<double>& params,
                        const std::vector<double>& paramsy,
                        const std::string& label);

// Inverse of set_from_shape for serialization: shape code + params + paramsy.
struct ShapeCode {
  std::string shape;
  std::vector<double> params;
  std::vector<double> paramsy;
};
ShapeCode shape_of_set(const FuzzySet& set);

}  // namespace fri
