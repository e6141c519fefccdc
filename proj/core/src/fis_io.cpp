#include "fri/fis_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

namespace fri {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

namespace {

[[noreturn]] void syntax_error(std::size_t line, std::size_t col,
                               const std::string& what) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) +
                                          ", col " + std::to_string(col) +
                                          ": " + what);
}

// Cursor over one line, tracking the column for error reporting.
struct LineCursor {
  const std::string& s;
  std::size_t line;
  std::size_t pos = 0;

  std::size_t col() const { return pos + 1; }
  bool eof() const { return pos >= s.size(); }
  char peek() const { return eof() ? '\0' : s[pos]; }

  void skip_ws() {
    while (!eof() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  void expect(char c, const std::string& what) {
    if (eof() || s[pos] != c) syntax_error(line, col(), "expected " + what);
    ++pos;
  }
  bool consume(char c) {
    if (!eof() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  std::string quoted() {
    expect('\'', "opening quote");
    const std::size_t start = pos;
    while (!eof() && s[pos] != '\'') ++pos;
    if (eof()) syntax_error(line, col(), "unterminated quote");
    std::string out = s.substr(start, pos - start);
    ++pos;
    return out;
  }
  double number() {
    skip_ws();
    const char* begin = s.data() + pos;
    const char* end = s.data() + s.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin)
      syntax_error(line, col(), "expected a number");
    pos += static_cast<std::size_t>(ptr - begin);
    return value;
  }
  long integer() {
    skip_ws();
    const char* begin = s.data() + pos;
    const char* end = s.data() + s.size();
    long value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin)
      syntax_error(line, col(), "expected an integer");
    pos += static_cast<std::size_t>(ptr - begin);
    return value;
  }
  std::vector<double> bracket_vector() {
    skip_ws();
    expect('[', "'['");
    std::vector<double> out;
    skip_ws();
    while (!eof() && s[pos] != ']') {
      out.push_back(number());
      skip_ws();
      consume(',');
      skip_ws();
    }
    expect(']', "']'");
    return out;
  }
  void end_of_line(const std::string& context) {
    skip_ws();
    if (!eof()) syntax_error(line, col(), "trailing characters after " + context);
  }
};

struct MfLine {
  std::size_t index = 0;
  std::string label;
  std::string shape;
  std::vector<double> params;
  std::vector<double> paramsy;
};

MfLine parse_mf_payload(LineCursor& cur, std::size_t index) {
  MfLine mf;
  mf.index = index;
  cur.skip_ws();
  mf.label = cur.quoted();
  cur.expect(':', "':'");
  mf.shape = cur.quoted();
  cur.expect(',', "','");
  mf.params = cur.bracket_vector();
  cur.expect('|', "'|'");
  mf.paramsy = cur.bracket_vector();
  cur.end_of_line("membership function");
  return mf;
}

std::string strip_comment(const std::string& raw) {
  const auto hash = raw.find('#');
  std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                           line.back() == '\r'))
    line.pop_back();
  return line;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

struct SectionLine {
  std::size_t line_no;
  std::string text;
};

}  // namespace

FuzzySet set_from_shape(const std::string& shape,
                        const std::vector<double>& params,
                        const std::vector<double>& paramsy,
                        const std::string& label) {
  if (params.size() != paramsy.size())
    throw Error(ErrorCode::ParamsyLengthMismatch,
                label + ": " + std::to_string(params.size()) + " params vs " +
                    std::to_string(paramsy.size()) + " paramsy");
  auto expect_canonical = [&](std::initializer_list<double> canonical) {
    if (paramsy.size() != canonical.size() ||
        !std::equal(paramsy.begin(), paramsy.end(), canonical.begin(),
                    [](double a, double b) { return a == b; }))
      throw Error(ErrorCode::ParamsyShapeMismatch,
                  label + ": paramsy does not match shape '" + shape + "'");
  };
  if (shape == "trimf") expect_canonical({0.0, 1.0, 0.0});
  else if (shape == "trapmf") expect_canonical({0.0, 1.0, 1.0, 0.0});
  else if (shape == "singlmf") expect_canonical({1.0});
  else if (shape != "pwlmf")
    throw Error(ErrorCode::UnknownShapeCode, shape);

  std::vector<Breakpoint> pts;
  pts.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i)
    pts.push_back({params[i], paramsy[i]});
  return make_set(std::move(pts), label);
}

ShapeCode shape_of_set(const FuzzySet& set) {
  ShapeCode out;
  for (const auto& p : set.points()) {
    out.params.push_back(p.x);
    out.paramsy.push_back(p.mu);
  }
  const auto& y = out.paramsy;
  if (y.size() == 1 && y[0] == 1.0) out.shape = "singlmf";
  else if (y.size() == 3 && y[0] == 0.0 && y[1] == 1.0 && y[2] == 0.0)
    out.shape = "trimf";
  else if (y.size() == 4 && y[0] == 0.0 && y[1] == 1.0 && y[2] == 1.0 &&
           y[3] == 0.0)
    out.shape = "trapmf";
  else out.shape = "pwlmf";
  return out;
}

namespace {

LinguisticPartition parse_partition(const std::vector<SectionLine>& lines,
                                    const std::string& section) {
  LinguisticPartition part;
  bool have_range = false;
  long declared_mfs = -1;
  std::map<std::size_t, FuzzySet> mfs;
  for (const auto& [line_no, text] : lines) {
    LineCursor cur{text, line_no};
    cur.skip_ws();
    if (text.compare(cur.pos, 5, "Name=") == 0) {
      cur.pos += 5;
      part.dimension_name = cur.quoted();
      cur.end_of_line("Name");
    } else if (text.compare(cur.pos, 6, "Range=") == 0) {
      cur.pos += 6;
      const auto v = cur.bracket_vector();
      if (v.size() != 2)
        syntax_error(line_no, cur.col(), "Range needs [lo hi]");
      part.range_lo = v[0];
      part.range_hi = v[1];
      have_range = true;
      cur.end_of_line("Range");
    } else if (text.compare(cur.pos, 7, "NumMFs=") == 0) {
      cur.pos += 7;
      declared_mfs = cur.integer();
      cur.end_of_line("NumMFs");
    } else if (text.compare(cur.pos, 2, "MF") == 0) {
      cur.pos += 2;
      const long idx = cur.integer();
      if (idx < 1) syntax_error(line_no, cur.col(), "MF index must be >= 1");
      cur.expect('=', "'='");
      MfLine mf = parse_mf_payload(cur, static_cast<std::size_t>(idx));
      if (mfs.count(mf.index))
        syntax_error(line_no, 1, "duplicate MF" + std::to_string(mf.index));
      mfs.emplace(mf.index,
                  set_from_shape(mf.shape, mf.params, mf.paramsy, mf.label));
    } else {
      syntax_error(line_no, cur.col(), "unknown key in " + section);
    }
  }
  if (!have_range)
    throw Error(ErrorCode::SyntaxError, section + ": missing Range");
  std::size_t expect_index = 1;
  for (const auto& [idx, set] : mfs) {
    if (idx != expect_index)
      throw Error(ErrorCode::SyntaxError,
                  section + ": MF indices must be 1..n without gaps");
    ++expect_index;
    part.terms.push_back(set);
  }
  if (declared_mfs >= 0 &&
      static_cast<std::size_t>(declared_mfs) != part.terms.size())
    throw Error(ErrorCode::SyntaxError,
                section + ": NumMFs disagrees with the MF lines");
  return part;
}

Rule parse_rule_line(const SectionLine& sl, std::size_t n_inputs) {
  LineCursor cur{sl.text, sl.line_no};
  std::vector<long> indices;
  cur.skip_ws();
  while (true) {
    indices.push_back(cur.integer());
    cur.skip_ws();
    if (cur.peek() == '(') break;
    cur.consume(',');
    cur.skip_ws();
    if (cur.eof())
      syntax_error(sl.line_no, cur.col(), "expected '(weight)'");
  }
  cur.expect('(', "'('");
  const double weight = cur.number();
  cur.skip_ws();
  cur.expect(')', "')'");
  cur.skip_ws();
  cur.expect(':', "':'");
  cur.skip_ws();
  const long connective = cur.integer();
  cur.end_of_line("rule");
  if (connective != 1)
    syntax_error(sl.line_no, 1, "only the AND connective (1) is supported");
  if (indices.size() != n_inputs + 1)
    syntax_error(sl.line_no, 1,
                 "rule arity: expected " + std::to_string(n_inputs) +
                     " antecedents and one consequent");
  Rule rule;
  for (std::size_t i = 0; i < n_inputs; ++i) {
    if (indices[i] == 0)
      syntax_error(sl.line_no, 1, "don't-care antecedents (0) are unsupported");
    if (indices[i] < 0)
      syntax_error(sl.line_no, 1, "negated terms are unsupported");
    rule.antecedents.push_back(static_cast<std::size_t>(indices[i] - 1));
  }
  if (indices.back() < 1)
    syntax_error(sl.line_no, 1, "consequent index must be >= 1");
  rule.consequent = static_cast<std::size_t>(indices.back() - 1);
  rule.weight = weight;
  return rule;
}

}  // namespace

RuleBaseDocument parse_fis(const std::string& text) {
  // Split into sections.
  std::map<std::string, std::vector<SectionLine>> sections;
  std::vector<std::string> section_order;
  std::string current;
  std::istringstream is(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (is_blank(line)) continue;
    std::size_t start = line.find_first_not_of(" \t");
    if (line[start] == '[') {
      const auto close = line.find(']', start);
      if (close == std::string::npos)
        syntax_error(line_no, start + 1, "unterminated section header");
      current = line.substr(start + 1, close - start - 1);
      if (sections.count(current))
        syntax_error(line_no, start + 1, "duplicate section " + current);
      sections[current] = {};
      section_order.push_back(current);
      LineCursor cur{line, line_no};
      cur.pos = close + 1;
      cur.end_of_line("section header");
      continue;
    }
    if (current.empty())
      syntax_error(line_no, start + 1, "content before any section");
    sections[current].push_back({line_no, line.substr(start)});
  }

  if (!sections.count("System"))
    throw Error(ErrorCode::MissingSection, "System");
  if (!sections.count("Output1"))
    throw Error(ErrorCode::MissingSection, "Output1");
  if (!sections.count("Rules"))
    throw Error(ErrorCode::MissingSection, "Rules");

  RuleBaseDocument doc;
  doc.source_text = text;

  long declared_inputs = -1, declared_outputs = -1, declared_rules = -1;
  for (const auto& [ln, t] : sections["System"]) {
    LineCursor cur{t, ln};
    if (t.compare(0, 5, "Name=") == 0) {
      cur.pos = 5;
      doc.name = cur.quoted();
      cur.end_of_line("Name");
    } else if (t.compare(0, 14, "DefaultMethod=") == 0) {
      cur.pos = 14;
      doc.default_method = cur.quoted();
      cur.end_of_line("DefaultMethod");
    } else if (t.compare(0, 10, "NumInputs=") == 0) {
      cur.pos = 10;
      declared_inputs = cur.integer();
      cur.end_of_line("NumInputs");
    } else if (t.compare(0, 11, "NumOutputs=") == 0) {
      cur.pos = 11;
      declared_outputs = cur.integer();
      cur.end_of_line("NumOutputs");
    } else if (t.compare(0, 9, "NumRules=") == 0) {
      cur.pos = 9;
      declared_rules = cur.integer();
      cur.end_of_line("NumRules");
    } else {
      syntax_error(ln, 1, "unknown key in System");
    }
  }

  // Inputs must be Input1..InputK with no gaps.
  std::size_t n_inputs = 0;
  while (sections.count("Input" + std::to_string(n_inputs + 1))) ++n_inputs;
  for (const auto& name : section_order) {
    if (name.rfind("Input", 0) == 0) {
      const long idx = std::atol(name.c_str() + 5);
      if (idx < 1 || static_cast<std::size_t>(idx) > n_inputs)
        throw Error(ErrorCode::DimensionGap, "section " + name);
    } else if (name != "System" && name != "Output1" && name != "Rules") {
      throw Error(ErrorCode::SyntaxError, "unexpected section " + name);
    }
  }
  if (n_inputs == 0) throw Error(ErrorCode::MissingSection, "Input1");
  if (declared_inputs >= 0 &&
      static_cast<std::size_t>(declared_inputs) != n_inputs)
    throw Error(ErrorCode::SyntaxError, "NumInputs disagrees with sections");
  if (declared_outputs >= 0 && declared_outputs != 1)
    throw Error(ErrorCode::SyntaxError, "NumOutputs must be 1");

  for (std::size_t k = 1; k <= n_inputs; ++k) {
    const std::string name = "Input" + std::to_string(k);
    doc.rulebase.inputs.push_back(parse_partition(sections[name], name));
  }
  doc.rulebase.output = parse_partition(sections["Output1"], "Output1");

  for (const auto& sl : sections["Rules"])
    doc.rulebase.rules.push_back(parse_rule_line(sl, n_inputs));
  if (declared_rules >= 0 &&
      static_cast<std::size_t>(declared_rules) != doc.rulebase.rules.size())
    throw Error(ErrorCode::SyntaxError, "NumRules disagrees with rule lines");

  // Index validity is a hard parse-time requirement.
  for (std::size_t r = 0; r < doc.rulebase.rules.size(); ++r) {
    const Rule& rule = doc.rulebase.rules[r];
    for (std::size_t d = 0; d < n_inputs; ++d)
      if (rule.antecedents[d] >= doc.rulebase.inputs[d].terms.size())
        throw Error(ErrorCode::SyntaxError,
                    "rule " + std::to_string(r + 1) + ": antecedent index out of range");
    if (rule.consequent >= doc.rulebase.output.terms.size())
      throw Error(ErrorCode::SyntaxError,
                  "rule " + std::to_string(r + 1) + ": consequent index out of range");
  }
  return doc;
}

namespace {

void serialize_partition(std::ostringstream& os, const std::string& header,
                         const LinguisticPartition& part) {
  os << '[' << header << "]\n";
  os << "Name='" << part.dimension_name << "'\n";
  os << "Range=[" << format_double(part.range_lo) << ' '
     << format_double(part.range_hi) << "]\n";
  os << "NumMFs=" << part.terms.size() << '\n';
  for (std::size_t i = 0; i < part.terms.size(); ++i) {
    const ShapeCode sc = shape_of_set(part.terms[i]);
    os << "MF" << (i + 1) << "='" << part.terms[i].label() << "':'" << sc.shape
       << "',[";
    for (std::size_t j = 0; j < sc.params.size(); ++j)
      os << (j ? " " : "") << format_double(sc.params[j]);
    os << "]|[";
    for (std::size_t j = 0; j < sc.paramsy.size(); ++j)
      os << (j ? " " : "") << format_double(sc.paramsy[j]);
    os << "]\n";
  }
  os << '\n';
}

}  // namespace

std::string serialize_fis(const RuleBaseDocument& doc) {
  std::ostringstream os;
  os << "[System]\n";
  os << "Name='" << doc.name << "'\n";
  if (!doc.default_method.empty())
    os << "DefaultMethod='" << doc.default_method << "'\n";
  os << "NumInputs=" << doc.rulebase.inputs.size() << '\n';
  os << "NumOutputs=1\n";
  os << "NumRules=" << doc.rulebase.rules.size() << "\n\n";
  for (std::size_t k = 0; k < doc.rulebase.inputs.size(); ++k)
    serialize_partition(os, "Input" + std::to_string(k + 1),
                        doc.rulebase.inputs[k]);
  serialize_partition(os, "Output1", doc.rulebase.output);
  os << "[Rules]\n";
  for (const Rule& rule : doc.rulebase.rules) {
    for (std::size_t d = 0; d < rule.antecedents.size(); ++d)
      os << (d ? " " : "") << (rule.antecedents[d] + 1);
    os << ", " << (rule.consequent + 1) << " (" << format_double(rule.weight)
       << ") : 1\n";
  }
  return os.str();
}

Observation parse_observation(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  std::size_t line_no = 0;
  std::map<std::size_t, FuzzySet> sets;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (is_blank(line)) continue;
    const std::size_t start = line.find_first_not_of(" \t");
    LineCursor cur{line, line_no};
    cur.pos = start;
    if (line.compare(start, 3, "OBS") != 0)
      syntax_error(line_no, start + 1, "expected an OBS line");
    cur.pos = start + 3;
    const long idx = cur.integer();
    if (idx < 1) syntax_error(line_no, cur.col(), "OBS index must be >= 1");
    cur.expect('=', "'='");
    MfLine mf = parse_mf_payload(cur, static_cast<std::size_t>(idx));
    if (sets.count(mf.index))
      syntax_error(line_no, 1, "duplicate OBS" + std::to_string(mf.index));
    sets.emplace(mf.index,
                 set_from_shape(mf.shape, mf.params, mf.paramsy, mf.label));
  }
  if (sets.empty()) throw Error(ErrorCode::SyntaxError, "no OBS lines");
  Observation obs;
  std::size_t expect_index = 1;
  for (const auto& [idx, set] : sets) {
    if (idx != expect_index)
      throw Error(ErrorCode::DimensionGap,
                  "missing OBS" + std::to_string(expect_index));
    ++expect_index;
    obs.sets.push_back(set);
  }
  return obs;
}

std::string serialize_observation(const Observation& obs) {
  std::ostringstream os;
  for (std::size_t k = 0; k < obs.sets.size(); ++k) {
    const ShapeCode sc = shape_of_set(obs.sets[k]);
    os << "OBS" << (k + 1) << "='" << obs.sets[k].label() << "':'" << sc.shape
       << "',[";
    for (std::size_t j = 0; j < sc.params.size(); ++j)
      os << (j ? " " : "") << format_double(sc.params[j]);
    os << "]|[";
    for (std::size_t j = 0; j < sc.paramsy.size(); ++j)
      os << (j ? " " : "") << format_double(sc.paramsy[j]);
    os << "]\n";
  }
  return os.str();
}

std::string csv_header() {
  return "example,method,status,abnormal,linear,lf,lc,rc,rf";
}

std::string csv_row(const CsvRow& row) {
  std::ostringstream os;
  os << row.example << ',' << row.method << ',' << row.status << ',';
  if (row.abnormal) os << (*row.abnormal ? "true" : "false");
  os << ',';
  if (row.linear) os << (*row.linear ? "true" : "false");
  auto field = [&os](const std::optional<double>& v) {
    os << ',';
    if (v) os << format_double(*v);
  };
  field(row.lf);
  field(row.lc);
  field(row.rc);
  field(row.rf);
  return os.str();
}

}  // namespace fri
