// Batch front end: check/infer/compare/bench/plot over the rule-base and
// observation file formats.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fri/analysis.hpp"
#include "fri/fis_io.hpp"
#include "fri/suite.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw fri::Error(fri::ErrorCode::IoError, "cannot read " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

json cut_to_json(const fri::AlphaCut& c) {
  return json{{"alpha", c.alpha}, {"inf", c.inf}, {"sup", c.sup}};
}

json set_to_json(const fri::FuzzySet& s) {
  json pts = json::array();
  for (const auto& p : s.points()) pts.push_back(json::array({p.x, p.mu}));
  return json{{"label", s.label()}, {"points", pts}};
}

json weights_to_json(const fri::InterpolationWeights& w) {
  json out = json::object();
  if (w.lambda_core) out["lambda_core"] = *w.lambda_core;
  if (w.lambda_left) out["lambda_left"] = *w.lambda_left;
  if (w.lambda_right) out["lambda_right"] = *w.lambda_right;
  if (w.lambda_rep) out["lambda_rep"] = *w.lambda_rep;
  if (!w.rule_weights.empty()) out["rule_weights"] = w.rule_weights;
  return out;
}

json conclusion_to_json(const fri::Conclusion& c) {
  json out;
  out["method"] = fri::method_name(c.method);
  if (c.shape) out["shape"] = set_to_json(*c.shape);
  if (c.alpha_family) {
    json fam = json::array();
    for (const auto& cut : *c.alpha_family) fam.push_back(cut_to_json(cut));
    out["alpha_family"] = fam;
  }
  out["weights"] = weights_to_json(c.weights);
  out["notes"] = c.notes;
  return out;
}

json abnormality_to_json(const fri::AbnormalityReport& r) {
  json out{{"abnormal", r.abnormal},
           {"violation_kind", fri::violation_kind_name(r.violation_kind)},
           {"max_inversion", r.max_inversion}};
  if (r.first_violation_alpha)
    out["first_violation_alpha"] = *r.first_violation_alpha;
  return out;
}

json linearity_to_json(const fri::LinearityReport& r) {
  return json{{"piecewise_linear", r.piecewise_linear},
              {"max_deviation", r.max_deviation},
              {"worst_alpha", r.worst_alpha}};
}

struct OutputMode {
  std::string value = "text";  // text | csv | json
  bool json_mode() const { return value == "json"; }
};

[[noreturn]] void fail(const OutputMode& mode, const fri::Error& e) {
  if (mode.json_mode()) {
    json err{{"error", fri::error_code_name(e.code())}, {"message", e.what()}};
    std::cerr << err.dump() << '\n';
  } else {
    std::cerr << "error: " << e.what() << '\n';
  }
  std::exit(e.code() == fri::ErrorCode::IoError ? kExitIo : kExitFailure);
}

void print_conclusion_text(const fri::Conclusion& c,
                           const fri::AbnormalityReport& ab,
                           const fri::LinearityReport& lin) {
  std::cout << "method: " << fri::method_name(c.method) << '\n';
  if (c.shape) {
    std::cout << "conclusion (breakpoints):\n";
    for (const auto& p : c.shape->points())
      std::cout << "  (" << fri::format_double(p.x) << ", "
                << fri::format_double(p.mu) << ")\n";
  } else {
    std::cout << "conclusion (alpha family):\n";
    for (const auto& cut : *c.alpha_family)
      std::cout << "  alpha=" << fri::format_double(cut.alpha) << ": ["
                << fri::format_double(cut.inf) << ", "
                << fri::format_double(cut.sup) << "]\n";
  }
  std::cout << "abnormal: " << (ab.abnormal ? "true" : "false");
  if (ab.abnormal)
    std::cout << " (" << fri::violation_kind_name(ab.violation_kind)
              << " at alpha="
              << fri::format_double(ab.first_violation_alpha.value_or(0.0))
              << ")";
  std::cout << '\n';
  std::cout << "piecewise linear: "
            << (lin.piecewise_linear ? "true" : "false") << " (max deviation "
            << fri::format_double(lin.max_deviation) << ")\n";
  for (const auto& note : c.notes) std::cout << "note: " << note << '\n';
}

fri::CsvRow row_from(const std::string& example, fri::MethodId id,
                     const fri::Conclusion& c, const fri::AbnormalityReport& ab,
                     const fri::LinearityReport& lin) {
  fri::CsvRow row;
  row.example = example;
  row.method = fri::method_name(id);
  row.status = "ok";
  row.abnormal = ab.abnormal;
  row.linear = lin.piecewise_linear;
  const fri::AlphaCut support = c.cut_at(0.0);
  const fri::AlphaCut core = c.cut_at(1.0);
  row.lf = support.inf;
  row.rf = support.sup;
  row.lc = core.inf;
  row.rc = core.sup;
  return row;
}

int run_compare(const fri::RuleBaseDocument& doc, const fri::Observation& obs,
                const fri::InterpolationConfig& cfg, const OutputMode& mode,
                const std::string& example_name) {
  const fri::ComparisonMatrix matrix =
      fri::compare_methods(doc.rulebase, obs, fri::kAllMethods, cfg);
  if (mode.value == "csv") {
    std::cout << fri::csv_header() << '\n';
    for (const auto& row : matrix.rows) {
      fri::CsvRow out;
      out.example = example_name;
      out.method = fri::method_name(row.method);
      out.status = row.status;
      if (row.abnormality) out.abnormal = row.abnormality->abnormal;
      if (row.linearity) out.linear = row.linearity->piecewise_linear;
      if (row.support) {
        out.lf = row.support->inf;
        out.rf = row.support->sup;
      }
      if (row.core) {
        out.lc = row.core->inf;
        out.rc = row.core->sup;
      }
      std::cout << fri::csv_row(out) << '\n';
    }
  } else if (mode.json_mode()) {
    json rows = json::array();
    for (const auto& row : matrix.rows) {
      json r{{"method", fri::method_name(row.method)}, {"status", row.status}};
      if (row.abnormality)
        r["abnormality"] = abnormality_to_json(*row.abnormality);
      if (row.linearity) r["linearity"] = linearity_to_json(*row.linearity);
      if (row.conclusion) r["conclusion"] = conclusion_to_json(*row.conclusion);
      rows.push_back(r);
    }
    std::cout << json{{"rows", rows}}.dump(2) << '\n';
  } else {
    for (const auto& row : matrix.rows) {
      std::cout << fri::method_name(row.method) << ": " << row.status;
      if (row.abnormality)
        std::cout << (row.abnormality->abnormal ? " abnormal" : " normal");
      if (row.linearity)
        std::cout << (row.linearity->piecewise_linear ? " linear"
                                                      : " nonlinear");
      if (row.support && row.core)
        std::cout << "  support [" << fri::format_double(row.support->inf)
                  << ", " << fri::format_double(row.support->sup) << "] core ["
                  << fri::format_double(row.core->inf) << ", "
                  << fri::format_double(row.core->sup) << "]";
      std::cout << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy rule interpolation toolkit"};
  app.require_subcommand(1);

  std::string fis_path, obs_path, method_name_arg, out_dir, svg_path;
  OutputMode mode;
  int levels = 0;
  std::uint64_t seed = 42;
  std::size_t budget = 100000;
  std::string suite_name = "table1";
  bool paper_literal_kh = false, imul_printed_sum = false;
  std::string rp_mode = "core-mid";

  auto add_cfg_flags = [&](CLI::App* cmd) {
    cmd->add_option("--levels", levels, "number of uniform alpha levels");
    cmd->add_flag("--paper-literal-kh", paper_literal_kh,
                  "keep the printed KH endpoint weighting");
    cmd->add_flag("--imul-printed-sum", imul_printed_sum,
                  "keep the printed IMUL correction term");
    cmd->add_option("--rp", rp_mode,
                    "reference point mode: core-mid|support-mid|cog");
  };

  CLI::App* check = app.add_subcommand("check", "validate a rule-base file");
  check->add_option("--fis", fis_path, "rule-base file")->required();
  check->add_option("--out", mode.value, "output: text|json");

  CLI::App* infer = app.add_subcommand("infer", "interpolate one conclusion");
  infer->add_option("--fis", fis_path, "rule-base file")->required();
  infer->add_option("--obs", obs_path, "observation file")->required();
  infer->add_option("--method", method_name_arg, "method name or 'all'")
      ->required();
  infer->add_option("--out", mode.value, "output: text|csv|json");
  add_cfg_flags(infer);

  CLI::App* compare = app.add_subcommand("compare", "run every method");
  compare->add_option("--fis", fis_path, "rule-base file")->required();
  compare->add_option("--obs", obs_path, "observation file")->required();
  compare->add_option("--out", mode.value, "output: text|csv|json");
  add_cfg_flags(compare);

  CLI::App* bench = app.add_subcommand("bench", "run the benchmark suite");
  bench->add_option("--suite", suite_name, "suite name (table1)");
  bench->add_option("--out", out_dir, "output directory")->required();
  bench->add_option("--seed", seed, "suite seed (FRI_SEED overrides)");
  bench->add_option("--budget", budget, "witness search budget");

  CLI::App* plot = app.add_subcommand("plot", "write a figure");
  plot->add_option("--fis", fis_path, "rule-base file")->required();
  plot->add_option("--obs", obs_path, "observation file")->required();
  plot->add_option("--method", method_name_arg, "method name")->required();
  plot->add_option("--svg", svg_path, "output path")->required();
  add_cfg_flags(plot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  fri::InterpolationConfig cfg;
  if (levels > 1)
    for (int i = 0; i < levels; ++i)
      cfg.alpha_levels.push_back(static_cast<double>(i) /
                                 static_cast<double>(levels - 1));
  cfg.paper_literal_kh = paper_literal_kh;
  cfg.imul_printed_sum = imul_printed_sum;
  if (rp_mode == "core-mid") cfg.rp_mode = fri::RefPointMode::kCoreMid;
  else if (rp_mode == "support-mid") cfg.rp_mode = fri::RefPointMode::kSupportMid;
  else if (rp_mode == "cog") cfg.rp_mode = fri::RefPointMode::kCog;
  else {
    std::cerr << "error: unknown reference point mode '" << rp_mode << "'\n";
    return kExitUsage;
  }

  try {
    if (check->parsed()) {
      const fri::RuleBaseDocument doc = fri::parse_fis(read_file(fis_path));
      const fri::ValidationReport report = fri::validate_rulebase(doc.rulebase);
      if (mode.json_mode()) {
        json issues = json::array();
        for (const auto& issue : report.issues)
          issues.push_back(json{{"where", issue.where}, {"detail", issue.detail}});
        std::cout << json{{"ok", report.ok()}, {"issues", issues}}.dump(2)
                  << '\n';
      } else {
        std::cout << report.to_string();
        if (report.ok()) std::cout << "valid rule base: " << doc.name << '\n';
      }
      return report.ok() ? kExitOk : kExitFailure;
    }

    if (infer->parsed() || compare->parsed()) {
      const fri::RuleBaseDocument doc = fri::parse_fis(read_file(fis_path));
      const fri::ValidationReport report = fri::validate_rulebase(doc.rulebase);
      if (!report.ok())
        throw fri::Error(fri::ErrorCode::MethodInapplicable,
                         "invalid rule base:\n" + report.to_string());
      const fri::Observation obs = fri::parse_observation(read_file(obs_path));

      std::string lowered;
      for (char c : method_name_arg)
        lowered.push_back(static_cast<char>(std::tolower(c)));
      if (compare->parsed() || lowered == "all")
        return run_compare(doc, obs, cfg, mode, doc.name);

      const auto id = fri::method_from_name(method_name_arg);
      if (!id) {
        std::cerr << "error: unknown method '" << method_name_arg << "'\n";
        return kExitUsage;
      }
      const fri::Conclusion c = fri::interpolate(*id, doc.rulebase, obs, cfg);
      const fri::AbnormalityReport ab = fri::detect_abnormality(c, cfg);
      const fri::LinearityReport lin =
          fri::check_linearity(*id, doc.rulebase, obs, cfg);
      if (mode.json_mode()) {
        json out = conclusion_to_json(c);
        out["abnormality"] = abnormality_to_json(ab);
        out["linearity"] = linearity_to_json(lin);
        std::cout << out.dump(2) << '\n';
      } else if (mode.value == "csv") {
        std::cout << fri::csv_header() << '\n'
                  << fri::csv_row(row_from(doc.name, *id, c, ab, lin)) << '\n';
      } else {
        print_conclusion_text(c, ab, lin);
      }
      return kExitOk;
    }

    if (bench->parsed()) {
      if (suite_name != "table1") {
        std::cerr << "error: unknown suite '" << suite_name << "'\n";
        return kExitUsage;
      }
      if (const char* env = std::getenv("FRI_SEED"))
        seed = std::strtoull(env, nullptr, 10);
      fri::SuiteOptions options;
      options.seed = seed;
      options.budget.max_samples = budget;
      options.budget.seed = seed;
      options.out_dir = std::filesystem::path(out_dir);
      const fri::SuiteReport report = fri::run_suite(options, cfg);
      std::cout << "suite written to " << out_dir << '\n';
      for (const auto& line : report.not_reproduced)
        std::cout << "NOT REPRODUCED: " << line << '\n';
      for (const auto& m : report.mismatches)
        std::cout << "mismatch: example " << m.example_id << ' '
                  << fri::method_name(m.method) << ": " << m.what << '\n';
      std::cout << (report.mismatches.empty() ? "matrix reproduced"
                                              : "matrix NOT reproduced")
                << '\n';
      return report.mismatches.empty() ? kExitOk : kExitFailure;
    }

    if (plot->parsed()) {
      const fri::RuleBaseDocument doc = fri::parse_fis(read_file(fis_path));
      const fri::Observation obs = fri::parse_observation(read_file(obs_path));
      const auto id = fri::method_from_name(method_name_arg);
      if (!id) {
        std::cerr << "error: unknown method '" << method_name_arg << "'\n";
        return kExitUsage;
      }
      fri::BenchInstance inst;
      inst.rb = doc.rulebase;
      inst.obs = obs;
      std::vector<std::pair<fri::MethodId, fri::Conclusion>> cs;
      cs.emplace_back(*id, fri::interpolate(*id, doc.rulebase, obs, cfg));
      fri::render_svg(inst, cs, svg_path);
      std::cout << "figure written to " << svg_path << '\n';
      return kExitOk;
    }
  } catch (const fri::Error& e) {
    fail(mode, e);
  }
  return kExitUsage;
}
