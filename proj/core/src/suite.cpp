#include "fri/suite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace fri {

namespace {

struct Skeleton {
  int dims;
  int terms;
  bool ant_trap;   // antecedent family shape (false = triangular)
  bool con_trap;   // consequent family shape
  int obs_kind;    // 0 = triangular, 1 = trapezoidal, 2 = singleton
};

// Table-1 rows: dimensions, membership-function families and term counts.
Skeleton skeleton_of(int id) {
  switch (id) {
    case 1: return {1, 2, false, false, 0};
    case 2: return {1, 4, false, false, 0};
    case 3: return {1, 4, false, true, 1};
    case 4: return {1, 4, true, true, 2};
    case 5: return {1, 4, false, false, 2};
    case 6: return {3, 3, false, true, 0};
    case 7: return {3, 3, false, true, 2};
    default:
      throw Error(ErrorCode::MethodInapplicable,
                  "example id must be 1..7, got " + std::to_string(id));
  }
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double lo, double hi) {
    const double u =
        static_cast<double>(eng() >> 11) * 0x1.0p-53;  // [0, 1)
    return lo + (hi - lo) * u;
  }
};

struct FamilyParams {
  double flank;
  double core;
  double gap;
  double start;
};

FuzzySet family_term(const FamilyParams& fp, int j, const std::string& label) {
  const double rp = fp.start + j * fp.gap;
  const double lc = rp - 0.5 * fp.core;
  const double rc = rp + 0.5 * fp.core;
  if (fp.core > 0.0)
    return make_trapezoid(lc - fp.flank, lc, rc, rc + fp.flank, label);
  return make_triangle(rp - fp.flank, rp, rp + fp.flank, label);
}

LinguisticPartition build_partition(const FamilyParams& fp, int terms,
                                    bool output, int dim) {
  LinguisticPartition part;
  part.dimension_name = output ? "Y" : "X" + std::to_string(dim + 1);
  part.range_lo = 0.0;
  const double half = 0.5 * fp.core + fp.flank;
  part.range_hi = fp.start + (terms - 1) * fp.gap + half + 4.0;
  for (int j = 0; j < terms; ++j) {
    const std::string stem = output ? "B" : "A";
    const std::string label = stem + "_{" + std::to_string(j + 1) + ";" +
                              std::to_string(dim + 1) + "}";
    part.terms.push_back(family_term(fp, j, label));
  }
  return part;
}

FuzzySet build_observation_set(Rng& rng, const FamilyParams& fp,
                               int corridor_j, int obs_kind, double obs_flank,
                               double obs_core, int dim) {
  const double rp0 = fp.start + corridor_j * fp.gap;
  const double rp1 = rp0 + fp.gap;
  const std::string label = "A*_{" + std::to_string(dim + 1) + "}";
  if (obs_kind == 2) {
    const double lo = rp0 + 0.5 * fp.core + fp.flank;  // clear of the support
    const double hi = rp1 - 0.5 * fp.core - fp.flank;
    const double margin = 0.1 * (hi - lo);
    return make_singleton(rng.uniform(lo + margin, hi - margin), label);
  }
  double core = obs_kind == 1 ? obs_core : 0.0;
  double flank = obs_flank;
  // Strict flanking needs every characteristic point of the observation to
  // sit strictly between the corridor terms'.
  auto bound = [&](double c, double f) {
    return std::max(std::abs(c - fp.core) * 0.5,
                    std::abs(0.5 * c + f - 0.5 * fp.core - fp.flank));
  };
  double b = bound(core, flank);
  if (rp0 + b + 0.4 >= rp1 - b - 0.4) {
    // The drawn shape does not fit the corridor; fall back to the family
    // geometry, which always fits.
    core = fp.core;
    flank = fp.flank;
    b = 0.0;
  }
  const double x = rng.uniform(rp0 + b + 0.2, rp1 - b - 0.2);
  if (core > 0.0)
    return make_trapezoid(x - 0.5 * core - flank, x - 0.5 * core,
                          x + 0.5 * core, x + 0.5 * core + flank, label);
  return make_triangle(x - flank, x, x + flank, label);
}

BenchInstance generate(int id, std::uint64_t seed, bool fixed,
                       std::size_t iteration) {
  const Skeleton sk = skeleton_of(id);
  Rng rng(fixed ? mix(seed, static_cast<std::uint64_t>(id))
                : mix(mix(seed, static_cast<std::uint64_t>(id)),
                      0x5115ULL + iteration));

  BenchInstance inst;
  inst.example_id = id;
  inst.seed = seed;
  inst.provenance = fixed ? "fixed-seed(" + std::to_string(seed) + ")"
                          : "searched(" + std::to_string(seed) + ", " +
                                std::to_string(iteration) + ")";

  auto draw_family = [&](bool trap) {
    FamilyParams fp;
    if (fixed) {
      fp.flank = rng.uniform(2.0, 6.0);
      fp.core = trap ? rng.uniform(2.0, 6.0) : 0.0;
      const double w = fp.core + 2.0 * fp.flank;
      fp.gap = w + rng.uniform(4.0, 12.0);
      fp.start = 0.5 * fp.core + fp.flank + rng.uniform(2.0, 8.0);
    } else {
      fp.flank = rng.uniform(0.5, 8.0);
      fp.core = trap ? rng.uniform(0.5, 10.0) : 0.0;
      const double w = fp.core + 2.0 * fp.flank;
      fp.gap = w + rng.uniform(2.0, 40.0);
      fp.start = 0.5 * fp.core + fp.flank + rng.uniform(2.0, 8.0);
    }
    return fp;
  };

  const int corridor_j = std::max(0, (sk.terms - 2) / 2);
  std::vector<FamilyParams> ant_params;
  for (int d = 0; d < sk.dims; ++d) {
    ant_params.push_back(draw_family(sk.ant_trap));
    inst.rb.inputs.push_back(
        build_partition(ant_params.back(), sk.terms, false, d));
  }
  const FamilyParams con_params = draw_family(sk.con_trap);
  inst.rb.output = build_partition(con_params, sk.terms, true, 0);

  for (int j = 0; j < sk.terms; ++j) {
    Rule rule;
    rule.antecedents.assign(static_cast<std::size_t>(sk.dims),
                            static_cast<std::size_t>(j));
    rule.consequent = static_cast<std::size_t>(j);
    inst.rb.rules.push_back(rule);
  }

  for (int d = 0; d < sk.dims; ++d) {
    const FamilyParams& fp = ant_params[static_cast<std::size_t>(d)];
    double obs_flank = fp.flank;       // fixed instances share the family flank
    double obs_core = std::max(1.0, std::min(fp.core + 2.0, 6.0));
    if (!fixed) {
      obs_flank = rng.uniform(0.2, 10.0);
      obs_core = rng.uniform(0.5, 10.0);
    } else if (sk.obs_kind == 1) {
      obs_core = rng.uniform(1.0, 6.0);
    }
    inst.obs.sets.push_back(build_observation_set(
        rng, fp, corridor_j, sk.obs_kind, obs_flank, obs_core, d));
  }

  // Grow ranges to cover the observation if a wide draw ran past a term.
  for (int d = 0; d < sk.dims; ++d) {
    auto& part = inst.rb.inputs[static_cast<std::size_t>(d)];
    const double hi = inst.obs.sets[static_cast<std::size_t>(d)].support_hi();
    if (hi + 2.0 > part.range_hi) part.range_hi = hi + 2.0;
  }
  return inst;
}

}  // namespace

BenchInstance build_example(int id, std::uint64_t seed) {
  return generate(id, seed, true, 0);
}

BenchInstance sample_example(int id, std::uint64_t seed,
                             std::size_t iteration) {
  return generate(id, seed, false, iteration);
}

namespace {

InterpolationConfig verdict_config(const InterpolationConfig& cfg, int levels) {
  InterpolationConfig out = cfg;
  if (out.alpha_levels.empty()) {
    out.alpha_levels.reserve(static_cast<std::size_t>(levels));
    for (int i = 0; i < levels; ++i)
      out.alpha_levels.push_back(static_cast<double>(i) /
                                 static_cast<double>(levels - 1));
  }
  return out;
}

}  // namespace

SearchResult search_witness(int example_id, MethodId method,
                            SearchTarget target, const SearchBudget& budget,
                            const InterpolationConfig& cfg) {
  SearchResult result;
  result.log = {example_id, method, target, 0, 0, false, 0};

  // A lighter verdict resolution while scanning; hits are re-verified with
  // the caller's configuration before being accepted.
  InterpolationConfig scan_cfg = verdict_config(cfg, 101);
  scan_cfg.dense_levels = 201;
  const InterpolationConfig full_cfg = verdict_config(cfg, 101);

  for (std::size_t it = 0; it < budget.max_samples; ++it) {
    result.log.samples = it + 1;
    BenchInstance inst = sample_example(example_id, budget.seed, it);
    bool hit = false;
    try {
      if (target == SearchTarget::kAbnormal) {
        const Conclusion c = interpolate(method, inst.rb, inst.obs, scan_cfg);
        if (detect_abnormality(c, scan_cfg).abnormal) {
          const Conclusion full =
              interpolate(method, inst.rb, inst.obs, full_cfg);
          hit = detect_abnormality(full, full_cfg).abnormal;
        }
      } else {
        if (!check_linearity(method, inst.rb, inst.obs, scan_cfg)
                 .piecewise_linear)
          hit = !check_linearity(method, inst.rb, inst.obs, full_cfg)
                     .piecewise_linear;
      }
    } catch (const Error&) {
      ++result.log.errors;
      continue;
    }
    if (hit) {
      result.log.found = true;
      result.log.iteration = it;
      result.witness = std::move(inst);
      return result;
    }
  }
  return result;
}

namespace {

struct Expectations {
  std::map<std::pair<int, MethodId>, SuiteExpectation> map;
  std::vector<std::tuple<int, MethodId, SearchTarget, bool>> searches;
};

// The qualitative findings matrix: abnormality cells for KH, stabilized KH
// and VKK, the FRIPOC linearity cell, everything normal for the five robust
// methods, and the LESFRI cells as search targets whose outcome is recorded
// either way.
Expectations build_expectations() {
  Expectations ex;
  const std::vector<MethodId> robust = {MethodId::kMaci, MethodId::kImul,
                                        MethodId::kCrf, MethodId::kGm,
                                        MethodId::kScaleMove};
  for (int id = 1; id <= 7; ++id) {
    for (MethodId m : kAllMethods) ex.map[{id, m}] = SuiteExpectation{};
    for (MethodId m : robust) ex.map[{id, m}] = {false, true};
    ex.map[{id, MethodId::kFripoc}].abnormal = false;
  }
  for (MethodId m : {MethodId::kKh, MethodId::kKhStabilized, MethodId::kVkk})
    for (int id = 1; id <= 5; ++id) ex.map[{id, m}].abnormal = false;
  for (MethodId m : {MethodId::kLesfri})
    for (int id = 1; id <= 5; ++id) ex.map[{id, m}].abnormal = false;

  ex.map[{3, MethodId::kVkk}].abnormal = true;
  for (int id : {6, 7}) {
    ex.map[{id, MethodId::kKh}].abnormal = true;
    ex.map[{id, MethodId::kKhStabilized}].abnormal = true;
    ex.map[{id, MethodId::kVkk}].abnormal = true;
  }
  ex.map[{6, MethodId::kFripoc}].linear = false;

  ex.searches = {
      {3, MethodId::kVkk, SearchTarget::kAbnormal, true},
      {6, MethodId::kKh, SearchTarget::kAbnormal, true},
      {6, MethodId::kKhStabilized, SearchTarget::kAbnormal, true},
      {6, MethodId::kVkk, SearchTarget::kAbnormal, true},
      {7, MethodId::kKh, SearchTarget::kAbnormal, true},
      {7, MethodId::kKhStabilized, SearchTarget::kAbnormal, true},
      {7, MethodId::kVkk, SearchTarget::kAbnormal, true},
      {6, MethodId::kFripoc, SearchTarget::kNonlinear, true},
      {6, MethodId::kLesfri, SearchTarget::kAbnormal, false},
      {7, MethodId::kLesfri, SearchTarget::kAbnormal, false},
  };
  return ex;
}

SuiteCell evaluate_cell(const BenchInstance& inst, MethodId method,
                        const InterpolationConfig& cfg) {
  SuiteCell cell;
  cell.provenance = inst.provenance;
  try {
    const Conclusion c = interpolate(method, inst.rb, inst.obs, cfg);
    cell.abnormal = detect_abnormality(c, cfg).abnormal;
    cell.support = c.cut_at(0.0);
    cell.core = c.cut_at(1.0);
    cell.linear =
        check_linearity(method, inst.rb, inst.obs, cfg).piecewise_linear;
    cell.status = "ok";
  } catch (const Error& e) {
    cell.status = std::string("error:") + error_code_name(e.code());
  }
  return cell;
}

std::string search_log_line(const SearchLogEntry& e) {
  std::ostringstream os;
  os << "example " << e.example_id << ' ' << method_name(e.method) << ' '
     << (e.target == SearchTarget::kAbnormal ? "abnormal" : "nonlinear")
     << ": "
     << (e.found ? "witness at iteration " + std::to_string(e.iteration)
                 : "NOT REPRODUCED")
     << " after " << e.samples << " samples (" << e.errors << " errors)";
  return os.str();
}

}  // namespace

std::string SuiteReport::to_csv() const {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const auto& [key, cell] : cells) {
    CsvRow row;
    row.example = std::to_string(key.first);
    row.method = method_name(key.second);
    row.status = cell.status;
    row.abnormal = cell.abnormal;
    row.linear = cell.linear;
    if (cell.support) {
      row.lf = cell.support->inf;
      row.rf = cell.support->sup;
    }
    if (cell.core) {
      row.lc = cell.core->inf;
      row.rc = cell.core->sup;
    }
    os << csv_row(row) << '\n';
  }
  return os.str();
}

SuiteReport run_suite(const SuiteOptions& options,
                      const InterpolationConfig& cfg) {
  const InterpolationConfig vcfg = verdict_config(cfg, 101);
  SuiteReport report;
  Expectations expect = build_expectations();
  report.expected = expect.map;

  std::map<int, BenchInstance> fixed;
  for (int id = 1; id <= 7; ++id) fixed.emplace(id, build_example(id, options.seed));

  std::map<std::pair<int, MethodId>, BenchInstance> witness_instances;
  SearchBudget budget = options.budget;
  budget.seed = options.seed;

  for (const auto& [id, method, target, required] : expect.searches) {
    SearchResult sr = search_witness(id, method, target, budget, cfg);
    report.search_log.push_back(sr.log);
    if (sr.witness) {
      witness_instances.emplace(std::make_pair(id, method),
                                std::move(*sr.witness));
    } else if (required) {
      report.mismatches.push_back(
          {id, method, "required witness not found"});
    } else {
      report.not_reproduced.push_back(search_log_line(sr.log));
    }
  }

  // Fill the matrix: pathological cells report their witness run.
  for (int id = 1; id <= 7; ++id) {
    for (MethodId m : kAllMethods) {
      const auto wit = witness_instances.find({id, m});
      const BenchInstance& inst =
          wit == witness_instances.end() ? fixed.at(id) : wit->second;
      report.cells[{id, m}] = evaluate_cell(inst, m, vcfg);
    }
  }

  // The robust methods must stay normal on every witness as well.
  const std::vector<MethodId> robust = {MethodId::kMaci, MethodId::kImul,
                                        MethodId::kCrf, MethodId::kGm,
                                        MethodId::kScaleMove};
  for (const auto& [key, inst] : witness_instances) {
    for (MethodId m : robust) {
      try {
        const Conclusion c = interpolate(m, inst.rb, inst.obs, vcfg);
        if (detect_abnormality(c, vcfg).abnormal)
          report.mismatches.push_back(
              {key.first, m,
               std::string("abnormal on the ") + method_name(key.second) +
                   " witness"});
      } catch (const Error& e) {
        report.mismatches.push_back(
            {key.first, m,
             std::string("error on the ") + method_name(key.second) +
                 " witness: " + error_code_name(e.code())});
      }
    }
  }

  // Diff the matrix against the recorded expectations.
  for (const auto& [key, cell] : report.cells) {
    const SuiteExpectation& e = report.expected.at(key);
    if (!e.abnormal && !e.linear) continue;
    if (cell.status != "ok") {
      report.mismatches.push_back({key.first, key.second, cell.status});
      continue;
    }
    if (e.abnormal && cell.abnormal != *e.abnormal)
      report.mismatches.push_back(
          {key.first, key.second,
           *e.abnormal ? "expected abnormal" : "expected normal"});
    if (e.linear && cell.linear != *e.linear)
      report.mismatches.push_back(
          {key.first, key.second,
           *e.linear ? "expected piecewise linear" : "expected nonlinear"});
  }

  if (options.out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir = *options.out_dir;
    std::error_code ec;
    fs::create_directories(dir / "witnesses", ec);
    fs::create_directories(dir / "figures", ec);
    if (ec) throw Error(ErrorCode::IoError, ec.message());

    auto write_file = [](const fs::path& p, const std::string& text) {
      std::ofstream os(p, std::ios::binary);
      if (!os) throw Error(ErrorCode::IoError, "cannot write " + p.string());
      os << text;
    };

    write_file(dir / "suite.csv", report.to_csv());

    std::ostringstream log;
    for (const auto& e : report.search_log) log << search_log_line(e) << '\n';
    for (const auto& m : report.mismatches)
      log << "mismatch: example " << m.example_id << ' '
          << method_name(m.method) << ": " << m.what << '\n';
    write_file(dir / "search_log.txt", log.str());

    for (const auto& [key, inst] : witness_instances) {
      RuleBaseDocument doc;
      doc.name = "example" + std::to_string(key.first) + "-witness-" +
                 method_name(key.second);
      doc.default_method = method_name(key.second);
      doc.rulebase = inst.rb;
      const std::string stem = "ex" + std::to_string(key.first) + "_" +
                               method_name(key.second);
      write_file(dir / "witnesses" / (stem + ".fis"), serialize_fis(doc));
      write_file(dir / "witnesses" / (stem + ".obs"),
                 serialize_observation(inst.obs));
    }

    for (int id = 1; id <= 7; ++id) {
      for (MethodId m : kAllMethods) {
        const auto wit = witness_instances.find({id, m});
        const BenchInstance& inst =
            wit == witness_instances.end() ? fixed.at(id) : wit->second;
        std::vector<std::pair<MethodId, Conclusion>> cs;
        try {
          cs.emplace_back(m, interpolate(m, inst.rb, inst.obs, vcfg));
        } catch (const Error&) {
          // the figure still shows the instance
        }
        const std::string name = "example" + std::to_string(id) + "_" +
                                 std::string(method_name(m)) + ".svg";
        render_svg(inst, cs, dir / "figures" / name);
      }
    }
  }
  return report;
}

}  // namespace fri
