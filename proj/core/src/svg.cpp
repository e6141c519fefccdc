#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fri/analysis.hpp"
#include "fri/fis_io.hpp"
#include "fri/suite.hpp"

namespace fri {

namespace {

constexpr double kPanelW = 860.0;
constexpr double kPanelH = 150.0;
constexpr double kMargin = 20.0;
constexpr double kGapY = 26.0;

const char* kPalette[] = {"#4477aa", "#66ccee", "#228833",
                          "#ccbb44", "#aa3377", "#bbbbbb"};

struct Panel {
  double x0, x1;  // data range
  double top;     // pixel offset of the panel top
  std::ostringstream body;

  double px(double x) const {
    const double t = (x - x0) / (x1 - x0);
    return kMargin + std::clamp(t, -0.02, 1.02) * kPanelW;
  }
  double py(double mu) const { return top + kPanelH - mu * (kPanelH - 24.0); }

  void polyline(const std::vector<Breakpoint>& pts, const std::string& stroke,
                double width, const char* dash = nullptr) {
    body << "<polyline fill=\"none\" stroke=\"" << stroke
         << "\" stroke-width=\"" << format_double(width) << "\"";
    if (dash) body << " stroke-dasharray=\"" << dash << "\"";
    body << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) body << ' ';
      body << format_double(px(pts[i].x)) << ',' << format_double(py(pts[i].mu));
    }
    body << "\"/>\n";
  }

  void set_polyline(const FuzzySet& s, const std::string& stroke, double width,
                    const char* dash = nullptr) {
    std::vector<Breakpoint> pts = s.points();
    if (pts.size() == 1) {  // singleton: draw its vertical segment
      pts = {{pts[0].x, 0.0}, {pts[0].x, pts[0].mu}};
    }
    polyline(pts, stroke, width, dash);
  }

  void label(double x, double y, const std::string& text,
             const std::string& fill = "#333333") {
    body << "<text x=\"" << format_double(x) << "\" y=\"" << format_double(y)
         << "\" font-family=\"monospace\" font-size=\"11\" fill=\"" << fill
         << "\">" << text << "</text>\n";
  }

  void frame(const std::string& title) {
    body << "<rect x=\"" << format_double(kMargin) << "\" y=\""
         << format_double(top + 18.0) << "\" width=\"" << format_double(kPanelW)
         << "\" height=\"" << format_double(kPanelH - 16.0)
         << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    label(kMargin, top + 12.0, title);
  }
};

}  // namespace

std::string render_svg_text(
    const BenchInstance& instance,
    std::span<const std::pair<MethodId, Conclusion>> conclusions) {
  const std::size_t dims = instance.rb.inputs.size();
  const double height = kMargin * 2 + (dims + 1) * (kPanelH + kGapY);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
     << format_double(kPanelW + 2 * kMargin) << "\" height=\""
     << format_double(height) << "\" viewBox=\"0 0 "
     << format_double(kPanelW + 2 * kMargin) << ' ' << format_double(height)
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  for (std::size_t d = 0; d < dims; ++d) {
    const auto& part = instance.rb.inputs[d];
    Panel panel{part.range_lo, part.range_hi,
                kMargin + static_cast<double>(d) * (kPanelH + kGapY), {}};
    panel.frame("input " + std::to_string(d + 1) + " (" +
                part.dimension_name + "): antecedents and observation");
    for (std::size_t j = 0; j < part.terms.size(); ++j)
      panel.set_polyline(part.terms[j], kPalette[j % 6], 1.2);
    panel.set_polyline(instance.obs.sets[d], "#000000", 1.6, "5,3");
    os << panel.body.str();
  }

  const auto& out_part = instance.rb.output;
  double lo = out_part.range_lo, hi = out_part.range_hi;
  const double w = hi - lo;
  for (const auto& [id, c] : conclusions) {
    const AlphaCut support = c.cut_at(0.0);
    if (std::isfinite(support.inf)) lo = std::min(lo, std::max(support.inf, out_part.range_lo - w));
    if (std::isfinite(support.sup)) hi = std::max(hi, std::min(support.sup, out_part.range_hi + w));
  }
  Panel panel{lo, hi, kMargin + static_cast<double>(dims) * (kPanelH + kGapY), {}};
  panel.frame("output (" + out_part.dimension_name +
              "): consequents and conclusion");
  for (std::size_t j = 0; j < out_part.terms.size(); ++j)
    panel.set_polyline(out_part.terms[j], kPalette[j % 6], 1.2);

  for (const auto& [id, c] : conclusions) {
    std::vector<Breakpoint> pts;
    if (c.shape) {
      pts = c.shape->points();
      if (pts.size() == 1) pts = {{pts[0].x, 0.0}, {pts[0].x, pts[0].mu}};
    } else {
      for (const AlphaCut& cut : *c.alpha_family) pts.push_back({cut.inf, cut.alpha});
      for (std::size_t i = c.alpha_family->size(); i-- > 0;)
        pts.push_back({(*c.alpha_family)[i].sup, (*c.alpha_family)[i].alpha});
      for (auto& p : pts) {
        if (!std::isfinite(p.x)) p.x = p.x > 0 ? hi : lo;
      }
    }
    panel.polyline(pts, "#cc3311", 2.0);

    const AbnormalityReport ab = detect_abnormality(c);
    if (ab.abnormal && ab.first_violation_alpha) {
      const double alpha = *ab.first_violation_alpha;
      const AlphaCut cut = c.cut_at(alpha);
      const double cx = std::isfinite(cut.inf) ? cut.inf : lo;
      panel.body << "<circle cx=\"" << format_double(panel.px(cx))
                 << "\" cy=\"" << format_double(panel.py(alpha))
                 << "\" r=\"4\" fill=\"none\" stroke=\"#cc3311\" "
                    "stroke-width=\"1.5\"/>\n";
      panel.label(panel.px(cx) + 8.0, panel.py(alpha) - 4.0,
                  std::string(method_name(id)) + " " +
                      violation_kind_name(ab.violation_kind) + " at alpha=" +
                      format_double(alpha),
                  "#cc3311");
    } else {
      panel.label(kMargin + 6.0, panel.top + 32.0, method_name(id),
                  "#cc3311");
    }
  }
  os << panel.body.str();
  os << "</svg>\n";
  return os.str();
}

void render_svg(const BenchInstance& instance,
                std::span<const std::pair<MethodId, Conclusion>> conclusions,
                const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  os << render_svg_text(instance, conclusions);
  if (!os) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

}  // namespace fri
