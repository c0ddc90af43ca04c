#include "svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <vector>

#include "tsloc/errors.hpp"

namespace tsloc::cli {
namespace {

constexpr int kPanelWidth = kSvgWidth / 3;
constexpr double kLeft = 56.0;
constexpr double kRight = 12.0;
constexpr double kTop = 44.0;
constexpr double kBottom = 30.0;

constexpr std::array<const char*, 6> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // Avoid "-0.00" so output does not depend on the sign of tiny values.
  if (std::string_view(buf) == "-0.00") return "0.00";
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  if (std::string_view(buf) == "-0") return "0";
  return buf;
}

struct Panel {
  double x0;  // left edge of the panel in the canvas
  double y0;  // top edge of the row
  double lo;
  double hi;
  std::size_t timesteps;

  double px(std::size_t t) const {
    const double w = kPanelWidth - kLeft - kRight;
    const double span = timesteps > 1 ? static_cast<double>(timesteps - 1) : 1.0;
    return x0 + kLeft + w * static_cast<double>(t) / span;
  }
  double py(double v) const {
    const double h = kSvgRowHeight - kTop - kBottom;
    return y0 + kTop + h * (hi - v) / (hi - lo);
  }
};

std::pair<double, double> value_range(const std::vector<std::vector<double>>& series) {
  double lo = series.front().front();
  double hi = lo;
  for (const auto& s : series) {
    for (const double v : s) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  return {lo, hi};
}

void axes(std::string& out, const Panel& p, const std::string& title) {
  const double left = p.x0 + kLeft;
  const double right = p.x0 + kPanelWidth - kRight;
  const double top = p.y0 + kTop;
  const double bottom = p.y0 + kSvgRowHeight - kBottom;
  out += "<text x=\"" + num(left) + "\" y=\"" + num(p.y0 + 34) +
         "\" font-size=\"13\">" + title + "</text>\n";
  out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" +
         num(right - left) + "\" height=\"" + num(bottom - top) +
         "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";

  const double mid = (p.lo + p.hi) / 2.0;
  for (const double v : {p.lo, mid, p.hi}) {
    const double y = p.py(v);
    out += "<line x1=\"" + num(left - 4) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(left) + "\" y2=\"" + num(y) + "\" stroke=\"#999999\"/>\n";
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y + 4) +
           "\" font-size=\"10\" text-anchor=\"end\">" + label(v) + "</text>\n";
  }
  const std::size_t last = p.timesteps - 1;
  for (const std::size_t t : {std::size_t{0}, last / 2, last}) {
    const double x = p.px(t);
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(bottom) + "\" x2=\"" +
           num(x) + "\" y2=\"" + num(bottom + 4) + "\" stroke=\"#999999\"/>\n";
    out += "<text x=\"" + num(x) + "\" y=\"" + num(bottom + 16) +
           "\" font-size=\"10\" text-anchor=\"middle\">" + std::to_string(t) +
           "</text>\n";
  }
}

void polyline(std::string& out, const Panel& p, const std::vector<double>& s,
              const char* color) {
  out += "<polyline fill=\"none\" stroke=\"";
  out += color;
  out += "\" stroke-width=\"1.2\" points=\"";
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (t) out += ' ';
    out += num(p.px(t)) + "," + num(p.py(s[t]));
  }
  out += "\"/>\n";
}

}  // namespace

std::string render_components_svg(const Dataset& ds,
                                  std::span<const std::size_t> samples) {
  if (!ds.components()) {
    throw Error("MissingComponents: dataset has no component tensors");
  }
  const auto& comps = *ds.components();
  const Shape shape = ds.shape();
  const int height = kSvgRowHeight * static_cast<int>(samples.size());

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kSvgWidth) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(kSvgWidth) + " " +
         std::to_string(height) + "\" font-family=\"sans-serif\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  for (std::size_t row = 0; row < samples.size(); ++row) {
    const std::size_t s = samples[row];
    if (s >= shape.samples) {
      throw Error("sample index " + std::to_string(s) + " is out of range");
    }
    std::vector<std::vector<double>> signal, feature, sum;
    for (std::size_t c = 0; c < shape.dims; ++c) {
      const auto n = comps.signal.slice(s, c);
      const auto f = comps.feature.slice(s, c);
      signal.emplace_back(n.begin(), n.end());
      feature.emplace_back(f.begin(), f.end());
      std::vector<double> x(shape.timesteps);
      for (std::size_t t = 0; t < shape.timesteps; ++t) x[t] = n[t] + f[t];
      sum.push_back(std::move(x));
    }

    const double y0 = static_cast<double>(kSvgRowHeight) * static_cast<double>(row);
    const std::string tag = "class " + std::to_string(ds.y()[s]) + ", sample " +
                            std::to_string(s);
    out += "<g id=\"row-" + std::to_string(row) + "\">\n";

    const std::array<std::pair<const char*, const std::vector<std::vector<double>>*>, 3>
        columns = {{{"background signal", &signal},
                    {"localized feature", &feature},
                    {"sum", &sum}}};
    for (std::size_t col = 0; col < columns.size(); ++col) {
      const auto [lo, hi] = value_range(*columns[col].second);
      const Panel panel{static_cast<double>(kPanelWidth) * static_cast<double>(col),
                        y0, lo, hi, shape.timesteps};
      if (col == 2) {
        for (std::size_t c = 0; c < shape.dims; ++c) {
          for (const auto& run : mask_runs(ds.mask().slice(s, c))) {
            // Shade half a step either side so single-step windows stay visible.
            const double step = shape.timesteps > 1
                                    ? (panel.px(1) - panel.px(0)) / 2.0
                                    : 0.0;
            const double x = panel.px(run.start) - step;
            const double w = panel.px(run.start + run.length - 1) + step - x;
            out += "<rect class=\"gt-window\" x=\"" + num(x) + "\" y=\"" +
                   num(y0 + kTop) + "\" width=\"" + num(w) + "\" height=\"" +
                   num(kSvgRowHeight - kTop - kBottom) + "\" fill=\"" +
                   kPalette[c % kPalette.size()] + "\" fill-opacity=\"0.18\"/>\n";
          }
        }
      }
      axes(out, panel, tag + " | " + columns[col].first);
      for (std::size_t c = 0; c < shape.dims; ++c) {
        polyline(out, panel, (*columns[col].second)[c], kPalette[c % kPalette.size()]);
      }
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace tsloc::cli
