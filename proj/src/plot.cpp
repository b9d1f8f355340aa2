#include "foguel/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "foguel/error.hpp"
#include "foguel/spectral.hpp"

namespace foguel {

namespace {

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

}  // namespace

double PlotFrame::px(double x) const {
  return kLeft + (x - x_min) / (x_max - x_min) * (kWidth - kLeft - kRight);
}

double PlotFrame::py(double y) const {
  return kHeight - kBottom - (y - y_min) / (y_max - y_min) * (kHeight - kTop - kBottom);
}

PlotData mapping_curve_data() {
  PlotData data;
  data.title = "y = x and y = |x - 1/x|";
  data.x_label = "x";
  data.y_label = "y";
  data.x_min = 0.2;
  data.x_max = 3.0;
  data.y_min = 0.0;
  data.y_max = 3.0;
  Series diag{"y = x", "#1f77b4", {}, {}, false};
  Series map{"y = |x - 1/x|", "#d62728", {}, {}, false};
  constexpr int kSamples = 561;
  for (int i = 0; i < kSamples; ++i) {
    const double x = 0.2 + 2.8 * i / (kSamples - 1);
    diag.x.push_back(x);
    diag.y.push_back(x);
    map.x.push_back(x);
    map.y.push_back(spectral_map(x));
  }
  data.series = {std::move(diag), std::move(map)};
  return data;
}

PlotData spectrum_scatter_data(std::span<const double> sigma, std::span<const double> predicted,
                               std::string title) {
  PlotData data;
  data.title = std::move(title);
  data.x_label = "index";
  data.y_label = "singular value";
  Series pts{"singular values", "#1f77b4", {}, {}, true};
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    pts.x.push_back(static_cast<double>(i));
    pts.y.push_back(sigma[i]);
  }
  data.series = {std::move(pts)};
  data.reference_y.assign(predicted.begin(), predicted.end());
  double top = 1.0;
  for (double s : sigma) top = std::max(top, s);
  for (double p : predicted) top = std::max(top, p);
  data.x_min = 0.0;
  data.x_max = std::max<double>(1.0, static_cast<double>(sigma.size()));
  data.y_min = 0.0;
  data.y_max = top * 1.1;
  return data;
}

PlotData convergence_data(std::span<const double> Ns, std::span<const double> norms,
                          double reference, std::string title) {
  PlotData data;
  data.title = std::move(title);
  data.x_label = "log2 N";
  data.y_label = "norm of truncation";
  Series line{"truncated norm", "#2ca02c", {}, {}, true};
  for (std::size_t i = 0; i < Ns.size() && i < norms.size(); ++i) {
    line.x.push_back(std::log2(Ns[i]));
    line.y.push_back(norms[i]);
  }
  data.reference_y = {reference};
  double lo = reference;
  double hi = reference;
  for (double v : norms) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double pad = std::max(0.05, 0.1 * (hi - lo));
  data.y_min = lo - pad;
  data.y_max = hi + pad;
  if (line.x.empty()) {
    data.x_min = 0.0;
    data.x_max = 1.0;
  } else {
    data.x_min = line.x.front() - 0.5;
    data.x_max = line.x.back() + 0.5;
  }
  data.series = {std::move(line)};
  return data;
}

std::string render_plot(PlotKind kind, const PlotData& data) {
  const bool empty = std::all_of(data.series.begin(), data.series.end(),
                                 [](const Series& s) { return s.x.empty(); });
  if (data.series.empty() || empty) throw DimensionError("emit_plot: no data to plot");
  if (!(data.x_max > data.x_min) || !(data.y_max > data.y_min)) {
    throw DimensionError("emit_plot: degenerate axis range");
  }
  const PlotFrame f{data.x_min, data.x_max, data.y_min, data.y_max};
  const double left = PlotFrame::kLeft;
  const double right = PlotFrame::kWidth - PlotFrame::kRight;
  const double top = PlotFrame::kTop;
  const double bottom = PlotFrame::kHeight - PlotFrame::kBottom;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
        "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n"
     << "<defs><clipPath id=\"plot-area\"><rect x=\"" << fmt2(left) << "\" y=\"" << fmt2(top)
     << "\" width=\"" << fmt2(right - left) << "\" height=\"" << fmt2(bottom - top)
     << "\"/></clipPath></defs>\n";
  os << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << escape(data.title)
     << "</text>\n";

  // Axes and ticks.
  os << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(bottom) << "\" x2=\"" << fmt2(right)
     << "\" y2=\"" << fmt2(bottom) << "\"/>\n"
     << "<line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(top) << "\" x2=\"" << fmt2(left)
     << "\" y2=\"" << fmt2(bottom) << "\"/>\n</g>\n";
  os << "<g id=\"ticks\">\n";
  const double xs = nice_step(data.x_max - data.x_min);
  for (double t = std::ceil(data.x_min / xs) * xs; t <= data.x_max + 1e-9 * xs; t += xs) {
    const double x = f.px(t);
    os << "<line x1=\"" << fmt2(x) << "\" y1=\"" << fmt2(bottom) << "\" x2=\"" << fmt2(x)
       << "\" y2=\"" << fmt2(bottom + 5) << "\" stroke=\"black\"/>"
       << "<text x=\"" << fmt2(x) << "\" y=\"" << fmt2(bottom + 20)
       << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  const double ys = nice_step(data.y_max - data.y_min);
  for (double t = std::ceil(data.y_min / ys) * ys; t <= data.y_max + 1e-9 * ys; t += ys) {
    const double y = f.py(t);
    os << "<line x1=\"" << fmt2(left - 5) << "\" y1=\"" << fmt2(y) << "\" x2=\"" << fmt2(left)
       << "\" y2=\"" << fmt2(y) << "\" stroke=\"black\"/>"
       << "<text x=\"" << fmt2(left - 8) << "\" y=\"" << fmt2(y + 4)
       << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  os << "</g>\n";
  os << "<text x=\"" << fmt2((left + right) / 2) << "\" y=\"" << fmt2(PlotFrame::kHeight - 15)
     << "\" text-anchor=\"middle\">" << escape(data.x_label) << "</text>\n"
     << "<text x=\"18\" y=\"" << fmt2((top + bottom) / 2) << "\" text-anchor=\"middle\" "
     << "transform=\"rotate(-90 18 " << fmt2((top + bottom) / 2) << ")\">"
     << escape(data.y_label) << "</text>\n";

  os << "<g clip-path=\"url(#plot-area)\">\n";
  for (double ref : data.reference_y) {
    if (ref < data.y_min || ref > data.y_max) continue;
    os << "<line class=\"reference\" x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(f.py(ref))
       << "\" x2=\"" << fmt2(right) << "\" y2=\"" << fmt2(f.py(ref))
       << "\" stroke=\"#7f7f7f\" stroke-dasharray=\"6 4\"/>\n";
  }
  for (std::size_t s = 0; s < data.series.size(); ++s) {
    const Series& series = data.series[s];
    if (series.markers) {
      os << "<g id=\"series-" << s << "\" fill=\"" << series.color << "\">\n";
      for (std::size_t i = 0; i < series.x.size(); ++i) {
        os << "<circle cx=\"" << fmt2(f.px(series.x[i])) << "\" cy=\"" << fmt2(f.py(series.y[i]))
           << "\" r=\"2.5\"/>\n";
      }
      os << "</g>\n";
    }
    // Convergence plots join their markers.
    if (!series.markers || kind == PlotKind::kConvergence) {
      os << "<polyline id=\"curve-" << s << "\" fill=\"none\" stroke=\"" << series.color
         << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < series.x.size(); ++i) {
        if (i) os << ' ';
        os << fmt2(f.px(series.x[i])) << ',' << fmt2(f.py(series.y[i]));
      }
      os << "\"/>\n";
    }
  }
  os << "</g>\n";

  // Legend.
  os << "<g id=\"legend\">\n";
  for (std::size_t s = 0; s < data.series.size(); ++s) {
    const double y = top + 15 + 18 * static_cast<double>(s);
    os << "<rect x=\"" << fmt2(right - 180) << "\" y=\"" << fmt2(y - 9) << "\" width=\"12\" "
       << "height=\"12\" fill=\"" << data.series[s].color << "\"/>"
       << "<text x=\"" << fmt2(right - 162) << "\" y=\"" << fmt2(y + 1) << "\">"
       << escape(data.series[s].label) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

double polyline_distance(std::string_view svg, std::string_view id, double px, double py) {
  const std::string marker = "id=\"" + std::string(id) + "\"";
  const auto at = svg.find(marker);
  if (at == std::string_view::npos) return std::numeric_limits<double>::infinity();
  const auto start = svg.find("points=\"", at);
  if (start == std::string_view::npos) return std::numeric_limits<double>::infinity();
  const auto end = svg.find('"', start + 8);
  std::istringstream is(std::string(svg.substr(start + 8, end - start - 8)));
  std::vector<std::pair<double, double>> pts;
  double x = 0.0;
  double y = 0.0;
  char comma = 0;
  while (is >> x >> comma >> y) pts.emplace_back(x, y);

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto [ax, ay] = pts[i];
    const auto [bx, by] = pts[i + 1];
    const double dx = bx - ax;
    const double dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    const double t = len2 > 0.0 ? std::clamp(((px - ax) * dx + (py - ay) * dy) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, std::hypot(ax + t * dx - px, ay + t * dy - py));
  }
  if (pts.size() == 1) best = std::hypot(pts[0].first - px, pts[0].second - py);
  return best;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at " + path.string());
  }
}

void emit_plot(PlotKind kind, const PlotData& data, const std::filesystem::path& path) {
  write_file_atomic(path, render_plot(kind, data));
}

}  // namespace foguel
