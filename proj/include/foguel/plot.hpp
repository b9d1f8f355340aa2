#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace foguel {

enum class PlotKind { kMappingCurve, kSpectrumScatter, kConvergence };

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // scatter points instead of a polyline
};

struct PlotData {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  /// Horizontal dashed reference lines (e.g. the predicted limit).
  std::vector<double> reference_y;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

/// Fixed 800×600 canvas with a margin for axes and labels.
struct PlotFrame {
  static constexpr double kWidth = 800.0;
  static constexpr double kHeight = 600.0;
  static constexpr double kLeft = 70.0;
  static constexpr double kRight = 30.0;
  static constexpr double kTop = 50.0;
  static constexpr double kBottom = 60.0;

  double x_min, x_max, y_min, y_max;

  double px(double x) const;
  double py(double y) const;
};

/// y = x and y = |x − 1/x| over x ∈ [0.2, 3], 561 samples each.
PlotData mapping_curve_data();

/// Singular values plotted against their index, with predicted points as reference lines.
PlotData spectrum_scatter_data(std::span<const double> sigma, std::span<const double> predicted,
                               std::string title);

/// Truncated norms against N with the limiting value as a reference line.
PlotData convergence_data(std::span<const double> Ns, std::span<const double> norms,
                          double reference, std::string title);

/// Standalone SVG document; byte-identical for identical input.
std::string render_plot(PlotKind kind, const PlotData& data);

/// Renders and writes atomically (temporary file, then rename).
void emit_plot(PlotKind kind, const PlotData& data, const std::filesystem::path& path);

/// Smallest distance (in canvas pixels) from (px, py) to the polyline with the
/// given element id in an SVG document; +inf when the polyline is absent.
double polyline_distance(std::string_view svg, std::string_view id, double px, double py);

/// Writes `content` to `path` via a sibling temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace foguel
