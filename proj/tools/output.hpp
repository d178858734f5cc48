#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lowzero::app {

/// Shortest round-trip decimal form, so reruns print identical bytes.
std::string num(double x);

/// Writes through a temporary file; throws std::runtime_error when the target is unwritable.
void write_text(const std::filesystem::path& path, const std::string& text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string str() const;
};

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  bool dashed = false;
  bool bars = false;
};

struct PlotSpec {
  std::string title, xlabel, ylabel;
  std::vector<PlotSeries> series;
};

/// Static line/bar chart with a fixed 720x450 viewBox and no metadata.
std::string svg_plot(const PlotSpec& spec);

}  // namespace lowzero::app
