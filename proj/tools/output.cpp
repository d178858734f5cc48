#include "output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace lowzero::app {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".part";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

namespace {

std::string fx(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

}  // namespace

std::string svg_plot(const PlotSpec& spec) {
  constexpr double W = 720, H = 450, left = 70, right = 170, top = 40, bottom = 55;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : spec.series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  const double pw = W - left - right, ph = H - top - bottom;
  auto X = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  std::string o;
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 720 450\" width=\"720\" height=\"450\" "
       "font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect x=\"0\" y=\"0\" width=\"720\" height=\"450\" fill=\"white\"/>\n";
  o += "<text x=\"" + fx(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
       escape(spec.title) + "</text>\n";
  o += "<rect x=\"" + fx(left) + "\" y=\"" + fx(top) + "\" width=\"" + fx(pw) + "\" height=\"" + fx(ph) +
       "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5, yv = ymin + (ymax - ymin) * i / 5;
    o += "<line x1=\"" + fx(X(xv)) + "\" y1=\"" + fx(top + ph) + "\" x2=\"" + fx(X(xv)) + "\" y2=\"" +
         fx(top + ph + 5) + "\" stroke=\"#333\"/>\n";
    o += "<text x=\"" + fx(X(xv)) + "\" y=\"" + fx(top + ph + 19) + "\" text-anchor=\"middle\">" +
         tick_label(xv) + "</text>\n";
    o += "<line x1=\"" + fx(left - 5) + "\" y1=\"" + fx(Y(yv)) + "\" x2=\"" + fx(left) + "\" y2=\"" + fx(Y(yv)) +
         "\" stroke=\"#333\"/>\n";
    o += "<text x=\"" + fx(left - 8) + "\" y=\"" + fx(Y(yv) + 4) + "\" text-anchor=\"end\">" + tick_label(yv) +
         "</text>\n";
  }
  if (ymin < 0 && ymax > 0)
    o += "<line x1=\"" + fx(left) + "\" y1=\"" + fx(Y(0)) + "\" x2=\"" + fx(left + pw) + "\" y2=\"" + fx(Y(0)) +
         "\" stroke=\"#bbb\" stroke-dasharray=\"2,3\"/>\n";
  o += "<text x=\"" + fx(left + pw / 2) + "\" y=\"" + fx(H - 12) + "\" text-anchor=\"middle\">" +
       escape(spec.xlabel) + "</text>\n";
  o += "<text transform=\"translate(18," + fx(top + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
       escape(spec.ylabel) + "</text>\n";

  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    const auto& s = spec.series[k];
    if (s.bars && s.x.size() > 1) {
      const double bw = std::max(1.0, (X(s.x[1]) - X(s.x[0])) * 0.9);
      const double base = Y(std::max(ymin, 0.0));
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double y = Y(s.y[i]);
        o += "<rect x=\"" + fx(X(s.x[i]) - bw / 2) + "\" y=\"" + fx(std::min(y, base)) + "\" width=\"" + fx(bw) +
             "\" height=\"" + fx(std::abs(base - y)) + "\" fill=\"" + s.color + "\" fill-opacity=\"0.5\"/>\n";
      }
    } else {
      std::string pts;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.y[i])) continue;
        if (!pts.empty()) pts += ' ';
        pts += fx(X(s.x[i])) + "," + fx(Y(s.y[i]));
      }
      o += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.6\"" +
           (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + " points=\"" + pts + "\"/>\n";
    }
    const double ly = top + 14 + 20 * static_cast<double>(k);
    o += "<line x1=\"" + fx(left + pw + 12) + "\" y1=\"" + fx(ly) + "\" x2=\"" + fx(left + pw + 36) + "\" y2=\"" +
         fx(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"" + (s.bars ? "6" : "1.6") + "\"" +
         (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
    o += "<text x=\"" + fx(left + pw + 42) + "\" y=\"" + fx(ly + 4) + "\">" + escape(s.label) + "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

}  // namespace lowzero::app
