#include "qcorr_app/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "qcorr_app/table.hpp"

namespace qcorr::app {

namespace {

constexpr double kWidth = 640, kHeight = 420, kLeft = 60, kRight = 150, kTop = 36, kBottom = 48;
constexpr std::array<const char*, 8> kColours{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};

struct Range {
  double lo = 0, hi = 1;
  void widen() {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

Range range_of(const std::vector<const std::vector<double>*>& vs) {
  Range r{INFINITY, -INFINITY};
  for (const auto* v : vs)
    for (double x : *v)
      if (std::isfinite(x)) {
        r.lo = std::min(r.lo, x);
        r.hi = std::max(r.hi, x);
      }
  if (!std::isfinite(r.lo)) r = {0, 1};
  r.widen();
  return r;
}

void frame(std::ostringstream& s, const std::string& title, const std::string& x_label, Range xr, Range yr,
           double plot_w) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kLeft << "\" y=\"20\" font-size=\"13\">" << title << "</text>\n"
    << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
    << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  const double y0 = kHeight - kBottom;
  s << "<text x=\"" << kLeft << "\" y=\"" << y0 + 16 << "\">" << format_number(xr.lo) << "</text>\n"
    << "<text x=\"" << kLeft + plot_w << "\" y=\"" << y0 + 16 << "\" text-anchor=\"end\">" << format_number(xr.hi)
    << "</text>\n"
    << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << y0 + 34 << "\" text-anchor=\"middle\">" << x_label
    << "</text>\n"
    << "<text x=\"" << kLeft - 4 << "\" y=\"" << y0 << "\" text-anchor=\"end\">" << format_number(yr.lo)
    << "</text>\n"
    << "<text x=\"" << kLeft - 4 << "\" y=\"" << kTop + 10 << "\" text-anchor=\"end\">" << format_number(yr.hi)
    << "</text>\n";
}

}  // namespace

std::string line_plot_svg(const std::string& title, const std::string& x_label, const std::vector<Series>& series) {
  std::vector<const std::vector<double>*> xs, ys;
  for (const auto& s : series) {
    xs.push_back(&s.x);
    ys.push_back(&s.y);
  }
  const Range xr = range_of(xs);
  const Range yr = range_of(ys);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  std::ostringstream s;
  frame(s, title, x_label, xr, yr, pw);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* colour = kColours[k % kColours.size()];
    s << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[k].x.size(); ++i) {
      const double x = series[k].x[i], y = series[k].y[i];
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      s << kLeft + pw * (x - xr.lo) / (xr.hi - xr.lo) << ',' << kTop + ph * (1 - (y - yr.lo) / (yr.hi - yr.lo))
        << ' ';
    }
    s << "\"/>\n";
    const double ly = kTop + 14 + 16 * static_cast<double>(k);
    s << "<line x1=\"" << kLeft + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + pw + 30 << "\" y2=\""
      << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << kLeft + pw + 34 << "\" y=\"" << ly << "\">" << series[k].label << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string heatmap_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                        const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::vector<double>& values) {
  const Range xr = range_of({&xs});
  const Range yr = range_of({&ys});
  const Range vr = range_of({&values});
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  std::ostringstream s;
  frame(s, title, x_label, xr, yr, pw);
  const double cw = pw / static_cast<double>(std::max<std::size_t>(xs.size(), 1));
  const double ch = ph / static_cast<double>(std::max<std::size_t>(ys.size(), 1));
  for (std::size_t iy = 0; iy < ys.size(); ++iy)
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
      const double v = values[iy * xs.size() + ix];
      const double u = std::isfinite(v) ? (v - vr.lo) / (vr.hi - vr.lo) : 0.0;
      const int red = static_cast<int>(255 * u);
      const int blue = 255 - red;
      s << "<rect x=\"" << kLeft + cw * static_cast<double>(ix) << "\" y=\""
        << kTop + ph - ch * static_cast<double>(iy + 1) << "\" width=\"" << cw + 0.5 << "\" height=\"" << ch + 0.5
        << "\" fill=\"rgb(" << red << ",60," << blue << ")\"/>\n";
    }
  s << "<text x=\"" << kLeft + pw + 10 << "\" y=\"" << kTop + 14 << "\">" << y_label << " (vertical)</text>\n"
    << "<text x=\"" << kLeft + pw + 10 << "\" y=\"" << kTop + 30 << "\">red " << format_number(vr.hi)
    << "</text>\n"
    << "<text x=\"" << kLeft + pw + 10 << "\" y=\"" << kTop + 46 << "\">blue " << format_number(vr.lo)
    << "</text>\n</svg>\n";
  return s.str();
}

}  // namespace qcorr::app
