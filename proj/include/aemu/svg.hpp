#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace aemu {

// Small static-SVG plotting toolkit: line plots with optional log axes and
// cell heatmaps. Layout constants are fixed; figures are meant for reports,
// not interaction.
namespace svg {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

namespace detail {

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> p = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                             "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return p;
}

inline std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(4) << v;
  return ss.str();
}

inline std::string esc(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '&') out += "&amp;";
    else if (ch == '<') out += "&lt;";
    else if (ch == '>') out += "&gt;";
    else out += ch;
  }
  return out;
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  bool log = false;

  double unit(double v) const {
    if (log) return (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
    return (v - lo) / (hi - lo);
  }

  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      const int d0 = static_cast<int>(std::floor(std::log10(lo) + 1e-9));
      const int d1 = static_cast<int>(std::ceil(std::log10(hi) - 1e-9));
      for (int d = d0; d <= d1; ++d) {
        const double v = std::pow(10.0, d);
        if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) t.push_back(v);
      }
      return t;
    }
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
      if (raw <= m * mag) {
        step = m * mag;
        break;
      }
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + 1e-9 * span; v += step) t.push_back(v);
    return t;
  }
};

// interpolate a compact dark-blue -> teal -> yellow map
inline std::string colormap(double u) {
  u = std::clamp(u, 0.0, 1.0);
  const double anchors[4][3] = {
      {68, 1, 84}, {49, 104, 142}, {53, 183, 121}, {253, 231, 37}};
  const double x = u * 3.0;
  const int seg = std::min(2, static_cast<int>(x));
  const double f = x - seg;
  std::ostringstream ss;
  ss << "rgb(" << static_cast<int>(anchors[seg][0] + f * (anchors[seg + 1][0] - anchors[seg][0]))
     << "," << static_cast<int>(anchors[seg][1] + f * (anchors[seg + 1][1] - anchors[seg][1]))
     << "," << static_cast<int>(anchors[seg][2] + f * (anchors[seg + 1][2] - anchors[seg][2]))
     << ")";
  return ss.str();
}

}  // namespace detail

inline std::string line_plot(const std::string& title, const std::string& xlabel,
                             const std::string& ylabel, const std::vector<Series>& series,
                             bool log_x = false, bool log_y = false) {
  const double W = 860, H = 560, L = 80, R = 200, T = 50, B = 70;
  const double pw = W - L - R, ph = H - T - B;

  detail::Axis ax, ay;
  ax.log = log_x;
  ay.log = log_y;
  bool any = false;
  for (const auto& s : series)
    for (auto [x, y] : s.points) {
      if (log_x && x <= 0.0) continue;
      if (log_y && y <= 0.0) continue;
      if (!any) {
        ax.lo = ax.hi = x;
        ay.lo = ay.hi = y;
        any = true;
      }
      ax.lo = std::min(ax.lo, x);
      ax.hi = std::max(ax.hi, x);
      ay.lo = std::min(ay.lo, y);
      ay.hi = std::max(ay.hi, y);
    }
  if (!any) {
    ax.lo = 0.1;
    ax.hi = 1.0;
    ay.lo = 0.1;
    ay.hi = 1.0;
  }
  if (!log_y) {
    const double pad = (ay.hi - ay.lo) * 0.08 + 1e-12;
    ay.lo -= pad;
    ay.hi += pad;
  } else {
    ay.lo /= 1.5;
    ay.hi *= 1.5;
  }
  if (!log_x) {
    const double pad = (ax.hi - ax.lo) * 0.05 + 1e-12;
    ax.lo -= pad;
    ax.hi += pad;
  } else {
    ax.lo /= 1.2;
    ax.hi *= 1.2;
  }

  auto px = [&](double x) { return L + ax.unit(x) * pw; };
  auto py = [&](double y) { return T + (1.0 - ay.unit(y)) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << (L + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << detail::esc(title) << "</text>\n";
  out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double v : ax.ticks()) {
    const double x = px(v);
    out << "<line x1=\"" << x << "\" y1=\"" << (T + ph) << "\" x2=\"" << x << "\" y2=\""
        << (T + ph + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << (T + ph + 20)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << detail::fmt(v) << "</text>\n";
  }
  for (double v : ay.ticks()) {
    const double y = py(v);
    out << "<line x1=\"" << (L - 5) << "\" y1=\"" << y << "\" x2=\"" << L << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (L - 8) << "\" y=\"" << (y + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << detail::fmt(v) << "</text>\n";
  }
  out << "<text x=\"" << (L + pw / 2) << "\" y=\"" << (H - 18)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << detail::esc(xlabel) << "</text>\n";
  out << "<text x=\"20\" y=\"" << (T + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 20 " << (T + ph / 2) << ")\">" << detail::esc(ylabel)
      << "</text>\n";

  int idx = 0;
  for (const auto& s : series) {
    const std::string color = detail::palette()[idx % detail::palette().size()];
    std::ostringstream pts;
    for (auto [x, y] : s.points) {
      if ((log_x && x <= 0.0) || (log_y && y <= 0.0)) continue;
      pts << px(x) << "," << py(y) << " ";
    }
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\""
        << pts.str() << "\"/>\n";
    for (auto [x, y] : s.points) {
      if ((log_x && x <= 0.0) || (log_y && y <= 0.0)) continue;
      out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.6\" fill=\"" << color
          << "\"/>\n";
    }
    const double ly = T + 16 + 18 * idx;
    out << "<line x1=\"" << (L + pw + 12) << "\" y1=\"" << ly << "\" x2=\"" << (L + pw + 36)
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << (L + pw + 42) << "\" y=\"" << (ly + 4) << "\" font-size=\"12\">"
        << detail::esc(s.label) << "</text>\n";
    ++idx;
  }
  out << "</svg>\n";
  return out.str();
}

// values(row, col) drawn with row 0 at the bottom; tick labels supplied by
// the caller, one per row/column.
inline std::string heatmap(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel, const std::vector<std::string>& col_labels,
                           const std::vector<std::string>& row_labels,
                           const std::vector<std::vector<double>>& values) {
  const std::size_t nr = values.size();
  const std::size_t nc = nr ? values.front().size() : 0;
  const double W = 860, H = 560, L = 90, R = 120, T = 50, B = 80;
  const double pw = W - L - R, ph = H - T - B;

  double lo = 0.0, hi = 1.0;
  bool any = false;
  for (const auto& row : values)
    for (double v : row) {
      if (!any) {
        lo = hi = v;
        any = true;
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (!any || hi == lo) hi = lo + 1.0;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << (L + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << detail::esc(title) << "</text>\n";
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) {
      const double u = (values[r][c] - lo) / (hi - lo);
      const double x = L + c * pw / nc;
      const double y = T + ph - (r + 1) * ph / nr;
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << (pw / nc + 0.5)
          << "\" height=\"" << (ph / nr + 0.5) << "\" fill=\"" << detail::colormap(u) << "\"/>\n";
    }
  for (std::size_t c = 0; c < nc; ++c) {
    if (nc > 25 && c % (nc / 12 + 1) != 0) continue;
    out << "<text x=\"" << (L + (c + 0.5) * pw / nc) << "\" y=\"" << (T + ph + 16)
        << "\" text-anchor=\"middle\" font-size=\"10\">"
        << detail::esc(c < col_labels.size() ? col_labels[c] : "") << "</text>\n";
  }
  for (std::size_t r = 0; r < nr; ++r) {
    if (nr > 25 && r % (nr / 12 + 1) != 0) continue;
    out << "<text x=\"" << (L - 6) << "\" y=\"" << (T + ph - (r + 0.5) * ph / nr + 4)
        << "\" text-anchor=\"end\" font-size=\"10\">"
        << detail::esc(r < row_labels.size() ? row_labels[r] : "") << "</text>\n";
  }
  out << "<text x=\"" << (L + pw / 2) << "\" y=\"" << (H - 24)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << detail::esc(xlabel) << "</text>\n";
  out << "<text x=\"24\" y=\"" << (T + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 24 " << (T + ph / 2) << ")\">" << detail::esc(ylabel)
      << "</text>\n";
  // colorbar
  const double cbx = L + pw + 24, cbw = 18;
  for (int i = 0; i < 100; ++i) {
    const double y = T + ph - (i + 1) * ph / 100;
    out << "<rect x=\"" << cbx << "\" y=\"" << y << "\" width=\"" << cbw << "\" height=\""
        << (ph / 100 + 0.5) << "\" fill=\"" << detail::colormap((i + 0.5) / 100.0) << "\"/>\n";
  }
  out << "<text x=\"" << (cbx + cbw + 6) << "\" y=\"" << (T + ph) << "\" font-size=\"11\">"
      << detail::fmt(lo) << "</text>\n";
  out << "<text x=\"" << (cbx + cbw + 6) << "\" y=\"" << (T + 10) << "\" font-size=\"11\">"
      << detail::fmt(hi) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace svg
}  // namespace aemu
