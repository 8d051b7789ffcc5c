#include "dtc/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dtc::io {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char* const kBlue = "#2b4c9b";
const char* const kYellow = "#f2c81f";
const char* const kGreen = "#3fa34d";
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  double left = kLeft, top = kTop, width = kWidth - kLeft - kRight, height = kHeight - kTop - kBottom;

  double px(double x) const { return left + (x1 == x0 ? 0.5 : (x - x0) / (x1 - x0)) * width; }
  double py(double y) const { return top + height - (y1 == y0 ? 0.5 : (y - y0) / (y1 - y0)) * height; }
};

void open(std::ostringstream& os, double height = kHeight) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << kWidth << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << height << "\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& os, const Frame& f, const std::string& title, const std::string& xl,
          const std::string& yl, bool log_y = false) {
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
     << "</text>\n";
  os << "<rect x=\"" << num(f.left) << "\" y=\"" << num(f.top) << "\" width=\"" << num(f.width)
     << "\" height=\"" << num(f.height) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = f.x0 + (f.x1 - f.x0) * k / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * k / 4.0;
    os << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << num(f.top + f.height + 16)
       << "\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
    os << "<text x=\"" << num(f.left - 6) << "\" y=\"" << num(f.py(yv) + 4) << "\" text-anchor=\"end\">"
       << tick(log_y ? std::pow(10.0, yv) : yv) << "</text>\n";
  }
  os << "<text x=\"" << num(f.left + f.width / 2) << "\" y=\"" << num(f.top + f.height + 36)
     << "\" text-anchor=\"middle\">" << escape(xl) << "</text>\n";
  os << "<text x=\"16\" y=\"" << num(f.top + f.height / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << num(f.top + f.height / 2) << ")\">" << escape(yl) << "</text>\n";
}

void polyline(std::ostringstream& os, const Frame& f, const std::vector<double>& x, const std::vector<double>& y,
              const char* colour) {
  os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i) os << num(f.px(x[i])) << ',' << num(f.py(y[i])) << ' ';
  os << "\"/>\n";
}

}  // namespace

std::string trajectory_svg(const Trajectory& t, const std::string& title) {
  const double strip = 24;
  std::ostringstream os;
  open(os, kHeight + strip + 10);
  Frame f{0, std::max<double>(1.0, static_cast<double>(t.p.size()) - 1), -1.05, 1.05};
  axes(os, f, title, "n", "P(n)");
  std::vector<double> x(t.p.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
  polyline(os, f, x, t.p, kPalette[0]);

  // Q(n) strip: merge runs of equal sign into single rectangles.
  const double y = kHeight + 4;
  os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + strip / 2 + 4) << "\" text-anchor=\"end\">Q(n)</text>\n";
  std::size_t start = 0;
  for (std::size_t i = 1; i <= t.q.size(); ++i) {
    if (i < t.q.size() && t.q[i] == t.q[start]) continue;
    const double a = f.px(static_cast<double>(start) + 0.5);
    const double b = f.px(static_cast<double>(i) + 0.5);
    os << "<rect x=\"" << num(a) << "\" y=\"" << num(y) << "\" width=\"" << num(std::max(b - a, 0.5))
       << "\" height=\"" << strip << "\" fill=\"" << (t.q[start] > 0 ? kYellow : kBlue) << "\"/>\n";
    start = i;
  }
  os << "</svg>\n";
  return os.str();
}

std::string spectrum_svg(const Spectrum& s, const std::vector<std::size_t>& peaks, const std::string& title) {
  std::ostringstream os;
  open(os);
  double top = 0.0;
  for (double m : s.magnitude) top = std::max(top, m);
  Frame f{0.0, 1.0, 0.0, top > 0 ? top * 1.15 : 1.0};
  axes(os, f, title, "nu", "|S(nu)|");
  polyline(os, f, s.nu, s.magnitude, kPalette[0]);
  for (std::size_t k : peaks) {
    if (k >= s.nu.size()) continue;
    const double px = f.px(s.nu[k]);
    const double py = f.py(s.magnitude[k]);
    os << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"3\" fill=\"" << kPalette[1] << "\"/>\n";
    os << "<text x=\"" << num(px) << "\" y=\"" << num(py - 8) << "\" text-anchor=\"middle\" fill=\"" << kPalette[1]
       << "\">" << tick(s.nu[k]) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string curve_svg(const std::vector<CurveSeries>& series, const std::string& x_label, const std::string& y_label,
                      const std::string& title, bool log_y) {
  std::ostringstream os;
  open(os);
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  auto yv = [&](double y) { return log_y ? std::log10(std::max(y, 1e-300)) : y; };
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_y && s.y[i] <= 0) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, yv(s.y[i]));
      y1 = std::max(y1, yv(s.y[i]));
    }
  }
  if (x0 > x1) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!log_y) y0 = std::min(y0, 0.0);
  Frame f{x0, x1, y0, y1 + 0.05 * (y1 - y0 + 1e-12)};
  axes(os, f, title, x_label, y_label, log_y);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_y && s.y[i] <= 0) continue;
      x.push_back(s.x[i]);
      y.push_back(yv(s.y[i]));
    }
    polyline(os, f, x, y, colour);
    if (s.x.size() <= 200) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (log_y && s.y[i] <= 0) continue;
        const bool hollow = i < s.censored.size() && s.censored[i];
        os << "<circle cx=\"" << num(f.px(s.x[i])) << "\" cy=\"" << num(f.py(yv(s.y[i]))) << "\" r=\"3\" fill=\""
           << (hollow ? "white" : colour) << "\" stroke=\"" << colour << "\"/>\n";
      }
    }
    os << "<text x=\"" << num(kLeft + 10) << "\" y=\"" << num(kTop + 16 + 16 * k) << "\" fill=\"" << colour << "\">"
       << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string phase_svg(const PhaseDiagram& d, const std::string& title) {
  std::ostringstream os;
  open(os);
  if (d.cells.empty() || d.epsilon.empty()) {
    os << "</svg>\n";
    return os.str();
  }
  const std::size_t ne = d.epsilon.size();
  const std::size_t nl = d.cells.size() / ne;
  const double e0 = d.epsilon.front();
  const double e1 = d.epsilon.back();
  Frame f{e0, e1, static_cast<double>(d.cells.front().atoms) - 0.5, static_cast<double>(d.cells.back().atoms) + 0.5};
  const double cw = f.width / static_cast<double>(ne);
  const double ch = f.height / static_cast<double>(nl);
  for (std::size_t li = 0; li < nl; ++li) {
    for (std::size_t ei = 0; ei < ne; ++ei) {
      const PhaseCell& c = d.cells[li * ne + ei];
      const char* colour = c.phase == PhaseClass::Growing ? kYellow : c.phase == PhaseClass::Flat ? kGreen : kBlue;
      os << "<rect x=\"" << num(f.left + cw * static_cast<double>(ei)) << "\" y=\""
         << num(f.top + f.height - ch * static_cast<double>(li + 1)) << "\" width=\"" << num(cw + 0.3)
         << "\" height=\"" << num(ch + 0.3) << "\" fill=\"" << colour << "\""
         << (c.censored ? " fill-opacity=\"0.6\"" : "") << "/>\n";
    }
  }
  axes(os, f, title, "epsilon", "L");
  os << "</svg>\n";
  return os.str();
}

std::string decay_svg(const Trajectory& t, const FitReport& fit, const std::string& title) {
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t n = 0; n < t.p.size(); ++n) {
    x.push_back(static_cast<double>(n));
    y.push_back(std::abs(t.p[n]));
  }
  CurveSeries data{"|P(n)|", x, y, {}};
  CurveSeries line{"fit alpha = " + tick(fit.alpha), {}, {}, {}};
  for (long long n = fit.start; n <= fit.end; ++n) {
    line.x.push_back(static_cast<double>(n));
    line.y.push_back(std::exp(fit.intercept - fit.alpha * static_cast<double>(n)));
  }
  return curve_svg({data, line}, "n", "|P(n)|", title, true);
}

}  // namespace dtc::io
