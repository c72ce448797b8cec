#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "scid/report.hpp"

namespace scid::report {

namespace {

std::string n(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

std::string label(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

constexpr double kW = 720, kH = 420, kLeft = 60, kRight = 20, kTop = 30, kBottom = 50;

std::string header(double w, double h, const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + n(w) + "\" height=\"" + n(h) +
         "\" font-family=\"sans-serif\" font-size=\"11\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
         "<text x=\"" + n(w / 2) + "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" + title + "</text>\n";
}

void axes(std::ostringstream& os, double x0, double y0, double w, double h, double xmin, double xmax, double ymin,
          double ymax, const std::string& xlabel, const std::string& ylabel) {
  os << "<rect x=\"" << n(x0) << "\" y=\"" << n(y0) << "\" width=\"" << n(w) << "\" height=\"" << n(h)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + w * i / 4, vx = xmin + (xmax - xmin) * i / 4;
    const double fy = y0 + h - h * i / 4, vy = ymin + (ymax - ymin) * i / 4;
    os << "<text x=\"" << n(fx) << "\" y=\"" << n(y0 + h + 14) << "\" text-anchor=\"middle\">" << label(vx)
       << "</text>\n";
    os << "<text x=\"" << n(x0 - 4) << "\" y=\"" << n(fy + 4) << "\" text-anchor=\"end\">" << label(vy)
       << "</text>\n";
  }
  os << "<text x=\"" << n(x0 + w / 2) << "\" y=\"" << n(y0 + h + 30) << "\" text-anchor=\"middle\">" << xlabel
     << "</text>\n";
  os << "<text x=\"" << n(x0 - 44) << "\" y=\"" << n(y0 + h / 2) << "\" transform=\"rotate(-90 " << n(x0 - 44)
     << " " << n(y0 + h / 2) << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
}

}  // namespace

std::string histogram_svg(const std::vector<timing::PathTiming>& rows) {
  std::ostringstream os;
  os << header(kW, kH, "Predicted (shaded) and measured (striped) execution times");
  os << "<defs><pattern id=\"stripes\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
        "patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"black\" "
        "stroke-width=\"2\"/></pattern></defs>\n";
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  if (rows.empty()) {
    axes(os, kLeft, kTop, pw, ph, 0, 1, 0, 1, "execution time", "paths");
    os << "</svg>\n";
    return os.str();
  }
  std::vector<double> pred, act;
  for (const auto& r : rows) {
    pred.push_back(to_double(r.predicted));
    act.push_back(to_double(r.actual));
  }
  double lo = std::min(*std::min_element(pred.begin(), pred.end()), *std::min_element(act.begin(), act.end()));
  double hi = std::max(*std::max_element(pred.begin(), pred.end()), *std::max_element(act.begin(), act.end()));
  if (hi - lo < 1) {
    lo -= 0.5;
    hi += 0.5;
  }
  const std::size_t bins = std::min<std::size_t>(40, std::max<std::size_t>(5, rows.size() / 4));
  std::vector<std::size_t> hp(bins), ha(bins);
  auto bin = [&](double v) {
    const auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
    return std::min(b, bins - 1);
  };
  for (double v : pred) ++hp[bin(v)];
  for (double v : act) ++ha[bin(v)];
  const std::size_t peak = std::max(*std::max_element(hp.begin(), hp.end()), *std::max_element(ha.begin(), ha.end()));
  axes(os, kLeft, kTop, pw, ph, lo, hi, 0, static_cast<double>(peak), "execution time", "paths");
  const double bw = pw / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    const double x = kLeft + bw * static_cast<double>(b);
    auto bar = [&](std::size_t count, double off, const char* fill) {
      if (count == 0) return;
      const double h = ph * static_cast<double>(count) / static_cast<double>(peak);
      os << "<rect x=\"" << n(x + off) << "\" y=\"" << n(kTop + ph - h) << "\" width=\"" << n(bw / 2 - 1)
         << "\" height=\"" << n(h) << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    };
    bar(hp[b], 0, "#b0b0b0");
    bar(ha[b], bw / 2, "url(#stripes)");
  }
  os << "</svg>\n";
  return os.str();
}

std::string trace_svg(const hybrid::Mds& mds, const hybrid::ClosedLoopResult& run) {
  const auto defs = mds.definition_names();
  std::size_t speed = mds.vars.size() - 1;
  for (std::size_t i = 0; i < mds.vars.size(); ++i)
    if (mds.vars[i].name == "omega") speed = i;
  const std::size_t panels = 1 + defs.size();
  const double ph = 160, gap = 50;
  const double height = kTop + static_cast<double>(panels) * (ph + gap) + 10;
  const double pw = kW - kLeft - kRight;
  std::ostringstream os;
  os << header(kW, height, "Closed-loop trace");
  if (run.samples.empty()) {
    os << "</svg>\n";
    return os.str();
  }
  const double tmax = std::max(run.samples.back().time, 1e-9);
  const std::size_t stride = std::max<std::size_t>(1, run.samples.size() / 2000);
  for (std::size_t p = 0; p < panels; ++p) {
    auto value = [&](const hybrid::TraceSample& s) { return p == 0 ? s.state[speed] : s.defs[p - 1]; };
    double lo = 0, hi = 1;
    for (const auto& s : run.samples) {
      const double v = value(s);
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    const double y0 = kTop + static_cast<double>(p) * (ph + gap);
    const std::string name = p == 0 ? mds.vars[speed].name : defs[p - 1];
    axes(os, kLeft, y0, pw, ph, 0, tmax, lo, hi, "time", name);
    for (const auto& e : run.events) {
      const double x = kLeft + pw * e.time / tmax;
      os << "<line x1=\"" << n(x) << "\" y1=\"" << n(y0) << "\" x2=\"" << n(x) << "\" y2=\"" << n(y0 + ph)
         << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"" << (p == 0 ? "#1f4e9c" : "#b5361b") << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < run.samples.size(); i += stride) {
      const auto& s = run.samples[i];
      const double v = value(s);
      if (!std::isfinite(v)) continue;
      os << n(kLeft + pw * s.time / tmax) << "," << n(y0 + ph - ph * (v - lo) / (hi - lo)) << " ";
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace scid::report
