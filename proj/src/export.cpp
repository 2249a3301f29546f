#include "devtopo/export.hpp"

#include <algorithm>
#include <cmath>

#include "devtopo/text.hpp"

namespace devtopo {

namespace {

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
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

double tick_step(double range) {
  const double raw = range / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

}  // namespace

void write_barcode_svg(std::ostream& out, const Barcode& b, const SvgOptions& opts) {
  const double left = 60, right = 30, top = opts.title.empty() ? 20 : 40;
  const double panel_gap = 50, axis_h = 30;
  const double plot_w = opts.width - left - right;
  const double xmax = b.max_filtration() > 0 ? b.max_filtration() : 1.0;
  const double row_h = opts.bar_height + opts.bar_gap;
  auto xpos = [&](double v) { return left + plot_w * std::clamp(v / xmax, 0.0, 1.0); };

  std::vector<std::vector<PersistenceInterval>> panels;
  for (int d = 0; d <= b.max_degree(); ++d) panels.push_back(b.visible(d));

  double height = top;
  for (const auto& p : panels)
    height += 20 + std::max<double>(1, double(p.size())) * row_h + 4 + axis_h + panel_gap;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
      << px(height) << "\" viewBox=\"0 0 " << opts.width << ' ' << px(height) << "\">\n";
  out << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" "
         "markerWidth=\"4\" markerHeight=\"4\" orient=\"auto\">"
         "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"#b22222\"/></marker></defs>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opts.title.empty())
    out << "<text x=\"" << px(left) << "\" y=\"24\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << escape(opts.title) << "</text>\n";

  const double step = tick_step(xmax);
  double y = top;
  for (std::size_t d = 0; d < panels.size(); ++d) {
    const auto& bars = panels[d];
    out << "<g class=\"dim" << d << "\">\n";
    out << "<text x=\"" << px(left) << "\" y=\"" << px(y + 14)
        << "\" font-family=\"sans-serif\" font-size=\"13\">H" << d << " (" << bars.size()
        << " bars)</text>\n";
    y += 20;
    for (std::size_t i = 0; i < bars.size(); ++i) {
      const auto& iv = bars[i];
      const double yy = y + double(i) * row_h + opts.bar_height / 2.0;
      const double x0 = xpos(iv.birth);
      if (iv.infinite()) {
        out << "<line x1=\"" << px(x0) << "\" y1=\"" << px(yy) << "\" x2=\""
            << px(left + plot_w - 4) << "\" y2=\"" << px(yy)
            << "\" stroke=\"#b22222\" stroke-width=\"" << opts.bar_height
            << "\" marker-end=\"url(#arrow)\"><title>[" << text::fixed6(iv.birth)
            << ", inf)</title></line>\n";
      } else {
        out << "<line x1=\"" << px(x0) << "\" y1=\"" << px(yy) << "\" x2=\""
            << px(xpos(iv.death)) << "\" y2=\"" << px(yy)
            << "\" stroke=\"#1f4e9c\" stroke-width=\"" << opts.bar_height << "\"><title>["
            << text::fixed6(iv.birth) << ", " << text::fixed6(iv.death)
            << ")</title></line>\n";
      }
    }
    y += std::max<double>(1, double(bars.size())) * row_h + 4;
    out << "<line x1=\"" << px(left) << "\" y1=\"" << px(y) << "\" x2=\"" << px(left + plot_w)
        << "\" y2=\"" << px(y) << "\" stroke=\"black\"/>\n";
    const int nticks = static_cast<int>(std::floor(xmax / step + 1e-9));
    for (int t = 0; t <= nticks; ++t) {
      const double v = t * step;
      out << "<line x1=\"" << px(xpos(v)) << "\" y1=\"" << px(y) << "\" x2=\"" << px(xpos(v))
          << "\" y2=\"" << px(y + 5) << "\" stroke=\"black\"/>";
      out << "<text x=\"" << px(xpos(v)) << "\" y=\"" << px(y + 18)
          << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
          << text::compact(v) << "</text>\n";
    }
    out << "</g>\n";
    y += axis_h + panel_gap;
  }
  out << "</svg>\n";
}

}  // namespace devtopo
