#include "continua/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace continua::svg {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
}

std::string line(double x1, double y1, double x2, double y2, const std::string& color,
                 double stroke) {
  return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
         num(y2) + "\" stroke=\"" + color + "\" stroke-width=\"" + num(stroke) + "\"/>\n";
}

}  // namespace

std::string phase_diagram(const PLHomeo& f, const Style& style) {
  const double margin = 20;
  const double height = 80;
  const double axis = 50;
  const double lo = f.lo().to_double();
  const double span = (f.hi() - f.lo()).to_double();
  auto sx = [&](const Rational& x) { return margin + (x.to_double() - lo) / span * (style.width - 2 * margin); };

  std::string out = header(style.width, height);
  out += line(sx(f.lo()), axis, sx(f.hi()), axis, "#999999", 1);
  for (const auto& c : fixed_set(f)) {
    if (c.lo == c.hi)
      out += "<circle cx=\"" + num(sx(c.lo)) + "\" cy=\"" + num(axis) + "\" r=\"2\" fill=\"" +
             style.fixed_color + "\"/>\n";
    else
      out += line(sx(c.lo), axis, sx(c.hi), axis, style.fixed_color, 3);
  }
  for (const auto& w : wandering_intervals(f)) {
    const bool right = w.orientation == Orientation::R;
    const std::string& color = right ? style.r_color : style.l_color;
    double a = sx(w.a), b = sx(w.b);
    double rise = std::min(24.0, (b - a) / 2);
    // Arc over the interval with an arrowhead at the attracting end.
    out += "<path d=\"M " + num(a) + " " + num(axis) + " Q " + num((a + b) / 2) + " " +
           num(axis - 2 * rise) + " " + num(b) + " " + num(axis) + "\" fill=\"none\" stroke=\"" +
           color + "\" stroke-width=\"1.5\"/>\n";
    double tip = right ? b : a;
    double back = right ? -1 : 1;
    double size = std::min(6.0, (b - a) / 3);
    out += "<polygon points=\"" + num(tip) + "," + num(axis) + " " + num(tip + back * size) + "," +
           num(axis - size) + " " + num(tip + back * size) + "," + num(axis + size / 2) +
           "\" fill=\"" + color + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string model_diagram(const YModel& model, const YHomeo* g, const Style& style) {
  // Every vertex is a polyline end, so the polylines give the bounding box.
  const Point2& p0 = model.arc(0).polyline.front();
  double minx = p0.x.to_double(), maxx = minx, miny = p0.y.to_double(), maxy = miny;
  for (const auto& a : model.arcs())
    for (const auto& p : a.polyline) {
      minx = std::min(minx, p.x.to_double()), maxx = std::max(maxx, p.x.to_double());
      miny = std::min(miny, p.y.to_double()), maxy = std::max(maxy, p.y.to_double());
    }
  const double margin = 30;
  const double scale = (style.width - 2 * margin) / std::max(maxx - minx, 1e-9);
  const double height = (maxy - miny) * scale + 2 * margin;
  auto px = [&](const Point2& p) { return margin + (p.x.to_double() - minx) * scale; };
  auto py = [&](const Point2& p) { return margin + (maxy - p.y.to_double()) * scale; };
  auto polyline = [&](const std::vector<Point2>& pts, const std::string& color, double stroke) {
    std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + num(stroke) + "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + num(px(pts[i])) + "," + num(py(pts[i]));
    return s + "\"/>\n";
  };

  std::string out = header(style.width, height);
  for (const auto& a : model.arcs()) out += polyline(a.polyline, "#999999", 1.5);
  if (g) {
    for (std::size_t i = 0; i < model.arcs().size(); ++i)
      for (const auto& w : wandering_intervals(g->maps.at(i)))
        out += polyline(arc_piece(model, i, w.a, w.b),
                        w.orientation == Orientation::R ? style.r_color : style.l_color, 2.5);
  }
  for (const auto& v : model.vertices()) {
    out += "<circle cx=\"" + num(px(v.position)) + "\" cy=\"" + num(py(v.position)) +
           "\" r=\"3\" fill=\"" + style.fixed_color + "\"/>\n";
    out += "<text x=\"" + num(px(v.position) + 4) + "\" y=\"" + num(py(v.position) - 4) +
           "\" font-size=\"10\" font-family=\"sans-serif\">" + v.label + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace continua::svg
