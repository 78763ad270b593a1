#include "kcross/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace kcross {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Maps data coordinates onto the plot rectangle.
struct Frame {
  double x_min, x_max, y_min, y_max;

  double sx() const { return (kWidth - kLeft - kRight) / (x_max - x_min); }
  double sy() const { return (kHeight - kTop - kBottom) / (y_max - y_min); }
  double px(double x) const { return kLeft + (x - x_min) * sx(); }
  double py(double y) const { return kHeight - kBottom - (y - y_min) * sy(); }
};

void open_document(std::ostringstream& out, const std::string& title) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n"
      << "<defs>\n"
      << "<clipPath id=\"plot\"><rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop)
      << "\" width=\"" << num(kWidth - kLeft - kRight) << "\" height=\""
      << num(kHeight - kTop - kBottom) << "\"/></clipPath>\n"
      << "<marker id=\"arrowhead\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" "
         "refY=\"3\" orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#888888\"/></marker>\n"
      << "</defs>\n"
      << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
  if (!title.empty())
    out << "<text x=\"400.00\" y=\"24.00\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">"
        << escape(title) << "</text>\n";
}

void draw_axes(std::ostringstream& out, const Frame& f, const std::string& x_name,
               const std::string& y_name) {
  out << "<g class=\"axes\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
      << num(kWidth - kLeft - kRight) << "\" height=\"" << num(kHeight - kTop - kBottom)
      << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  constexpr int kTicks = 5;
  for (int n = 0; n < kTicks; ++n) {
    const double x = f.x_min + (f.x_max - f.x_min) * n / (kTicks - 1);
    const double y = f.y_min + (f.y_max - f.y_min) * n / (kTicks - 1);
    const double bottom = kHeight - kBottom;
    out << "<line x1=\"" << num(f.px(x)) << "\" y1=\"" << num(bottom) << "\" x2=\""
        << num(f.px(x)) << "\" y2=\"" << num(bottom + 5) << "\" stroke=\"#000000\"/>"
        << "<text x=\"" << num(f.px(x)) << "\" y=\"" << num(bottom + 20)
        << "\" text-anchor=\"middle\">" << label(x) << "</text>\n";
    out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(f.py(y)) << "\" x2=\""
        << num(kLeft) << "\" y2=\"" << num(f.py(y)) << "\" stroke=\"#000000\"/>"
        << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(f.py(y) + 4)
        << "\" text-anchor=\"end\">" << label(y) << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + 0.5 * (kWidth - kLeft - kRight)) << "\" y=\""
      << num(kHeight - 15) << "\" text-anchor=\"middle\">" << escape(x_name) << "</text>\n"
      << "<text x=\"18.00\" y=\"" << num(kTop + 0.5 * (kHeight - kTop - kBottom))
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18.00 "
      << num(kTop + 0.5 * (kHeight - kTop - kBottom)) << ")\">" << escape(y_name)
      << "</text>\n</g>\n";
}

std::string path_data(const Frame& f, const Trajectory& traj, std::size_t max_points) {
  const Trajectory t = downsample(traj, max_points);
  std::string d;
  for (std::size_t n = 0; n < t.samples.size(); ++n) {
    const auto& s = t.samples[n].state;
    d += (n == 0 ? "M" : " L") + num(f.px(s.x())) + "," + num(f.py(s.y()));
  }
  return d;
}

double segment_distance(const EconState& p, const EconState& a, const EconState& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + t * ab - p).norm();
}

// Comes back past its start after travelling away from it: a periodic orbit.
bool is_closed_orbit(const Trajectory& traj, const Window& w) {
  if (traj.termination != Termination::time_exhausted || traj.samples.size() < 3) return false;
  const EconState& start = traj.samples.front().state;
  const double scale = std::max(w.width(), w.height());
  bool left = false;
  for (std::size_t n = 1; n < traj.samples.size(); ++n) {
    const EconState& s = traj.samples[n].state;
    if (!left) {
      left = (s - start).norm() >= 0.05 * scale;
      continue;
    }
    if (segment_distance(start, traj.samples[n - 1].state, s) <= 1e-3 * scale) return true;
  }
  return false;
}

struct MarkerStyle {
  const char* fill;
  const char* stroke;
};

MarkerStyle marker_style(Classification c) {
  switch (c) {
    case Classification::stable_node: return {"#1f77b4", "#1f77b4"};
    case Classification::stable_star: return {"#2ca02c", "#2ca02c"};
    case Classification::stable_spiral: return {"#9467bd", "#9467bd"};
    case Classification::unstable_node: return {"#ffffff", "#1f77b4"};
    case Classification::unstable_star: return {"#ffffff", "#2ca02c"};
    case Classification::unstable_spiral: return {"#ffffff", "#9467bd"};
    case Classification::center: return {"#ff7f0e", "#000000"};
    case Classification::saddle: return {"none", "#d62728"};
    case Classification::degenerate: return {"#7f7f7f", "#000000"};
  }
  return {"#000000", "#000000"};
}

// One path element per equilibrium: circles for nodes and spirals, a
// diamond for stars and centers, a cross for saddles, a square otherwise.
std::string marker_path(Classification c, double x, double y) {
  constexpr double r = 6.0;
  std::ostringstream d;
  switch (c) {
    case Classification::stable_node:
    case Classification::unstable_node:
    case Classification::stable_spiral:
    case Classification::unstable_spiral:
      d << "M" << num(x - r) << "," << num(y) << " a" << num(r) << "," << num(r)
        << " 0 1,0 " << num(2 * r) << ",0 a" << num(r) << "," << num(r) << " 0 1,0 "
        << num(-2 * r) << ",0 z";
      break;
    case Classification::stable_star:
    case Classification::unstable_star:
    case Classification::center:
      d << "M" << num(x) << "," << num(y - r) << " L" << num(x + r) << "," << num(y) << " L"
        << num(x) << "," << num(y + r) << " L" << num(x - r) << "," << num(y) << " z";
      break;
    case Classification::saddle:
      d << "M" << num(x - r) << "," << num(y - r) << " L" << num(x + r) << "," << num(y + r)
        << " M" << num(x - r) << "," << num(y + r) << " L" << num(x + r) << ","
        << num(y - r);
      break;
    case Classification::degenerate:
      d << "M" << num(x - r) << "," << num(y - r) << " h" << num(2 * r) << " v" << num(2 * r)
        << " h" << num(-2 * r) << " z";
      break;
  }
  return d.str();
}

void draw_marker(std::ostringstream& out, const Frame& f, Classification c,
                 const EconState& state, const char* cls) {
  const MarkerStyle st = marker_style(c);
  out << "<path class=\"" << cls << ' ' << to_string(c) << "\" data-i=\""
      << label(state.x()) << "\" data-c=\"" << label(state.y()) << "\" d=\""
      << marker_path(c, f.px(state.x()), f.py(state.y())) << "\" fill=\"" << st.fill
      << "\" stroke=\"" << st.stroke << "\" stroke-width=\"2\"/>\n";
}

}  // namespace

std::string render_svg(const Portrait& portrait, const SvgStyle& style) {
  const Window& w = portrait.window;
  if (!(w.width() > 0.0) || !(w.height() > 0.0) || !std::isfinite(w.width()) ||
      !std::isfinite(w.height()))
    throw std::invalid_argument("cannot render an empty portrait window");
  const Frame f{w.i_min, w.i_max, w.c_min, w.c_max};

  std::ostringstream out;
  open_document(out, style.title);
  draw_axes(out, f, "national income I", "consumer spending C");

  // Grid cells are at least 2 wide by construction.
  int nx = 1;
  while (static_cast<std::size_t>(nx) < portrait.grid.size() &&
         portrait.grid[nx].state.y() == portrait.grid.front().state.y())
    ++nx;
  const int ny = std::max<int>(1, static_cast<int>(portrait.grid.size()) / std::max(nx, 1));
  const double cell = std::min((kWidth - kLeft - kRight) / std::max(nx - 1, 1),
                               (kHeight - kTop - kBottom) / std::max(ny - 1, 1));
  const double arrow = 0.6 * cell;

  out << "<g class=\"grid\" clip-path=\"url(#plot)\" stroke=\"#888888\" stroke-width=\"1\">\n";
  for (const auto& g : portrait.grid) {
    if (!g.direction_defined) continue;
    Eigen::Vector2d d(g.direction.x() * f.sx(), -g.direction.y() * f.sy());
    d *= arrow / d.norm();
    const double x = f.px(g.state.x()) - 0.5 * d.x();
    const double y = f.py(g.state.y()) - 0.5 * d.y();
    out << "<line class=\"arrow\" x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(x + d.x()) << "\" y2=\"" << num(y + d.y())
        << "\" marker-end=\"url(#arrowhead)\"/>\n";
  }
  out << "</g>\n";

  out << "<g class=\"nullclines\" clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"1.5\" "
         "stroke-dasharray=\"6,4\">\n";
  for (const auto& line : portrait.nullclines) {
    if (line.points.size() < 2) continue;
    out << "<polyline class=\"nullcline " << escape(line.label) << "\" stroke=\""
        << (line.label == "i_nullcline" ? "#17becf" : "#bcbd22") << "\" points=\"";
    for (std::size_t n = 0; n < line.points.size(); ++n)
      out << (n ? " " : "") << num(f.px(line.points[n].x())) << ","
          << num(f.py(line.points[n].y()));
    out << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g class=\"trajectories\" clip-path=\"url(#plot)\" fill=\"none\" stroke=\"#000000\" "
         "stroke-width=\"1.2\">\n";
  for (const auto& t : portrait.trajectories) {
    out << "<path class=\"trajectory" << (is_closed_orbit(t, w) ? " closed-orbit" : "")
        << "\" data-termination=\"" << to_string(t.termination) << "\" d=\""
        << path_data(f, t, style.max_path_points) << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g class=\"separatrices\" clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"3\">\n";
  for (const auto& s : portrait.separatrices) {
    out << "<path class=\"separatrix " << to_string(s.kind) << "\" stroke=\""
        << (s.kind == ManifoldKind::stable ? "#2ca02c" : "#d62728") << "\" d=\""
        << path_data(f, s.trajectory, style.max_path_points) << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g class=\"equilibria\">\n";
  for (const auto& r : portrait.reports) {
    if (!w.contains(r.point.state)) continue;
    draw_marker(out, f, r.classification, r.point.state, "equilibrium");
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string render_svg(const SweepResult& result, const SvgStyle& style) {
  const SweepSpec& spec = result.spec;
  double y_lo = 0.0, y_hi = 0.0;
  for (const auto& p : result.points)
    for (const auto& e : p.equilibria) {
      y_lo = std::min(y_lo, e.state.x());
      y_hi = std::max(y_hi, e.state.x());
    }
  if (y_hi - y_lo <= 0.0) y_hi = y_lo + 1.0;
  const double pad = 0.05 * (y_hi - y_lo);
  const Frame f{spec.from, spec.to, y_lo - pad, y_hi + pad};

  std::ostringstream out;
  open_document(out, style.title);
  draw_axes(out, f, std::string(to_string(spec.param)), "equilibrium income I");

  // Lower branch: smallest-income equilibrium; upper: largest. Where only
  // one equilibrium remains both branches pass through it.
  for (const char* branch : {"lower", "upper"}) {
    const bool upper = std::string_view(branch) == "upper";
    std::string d;
    bool pen_down = false;
    for (const auto& p : result.points) {
      if (p.equilibria.empty()) {
        pen_down = false;
        continue;
      }
      const auto& e = upper ? p.equilibria.back() : p.equilibria.front();
      d += (d.empty() ? "" : " ") + std::string(pen_down ? "L" : "M") + num(f.px(p.value)) +
           "," + num(f.py(e.state.x()));
      pen_down = true;
    }
    if (d.empty()) continue;
    out << "<path class=\"branch " << branch << "\" fill=\"none\" stroke=\""
        << (upper ? "#d62728" : "#1f77b4") << "\" stroke-width=\"2\" d=\"" << d << "\"/>\n";
  }

  out << "<g class=\"transitions\" stroke=\"#7f7f7f\" stroke-dasharray=\"4,4\">\n";
  for (const auto& t : result.transitions) {
    out << "<line class=\"transition " << to_string(t.kind) << "\" data-location=\""
        << label(t.location) << "\" x1=\"" << num(f.px(t.location)) << "\" y1=\"" << num(kTop)
        << "\" x2=\"" << num(f.px(t.location)) << "\" y2=\"" << num(kHeight - kBottom)
        << "\"/>\n";
  }
  out << "</g>\n<g class=\"sweep-points\">\n";
  for (const auto& p : result.points) {
    for (const auto& e : p.equilibria) {
      const MarkerStyle st = marker_style(e.classification);
      out << "<circle class=\"sweep-point " << to_string(e.classification) << "\" cx=\""
          << num(f.px(p.value)) << "\" cy=\"" << num(f.py(e.state.x()))
          << "\" r=\"3\" fill=\"" << st.fill << "\" stroke=\"" << st.stroke << "\"/>\n";
    }
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace kcross
