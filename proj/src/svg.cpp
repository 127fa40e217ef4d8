#include "projrig/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <vector>

namespace projrig {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  std::string s(buf);
  return s == "-0.0000" ? "0.0000" : s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Box {
  double x0, y0, x1, y1;
  bool contains(double x, double y) const {
    const double eps = 1e-9;
    return x >= x0 - eps && x <= x1 + eps && y >= y0 - eps && y <= y1 + eps;
  }
};

// Both endpoints of the visible segment of ax + by + c = 0 inside the box,
// or nothing when the line misses it.
std::optional<std::pair<std::pair<double, double>, std::pair<double, double>>> clip_line(
    double a, double b, double c, const Box& box) {
  std::vector<std::pair<double, double>> hits;
  auto push = [&](double x, double y) {
    if (!box.contains(x, y)) return;
    for (const auto& [hx, hy] : hits) {
      if (std::abs(hx - x) < 1e-7 && std::abs(hy - y) < 1e-7) return;
    }
    hits.emplace_back(x, y);
  };
  if (b != 0.0) {
    push(box.x0, -(a * box.x0 + c) / b);
    push(box.x1, -(a * box.x1 + c) / b);
  }
  if (a != 0.0) {
    push(-(b * box.y0 + c) / a, box.y0);
    push(-(b * box.y1 + c) / a, box.y1);
  }
  if (hits.size() < 2) return std::nullopt;
  std::size_t bi = 0, bj = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    for (std::size_t j = i + 1; j < hits.size(); ++j) {
      double dx = hits[i].first - hits[j].first;
      double dy = hits[i].second - hits[j].second;
      double d = dx * dx + dy * dy;
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  }
  if (best < 1e-12) return std::nullopt;
  return std::make_pair(hits[bi], hits[bj]);
}

}  // namespace

std::string render_svg(const Configuration& config, const SvgOptions& options) {
  struct FinitePoint {
    std::string id;
    double x, y;
    bool pinned;
  };
  struct IdealPoint {
    std::string id;
    double dx, dy;
  };
  std::vector<FinitePoint> finite;
  std::vector<IdealPoint> ideal;
  auto pinnedPoint = [&options](const std::string& id) {
    return options.pins && std::find(options.pins->points.begin(), options.pins->points.end(),
                                     id) != options.pins->points.end();
  };
  for (const auto& id : config.structure.points) {
    const HomogeneousTriple& t = config.point_at(id);
    double x = rational_to_double(t.coords[0]);
    double y = rational_to_double(t.coords[1]);
    double z = rational_to_double(t.coords[2]);
    if (t.chart_valid()) {
      finite.push_back({id, x / z, y / z, pinnedPoint(id)});
    } else {
      double norm = std::hypot(x, y);
      ideal.push_back({id, x / norm, y / norm});
    }
  }

  Box world{-1.0, -1.0, 1.0, 1.0};
  if (!finite.empty()) {
    world = {finite[0].x, finite[0].y, finite[0].x, finite[0].y};
    for (const auto& p : finite) {
      world.x0 = std::min(world.x0, p.x);
      world.y0 = std::min(world.y0, p.y);
      world.x1 = std::max(world.x1, p.x);
      world.y1 = std::max(world.y1, p.y);
    }
  }
  double spanX = std::max(world.x1 - world.x0, 1.0);
  double spanY = std::max(world.y1 - world.y0, 1.0);
  world.x0 -= spanX * options.paddingFraction;
  world.x1 += spanX * options.paddingFraction;
  world.y0 -= spanY * options.paddingFraction;
  world.y1 += spanY * options.paddingFraction;

  double width = (world.x1 - world.x0) * options.scale;
  double height = (world.y1 - world.y0) * options.scale;
  auto X = [&](double x) { return (x - world.x0) * options.scale; };
  auto Y = [&](double y) { return (world.y1 - y) * options.scale; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
  svg << "<rect width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" fill=\"#ffffff\"/>\n";

  auto lineChart = [&](const std::string& id) {
    const HomogeneousTriple& t = config.line_at(id);
    double a = rational_to_double(t.coords[0]);
    double b = rational_to_double(t.coords[1]);
    double c = rational_to_double(t.coords[2]);
    return std::array<double, 3>{a, b, c};
  };

  for (const auto& id : config.structure.lines) {
    auto [a, b, c] = lineChart(id);
    auto seg = clip_line(a, b, c, world);
    if (!seg) continue;
    auto [p, q] = *seg;
    svg << "<line x1=\"" << fmt(X(p.first)) << "\" y1=\"" << fmt(Y(p.second)) << "\" x2=\""
        << fmt(X(q.first)) << "\" y2=\"" << fmt(Y(q.second))
        << "\" stroke=\"#30363d\" stroke-width=\"1.5\"/>\n";
    if (options.entityLabels) {
      double lx = 0.92 * p.first + 0.08 * q.first;
      double ly = 0.92 * p.second + 0.08 * q.second;
      svg << "<text x=\"" << fmt(X(lx) + 4) << "\" y=\"" << fmt(Y(ly) - 4)
          << "\" font-family=\"monospace\" font-size=\"11\" fill=\"#57606a\">" << escape(id)
          << "</text>\n";
    }
  }

  // First-order ghosts: the moved line (a + eps da, b + eps db, c) dashed,
  // the moved point as a hollow circle with an arrow from its rest position.
  if (options.flex) {
    for (const auto& id : config.structure.lines) {
      auto it = options.flex->lineVelocity.find(id);
      if (it == options.flex->lineVelocity.end()) continue;
      double da = rational_to_double(it->second.first);
      double db = rational_to_double(it->second.second);
      if (da == 0.0 && db == 0.0) continue;
      auto [a, b, c] = lineChart(id);
      double norm = c != 0.0 ? 1.0 / c : 1.0;
      auto seg = clip_line(a * norm + options.flexEpsilon * da,
                           b * norm + options.flexEpsilon * db, c * norm, world);
      if (!seg) continue;
      auto [p, q] = *seg;
      svg << "<line x1=\"" << fmt(X(p.first)) << "\" y1=\"" << fmt(Y(p.second)) << "\" x2=\""
          << fmt(X(q.first)) << "\" y2=\"" << fmt(Y(q.second))
          << "\" stroke=\"#d29922\" stroke-width=\"1.2\" stroke-dasharray=\"5,4\"/>\n";
    }
  }

  if (options.stress) {
    for (const auto& [pair, coeff] : options.stress->coefficient) {
      if (coeff == 0) continue;
      const auto& [pid, lid] = pair;
      const HomogeneousTriple& pt = config.point_at(pid);
      if (!pt.chart_valid()) continue;
      auto [px, py] = pt.affine();
      double x = rational_to_double(px);
      double y = rational_to_double(py);
      auto [a, b, c] = lineChart(lid);
      auto seg = clip_line(a, b, c, world);
      double mx = x, my = y;
      if (seg) {
        mx = 0.5 * (seg->first.first + seg->second.first);
        my = 0.5 * (seg->first.second + seg->second.second);
      }
      double lx = x + 0.15 * (mx - x);
      double ly = y + 0.15 * (my - y);
      svg << "<text x=\"" << fmt(X(lx)) << "\" y=\"" << fmt(Y(ly))
          << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#c0392b\">"
          << escape(rational_to_string(coeff)) << "</text>\n";
    }
  }

  for (const auto& p : finite) {
    if (options.flex) {
      auto it = options.flex->pointVelocity.find(p.id);
      if (it != options.flex->pointVelocity.end()) {
        double vx = rational_to_double(it->second.first);
        double vy = rational_to_double(it->second.second);
        if (vx != 0.0 || vy != 0.0) {
          double tx = p.x + options.flexEpsilon * vx;
          double ty = p.y + options.flexEpsilon * vy;
          svg << "<line x1=\"" << fmt(X(p.x)) << "\" y1=\"" << fmt(Y(p.y)) << "\" x2=\""
              << fmt(X(tx)) << "\" y2=\"" << fmt(Y(ty))
              << "\" stroke=\"#1a7f37\" stroke-width=\"2\"/>\n";
          svg << "<circle cx=\"" << fmt(X(tx)) << "\" cy=\"" << fmt(Y(ty))
              << "\" r=\"2.5\" fill=\"#1a7f37\"/>\n";
        }
      }
    }
    if (p.pinned) {
      svg << "<circle cx=\"" << fmt(X(p.x)) << "\" cy=\"" << fmt(Y(p.y))
          << "\" r=\"4\" fill=\"#ffffff\" stroke=\"#1f6feb\" stroke-width=\"2\"/>\n";
    } else {
      svg << "<circle cx=\"" << fmt(X(p.x)) << "\" cy=\"" << fmt(Y(p.y))
          << "\" r=\"4\" fill=\"#1f6feb\"/>\n";
    }
    if (options.entityLabels) {
      svg << "<text x=\"" << fmt(X(p.x) + 6) << "\" y=\"" << fmt(Y(p.y) - 6)
          << "\" font-family=\"monospace\" font-size=\"11\" fill=\"#24292f\">" << escape(p.id)
          << "</text>\n";
    }
  }

  // Ideal points sit on the border in their direction from the box center.
  double cx = 0.5 * (world.x0 + world.x1);
  double cy = 0.5 * (world.y0 + world.y1);
  for (const auto& p : ideal) {
    double tx = (p.dx > 0 ? world.x1 - cx : p.dx < 0 ? world.x0 - cx : 1e18) / (p.dx != 0 ? p.dx : 1);
    double ty = (p.dy > 0 ? world.y1 - cy : p.dy < 0 ? world.y0 - cy : 1e18) / (p.dy != 0 ? p.dy : 1);
    double t = std::min(std::abs(tx), std::abs(ty));
    double bx = cx + t * p.dx;
    double by = cy + t * p.dy;
    svg << "<circle cx=\"" << fmt(X(bx)) << "\" cy=\"" << fmt(Y(by))
        << "\" r=\"3\" fill=\"none\" stroke=\"#8250df\" stroke-width=\"1.5\"/>\n";
    if (options.entityLabels) {
      svg << "<text x=\"" << fmt(X(bx) - 24) << "\" y=\"" << fmt(Y(by) - 6)
          << "\" font-family=\"monospace\" font-size=\"11\" fill=\"#8250df\">" << escape(p.id)
          << "</text>\n";
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace projrig
