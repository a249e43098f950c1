#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_map>

#include "sacs/sweeps.hpp"

namespace sacs {

namespace {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Edge keys: kind 0 joins (i,j)-(i+1,j), kind 1 joins (i,j)-(i,j+1).
std::uint64_t edge_key(int kind, std::size_t i, std::size_t j) {
  return (static_cast<std::uint64_t>(kind) << 62) | (static_cast<std::uint64_t>(i) << 31) | j;
}

struct Segment {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
};

ParameterPath to_path(const std::vector<Point>& pts, double level) {
  ParameterPath p;
  double s = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k > 0) {
      const double step = std::hypot(pts[k].x - pts[k - 1].x, pts[k].y - pts[k - 1].y);
      // a contour through a grid node is crossed on every edge meeting there
      if (step == 0.0) continue;
      s += step;
    }
    p.points.push_back({s, pts[k].x, pts[k].y, level});
  }
  return p;
}

double distance_to(const std::vector<Point>& pts, Point a) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) best = std::min(best, std::hypot(p.x - a.x, p.y - a.y));
  return best;
}

std::vector<Point> boundary_loop(const Axis& ax, const Axis& ay, Point anchor) {
  std::vector<Point> corners{{ax.min, ay.min}, {ax.max, ay.min}, {ax.max, ay.max}, {ax.min, ay.max}};
  std::size_t start = 0;
  for (std::size_t k = 1; k < 4; ++k)
    if (std::hypot(corners[k].x - anchor.x, corners[k].y - anchor.y) <
        std::hypot(corners[start].x - anchor.x, corners[start].y - anchor.y))
      start = k;
  std::vector<Point> loop;
  for (std::size_t k = 0; k <= 4; ++k) loop.push_back(corners[(start + k) % 4]);
  return loop;
}

}  // namespace

ParameterPath level_line(const SweepGrid& surface, const std::string& quantity, double level,
                         std::pair<double, double> anchor) {
  if (surface.axes.size() != 2) throw std::invalid_argument("level_line: two-dimensional grid required");
  if (!std::isfinite(level)) throw std::invalid_argument("level_line: non-finite level");
  const Axis& ax = surface.axes[0];
  const Axis& ay = surface.axes[1];
  const std::vector<double>& f = surface.column(quantity);
  const std::size_t nx = surface.rows();
  const std::size_t ny = surface.cols();
  auto at = [&](std::size_t i, std::size_t j) { return f[i * ny + j]; };
  const Point anchor_pt{anchor.first, anchor.second};

  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  const double tol = 1e-12 * std::max(1.0, std::abs(level));
  if (*hi - *lo <= tol && std::abs(*lo - level) <= tol)
    return to_path(boundary_loop(ax, ay, anchor_pt), level);

  auto above = [&](double v) { return v >= level; };
  std::unordered_map<std::uint64_t, Point> crossings;
  auto crossing = [&](int kind, std::size_t i, std::size_t j) -> bool {
    const std::size_t i2 = kind == 0 ? i + 1 : i;
    const std::size_t j2 = kind == 0 ? j : j + 1;
    const double fa = at(i, j);
    const double fb = at(i2, j2);
    if (above(fa) == above(fb)) return false;
    const std::uint64_t key = edge_key(kind, i, j);
    if (!crossings.count(key)) {
      const double s = (level - fa) / (fb - fa);
      const double x0 = ax.at(i), y0 = ay.at(j);
      crossings[key] = {x0 + s * (ax.at(i2) - x0), y0 + s * (ay.at(j2) - y0)};
    }
    return true;
  };

  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      // bottom, right, top, left
      const std::uint64_t e[4] = {edge_key(0, i, j), edge_key(1, i + 1, j), edge_key(0, i, j + 1), edge_key(1, i, j)};
      const bool c[4] = {crossing(0, i, j), crossing(1, i + 1, j), crossing(0, i, j + 1), crossing(1, i, j)};
      const int count = c[0] + c[1] + c[2] + c[3];
      if (count == 2) {
        std::uint64_t ends[2];
        int n = 0;
        for (int k = 0; k < 4; ++k)
          if (c[k]) ends[n++] = e[k];
        segs.push_back({ends[0], ends[1]});
      } else if (count == 4) {
        const double center = 0.25 * (at(i, j) + at(i + 1, j) + at(i + 1, j + 1) + at(i, j + 1));
        if (above(center) == above(at(i, j))) {
          segs.push_back({e[0], e[1]});
          segs.push_back({e[2], e[3]});
        } else {
          segs.push_back({e[3], e[0]});
          segs.push_back({e[1], e[2]});
        }
      }
    }
  }
  if (segs.empty()) throw EmptyPathError("level_line: no contour at the requested level");

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> touching;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    touching[segs[s].a].push_back(s);
    touching[segs[s].b].push_back(s);
  }

  std::vector<bool> used(segs.size(), false);
  std::vector<std::vector<Point>> lines;
  auto trace = [&](std::size_t s0, std::uint64_t start) {
    std::vector<Point> pts{crossings.at(start)};
    std::size_t s = s0;
    std::uint64_t edge = start;
    for (;;) {
      used[s] = true;
      edge = segs[s].a == edge ? segs[s].b : segs[s].a;
      pts.push_back(crossings.at(edge));
      std::size_t next = segs.size();
      for (std::size_t cand : touching[edge])
        if (!used[cand]) next = cand;
      if (next == segs.size()) break;
      s = next;
    }
    lines.push_back(std::move(pts));
  };
  // Open chains first so each is traced from one end.
  for (std::size_t s = 0; s < segs.size(); ++s) {
    if (used[s]) continue;
    if (touching[segs[s].a].size() == 1) trace(s, segs[s].a);
    else if (touching[segs[s].b].size() == 1) trace(s, segs[s].b);
  }
  for (std::size_t s = 0; s < segs.size(); ++s)
    if (!used[s]) trace(s, segs[s].a);

  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const double d = distance_to(lines[k], anchor_pt);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  std::vector<Point>& line = lines[best];
  auto dist = [&](const Point& p) { return std::hypot(p.x - anchor_pt.x, p.y - anchor_pt.y); };
  if (dist(line.back()) < dist(line.front())) std::reverse(line.begin(), line.end());
  return to_path(line, level);
}

}  // namespace sacs
