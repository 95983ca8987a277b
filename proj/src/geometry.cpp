#include "uavdeploy/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace uavdeploy::geometry {

namespace {

double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

// Signed area of disk(0, r) intersected with triangle (0, p, q).
double disk_triangle_area(const Point& p, const Point& q, double r)
{
    const Point d{q.x - p.x, q.y - p.y};
    const double A = dot(d, d);
    const double B = 2.0 * dot(p, d);
    const double C = dot(p, p) - r * r;

    std::array<double, 4> ts{0.0, 0.0, 0.0, 0.0};
    int n = 0;
    ts[n++] = 0.0;
    const double disc = B * B - 4.0 * A * C;
    if (A > 0.0 && disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double t1 = (-B - sq) / (2.0 * A);
        const double t2 = (-B + sq) / (2.0 * A);
        if (t1 > 0.0 && t1 < 1.0) ts[n++] = t1;
        if (t2 > 0.0 && t2 < 1.0) ts[n++] = t2;
    }
    ts[n++] = 1.0;

    double area = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const Point a{p.x + ts[i] * d.x, p.y + ts[i] * d.y};
        const Point b{p.x + ts[i + 1] * d.x, p.y + ts[i + 1] * d.y};
        const double tm = 0.5 * (ts[i] + ts[i + 1]);
        const Point m{p.x + tm * d.x, p.y + tm * d.y};
        if (dot(m, m) <= r * r) {
            area += 0.5 * cross(a, b);
        } else {
            area += 0.5 * r * r * std::atan2(cross(a, b), dot(a, b));
        }
    }
    return area;
}

}  // namespace

double disk_polygon_area(const Point& center, double radius, std::span<const Point> polygon)
{
    if (!(radius >= 0.0)) throw std::invalid_argument("radius must be >= 0");
    if (radius == 0.0 || polygon.size() < 3) return 0.0;
    double area = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Point& u = polygon[i];
        const Point& v = polygon[(i + 1) % polygon.size()];
        area += disk_triangle_area({u.x - center.x, u.y - center.y}, {v.x - center.x, v.y - center.y},
                                   radius);
    }
    return std::abs(area);
}

double disk_rectangle_area(const Point& center, double radius, double x0, double x1, double y0,
                           double y1)
{
    const std::array<Point, 4> rect{Point{x0, y0}, Point{x1, y0}, Point{x1, y1}, Point{x0, y1}};
    const double full = std::min(std::numbers::pi * radius * radius, (x1 - x0) * (y1 - y0));
    return std::clamp(disk_polygon_area(center, radius, rect), 0.0, full);
}

StabResult max_interval_stabbing(std::span<const double> centers, double radius)
{
    if (centers.empty()) return {0.0, 0};
    // (coordinate, +1 open / -1 close); opens sort before closes so touching
    // closed intervals count as overlapping.
    std::vector<std::pair<double, int>> events;
    events.reserve(2 * centers.size());
    for (double c : centers) {
        events.emplace_back(c - radius, +1);
        events.emplace_back(c + radius, -1);
    }
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
    });
    int depth = 0;
    StabResult best{events.front().first, 0};
    for (const auto& [x, delta] : events) {
        depth += delta;
        if (depth > best.count) best = {x, depth};
    }
    return best;
}

DiskCoverResult max_disk_cover(std::span<const Point> centers, double radius)
{
    if (centers.empty()) return {{0.0, 0.0}, 0};
    const double r2 = radius * radius;
    const double slack = 1e-9 * std::max(1.0, r2);
    auto count_at = [&](const Point& p) {
        int n = 0;
        for (const Point& c : centers) {
            const double dx = c.x - p.x, dy = c.y - p.y;
            if (dx * dx + dy * dy <= r2 + slack) ++n;
        }
        return n;
    };

    DiskCoverResult best{centers.front(), 0};
    auto consider = [&](const Point& p) {
        const int n = count_at(p);
        if (n > best.count) best = {p, n};
    };
    for (const Point& c : centers) consider(c);
    for (std::size_t i = 0; i < centers.size(); ++i) {
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
            const Point& a = centers[i];
            const Point& b = centers[j];
            const double dx = b.x - a.x, dy = b.y - a.y;
            const double d2 = dx * dx + dy * dy;
            if (d2 == 0.0 || d2 > 4.0 * r2) continue;
            const double d = std::sqrt(d2);
            const double h = std::sqrt(std::max(0.0, r2 - d2 / 4.0));
            const Point mid{a.x + dx / 2.0, a.y + dy / 2.0};
            consider({mid.x - h * dy / d, mid.y + h * dx / d});
            consider({mid.x + h * dy / d, mid.y - h * dx / d});
        }
    }
    return best;
}

}  // namespace uavdeploy::geometry
