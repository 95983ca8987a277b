#ifndef UAVDEPLOY_GEOMETRY_HPP
#define UAVDEPLOY_GEOMETRY_HPP

#include <span>
#include <vector>

#include "uavdeploy/core_model.hpp"

namespace uavdeploy::geometry {

// Exact area of disk(center, radius) intersected with a counter-clockwise polygon,
// summed over edges as signed circle/triangle intersections.
double disk_polygon_area(const Point& center, double radius, std::span<const Point> polygon);

double disk_rectangle_area(const Point& center, double radius, double x0, double x1, double y0,
                           double y1);

struct StabResult {
    double position;
    int count;
};

// Point covered by the most closed intervals [x_i - r, x_i + r]. Ties keep the
// leftmost optimal point.
StabResult max_interval_stabbing(std::span<const double> centers, double radius);

struct DiskCoverResult {
    Point position;
    int count;
};

// Point inside the most closed disks of equal radius. Some optimum always
// sits at a disk centre or at an intersection of two boundary circles.
DiskCoverResult max_disk_cover(std::span<const Point> centers, double radius);

}  // namespace uavdeploy::geometry

#endif
