#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "frontier/geometry.hpp"

namespace frontier {

// The ordered collection of explored points. Ids are dense (0..n-1, the
// insertion order) and each point carries the iteration that admitted it
// (0 = warm-up). Admission enforces the collision tolerance: no two points
// may sit closer than `collision_tolerance` in L2.
class Dataset {
public:
    Dataset(std::size_t dimension, double collision_tolerance);

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    double collision_tolerance() const noexcept { return tolerance_; }

    const Point& point(std::uint64_t id) const;
    std::uint32_t iteration_of(std::uint64_t id) const;
    std::span<const Point> points() const noexcept { return points_; }

    // L2 distance to the closest stored point; +inf when empty.
    double nearest_distance(const Point& p) const;
    bool collides(const Point& p) const;

    // Returns the new point's id. Throws errc::invalid_argument on dimension
    // mismatch, non-finite coordinates, or a collision (callers are expected
    // to have checked).
    std::uint64_t admit(Point p, std::uint32_t iteration);

    // Exhaustive O(n^2) minimum pairwise distance; +inf when n < 2.
    double min_pairwise_distance() const;

private:
    std::size_t dimension_;
    double tolerance_;
    std::vector<Point> points_;
    std::vector<std::uint32_t> iteration_;
};

}  // namespace frontier
