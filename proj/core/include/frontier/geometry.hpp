#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "frontier/error.hpp"
#include "frontier/rng.hpp"

namespace frontier {

// A coordinate vector in design space. Identity (ids, iteration stamps) lives
// in the Dataset, not here; two points with equal coordinates compare equal.
struct Point {
    std::vector<double> coords;

    Point() = default;
    Point(std::initializer_list<double> values) : coords(values) {}
    explicit Point(std::vector<double> values) : coords(std::move(values)) {}

    std::size_t dim() const noexcept { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
    double& operator[](std::size_t i) { return coords[i]; }

    bool operator==(const Point&) const = default;
};

// Throws errc::invalid_argument on empty or non-finite coordinates.
void validate_point(const Point& p);

// Axis-aligned box, min[i] <= max[i].
struct BoundingBox {
    std::vector<double> min;
    std::vector<double> max;

    BoundingBox() = default;
    BoundingBox(std::vector<double> lo, std::vector<double> hi);

    // Degenerate box covering a single point.
    static BoundingBox around(const Point& p) { return BoundingBox(p.coords, p.coords); }

    std::size_t dim() const noexcept { return min.size(); }
    double range(std::size_t i) const { return max[i] - min[i]; }
    double total_range() const;

    bool contains(const Point& p) const;
    void expand(const Point& p);
    void merge(const BoundingBox& other);

    bool operator==(const BoundingBox&) const = default;
};

// Tight componentwise min/max over a non-empty point set.
BoundingBox bounding_box(std::span<const Point> points);

enum class ClipMode { clip, reject };

// The legal design space. clip snaps out-of-bounds candidates onto the box
// face; reject discards them so the caller redraws.
struct DomainBounds {
    BoundingBox box;
    ClipMode clip_mode = ClipMode::clip;

    DomainBounds() = default;
    DomainBounds(BoundingBox b, ClipMode mode);

    std::size_t dim() const noexcept { return box.dim(); }
    bool contains(const Point& p) const { return box.contains(p); }
    Point clamped(Point p) const;
};

inline constexpr double kInfiniteP = std::numeric_limits<double>::infinity();

// Minkowski distance, p >= 1 or kInfiniteP.
double lp_distance(const Point& a, const Point& b, double p);

// Uniform draw from the volume of the L2 ball of radius epsilon around
// center: normalized Gaussian direction scaled by epsilon * U^(1/m).
Point sample_in_hyperball(const Point& center, double epsilon, RngStream& rng);

// Each coordinate i.i.d. uniform in [min[i], max[i]).
Point sample_uniform_box(const BoundingBox& box, RngStream& rng);

}  // namespace frontier
