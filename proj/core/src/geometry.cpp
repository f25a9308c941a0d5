#include "frontier/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace frontier {

void validate_point(const Point& p) {
    if (p.dim() == 0) throw Error(errc::invalid_argument, "point has no coordinates");
    for (double v : p.coords) {
        if (!std::isfinite(v))
            throw Error(errc::invalid_argument, "point coordinate is not finite");
    }
}

BoundingBox::BoundingBox(std::vector<double> lo, std::vector<double> hi)
    : min(std::move(lo)), max(std::move(hi)) {
    if (min.size() != max.size())
        throw Error(errc::dimension_mismatch, "box min/max dimensions differ");
    for (std::size_t i = 0; i < min.size(); ++i) {
        if (!(min[i] <= max[i]))
            throw Error(errc::invalid_argument,
                        "box min exceeds max in dimension " + std::to_string(i));
    }
}

double BoundingBox::total_range() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) sum += range(i);
    return sum;
}

bool BoundingBox::contains(const Point& p) const {
    if (p.dim() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (p[i] < min[i] || p[i] > max[i]) return false;
    }
    return true;
}

void BoundingBox::expand(const Point& p) {
    for (std::size_t i = 0; i < dim(); ++i) {
        min[i] = std::min(min[i], p[i]);
        max[i] = std::max(max[i], p[i]);
    }
}

void BoundingBox::merge(const BoundingBox& other) {
    for (std::size_t i = 0; i < dim(); ++i) {
        min[i] = std::min(min[i], other.min[i]);
        max[i] = std::max(max[i], other.max[i]);
    }
}

BoundingBox bounding_box(std::span<const Point> points) {
    if (points.empty()) throw Error(errc::empty_input, "bounding_box of empty point set");
    const std::size_t m = points.front().dim();
    BoundingBox box(points.front().coords, points.front().coords);
    for (const Point& p : points.subspan(1)) {
        if (p.dim() != m)
            throw Error(errc::dimension_mismatch, "mixed point dimensions in bounding_box");
        box.expand(p);
    }
    return box;
}

DomainBounds::DomainBounds(BoundingBox b, ClipMode mode) : box(std::move(b)), clip_mode(mode) {
    for (std::size_t i = 0; i < box.dim(); ++i) {
        if (!(box.min[i] < box.max[i]))
            throw Error(errc::invalid_argument,
                        "domain bounds degenerate in dimension " + std::to_string(i));
    }
}

Point DomainBounds::clamped(Point p) const {
    for (std::size_t i = 0; i < box.dim(); ++i)
        p[i] = std::clamp(p[i], box.min[i], box.max[i]);
    return p;
}

double lp_distance(const Point& a, const Point& b, double p) {
    if (a.dim() != b.dim())
        throw Error(errc::dimension_mismatch, "lp_distance on points of different dimension");
    if (!(p >= 1.0))
        throw Error(errc::invalid_argument, "lp_distance requires p >= 1");
    if (p == kInfiniteP) {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.dim(); ++i)
            worst = std::max(worst, std::abs(a[i] - b[i]));
        return worst;
    }
    if (p == 2.0) {
        double sum = 0.0;
        for (std::size_t i = 0; i < a.dim(); ++i) {
            const double d = a[i] - b[i];
            sum += d * d;
        }
        return std::sqrt(sum);
    }
    if (p == 1.0) {
        double sum = 0.0;
        for (std::size_t i = 0; i < a.dim(); ++i) sum += std::abs(a[i] - b[i]);
        return sum;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) sum += std::pow(std::abs(a[i] - b[i]), p);
    return std::pow(sum, 1.0 / p);
}

Point sample_in_hyperball(const Point& center, double epsilon, RngStream& rng) {
    if (!(epsilon > 0.0))
        throw Error(errc::non_positive_epsilon, "hyperball radius must be positive");
    validate_point(center);
    const std::size_t m = center.dim();

    std::vector<double> direction(m);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            direction[i] = rng.normal();
            norm += direction[i] * direction[i];
        }
        norm = std::sqrt(norm);
    } while (norm < 1e-300);

    const double radius = epsilon * std::pow(rng.uniform01(), 1.0 / static_cast<double>(m));
    Point out = center;
    for (std::size_t i = 0; i < m; ++i) out[i] += radius * direction[i] / norm;
    return out;
}

Point sample_uniform_box(const BoundingBox& box, RngStream& rng) {
    Point out;
    out.coords.resize(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i) out[i] = rng.uniform(box.min[i], box.max[i]);
    return out;
}

}  // namespace frontier
