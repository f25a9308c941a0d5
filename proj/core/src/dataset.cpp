#include "frontier/dataset.hpp"

#include <limits>
#include <string>

namespace frontier {

Dataset::Dataset(std::size_t dimension, double collision_tolerance)
    : dimension_(dimension), tolerance_(collision_tolerance) {
    if (dimension_ == 0)
        throw Error(errc::invalid_argument, "dataset dimension must be positive");
    if (!(tolerance_ >= 0.0))
        throw Error(errc::invalid_argument, "collision_tolerance must be >= 0");
}

const Point& Dataset::point(std::uint64_t id) const {
    if (id >= points_.size())
        throw Error(errc::unknown_point_id, "unknown point id " + std::to_string(id));
    return points_[id];
}

std::uint32_t Dataset::iteration_of(std::uint64_t id) const {
    if (id >= iteration_.size())
        throw Error(errc::unknown_point_id, "unknown point id " + std::to_string(id));
    return iteration_[id];
}

double Dataset::nearest_distance(const Point& p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& q : points_) best = std::min(best, lp_distance(p, q, 2.0));
    return best;
}

bool Dataset::collides(const Point& p) const {
    return nearest_distance(p) < tolerance_;
}

std::uint64_t Dataset::admit(Point p, std::uint32_t iteration) {
    if (p.dim() != dimension_)
        throw Error(errc::dimension_mismatch, "point dimension does not match dataset");
    validate_point(p);
    if (collides(p))
        throw Error(errc::invalid_argument, "admission would violate the collision tolerance");
    points_.push_back(std::move(p));
    iteration_.push_back(iteration);
    return points_.size() - 1;
}

double Dataset::min_pairwise_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j)
            best = std::min(best, lp_distance(points_[i], points_[j], 2.0));
    return best;
}

}  // namespace frontier
