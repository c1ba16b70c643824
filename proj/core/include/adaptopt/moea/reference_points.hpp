#pragma once

#include <cstddef>
#include <vector>

namespace adaptopt {

using Point = std::vector<double>;

// Structured weight vectors on the unit simplex: every composition of
// `divisions` into `num_objectives` non-negative parts, scaled by 1/divisions,
// in lexicographic order. Count is C(H+M-1, M-1).
std::vector<Point> das_dennis_points(std::size_t num_objectives, std::size_t divisions);

std::size_t binomial(std::size_t n, std::size_t k);

// Normalized objectives together with how the normalization was obtained.
struct Normalization {
    std::vector<Point> points;   // (f - ideal) / intercept, per input point
    Point ideal;
    Point intercepts;
    bool degenerate = false;     // hyperplane intercepts were unusable; fallback engaged
};

// Translates by `ideal`, finds one extreme point per axis with the achievement
// scalarizing function, and divides by the hyperplane intercepts. When the
// hyperplane is singular or its intercepts are non-positive, falls back to the
// per-objective maximum of the translated points, and to 1.0 where that is zero.
Normalization normalize(const std::vector<Point>& points, const Point& ideal);

struct Association {
    std::vector<std::size_t> reference;  // nearest reference line, per point
    std::vector<double> distance;        // perpendicular distance to it
};

// Associates each normalized point with the reference direction whose line
// through the origin is closest (ties go to the lower index).
Association associate(const std::vector<Point>& normalized, const std::vector<Point>& references);

// Number of distinct reference directions that have at least one of `points`
// associated after normalizing against the points' own ideal.
std::size_t occupied_references(const std::vector<Point>& points, const std::vector<Point>& references);

} // namespace adaptopt
