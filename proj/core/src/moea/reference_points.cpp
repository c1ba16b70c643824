#include "adaptopt/moea/reference_points.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "adaptopt/error.hpp"

namespace adaptopt {

std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

namespace {
    void compose(std::size_t remaining, std::size_t slot, std::vector<std::size_t>& parts, double divisions,
        std::vector<Point>& out)
    {
        if (slot + 1 == parts.size()) {
            parts[slot] = remaining;
            Point p(parts.size());
            for (std::size_t i = 0; i < parts.size(); ++i) p[i] = static_cast<double>(parts[i]) / divisions;
            out.push_back(std::move(p));
            return;
        }
        for (std::size_t i = 0; i <= remaining; ++i) {
            parts[slot] = i;
            compose(remaining - i, slot + 1, parts, divisions, out);
        }
    }
} // namespace

std::vector<Point> das_dennis_points(std::size_t num_objectives, std::size_t divisions)
{
    if (num_objectives < 2 || divisions < 1) {
        throw ContractError("das_dennis_points needs M >= 2 and H >= 1");
    }
    std::vector<Point> out;
    out.reserve(binomial(divisions + num_objectives - 1, num_objectives - 1));
    std::vector<std::size_t> parts(num_objectives, 0);
    compose(divisions, 0, parts, static_cast<double>(divisions), out);
    return out;
}

Normalization normalize(const std::vector<Point>& points, const Point& ideal)
{
    Normalization result;
    result.ideal = ideal;
    const auto m = ideal.size();
    if (points.empty()) {
        result.intercepts.assign(m, 1.0);
        return result;
    }

    std::vector<Point> translated(points.size(), Point(m));
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t k = 0; k < m; ++k) translated[i][k] = points[i][k] - ideal[k];
    }

    // Extreme point per axis: minimum of the achievement scalarizing function.
    constexpr double small_weight = 1e-6;
    Eigen::MatrixXd extremes(m, m);
    for (std::size_t axis = 0; axis < m; ++axis) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_index = 0;
        for (std::size_t i = 0; i < translated.size(); ++i) {
            double asf = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < m; ++k) {
                const double w = k == axis ? 1.0 : small_weight;
                asf = std::max(asf, translated[i][k] / w);
            }
            if (asf < best) {
                best = asf;
                best_index = i;
            }
        }
        for (std::size_t k = 0; k < m; ++k) {
            extremes(static_cast<Eigen::Index>(axis), static_cast<Eigen::Index>(k)) = translated[best_index][k];
        }
    }

    constexpr double tiny = 1e-10;
    bool degenerate = false;
    Point intercepts(m, 0.0);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(extremes);
    if (lu.rank() < static_cast<Eigen::Index>(m)) {
        degenerate = true;
    } else {
        const Eigen::VectorXd plane = lu.solve(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m)));
        for (std::size_t k = 0; k < m; ++k) {
            const double b = plane(static_cast<Eigen::Index>(k));
            const double a = 1.0 / b;
            if (!(b > tiny) || !std::isfinite(a) || a < 1e-6) {
                degenerate = true;
                break;
            }
            intercepts[k] = a;
        }
    }
    if (degenerate) {
        for (std::size_t k = 0; k < m; ++k) {
            double hi = 0.0;
            for (const auto& t : translated) hi = std::max(hi, t[k]);
            intercepts[k] = (hi > tiny && std::isfinite(hi)) ? hi : 1.0;
        }
    }

    result.degenerate = degenerate;
    result.intercepts = intercepts;
    result.points = std::move(translated);
    for (auto& p : result.points) {
        for (std::size_t k = 0; k < m; ++k) p[k] /= intercepts[k];
    }
    return result;
}

Association associate(const std::vector<Point>& normalized, const std::vector<Point>& references)
{
    Association result;
    result.reference.resize(normalized.size(), 0);
    result.distance.resize(normalized.size(), std::numeric_limits<double>::infinity());

    std::vector<double> norms(references.size());
    for (std::size_t r = 0; r < references.size(); ++r) {
        double s = 0.0;
        for (double x : references[r]) s += x * x;
        norms[r] = s;
    }

    for (std::size_t i = 0; i < normalized.size(); ++i) {
        const auto& p = normalized[i];
        for (std::size_t r = 0; r < references.size(); ++r) {
            const auto& w = references[r];
            double dot = 0.0;
            for (std::size_t k = 0; k < p.size(); ++k) dot += w[k] * p[k];
            const double t = dot / norms[r];
            double d2 = 0.0;
            for (std::size_t k = 0; k < p.size(); ++k) {
                const double diff = p[k] - t * w[k];
                d2 += diff * diff;
            }
            const double d = std::sqrt(d2);
            if (d < result.distance[i]) {
                result.distance[i] = d;
                result.reference[i] = r;
            }
        }
    }
    return result;
}

std::size_t occupied_references(const std::vector<Point>& points, const std::vector<Point>& references)
{
    if (points.empty()) return 0;
    Point ideal(points.front().size(), std::numeric_limits<double>::infinity());
    for (const auto& p : points) {
        for (std::size_t k = 0; k < p.size(); ++k) ideal[k] = std::min(ideal[k], p[k]);
    }
    const auto norm = normalize(points, ideal);
    const auto assoc = associate(norm.points, references);
    return std::set<std::size_t>(assoc.reference.begin(), assoc.reference.end()).size();
}

} // namespace adaptopt
