#include "adaptopt/moea/hypervolume.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "adaptopt/error.hpp"
#include "adaptopt/moea/dominance.hpp"

namespace adaptopt {

double hypervolume_2d(std::span<const std::vector<double>> front, const std::vector<double>& reference)
{
    if (reference.size() != 2) throw ContractError("hypervolume_2d needs a 2-objective reference point");

    std::vector<std::array<double, 2>> points;
    points.reserve(front.size());
    for (const auto& p : front) {
        if (p.size() != 2) throw ContractError("hypervolume_2d needs 2-objective points");
        if (!dominates(p, reference)) {
            std::ostringstream os;
            os << "point (" << p[0] << ", " << p[1] << ") does not dominate the reference point (" << reference[0]
               << ", " << reference[1] << ")";
            throw ContractError(os.str());
        }
        points.push_back({ p[0], p[1] });
    }
    std::sort(points.begin(), points.end());

    double area = 0.0;
    double ceiling = reference[1];
    for (const auto& [f1, f2] : points) {
        if (f2 >= ceiling) continue; // dominated by an earlier point
        area += (reference[0] - f1) * (ceiling - f2);
        ceiling = f2;
    }
    return area;
}

double hypervolume_2d(std::span<const ObjectiveVector> front, const std::vector<double>& reference)
{
    std::vector<std::vector<double>> values;
    values.reserve(front.size());
    for (const auto& o : front) values.push_back(o.values);
    return hypervolume_2d(std::span<const std::vector<double>>(values), reference);
}

} // namespace adaptopt
