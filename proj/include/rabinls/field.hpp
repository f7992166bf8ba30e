// field.hpp — complex fields on a grid and the two-component state.

#pragma once

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rabinls/grid.hpp"

namespace rabinls {

using Complex = std::complex<double>;

struct ScalarField {
    GridPtr grid;
    std::vector<Complex> values;

    ScalarField() = default;
    explicit ScalarField(GridPtr g)
        : grid(std::move(g)), values(grid->total_points(), Complex{0.0, 0.0}) {}
};

// One point of the box, padded to three coordinates (unused axes are 0).
using Point = std::array<double, 3>;

// Samples fn on every grid point.
ScalarField sample_field(const GridPtr& grid, const std::function<Complex(const Point&)>& fn);

// Coordinate of each grid point along one axis, as a (real-valued) field.
ScalarField coordinate_field(const GridPtr& grid, int axis);

// The pair (psi1, psi2); both components live on the same grid.
struct TwoComponentField {
    ScalarField first;
    ScalarField second;

    TwoComponentField() = default;
    TwoComponentField(ScalarField a, ScalarField b)
        : first(std::move(a)), second(std::move(b)) {
        if (first.grid != second.grid &&
            (first.grid == nullptr || second.grid == nullptr ||
             first.values.size() != second.values.size()))
            throw std::invalid_argument("TwoComponentField: components must share a grid");
    }
    explicit TwoComponentField(const GridPtr& g) : first(g), second(g) {}

    const GridPtr& grid() const { return first.grid; }
    std::size_t size() const { return first.values.size(); }
};

bool all_finite(const ScalarField& f);
bool all_finite(const TwoComponentField& f);

}  // namespace rabinls
