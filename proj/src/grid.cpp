#include "rabinls/grid.hpp"
#include "rabinls/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rabinls {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

GridPtr make_grid(int dim, int points_per_dim, double half_width) {
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("make_grid: dim must be 1, 2 or 3 (got " +
                                    std::to_string(dim) + ")");
    if (points_per_dim < 8 || !is_power_of_two(points_per_dim))
        throw std::invalid_argument("make_grid: points_per_dim must be a power of two >= 8 (got " +
                                    std::to_string(points_per_dim) + ")");
    if (!(half_width > 0.0))
        throw std::invalid_argument("make_grid: half_width must be positive");

    auto g = std::make_shared<Grid>();
    g->dim = dim;
    g->points_per_dim = points_per_dim;
    g->half_width = half_width;
    g->spacing = 2.0 * half_width / points_per_dim;

    const int n = points_per_dim;
    g->wavenumbers.resize(n);
    g->deriv_multipliers.resize(n);
    g->axis_coordinates.resize(n);
    const double base = M_PI / half_width;
    for (int j = 0; j < n; ++j) {
        const int k = (j < n / 2) ? j : j - n;
        g->wavenumbers[j] = base * k;
        g->deriv_multipliers[j] = (j == n / 2) ? 0.0 : base * k;
        g->axis_coordinates[j] = g->coordinate(j);
    }

    g->radius_sq.resize(g->total_points());
    std::size_t idx = 0;
    if (dim == 1) {
        for (int i0 = 0; i0 < n; ++i0)
            g->radius_sq[idx++] = g->axis_coordinates[i0] * g->axis_coordinates[i0];
    } else if (dim == 2) {
        for (int i0 = 0; i0 < n; ++i0) {
            const double x0 = g->axis_coordinates[i0];
            for (int i1 = 0; i1 < n; ++i1) {
                const double x1 = g->axis_coordinates[i1];
                g->radius_sq[idx++] = x0 * x0 + x1 * x1;
            }
        }
    } else {
        for (int i0 = 0; i0 < n; ++i0) {
            const double x0 = g->axis_coordinates[i0];
            for (int i1 = 0; i1 < n; ++i1) {
                const double x1 = g->axis_coordinates[i1];
                for (int i2 = 0; i2 < n; ++i2) {
                    const double x2 = g->axis_coordinates[i2];
                    g->radius_sq[idx++] = x0 * x0 + x1 * x1 + x2 * x2;
                }
            }
        }
    }
    return g;
}

ScalarField sample_field(const GridPtr& grid, const std::function<Complex(const Point&)>& fn) {
    ScalarField f(grid);
    const std::size_t total = grid->total_points();
    for (std::size_t i = 0; i < total; ++i) {
        Point p{0.0, 0.0, 0.0};
        for (int a = 0; a < grid->dim; ++a) p[a] = grid->coordinate(grid->axis_index(i, a));
        f.values[i] = fn(p);
    }
    return f;
}

ScalarField coordinate_field(const GridPtr& grid, int axis) {
    if (axis < 0 || axis >= grid->dim)
        throw std::invalid_argument("coordinate_field: axis " + std::to_string(axis) +
                                    " out of range for dim " + std::to_string(grid->dim));
    ScalarField f(grid);
    const std::size_t total = grid->total_points();
    for (std::size_t i = 0; i < total; ++i)
        f.values[i] = grid->coordinate(grid->axis_index(i, axis));
    return f;
}

bool all_finite(const ScalarField& f) {
    for (const auto& v : f.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

bool all_finite(const TwoComponentField& f) {
    return all_finite(f.first) && all_finite(f.second);
}

}  // namespace rabinls
