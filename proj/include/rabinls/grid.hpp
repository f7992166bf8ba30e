// grid.hpp — uniform periodic tensor grid with spectral wavenumbers.

#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace rabinls {

// Periodic box [-L, L)^dim sampled on points_per_dim points per axis.
// Wavenumbers are stored in FFT bin order (0, 1, ..., n/2-1, -n/2, ..., -1
// in units of pi/L); the Nyquist bin is treated as a negative frequency.
struct Grid {
    int dim = 1;
    int points_per_dim = 0;
    double half_width = 0.0;
    double spacing = 0.0;
    std::vector<double> wavenumbers;        // one axis, FFT bin order
    std::vector<double> deriv_multipliers;  // wavenumbers with Nyquist zeroed
    std::vector<double> axis_coordinates;   // one axis: -L + h*i
    std::vector<double> radius_sq;          // |x|^2 per point, row-major

    std::size_t total_points() const {
        std::size_t n = 1;
        for (int d = 0; d < dim; ++d) n *= static_cast<std::size_t>(points_per_dim);
        return n;
    }

    // Coordinate of grid index i along any axis, in [-L, L).
    double coordinate(int i) const { return -half_width + spacing * i; }

    // Per-axis index of a flattened (row-major, axis 0 slowest) point index.
    int axis_index(std::size_t flat, int axis) const {
        std::size_t stride = 1;
        for (int d = dim - 1; d > axis; --d) stride *= static_cast<std::size_t>(points_per_dim);
        return static_cast<int>((flat / stride) % static_cast<std::size_t>(points_per_dim));
    }
};

using GridPtr = std::shared_ptr<const Grid>;

// Builds a grid; rejects dim outside {1,2,3}, points_per_dim not a power of
// two below 8, and non-positive half_width.
GridPtr make_grid(int dim, int points_per_dim, double half_width);

bool is_power_of_two(int n);

}  // namespace rabinls
