#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aigw {

/// `points` logarithmically spaced frequencies from f_min to f_max inclusive.
/// Throws InvalidParameter unless 0 < f_min < f_max and points >= 2.
std::vector<double> log_grid(double f_min, double f_max, std::size_t points);

/// Throws InvalidParameter unless the grid is non-empty, finite, positive and
/// strictly increasing.
void require_frequency_grid(std::span<const double> grid);

} // namespace aigw
