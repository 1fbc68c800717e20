#include "aigw/grid.hpp"

#include "aigw/errors.hpp"

#include <cmath>
#include <string>

namespace aigw {

std::vector<double> log_grid(double f_min, double f_max, std::size_t points) {
  if (!(std::isfinite(f_min) && std::isfinite(f_max) && f_min > 0.0 && f_min < f_max))
    throw InvalidParameter("frequency grid needs 0 < f_min < f_max");
  if (points < 2)
    throw InvalidParameter("frequency grid needs at least 2 points");
  std::vector<double> grid(points);
  const double lo = std::log(f_min), step = (std::log(f_max) - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = std::exp(lo + step * static_cast<double>(i));
  grid.front() = f_min;
  grid.back() = f_max;
  require_frequency_grid(grid);
  return grid;
}

void require_frequency_grid(std::span<const double> grid) {
  if (grid.empty())
    throw InvalidParameter("frequency grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(std::isfinite(grid[i]) && grid[i] > 0.0))
      throw InvalidParameter("frequency must be finite and > 0 (got " + std::to_string(grid[i]) + " Hz)");
    if (i > 0 && !(grid[i - 1] < grid[i]))
      throw InvalidParameter("frequency grid must be strictly increasing");
  }
}

} // namespace aigw
