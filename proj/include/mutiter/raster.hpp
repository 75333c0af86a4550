#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mutiter/dynamics.hpp"
#include "mutiter/parallel.hpp"

namespace mutiter {

/// Rectangular viewport sampled at pixel centres. Row 0 is the top row.
struct GridSpec {
  double x_min = -2.0;
  double x_max = 2.0;
  double y_min = -2.0;
  double y_max = 2.0;
  std::uint32_t width = 800;
  std::uint32_t height = 800;

  double pitch_x() const noexcept { return (x_max - x_min) / width; }
  double pitch_y() const noexcept { return (y_max - y_min) / height; }
  std::size_t pixel_count() const noexcept { return std::size_t{width} * height; }

  void validate() const {
    if (width == 0 || height == 0) throw std::invalid_argument("grid: zero resolution");
    if (!(x_min < x_max) || !(y_min < y_max))
      throw std::invalid_argument("grid: empty or inverted viewport");
    const double px = pitch_x();
    const double py = pitch_y();
    if (!std::isfinite(px) || !std::isfinite(py) || !(px > 0.0) || !(py > 0.0))
      throw std::invalid_argument("grid: pixel pitch must be finite and positive");
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline Complex pixel_center(const GridSpec& grid, std::uint32_t col, std::uint32_t row) {
  if (col >= grid.width || row >= grid.height)
    throw std::out_of_range("pixel_center: index outside grid");
  return {grid.x_min + (col + 0.5) * grid.pitch_x(), grid.y_max - (row + 0.5) * grid.pitch_y()};
}

/// Row-major escape steps; max_iter marks pixels that did not escape.
struct EscapeField {
  GridSpec grid;
  std::uint32_t max_iter = 0;
  std::vector<std::uint32_t> steps;

  std::uint32_t at(std::uint32_t col, std::uint32_t row) const {
    return steps[std::size_t{row} * grid.width + col];
  }

  friend bool operator==(const EscapeField&, const EscapeField&) = default;
};

/// Boolean raster, true = prisoner. Stored as bytes for cheap random access.
struct PrisonerMask {
  GridSpec grid;
  std::vector<std::uint8_t> bits;

  PrisonerMask() = default;
  explicit PrisonerMask(const GridSpec& g, bool fill = false)
      : grid(g), bits(g.pixel_count(), fill ? 1 : 0) {}

  bool at(std::uint32_t col, std::uint32_t row) const {
    return bits[std::size_t{row} * grid.width + col] != 0;
  }
  void set(std::uint32_t col, std::uint32_t row, bool value = true) {
    bits[std::size_t{row} * grid.width + col] = value ? 1 : 0;
  }
  std::size_t count() const noexcept {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
  }
  bool empty() const noexcept { return count() == 0; }

  friend bool operator==(const PrisonerMask&, const PrisonerMask&) = default;
};

/// Escape field of the mutated map over the grid. Rows are distributed over
/// `workers` threads (0 = default_worker_count()); each row is written by a
/// single worker, so the output does not depend on the decomposition.
inline EscapeField compute_field(const MutationSpec& spec, const GridSpec& grid,
                                 std::uint32_t max_iter, unsigned workers = 0) {
  spec.validate();
  grid.validate();
  if (max_iter == 0) throw std::invalid_argument("compute_field: max_iter must be >= 1");

  EscapeField field{grid, max_iter, std::vector<std::uint32_t>(grid.pixel_count(), 0)};
  parallel_for(grid.height, workers, [&](std::size_t row) {
    std::uint32_t* out = field.steps.data() + row * grid.width;
    for (std::uint32_t col = 0; col < grid.width; ++col) {
      const auto result =
          iterate_orbit(spec, pixel_center(grid, col, static_cast<std::uint32_t>(row)), max_iter);
      out[col] = result.escaped ? result.steps : max_iter;
    }
  });
  return field;
}

inline PrisonerMask prisoner_mask(const EscapeField& field) {
  PrisonerMask mask(field.grid);
  std::transform(field.steps.begin(), field.steps.end(), mask.bits.begin(),
                 [m = field.max_iter](std::uint32_t s) { return std::uint8_t{s == m}; });
  return mask;
}

/// Raster Julia set: prisoner pixels with a non-prisoner 4-neighbour or on
/// the image border.
inline PrisonerMask boundary_mask(const PrisonerMask& mask) {
  const auto w = mask.grid.width;
  const auto h = mask.grid.height;
  PrisonerMask out(mask.grid);
  for (std::uint32_t row = 0; row < h; ++row) {
    for (std::uint32_t col = 0; col < w; ++col) {
      if (!mask.at(col, row)) continue;
      const bool edge = col == 0 || row == 0 || col + 1 == w || row + 1 == h ||
                        !mask.at(col - 1, row) || !mask.at(col + 1, row) ||
                        !mask.at(col, row - 1) || !mask.at(col, row + 1);
      if (edge) out.set(col, row);
    }
  }
  return out;
}

}  // namespace mutiter
