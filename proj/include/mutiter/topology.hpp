#pragma once

// Raster metrics on prisoner masks: 8-connected components, area, exact
// Hausdorff distance and containment checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mutiter/raster.hpp"

namespace mutiter {

namespace detail {

inline void require_same_grid(const PrisonerMask& a, const PrisonerMask& b, const char* what) {
  if (!(a.grid == b.grid) || a.bits.size() != b.bits.size())
    throw std::invalid_argument(std::string(what) + ": masks are on different grids");
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Lower envelope of parabolas w (p - q)^2 + f(q); exact squared distances for
// a sampled function f. Entries of f may be +inf (no feature).
inline void distance_transform_1d(const double* f, std::size_t n, double weight, double* out,
                                  std::vector<std::size_t>& v, std::vector<double>& z) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  v.resize(n);
  z.resize(n + 1);
  std::size_t first = 0;
  while (first < n && f[first] == inf) ++first;
  if (first == n) {
    std::fill(out, out + n, inf);
    return;
  }
  auto key = [&](std::size_t q) {
    const double qd = static_cast<double>(q);
    return f[q] + weight * qd * qd;
  };
  std::size_t k = 0;
  v[0] = first;
  z[0] = -inf;
  z[1] = inf;
  for (std::size_t q = first + 1; q < n; ++q) {
    if (f[q] == inf) continue;
    auto intersect = [&](std::size_t top) {
      return (key(q) - key(top)) / (2.0 * weight * static_cast<double>(q - top));
    };
    // z[0] = -inf stops the pop loop at the first parabola.
    double s = intersect(v[k]);
    while (s <= z[k]) {
      --k;
      s = intersect(v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = inf;
  }
  k = 0;
  for (std::size_t p = 0; p < n; ++p) {
    while (z[k + 1] < static_cast<double>(p)) ++k;
    const double d = static_cast<double>(p) - static_cast<double>(v[k]);
    out[p] = weight * d * d + f[v[k]];
  }
}

}  // namespace detail

/// Squared Euclidean distance from every pixel centre to the nearest true
/// pixel of `mask`, in squared pixel units scaled by (wx, wy) per axis.
/// Pixels are +inf when the mask is empty.
inline std::vector<double> squared_distance_transform(const PrisonerMask& mask, double wx,
                                                      double wy) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t w = mask.grid.width;
  const std::size_t h = mask.grid.height;
  std::vector<double> grid(w * h);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = mask.bits[i] ? 0.0 : inf;

  std::vector<std::size_t> v;
  std::vector<double> z;
  std::vector<double> column(h), column_out(h);
  for (std::size_t col = 0; col < w; ++col) {
    for (std::size_t row = 0; row < h; ++row) column[row] = grid[row * w + col];
    detail::distance_transform_1d(column.data(), h, wy, column_out.data(), v, z);
    for (std::size_t row = 0; row < h; ++row) grid[row * w + col] = column_out[row];
  }
  std::vector<double> line_out(w);
  for (std::size_t row = 0; row < h; ++row) {
    double* line = grid.data() + row * w;
    detail::distance_transform_1d(line, w, wx, line_out.data(), v, z);
    std::copy(line_out.begin(), line_out.end(), line);
  }
  return grid;
}

/// Number of 8-connected components of true pixels.
inline std::size_t connected_components(const PrisonerMask& mask) {
  const std::size_t w = mask.grid.width;
  const std::size_t h = mask.grid.height;
  detail::DisjointSets sets(w * h);
  for (std::size_t row = 0; row < h; ++row) {
    for (std::size_t col = 0; col < w; ++col) {
      const std::size_t i = row * w + col;
      if (!mask.bits[i]) continue;
      if (col > 0 && mask.bits[i - 1]) sets.unite(i, i - 1);
      if (row == 0) continue;
      const std::size_t up = i - w;
      if (mask.bits[up]) sets.unite(i, up);
      if (col > 0 && mask.bits[up - 1]) sets.unite(i, up - 1);
      if (col + 1 < w && mask.bits[up + 1]) sets.unite(i, up + 1);
    }
  }
  std::size_t roots = 0;
  for (std::size_t i = 0; i < w * h; ++i)
    if (mask.bits[i] && sets.find(i) == i) ++roots;
  return roots;
}

/// Hausdorff distance between the pixel-centre sets of two non-empty masks,
/// in plane units. With square pixels the transform runs on integer squared
/// offsets, so the result is exactly pitch * sqrt(max min |offset|^2).
inline double hausdorff_distance(const PrisonerMask& a, const PrisonerMask& b) {
  detail::require_same_grid(a, b, "hausdorff_distance");
  if (a.empty() || b.empty())
    throw std::domain_error("hausdorff_distance: undefined for an empty mask");

  const double px = a.grid.pitch_x();
  const double py = a.grid.pitch_y();
  const bool square = px == py;
  const double wx = square ? 1.0 : px * px;
  const double wy = square ? 1.0 : py * py;

  auto directed = [&](const PrisonerMask& from, const PrisonerMask& to) {
    const auto dt = squared_distance_transform(to, wx, wy);
    double worst = 0.0;
    for (std::size_t i = 0; i < dt.size(); ++i)
      if (from.bits[i]) worst = std::max(worst, dt[i]);
    return worst;
  };
  const double worst = std::max(directed(a, b), directed(b, a));
  return square ? std::sqrt(worst) * px : std::sqrt(worst);
}

/// Hausdorff distance between the raster Julia sets of two masks.
inline double boundary_hausdorff_distance(const PrisonerMask& a, const PrisonerMask& b) {
  return hausdorff_distance(boundary_mask(a), boundary_mask(b));
}

/// Pixels true in `a` but false in `b`; zero means a is contained in b.
inline std::size_t subset_violations(const PrisonerMask& a, const PrisonerMask& b) {
  detail::require_same_grid(a, b, "subset_violations");
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.bits.size(); ++i)
    if (a.bits[i] && !b.bits[i]) ++count;
  return count;
}

/// True iff every pixel whose centre lies in the closed disk is a prisoner.
/// Throws std::domain_error if the disk misses the viewport entirely.
inline bool disk_in_mask(const PrisonerMask& mask, Complex center, double radius) {
  if (!is_finite(center) || !std::isfinite(radius) || radius < 0.0)
    throw std::invalid_argument("disk_in_mask: invalid disk");
  const GridSpec& g = mask.grid;
  const double nearest_x = std::clamp(center.real(), g.x_min, g.x_max);
  const double nearest_y = std::clamp(center.imag(), g.y_min, g.y_max);
  if (std::hypot(center.real() - nearest_x, center.imag() - nearest_y) > radius)
    throw std::domain_error("disk_in_mask: disk lies outside the viewport");

  const double px = g.pitch_x();
  const double py = g.pitch_y();
  // Candidate index window, widened by one pixel either side; the exact
  // membership test below decides.
  auto clamp_index = [](double v, std::uint32_t n) {
    if (v < 0.0) return std::uint32_t{0};
    if (v >= n) return n - 1;
    return static_cast<std::uint32_t>(v);
  };
  const auto col_lo = clamp_index(std::floor((center.real() - radius - g.x_min) / px) - 1, g.width);
  const auto col_hi = clamp_index(std::ceil((center.real() + radius - g.x_min) / px) + 1, g.width);
  const auto row_lo = clamp_index(std::floor((g.y_max - center.imag() - radius) / py) - 1, g.height);
  const auto row_hi = clamp_index(std::ceil((g.y_max - center.imag() + radius) / py) + 1, g.height);
  for (std::uint32_t row = row_lo; row <= row_hi; ++row) {
    for (std::uint32_t col = col_lo; col <= col_hi; ++col) {
      if (modulus(pixel_center(g, col, row) - center) <= radius && !mask.at(col, row)) return false;
    }
  }
  return true;
}

struct TopologyReport {
  std::size_t component_count = 0;
  double area = 0.0;
  std::optional<double> hausdorff_to_ref;
  std::size_t subset_violations = 0;

  friend bool operator==(const TopologyReport&, const TopologyReport&) = default;
};

/// All metrics for one mask; the Hausdorff entry is absent without a
/// reference or when either mask is empty. Subset violations count pixels of
/// `mask` outside `reference` (zero without a reference).
inline TopologyReport analyze(const PrisonerMask& mask, const PrisonerMask* reference = nullptr) {
  TopologyReport report;
  report.component_count = connected_components(mask);
  report.area = static_cast<double>(mask.count()) * mask.grid.pitch_x() * mask.grid.pitch_y();
  if (reference != nullptr) {
    report.subset_violations = subset_violations(mask, *reference);
    if (!mask.empty() && !reference->empty())
      report.hausdorff_to_ref = hausdorff_distance(mask, *reference);
  }
  return report;
}

}  // namespace mutiter
