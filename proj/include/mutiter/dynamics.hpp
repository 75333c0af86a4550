#pragma once

// Mutated quadratic map: z^2 + c1 everywhere except on a disk around a focus,
// where z^2 + c0 applies, with the parameter linearly interpolated in the
// radial coordinate across the annulus between the two radii.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mutiter {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Modulus via hypot so that large components do not overflow the test.
inline double modulus(Complex z) noexcept {
  return std::hypot(z.real(), z.imag());
}

// z*z + c with explicit component arithmetic. std::complex multiplication
// carries Annex G NaN recovery paths that we do not want in the hot loop.
inline Complex square_plus(Complex z, Complex c) noexcept {
  const double x = z.real();
  const double y = z.imag();
  return {x * x - y * y + c.real(), 2.0 * x * y + c.imag()};
}

/// Transition-radius schedule. Constant keeps the configured radius; linear
/// uses R_n = slope * n for the n-th application of the map (n starts at 1).
struct RSchedule {
  enum class Kind { constant, linear };

  Kind kind = Kind::constant;
  double slope = 0.0;

  static RSchedule constant() { return {}; }
  static RSchedule linear(double slope) { return {Kind::linear, slope}; }

  bool is_linear() const noexcept { return kind == Kind::linear; }

  friend bool operator==(const RSchedule&, const RSchedule&) = default;
};

struct MutationSpec {
  Complex c0{0.0, 0.0};     // mutation parameter
  Complex c1{0.0, 0.0};     // intact parameter
  double r = 0.0;           // mutation radius
  double bigR = 0.0;        // transition radius
  Complex focus{0.0, 0.0};  // centre of the mutated disk
  RSchedule schedule{};

  /// Throws std::invalid_argument when a field is non-finite or 0 <= r <= R
  /// does not hold.
  void validate() const {
    if (!is_finite(c0) || !is_finite(c1) || !is_finite(focus))
      throw std::invalid_argument("mutation spec: non-finite complex parameter");
    if (!std::isfinite(r) || !std::isfinite(bigR))
      throw std::invalid_argument("mutation spec: non-finite radius");
    if (r < 0.0 || bigR < 0.0)
      throw std::invalid_argument("mutation spec: negative radius");
    if (r > bigR)
      throw std::invalid_argument("mutation spec: r (" + std::to_string(r) +
                                  ") exceeds R (" + std::to_string(bigR) + ")");
    if (schedule.is_linear() && !(std::isfinite(schedule.slope) && schedule.slope >= 0.0))
      throw std::invalid_argument("mutation spec: schedule slope must be finite and >= 0");
  }

  /// Transition radius used for the n-th map application (n >= 1).
  double transition_radius(std::uint64_t step) const noexcept {
    if (!schedule.is_linear()) return bigR;
    const double grown = schedule.slope * static_cast<double>(step);
    return grown < r ? r : grown;
  }

  friend bool operator==(const MutationSpec&, const MutationSpec&) = default;
};

/// The plain quadratic z^2 + c written as a degenerate mutation.
inline MutationSpec quadratic_spec(Complex c) {
  MutationSpec spec;
  spec.c0 = c;
  spec.c1 = c;
  return spec;
}

namespace detail {

// Convex combination c0 (R-rho)/(R-r) + c1 (rho-r)/(R-r). Requires r < R.
inline Complex interpolate(Complex c0, Complex c1, double r, double bigR, double rho) noexcept {
  const double width = bigR - r;
  const double inner = (bigR - rho) / width;
  const double outer = (rho - r) / width;
  return {c0.real() * inner + c1.real() * outer, c0.imag() * inner + c1.imag() * outer};
}

}  // namespace detail

/// Interpolated parameter c(rho) at radial coordinate rho in [r, R].
/// The annulus must be non-degenerate (r < R).
inline Complex interp_parameter(const MutationSpec& spec, double rho) {
  if (!(spec.r < spec.bigR))
    throw std::domain_error("interp_parameter: degenerate annulus (r == R)");
  return detail::interpolate(spec.c0, spec.c1, spec.r, spec.bigR, rho);
}

/// One application of the mutated map with the given transition radius.
///
/// The closed disk |z - focus| <= r uses c0, the region |z - focus| >= R
/// uses c1 and the open annulus in between the interpolated parameter. When
/// r == R the annulus is empty, so for r == R == 0 only z == focus is mutated.
inline Complex eval_mutated(const MutationSpec& spec, Complex z, double effective_bigR) noexcept {
  const double rho = modulus(z - spec.focus);
  if (rho <= spec.r) return square_plus(z, spec.c0);
  if (rho >= effective_bigR) return square_plus(z, spec.c1);
  return square_plus(z, detail::interpolate(spec.c0, spec.c1, spec.r, effective_bigR, rho));
}

inline Complex eval_mutated(const MutationSpec& spec, Complex z) noexcept {
  return eval_mutated(spec, z, spec.bigR);
}

/// M = 1 + sqrt(1 + |c0| + |c1|); beyond it every branch of the map at
/// least doubles the modulus (for a focus at the origin).
inline double escape_radius(Complex c0, Complex c1) noexcept {
  return 1.0 + std::sqrt(1.0 + modulus(c0) + modulus(c1));
}

/// max(M, |focus| + R). For |z| at least this value z lies outside the
/// mutated disk, so the intact branch applies and |f(z)| >= 2|z|.
inline double bailout_radius(const MutationSpec& spec) noexcept {
  const double m = escape_radius(spec.c0, spec.c1);
  const double reach = modulus(spec.focus) + spec.bigR;
  return m > reach ? m : reach;
}

/// Bailout valid for every step up to max_iter, including scheduled growth
/// of the transition radius (R_n <= max(r, slope * max_iter)).
inline double bailout_radius(const MutationSpec& spec, std::uint64_t max_iter) noexcept {
  if (!spec.schedule.is_linear()) return bailout_radius(spec);
  const double m = escape_radius(spec.c0, spec.c1);
  const double reach = modulus(spec.focus) + spec.transition_radius(max_iter);
  return m > reach ? m : reach;
}

struct EscapeResult {
  bool escaped = false;
  std::uint32_t steps = 0;

  friend bool operator==(const EscapeResult&, const EscapeResult&) = default;
};

/// Iterates z_{n+1} = f(z_n) and reports the first n in [0, max_iter] with
/// |z_n| >= bailout. Non-finite iterates count as escaped at that step.
inline EscapeResult iterate_orbit(const MutationSpec& spec, Complex z0, std::uint32_t max_iter) {
  if (max_iter == 0) throw std::invalid_argument("iterate_orbit: max_iter must be >= 1");
  const double bailout = bailout_radius(spec, max_iter);
  const bool scheduled = spec.schedule.is_linear();
  Complex z = z0;
  for (std::uint32_t n = 0;; ++n) {
    if (!(modulus(z) < bailout)) return {true, n};
    if (n == max_iter) break;
    const double effective = scheduled ? spec.transition_radius(n + 1u) : spec.bigR;
    z = eval_mutated(spec, z, effective);
  }
  return {false, max_iter};
}

/// Central-difference estimate of the anti-holomorphic derivative
/// df/dzbar = (df/dx + i df/dy) / 2 with step h. Only meaningful when the
/// whole stencil lies inside one region of the map.
inline Complex wirtinger_diagnostic(const MutationSpec& spec, Complex z, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("wirtinger_diagnostic: step must be positive");
  const Complex dx{h, 0.0};
  const Complex dy{0.0, h};
  const Complex fx = (eval_mutated(spec, z + dx) - eval_mutated(spec, z - dx)) / (2.0 * h);
  const Complex fy = (eval_mutated(spec, z + dy) - eval_mutated(spec, z - dy)) / (2.0 * h);
  return 0.5 * (fx + Complex{0.0, 1.0} * fy);
}

}  // namespace mutiter
