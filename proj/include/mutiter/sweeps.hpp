#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mutiter/dynamics.hpp"
#include "mutiter/raster.hpp"
#include "mutiter/topology.hpp"

namespace mutiter {

enum class SweepAxis { vary_R, vary_r_fixed_R, vary_r_fixed_thickness };
enum class ReferenceKind { intact, mutant, none };

inline std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::vary_R: return "vary_R";
    case SweepAxis::vary_r_fixed_R: return "vary_r_fixed_R";
    case SweepAxis::vary_r_fixed_thickness: return "vary_r_fixed_thickness";
  }
  return "?";
}

inline std::string_view to_string(ReferenceKind ref) {
  switch (ref) {
    case ReferenceKind::intact: return "intact";
    case ReferenceKind::mutant: return "mutant";
    case ReferenceKind::none: return "none";
  }
  return "?";
}

inline std::optional<SweepAxis> parse_axis(std::string_view s) {
  for (auto a : {SweepAxis::vary_R, SweepAxis::vary_r_fixed_R, SweepAxis::vary_r_fixed_thickness})
    if (s == to_string(a)) return a;
  return std::nullopt;
}

inline std::optional<ReferenceKind> parse_reference(std::string_view s) {
  for (auto k : {ReferenceKind::intact, ReferenceKind::mutant, ReferenceKind::none})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

struct SweepConfig {
  std::string name;
  MutationSpec base;
  GridSpec grid;
  std::uint32_t max_iter = 256;
  SweepAxis axis = SweepAxis::vary_R;
  std::vector<double> values;
  ReferenceKind reference = ReferenceKind::intact;

  double thickness() const noexcept { return base.bigR - base.r; }

  /// Base spec with the swept radius substituted.
  MutationSpec point_spec(double value) const {
    MutationSpec spec = base;
    switch (axis) {
      case SweepAxis::vary_R:
        spec.bigR = value;
        break;
      case SweepAxis::vary_r_fixed_R:
        spec.r = value;
        break;
      case SweepAxis::vary_r_fixed_thickness:
        spec.r = value;
        spec.bigR = value + thickness();
        break;
    }
    return spec;
  }

  /// Checks every point before any rendering starts.
  void validate() const {
    base.validate();
    grid.validate();
    if (max_iter == 0) throw std::invalid_argument("sweep: max_iter must be >= 1");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0 && !(values[i - 1] < values[i]))
        throw std::invalid_argument("sweep '" + name + "': values must be strictly increasing");
      try {
        point_spec(values[i]).validate();
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("sweep '" + name + "' point " + std::to_string(i) + ": " +
                                    e.what());
      }
    }
  }
};

struct SweepPoint {
  double value = 0.0;
  MutationSpec spec;
  EscapeField field;
  PrisonerMask mask;
  TopologyReport report;
  bool saturated = false;  // rendered as the plain mutation map
};

struct SweepResult {
  SweepConfig config;
  std::optional<PrisonerMask> reference;
  std::vector<SweepPoint> points;
};

/// True when the mutation core swallows the escape disk: with r >= |focus| + M
/// an orbit either stays in the core (plain f_c0) or leaves |z| < M and
/// escapes under either map, so the prisoner set is exactly that of f_c0.
inline bool saturates(const MutationSpec& spec) {
  if (spec.schedule.is_linear()) return false;
  return spec.r >= modulus(spec.focus) + escape_radius(spec.c0, spec.c1);
}

inline EscapeField render_quadratic(Complex c, const GridSpec& grid, std::uint32_t max_iter,
                                    unsigned workers = 0) {
  return compute_field(quadratic_spec(c), grid, max_iter, workers);
}

inline SweepResult run_sweep(const SweepConfig& cfg, unsigned workers = 0) {
  cfg.validate();
  SweepResult result;
  result.config = cfg;

  std::optional<EscapeField> mutant_field;
  auto mutant = [&]() -> const EscapeField& {
    if (!mutant_field) mutant_field = render_quadratic(cfg.base.c0, cfg.grid, cfg.max_iter, workers);
    return *mutant_field;
  };

  switch (cfg.reference) {
    case ReferenceKind::intact:
      result.reference =
          prisoner_mask(render_quadratic(cfg.base.c1, cfg.grid, cfg.max_iter, workers));
      break;
    case ReferenceKind::mutant:
      result.reference = prisoner_mask(mutant());
      break;
    case ReferenceKind::none:
      break;
  }
  const PrisonerMask* reference = result.reference ? &*result.reference : nullptr;

  result.points.reserve(cfg.values.size());
  for (double value : cfg.values) {
    SweepPoint point;
    point.value = value;
    point.spec = cfg.point_spec(value);
    point.saturated = saturates(point.spec);
    point.field = point.saturated ? mutant()
                                  : compute_field(point.spec, cfg.grid, cfg.max_iter, workers);
    point.mask = prisoner_mask(point.field);
    point.report = analyze(point.mask, reference);
    result.points.push_back(std::move(point));
  }
  return result;
}

struct ScheduledResult {
  EscapeField field;
  PrisonerMask mask;
  TopologyReport report;
};

/// Non-autonomous render with R_n = slope * n (clamped below by r).
inline ScheduledResult run_scheduled(const MutationSpec& spec, const GridSpec& grid,
                                     std::uint32_t max_iter, unsigned workers = 0) {
  if (!spec.schedule.is_linear())
    throw std::invalid_argument("run_scheduled: spec must use a linear schedule");
  ScheduledResult out;
  out.field = compute_field(spec, grid, max_iter, workers);
  out.mask = prisoner_mask(out.field);
  out.report = analyze(out.mask);
  return out;
}

struct Preset {
  std::string name;
  std::string description;
  SweepConfig config;
};

namespace presets {

inline constexpr Complex kRabbit{-0.13, -0.77};
inline constexpr Complex kBasilica{-0.65, 0.0};
inline constexpr Complex kUpperC{-0.117, 0.856};
inline constexpr Complex kDendrite{0.0, 1.0};
inline constexpr Complex kReal033{0.33, 0.0};
inline constexpr double kScheduleSlope = 0.05;

inline Preset make(std::string name, std::string description, Complex c0, Complex c1, double r,
                   double bigR, SweepAxis axis, std::vector<double> values,
                   Complex focus = {0.0, 0.0}) {
  Preset p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.config.name = p.name;
  p.config.base.c0 = c0;
  p.config.base.c1 = c1;
  p.config.base.r = r;
  p.config.base.bigR = bigR;
  p.config.base.focus = focus;
  p.config.axis = axis;
  p.config.values = std::move(values);
  return p;
}

inline Preset scheduled(std::string name, std::string description, Complex c0, Complex c1) {
  Preset p = make(std::move(name), std::move(description), c0, c1, 0.0, 0.0, SweepAxis::vary_R,
                  {0.0});
  p.config.base.schedule = RSchedule::linear(kScheduleSlope);
  p.config.reference = ReferenceKind::none;
  return p;
}

}  // namespace presets

/// Parameter sets of the published figure panels under stable names.
inline std::vector<Preset> preset_catalog() {
  using namespace presets;
  using A = SweepAxis;
  const std::vector<double> small_r = {0, 0.02, 0.03, 0.04, 0.05, 0.07, 0.08, 0.10};
  const std::vector<double> wide_r = {0, 0.1, 0.3, 0.5};
  std::vector<Preset> out = {
      make("fig1a", "c0=0 on the rabbit, pointwise core, R in {0.1, 0.5}", {0, 0}, kRabbit, 0, 0,
           A::vary_R, {0.1, 0.5}),
      make("fig1b", "c0=-0.65 (basilica) on the rabbit, R in {0.1, 0.5}", kBasilica, kRabbit, 0, 0,
           A::vary_R, {0.1, 0.5}),
      make("fig1c", "c0=-0.117+0.856i on the rabbit, R in {0.1, 0.5}", kUpperC, kRabbit, 0, 0,
           A::vary_R, {0.1, 0.5}),
      make("fig1d", "c0=i (dendrite) on the rabbit, R in {0.1, 0.5}", kDendrite, kRabbit, 0, 0,
           A::vary_R, {0.1, 0.5}),
      make("fig2", "c0=0 on the rabbit, increasing R", {0, 0}, kRabbit, 0, 0, A::vary_R,
           {0, 0.05, 0.1, 0.2, 0.3, 0.45, 0.525, 0.55, 0.6, 1, 3, 30}),
      make("fig3", "c0=0 on the rabbit, R=0.1, increasing r", {0, 0}, kRabbit, 0, 0.1,
           A::vary_r_fixed_R, small_r),
      make("fig4", "c0=0 on the rabbit, R=0.5, increasing r", {0, 0}, kRabbit, 0, 0.5,
           A::vary_r_fixed_R, wide_r),
      make("fig5", "c0=-0.117+0.856i on the rabbit, R-r=0.1", kUpperC, kRabbit, 0, 0.1,
           A::vary_r_fixed_thickness, {0, 0.1, 0.2, 0.6, 0.8, 1, 1.1, 2}),
      scheduled("fig6a", "R=0.05n, c0=0 on the rabbit", {0, 0}, kRabbit),
      scheduled("fig6b", "R=0.05n, c0=-0.117+0.856i on the rabbit", kUpperC, kRabbit),
      scheduled("fig6c", "R=0.05n, c0=0.33 on the rabbit", kReal033, kRabbit),
      scheduled("fig6d", "R=0.05n, c0=-0.13-0.77i on c1=0.33", kRabbit, kReal033),
      make("fig7", "c0=-0.65 on the rabbit, increasing R", kBasilica, kRabbit, 0, 0, A::vary_R,
           {0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.525, 0.6, 1, 5, 30}),
      make("fig8", "c0=-0.117+0.856i on the rabbit, increasing R", kUpperC, kRabbit, 0, 0,
           A::vary_R, {0, 0.05, 0.1, 0.2, 0.3, 0.45, 0.525, 0.7, 0.8, 1, 2, 3, 5, 10, 30, 100}),
      make("fig9", "c0=-0.117+0.856i on the rabbit, R=0.1, increasing r", kUpperC, kRabbit, 0, 0.1,
           A::vary_r_fixed_R, small_r),
      make("fig10", "c0=-0.117+0.856i on the rabbit, R=0.5, increasing r", kUpperC, kRabbit, 0,
           0.5, A::vary_r_fixed_R, wide_r),
      make("fig11", "c0=0.33 on the rabbit, R=0.1, increasing r", kReal033, kRabbit, 0, 0.1,
           A::vary_r_fixed_R, {0, 0.04, 0.08, 0.1}),
      make("fig12", "c0=-0.13-0.77i on c1=0.33, R=0.5, increasing r", kRabbit, kReal033, 0, 0.5,
           A::vary_r_fixed_R, {0, 0.4, 0.45, 0.5}),
      make("fig13", "c0=-0.117+0.856i on the rabbit, R-r=0.1", kUpperC, kRabbit, 0, 0.1,
           A::vary_r_fixed_thickness, {0, 0.1, 0.3, 0.5, 0.6, 1, 1.05, 2}),
      make("fig14", "c0=-0.117+0.856i on the rabbit, focus (1+i)/2, increasing R", kUpperC,
           kRabbit, 0, 0, A::vary_R,
           {0, 0.2, 0.6, 1.1, 1.2, 1.21, 2, 3, 4.5, 5, 5.55, 6, 10, 20, 50, 100}, {0.5, 0.5}),
      make("fig15", "c0=0 on the rabbit, focus 1, increasing R", {0, 0}, kRabbit, 0, 0.6,
           A::vary_R, {0.6, 0.8, 1, 1.2, 1.3, 1.5, 3, 50}, {1.0, 0.0}),
  };
  return out;
}

inline std::optional<Preset> find_preset(std::string_view name) {
  for (auto& p : preset_catalog())
    if (p.name == name) return p;
  return std::nullopt;
}

}  // namespace mutiter
