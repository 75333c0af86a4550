#pragma once

// Command-line front end: `render`, `sweep`, `metrics` and `preset`.
//
// Every run is expressed as a SweepConfig; `render` is a single-point sweep
// over R. Flags given after --preset override the preset's values.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "mutiter/image_io.hpp"
#include "mutiter/metrics_io.hpp"
#include "mutiter/parallel.hpp"
#include "mutiter/sweeps.hpp"

namespace mutiter::cli {

enum class Command { render, sweep, preset, metrics };

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --help: the message is the help text and the exit status is 0.
class HelpRequested : public UsageError {
 public:
  using UsageError::UsageError;
};

struct RunManifest {
  Command command = Command::render;
  std::optional<std::string> preset;
  SweepConfig config;
  std::filesystem::path out_dir = ".";
  ImageFormat format = ImageFormat::pgm;
  bool emit_csv = false;
  unsigned workers = 0;  // 0 = default_worker_count()
};

namespace detail {

inline double parse_real(std::string_view text, std::string_view flag) {
  // from_chars would reject a leading '+'; trim whitespace and allow it.
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value))
    throw UsageError("malformed number '" + std::string(text) + "' for " + std::string(flag));
  return value;
}

inline std::vector<double> parse_list(std::string_view text, std::string_view flag) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_real(text.substr(start, comma - start), flag));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::vector<double> parse_fixed(std::string_view text, std::size_t n, std::string_view flag) {
  auto values = parse_list(text, flag);
  if (values.size() != n)
    throw UsageError(std::string(flag) + " expects " + std::to_string(n) +
                     " comma-separated numbers, got '" + std::string(text) + "'");
  return values;
}

inline Complex parse_complex(std::string_view text, std::string_view flag) {
  const auto v = parse_fixed(text, 2, flag);
  return {v[0], v[1]};
}

inline RSchedule parse_schedule(std::string_view text) {
  if (text == "constant") return RSchedule::constant();
  constexpr std::string_view prefix = "linear:";
  if (text.substr(0, prefix.size()) == prefix) {
    const double slope = parse_real(text.substr(prefix.size()), "--schedule");
    if (slope < 0.0) throw UsageError("--schedule slope must be >= 0");
    return RSchedule::linear(slope);
  }
  throw UsageError("--schedule expects constant or linear:SLOPE, got '" + std::string(text) + "'");
}

inline std::pair<std::uint32_t, std::uint32_t> parse_size(std::string_view text) {
  const std::size_t x = text.find('x');
  auto parse_dim = [&](std::string_view part) {
    std::uint32_t v = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || end != part.data() + part.size() || v == 0)
      throw UsageError("--size expects WxH with positive integers, got '" + std::string(text) + "'");
    return v;
  };
  if (x == std::string_view::npos)
    throw UsageError("--size expects WxH, got '" + std::string(text) + "'");
  return {parse_dim(text.substr(0, x)), parse_dim(text.substr(x + 1))};
}

struct RawFlags {
  std::optional<std::string> c0, c1, focus, schedule, grid, size, preset, reference, format, axis,
      values, r, bigR, max_iter;
  std::string out;
  bool csv = false;
};

inline void add_shared_options(CLI::App& app, RawFlags& raw) {
  app.add_option("--c0", raw.c0, "mutation parameter RE,IM");
  app.add_option("--c1", raw.c1, "intact parameter RE,IM");
  app.add_option("--r", raw.r, "mutation radius");
  app.add_option("--R", raw.bigR, "transition radius");
  app.add_option("--focus", raw.focus, "mutation focus RE,IM");
  app.add_option("--schedule", raw.schedule, "constant | linear:SLOPE");
  app.add_option("--grid", raw.grid, "viewport XMIN,XMAX,YMIN,YMAX");
  app.add_option("--size", raw.size, "resolution WxH");
  app.add_option("--max-iter", raw.max_iter, "iteration cap");
  app.add_option("--preset", raw.preset, "named figure preset");
  app.add_option("--reference", raw.reference, "intact | mutant | none");
  app.add_option("--axis", raw.axis, "vary_R | vary_r_fixed_R | vary_r_fixed_thickness");
  app.add_option("--values", raw.values, "comma-separated sweep values");
  app.add_option("--out", raw.out, "output directory");
  app.add_option("--format", raw.format, "pgm | png");
  app.add_flag("--csv", raw.csv, "write metrics.csv");
}

inline RunManifest assemble(Command command, const RawFlags& raw) {
  RunManifest m;
  m.command = command;
  m.config.name = command == Command::render ? "render" : "sweep";
  // Single renders compare against nothing unless asked to.
  m.config.reference = command == Command::render ? ReferenceKind::none : ReferenceKind::intact;

  if (raw.preset) {
    auto p = find_preset(*raw.preset);
    if (!p) throw UsageError("unknown preset '" + *raw.preset + "'");
    m.preset = p->name;
    m.config = p->config;
    if (command == Command::render) m.config.reference = ReferenceKind::none;
  }

  MutationSpec& base = m.config.base;
  if (raw.c0) base.c0 = parse_complex(*raw.c0, "--c0");
  if (raw.c1) base.c1 = parse_complex(*raw.c1, "--c1");
  if (raw.focus) base.focus = parse_complex(*raw.focus, "--focus");
  if (raw.r) base.r = parse_real(*raw.r, "--r");
  if (raw.bigR) base.bigR = parse_real(*raw.bigR, "--R");
  if (raw.schedule) base.schedule = parse_schedule(*raw.schedule);
  if (raw.grid) {
    const auto g = parse_fixed(*raw.grid, 4, "--grid");
    m.config.grid.x_min = g[0];
    m.config.grid.x_max = g[1];
    m.config.grid.y_min = g[2];
    m.config.grid.y_max = g[3];
  }
  if (raw.size) std::tie(m.config.grid.width, m.config.grid.height) = parse_size(*raw.size);
  if (raw.max_iter) {
    const double v = parse_real(*raw.max_iter, "--max-iter");
    if (v < 1 || v > 1e9 || v != std::floor(v))
      throw UsageError("--max-iter expects a positive integer, got '" + *raw.max_iter + "'");
    m.config.max_iter = static_cast<std::uint32_t>(v);
  }
  if (raw.reference) {
    auto ref = parse_reference(*raw.reference);
    if (!ref) throw UsageError("--reference expects intact, mutant or none");
    m.config.reference = *ref;
  }
  if (raw.axis) {
    auto axis = parse_axis(*raw.axis);
    if (!axis) throw UsageError("unknown --axis '" + *raw.axis + "'");
    m.config.axis = *axis;
  }
  if (raw.values) m.config.values = parse_list(*raw.values, "--values");
  if (raw.format) {
    auto f = parse_image_format(*raw.format);
    if (!f) throw UsageError("--format expects pgm or png");
    m.format = *f;
  }
  if (!raw.out.empty()) m.out_dir = raw.out;
  m.emit_csv = raw.csv;

  if (command == Command::preset) return m;

  try {
    base.validate();
    if (command == Command::render) {
      m.config.axis = SweepAxis::vary_R;
      m.config.values = {base.bigR};
    } else if (m.config.values.empty()) {
      throw UsageError("sweep needs --preset or --values");
    }
    m.config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return m;
}

}  // namespace detail

/// argv without the program name: the first element is the command.
inline RunManifest parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Mutated quadratic iterations: renders, sweeps and topology metrics"};
  app.require_subcommand(1);
  detail::RawFlags raw;
  struct Sub {
    Command command;
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {Command::render, "render", "render one mutated map"},
      {Command::sweep, "sweep", "run a parameter sweep, one image per point"},
      {Command::metrics, "metrics", "run a sweep and print its metrics table"},
      {Command::preset, "preset", "list presets, or describe --preset NAME"},
  };
  std::vector<std::pair<Command, CLI::App*>> registered;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    detail::add_shared_options(*sub, raw);
    registered.emplace_back(s.command, sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::string help = app.help();
    for (const auto& [command, sub] : registered)
      if (sub->parsed()) help = sub->help();
    throw HelpRequested(help);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto& [command, sub] : registered)
    if (sub->parsed()) return detail::assemble(command, raw);
  throw UsageError("missing command");
}

inline std::string describe(const SweepConfig& cfg) {
  std::string out;
  auto pair = [](Complex z) { return format_real(z.real()) + "," + format_real(z.imag()); };
  out += "c0=" + pair(cfg.base.c0) + " c1=" + pair(cfg.base.c1) + " focus=" + pair(cfg.base.focus);
  out += " r=" + format_real(cfg.base.r) + " R=" + format_real(cfg.base.bigR);
  if (cfg.base.schedule.is_linear())
    out += " schedule=linear:" + format_real(cfg.base.schedule.slope);
  out += " axis=" + std::string(to_string(cfg.axis)) + " values=";
  for (std::size_t i = 0; i < cfg.values.size(); ++i)
    out += (i ? "," : "") + format_real(cfg.values[i]);
  out += " reference=" + std::string(to_string(cfg.reference));
  return out;
}

inline std::string point_image_name(const SweepConfig& cfg, std::size_t index, ImageFormat f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%02zu", index);
  return cfg.name + buf + std::string(extension(f));
}

/// Executes a manifest; output files go to manifest.out_dir.
inline void run(const RunManifest& m, std::ostream& out) {
  if (m.command == Command::preset) {
    if (m.preset) {
      out << m.config.name << ": " << describe(m.config) << '\n';
    } else {
      for (const auto& p : preset_catalog()) out << p.name << "\t" << p.description << '\n';
    }
    return;
  }

  std::error_code ec;
  std::filesystem::create_directories(m.out_dir, ec);
  if (ec) throw IoError(m.out_dir, "cannot create output directory: " + ec.message());

  const SweepResult result = run_sweep(m.config, m.workers);
  const auto csv_path = m.out_dir / "metrics.csv";
  switch (m.command) {
    case Command::render: {
      const auto path = m.out_dir / (std::string("render") + std::string(extension(m.format)));
      write_image(result.points.front().field, path, m.format);
      out << path.string() << '\n';
      break;
    }
    case Command::sweep:
      for (std::size_t i = 0; i < result.points.size(); ++i) {
        const auto path = m.out_dir / point_image_name(m.config, i, m.format);
        write_image(result.points[i].field, path, m.format);
        out << path.string() << '\n';
      }
      break;
    case Command::metrics:
      out << encode_metrics(result);
      break;
    case Command::preset:
      break;
  }
  if (m.emit_csv) write_metrics(result, csv_path);
}

/// Entry point shared by the executable and the tests.
inline int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunManifest manifest;
  try {
    manifest = parse_args(args);
  } catch (const HelpRequested& e) {
    out << e.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  try {
    run(manifest, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace mutiter::cli
