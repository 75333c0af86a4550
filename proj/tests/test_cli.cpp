#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "mutiter/cli.hpp"

using namespace mutiter;
using namespace mutiter::cli;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mutiter_cli_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

int run_main(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::main(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

}  // namespace

TEST(ParseArgs, RenderDefaults) {
  const auto m = parse_args({"render", "--c0", "0,0", "--c1", "-0.13,-0.77", "--R", "0.5"});
  EXPECT_EQ(m.command, Command::render);
  EXPECT_EQ(m.config.base.c0, Complex(0, 0));
  EXPECT_EQ(m.config.base.c1, Complex(-0.13, -0.77));
  EXPECT_EQ(m.config.base.r, 0.0);
  EXPECT_EQ(m.config.base.bigR, 0.5);
  EXPECT_EQ(m.config.base.focus, Complex(0, 0));
  EXPECT_EQ(m.config.grid, GridSpec{});
  EXPECT_EQ(m.config.max_iter, 256u);
  EXPECT_EQ(m.config.values, (std::vector<double>{0.5}));
  EXPECT_EQ(m.config.reference, ReferenceKind::none);
  EXPECT_EQ(m.format, ImageFormat::pgm);
  EXPECT_FALSE(m.emit_csv);
}

TEST(ParseArgs, PresetSweep) {
  const auto m = parse_args({"sweep", "--preset", "fig2", "--csv"});
  const auto fig2 = find_preset("fig2")->config;
  EXPECT_EQ(m.command, Command::sweep);
  EXPECT_EQ(m.config.base, fig2.base);
  EXPECT_EQ(m.config.values, fig2.values);
  EXPECT_EQ(m.config.axis, fig2.axis);
  EXPECT_EQ(m.config.name, "fig2");
  EXPECT_TRUE(m.emit_csv);
}

TEST(ParseArgs, LaterFlagsOverridePreset) {
  const auto m = parse_args({"sweep", "--preset", "fig3", "--size", "64x48", "--max-iter", "99",
                             "--reference", "mutant", "--c1", "0.33,0", "--grid", "-1,1,-2,2",
                             "--format", "png", "--out", "/tmp/x"});
  EXPECT_EQ(m.config.grid, (GridSpec{-1, 1, -2, 2, 64, 48}));
  EXPECT_EQ(m.config.max_iter, 99u);
  EXPECT_EQ(m.config.reference, ReferenceKind::mutant);
  EXPECT_EQ(m.config.base.c1, Complex(0.33, 0));
  EXPECT_EQ(m.config.base.bigR, 0.1);
  EXPECT_EQ(m.format, ImageFormat::png);
  EXPECT_EQ(m.out_dir, std::filesystem::path("/tmp/x"));
}

TEST(ParseArgs, ScheduleAndCustomSweep) {
  const auto m = parse_args({"render", "--schedule", "linear:0.05", "--focus", "0.5,0.5"});
  EXPECT_TRUE(m.config.base.schedule.is_linear());
  EXPECT_EQ(m.config.base.schedule.slope, 0.05);
  EXPECT_EQ(m.config.base.focus, Complex(0.5, 0.5));

  const auto s = parse_args({"sweep", "--axis", "vary_r_fixed_thickness", "--values", "0,0.5,1",
                             "--R", "0.2"});
  EXPECT_EQ(s.config.axis, SweepAxis::vary_r_fixed_thickness);
  EXPECT_EQ(s.config.values, (std::vector<double>{0, 0.5, 1}));
}

TEST(ParseArgs, UsageErrors) {
  EXPECT_THROW(parse_args({"render", "--r", "0.5", "--R", "0.1"}), UsageError);
  EXPECT_THROW(parse_args({"render", "--c0", "abc"}), UsageError);
  EXPECT_THROW(parse_args({"render", "--c0", "1,2,3"}), UsageError);
  EXPECT_THROW(parse_args({"render", "--R", "1e999"}), UsageError);
  EXPECT_THROW(parse_args({"sweep", "--preset", "fig99"}), UsageError);
  EXPECT_THROW(parse_args({"sweep"}), UsageError);
  EXPECT_THROW(parse_args({"sweep", "--values", "0.3,0.2"}), UsageError);
  EXPECT_THROW(parse_args({"render", "--size", "10by10"}), UsageError);
  EXPECT_THROW(parse_args({"render", "--max-iter", "0"}), UsageError);
  EXPECT_THROW(parse_args({"render", "--schedule", "quadratic"}), UsageError);
  EXPECT_THROW(parse_args({"render", "--format", "jpg"}), UsageError);
  EXPECT_THROW(parse_args({"render", "--bogus"}), UsageError);
  EXPECT_THROW(parse_args({"explode"}), UsageError);
  EXPECT_THROW(parse_args({}), UsageError);
}

TEST(CliMain, ExitStatuses) {
  EXPECT_EQ(run_main({"render", "--r", "0.5", "--R", "0.1"}), kExitUsage);
  std::string help;
  EXPECT_EQ(run_main({"render", "--help"}, &help), kExitOk);
  EXPECT_NE(help.find("--max-iter"), std::string::npos);
  // Output "directory" that is a regular file.
  const auto dir = temp_dir("blocked");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "file") << "x";
  EXPECT_EQ(run_main({"render", "--size", "8x8", "--out", (dir / "file").string()}), kExitRuntime);
}

TEST(CliMain, RenderMatchesLibrary) {
  const auto dir = temp_dir("render");
  ASSERT_EQ(run_main({"render", "--c1", "-0.13,-0.77", "--R", "0.5", "--size", "64x64", "--out",
                      dir.string(), "--csv"}),
            kExitOk);
  MutationSpec spec;
  spec.c1 = {-0.13, -0.77};
  spec.bigR = 0.5;
  GridSpec g;
  g.width = g.height = 64;
  const auto field = compute_field(spec, g, 256);
  EXPECT_EQ(slurp(dir / "render.pgm"), encode_pgm(field));
  const std::string csv = slurp(dir / "metrics.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kMetricsHeader);
  EXPECT_NE(csv.find("\n0.5," + std::to_string(connected_components(prisoner_mask(field))) + ","),
            std::string::npos);
}

TEST(CliMain, DefaultRenderEqualsLibraryDefaults) {
  const auto dir = temp_dir("defaults");
  ASSERT_EQ(run_main({"render", "--size", "40x40", "--out", dir.string()}), kExitOk);
  GridSpec g;
  g.width = g.height = 40;
  EXPECT_EQ(slurp(dir / "render.pgm"), encode_pgm(compute_field(MutationSpec{}, g, 256)));
}

TEST(CliMain, Fig2SweepWritesTwelveRowsDeterministically) {
  const auto a = temp_dir("fig2a");
  const auto b = temp_dir("fig2b");
  const std::vector<std::string> common = {"sweep", "--preset", "fig2", "--size", "48x48", "--csv"};
  auto with_out = [&](const std::filesystem::path& d) {
    auto args = common;
    args.insert(args.end(), {"--out", d.string()});
    return args;
  };
  ASSERT_EQ(run_main(with_out(a)), kExitOk);
  ASSERT_EQ(run_main(with_out(b)), kExitOk);
  const std::string csv = slurp(a / "metrics.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
  EXPECT_EQ(csv, slurp(b / "metrics.csv"));
  for (int i = 0; i < 12; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "fig2_%02d.pgm", i);
    ASSERT_TRUE(std::filesystem::exists(a / name)) << name;
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
}

TEST(CliMain, MetricsAndPresetCommands) {
  std::string out;
  ASSERT_EQ(run_main({"metrics", "--preset", "fig4", "--size", "32x32", "--out",
                      temp_dir("metrics").string()},
                     &out),
            kExitOk);
  EXPECT_EQ(out.substr(0, out.find('\n')), kMetricsHeader);
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 5);

  ASSERT_EQ(run_main({"preset"}, &out), kExitOk);
  EXPECT_NE(out.find("fig14\t"), std::string::npos);
  ASSERT_EQ(run_main({"preset", "--preset", "fig15"}, &out), kExitOk);
  EXPECT_NE(out.find("focus=1,0"), std::string::npos);
}

TEST(Executable, ExitCodes) {
  const std::string exe = MUTITER_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("render --r 0.5 --R 0.1"), 2);
  EXPECT_EQ(status("preset"), 0);
  EXPECT_EQ(status("render --size 16x16 --out " + temp_dir("exe").string()), 0);
}
