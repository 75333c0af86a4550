#include <gtest/gtest.h>

#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <iterator>

#include "mutiter/image_io.hpp"
#include "mutiter/metrics_io.hpp"

using namespace mutiter;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mutiter_io_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

EscapeField field2x2(std::uint32_t v, std::uint32_t max_iter) {
  return {GridSpec{0, 1, 0, 1, 2, 2}, max_iter, {v, v, v, v}};
}

std::uint32_t be32(const std::string& s, std::size_t at) {
  return (std::uint32_t(std::uint8_t(s[at])) << 24) | (std::uint32_t(std::uint8_t(s[at + 1])) << 16) |
         (std::uint32_t(std::uint8_t(s[at + 2])) << 8) | std::uint32_t(std::uint8_t(s[at + 3]));
}

}  // namespace

TEST(Pgm, AllPrisoners) {
  EXPECT_EQ(encode_pgm(field2x2(256, 256)), std::string("P5\n2 2\n255\n\0\0\0\0", 15));
}

TEST(Pgm, EscapedAtZero) {
  EXPECT_EQ(encode_pgm(field2x2(0, 256)), std::string("P5\n2 2\n255\n\xff\xff\xff\xff", 15));
}

TEST(Pgm, GrayMapping) {
  EXPECT_EQ(gray_level(256, 256), 0);
  EXPECT_EQ(gray_level(0, 256), 255);
  EXPECT_EQ(gray_level(128, 256), 255 - 127);
  EXPECT_EQ(gray_level(254, 256), 255 - 253);
  EXPECT_EQ(gray_level(255, 256), 255 - 253);  // clamped at 254
  EXPECT_EQ(gray_level(9, 10), 255 - 229);
  // Escaped pixels never collide with the prisoner level.
  for (std::uint32_t m = 1; m < 300; ++m)
    for (std::uint32_t s = 0; s < m; ++s) ASSERT_GT(gray_level(s, m), 0) << s << "/" << m;
}

TEST(Pgm, WriteIsDeterministic) {
  const auto dir = temp_dir("pgm");
  EscapeField f{GridSpec{0, 1, 0, 1, 3, 2}, 10, {0, 1, 2, 3, 10, 7}};
  write_image(f, dir / "a.pgm", ImageFormat::pgm);
  write_image(f, dir / "b.pgm", ImageFormat::pgm);
  EXPECT_EQ(slurp(dir / "a.pgm"), slurp(dir / "b.pgm"));
  EXPECT_EQ(slurp(dir / "a.pgm"), encode_pgm(f));
}

TEST(Png, StructureAndPayload) {
  EscapeField f{GridSpec{0, 1, 0, 1, 3, 2}, 10, {0, 1, 2, 3, 10, 7}};
  const auto png = encode_png(f);
  ASSERT_EQ(png.substr(0, 8), std::string("\x89PNG\r\n\x1a\n", 8));
  EXPECT_EQ(png.substr(12, 4), "IHDR");
  EXPECT_EQ(be32(png, 16), 3u);
  EXPECT_EQ(be32(png, 20), 2u);
  const std::size_t idat = 8 + 12 + 13;
  const std::uint32_t len = be32(png, idat);
  EXPECT_EQ(png.substr(idat + 4, 4), "IDAT");
  std::vector<std::uint8_t> raw(2 * 4);
  uLongf raw_len = raw.size();
  ASSERT_EQ(uncompress(raw.data(), &raw_len, reinterpret_cast<const Bytef*>(png.data() + idat + 8), len),
            Z_OK);
  const auto gray = gray_pixels(f);
  EXPECT_EQ(raw[0], 0);
  EXPECT_EQ(raw[4], 0);
  EXPECT_TRUE(std::equal(gray.begin(), gray.begin() + 3, raw.begin() + 1));
  EXPECT_TRUE(std::equal(gray.begin() + 3, gray.end(), raw.begin() + 5));
  EXPECT_EQ(png.substr(png.size() - 8, 4), "IEND");
}

TEST(Image, IoErrorCarriesPath) {
  const auto bad = std::filesystem::path("/nonexistent_dir_for_mutiter/x.pgm");
  try {
    write_image(field2x2(0, 4), bad, ImageFormat::pgm);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(bad.string()), std::string::npos);
  }
}

TEST(Metrics, EmptySweepIsHeaderOnly) {
  SweepResult empty;
  EXPECT_EQ(encode_metrics(empty), std::string(kMetricsHeader) + "\n");
}

TEST(Metrics, AbsentHausdorffIsEmptyField) {
  SweepResult res;
  SweepPoint p;
  p.value = 0.1;
  p.report = TopologyReport{3, 0.25, std::nullopt, 0};
  res.points.push_back(p);
  EXPECT_EQ(encode_metrics(res), std::string(kMetricsHeader) + "\n0.10000000000000001,3,0.25,,0\n");
}

TEST(Metrics, PrecisionRoundTrips) {
  const double v = 0.1234567890123;
  EXPECT_EQ(std::stod(format_real(v)), v);
  const auto row = metrics_row(1.0 / 3.0, TopologyReport{1, 2.0 / 3.0, 1.0 / 7.0, 12});
  EXPECT_EQ(row, "0.33333333333333331,1,0.66666666666666663,0.14285714285714285,12");
}

TEST(Metrics, WriteFile) {
  const auto dir = temp_dir("csv");
  SweepResult res;
  for (int i = 0; i < 3; ++i) {
    SweepPoint p;
    p.value = i;
    p.report = TopologyReport{std::size_t(i), double(i), 0.5 * i, std::size_t(i * 2)};
    res.points.push_back(p);
  }
  write_metrics(res, dir / "m.csv");
  EXPECT_EQ(slurp(dir / "m.csv"), std::string(kMetricsHeader) +
                                      "\n0,0,0,0,0\n1,1,1,0.5,2\n2,2,2,1,4\n");
}
