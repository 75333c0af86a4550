#pragma once

// Grayscale escape-time images. PGM (binary P5) is the byte-exact format;
// PNG is written with zlib for convenience.

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mutiter/raster.hpp"

namespace mutiter {

enum class ImageFormat { pgm, png };

inline std::string_view extension(ImageFormat f) { return f == ImageFormat::pgm ? ".pgm" : ".png"; }

inline std::optional<ImageFormat> parse_image_format(std::string_view s) {
  if (s == "pgm") return ImageFormat::pgm;
  if (s == "png") return ImageFormat::png;
  return std::nullopt;
}

class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what) {}
};

/// Prisoners are black; escaped pixels get 255 - floor(min(steps,254)*255/max_iter).
inline std::uint8_t gray_level(std::uint32_t steps, std::uint32_t max_iter) {
  if (steps >= max_iter) return 0;
  const std::uint64_t clamped = std::min<std::uint32_t>(steps, 254);
  return static_cast<std::uint8_t>(255 - clamped * 255 / max_iter);
}

inline std::vector<std::uint8_t> gray_pixels(const EscapeField& field) {
  std::vector<std::uint8_t> out(field.steps.size());
  std::transform(field.steps.begin(), field.steps.end(), out.begin(),
                 [m = field.max_iter](std::uint32_t s) { return gray_level(s, m); });
  return out;
}

inline std::string encode_pgm(const EscapeField& field) {
  std::string out = "P5\n" + std::to_string(field.grid.width) + " " +
                    std::to_string(field.grid.height) + "\n255\n";
  const auto pixels = gray_pixels(field);
  out.append(pixels.begin(), pixels.end());
  return out;
}

namespace detail {

inline void put_be32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

inline void put_chunk(std::string& out, const char (&type)[5], const std::string& data) {
  put_be32(out, static_cast<std::uint32_t>(data.size()));
  std::string body(type, 4);
  body += data;
  out += body;
  put_be32(out, static_cast<std::uint32_t>(
                    crc32(0L, reinterpret_cast<const Bytef*>(body.data()), body.size())));
}

}  // namespace detail

/// 8-bit grayscale PNG with the same gray mapping as the PGM output.
inline std::string encode_png(const EscapeField& field) {
  const auto w = field.grid.width;
  const auto h = field.grid.height;
  const auto pixels = gray_pixels(field);
  std::vector<std::uint8_t> raw;
  raw.reserve(std::size_t{h} * (w + 1));
  for (std::uint32_t row = 0; row < h; ++row) {
    raw.push_back(0);  // filter: none
    raw.insert(raw.end(), pixels.begin() + std::size_t{row} * w,
               pixels.begin() + std::size_t{row + 1} * w);
  }
  uLongf packed_size = compressBound(raw.size());
  std::string packed(packed_size, '\0');
  if (compress2(reinterpret_cast<Bytef*>(packed.data()), &packed_size, raw.data(), raw.size(),
                Z_BEST_COMPRESSION) != Z_OK)
    throw std::runtime_error("encode_png: zlib compression failed");
  packed.resize(packed_size);

  std::string out("\x89PNG\r\n\x1a\n", 8);
  std::string header;
  detail::put_be32(header, w);
  detail::put_be32(header, h);
  header += std::string("\x08\x00\x00\x00\x00", 5);  // depth 8, gray, deflate, no filter, no interlace
  detail::put_chunk(out, "IHDR", header);
  detail::put_chunk(out, "IDAT", packed);
  detail::put_chunk(out, "IEND", std::string());
  return out;
}

inline void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(path, "cannot open for writing");
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  file.close();
  if (!file) throw IoError(path, "write failed");
}

inline void write_image(const EscapeField& field, const std::filesystem::path& path,
                        ImageFormat format) {
  write_bytes(path, format == ImageFormat::pgm ? encode_pgm(field) : encode_png(field));
}

}  // namespace mutiter
