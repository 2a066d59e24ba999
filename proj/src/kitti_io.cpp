#include "lidepth/kitti_io.hpp"

#include "lidepth/errors.hpp"
#include "lidepth/log.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace lidepth {

namespace {

constexpr std::size_t kVelodyneRecordBytes = 16;

static_assert(sizeof(LidarPoint) == kVelodyneRecordBytes,
              "LidarPoint must match the 4 x float32 velodyne record");

bool finite_point(const LidarPoint& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z) &&
         std::isfinite(p.reflectance);
}

// Parses exactly `count` doubles from `text`; anything else is an error.
std::vector<double> parse_numbers(const std::string& text, std::size_t count,
                                  const std::string& what) {
  std::istringstream in(text);
  std::vector<double> values;
  values.reserve(count);
  double v = 0.0;
  while (in >> v) values.push_back(v);
  if (!in.eof()) throw ParseError(what + ": unparseable number in '" + text + "'");
  if (values.size() != count)
    throw ParseError(what + ": expected " + std::to_string(count) +
                     " values, got " + std::to_string(values.size()));
  return values;
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FileHandle = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

LidarPointCloud load_velodyne_bin(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open velodyne scan: " + path.string());
  const auto size = static_cast<std::size_t>(in.tellg());
  if (size % kVelodyneRecordBytes != 0)
    throw ParseError("malformed velodyne scan (size " + std::to_string(size) +
                     " not a multiple of 16 bytes): " + path.string());
  in.seekg(0);

  const std::size_t count = size / kVelodyneRecordBytes;
  std::vector<LidarPoint> raw(count);
  if (count > 0 &&
      !in.read(reinterpret_cast<char*>(raw.data()),
               static_cast<std::streamsize>(size)))
    throw IoError("failed to read velodyne scan: " + path.string());

  LidarPointCloud cloud;
  cloud.points.reserve(count);
  for (const LidarPoint& p : raw) {
    if (finite_point(p))
      cloud.points.push_back(p);
    else
      ++cloud.dropped_non_finite;
  }
  if (cloud.dropped_non_finite > 0)
    log::debug("dropped " + std::to_string(cloud.dropped_non_finite) +
               " non-finite points from " + path.filename().string());
  return cloud;
}

void write_velodyne_bin(const LidarPointCloud& cloud,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  if (!cloud.points.empty())
    out.write(reinterpret_cast<const char*>(cloud.points.data()),
              static_cast<std::streamsize>(cloud.points.size() *
                                           kVelodyneRecordBytes));
  if (!out) throw IoError("failed to write velodyne scan: " + path.string());
}

CalibrationSet load_kitti_calib(const std::filesystem::path& path,
                                int image_width, int image_height,
                                CameraId camera) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open calibration file: " + path.string());

  const std::string wanted = camera_key(camera);
  std::vector<double> p_values;
  std::vector<double> tr_values;

  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = line.substr(0, colon);
    const std::string rest = line.substr(colon + 1);
    if (key == wanted)
      p_values = parse_numbers(rest, 12, "calib " + key);
    else if (key == "Tr")
      tr_values = parse_numbers(rest, 12, "calib Tr");
  }
  if (p_values.empty())
    throw ParseError("calibration file missing '" + wanted +
                     ":' line: " + path.string());
  if (tr_values.empty())
    throw ParseError("calibration file missing 'Tr:' line: " + path.string());

  CalibrationSet calib;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) {
      calib.projection(r, c) = p_values[static_cast<std::size_t>(r) * 4 + c];
      calib.lidar_to_cam(r, c) = tr_values[static_cast<std::size_t>(r) * 4 + c];
    }
  calib.lidar_to_cam.row(3) << 0.0, 0.0, 0.0, 1.0;
  calib.image_width = image_width;
  calib.image_height = image_height;
  calib.validate();
  return calib;
}

std::vector<double> load_times(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open times file: " + path.string());
  std::vector<double> times;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    times.push_back(parse_numbers(line, 1, "times")[0]);
  }
  return times;
}

void write_depth_png(const DepthMap& map, const std::filesystem::path& path) {
  const int w = map.width();
  const int h = map.height();
  if (w <= 0 || h <= 0) throw ParseError("cannot encode an empty depth map");

  std::vector<std::uint16_t> pixels(map.pixel_count(), 0);
  const auto depths = map.depth_data();
  const auto valid = map.valid_data();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (valid[i] == 0) continue;  // invalid stays 0
    const double scaled = std::round(static_cast<double>(depths[i]) * kDepthPngScale);
    if (scaled > 65535.0)
      throw ParseError("depth " + std::to_string(depths[i]) +
                       " m exceeds the 16-bit PNG range");
    // A valid depth below half the quantization step would round to the
    // invalid sentinel; pin it to the smallest representable code instead.
    pixels[i] = static_cast<std::uint16_t>(std::max(1.0, scaled));
  }

  FileHandle fp(std::fopen(path.string().c_str(), "wb"));
  if (!fp) throw IoError("cannot open for writing: " + path.string());

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw IoError("libpng: write struct allocation failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng: info struct allocation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("libpng: failed to write " + path.string());
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(w),
               static_cast<png_uint_32>(h), 16, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_set_swap(png);  // rows are host little-endian

  std::vector<png_bytep> rows(static_cast<std::size_t>(h));
  for (int y = 0; y < h; ++y)
    rows[static_cast<std::size_t>(y)] = reinterpret_cast<png_bytep>(
        pixels.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w));
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

DepthMap read_depth_png(const std::filesystem::path& path) {
  FileHandle fp(std::fopen(path.string().c_str(), "rb"));
  if (!fp) throw IoError("cannot open depth png: " + path.string());

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw IoError("libpng: read struct allocation failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("libpng: info struct allocation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ParseError("not a decodable PNG: " + path.string());
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);
  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (bit_depth != 16 || color_type != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ParseError("depth png must be 16-bit single-channel grayscale: " +
                     path.string());
  }
  png_set_swap(png);

  std::vector<std::uint16_t> pixels(static_cast<std::size_t>(w) *
                                    static_cast<std::size_t>(h));
  std::vector<png_bytep> rows(static_cast<std::size_t>(h));
  for (int y = 0; y < h; ++y)
    rows[static_cast<std::size_t>(y)] = reinterpret_cast<png_bytep>(
        pixels.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w));
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  DepthMap map(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::uint16_t code =
          pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + x];
      if (code != 0)
        map.set(x, y, static_cast<float>(static_cast<double>(code) / kDepthPngScale));
    }
  return map;
}

std::pair<int, int> read_png_dimensions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open png: " + path.string());
  std::array<unsigned char, 24> header{};
  if (!in.read(reinterpret_cast<char*>(header.data()), header.size()))
    throw ParseError("png too short for an IHDR chunk: " + path.string());
  static constexpr std::array<unsigned char, 8> kSignature = {
      137, 80, 78, 71, 13, 10, 26, 10};
  if (!std::equal(kSignature.begin(), kSignature.end(), header.begin()))
    throw ParseError("not a png file: " + path.string());
  if (std::memcmp(header.data() + 12, "IHDR", 4) != 0)
    throw ParseError("png missing IHDR chunk: " + path.string());
  const auto be32 = [&](std::size_t off) {
    return (static_cast<std::uint32_t>(header[off]) << 24) |
           (static_cast<std::uint32_t>(header[off + 1]) << 16) |
           (static_cast<std::uint32_t>(header[off + 2]) << 8) |
           static_cast<std::uint32_t>(header[off + 3]);
  };
  return {static_cast<int>(be32(16)), static_cast<int>(be32(20))};
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open poses file: " + path.string());
  Trajectory traj;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<double> v =
        parse_numbers(line, 12, "pose line " + std::to_string(line_no));
    Eigen::Matrix4d pose = Eigen::Matrix4d::Identity();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c)
        pose(r, c) = v[static_cast<std::size_t>(r) * 4 + c];
    if (!is_rigid_transform(pose))
      throw ParseError("pose line " + std::to_string(line_no) +
                       " is not a rigid transform: " + path.string());
    traj.poses.push_back(pose);
  }
  return traj;
}

void write_trajectory(const Trajectory& trajectory,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  char buf[32];
  for (const Eigen::Matrix4d& pose : trajectory.poses) {
    std::string line;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) {
        // 17 significant digits: doubles round-trip exactly through text.
        std::snprintf(buf, sizeof(buf), "%.17g", pose(r, c));
        if (!line.empty()) line += ' ';
        line += buf;
      }
    out << line << '\n';
  }
  if (!out) throw IoError("failed to write poses: " + path.string());
}

}  // namespace lidepth
