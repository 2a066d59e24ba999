#include "synthetic.hpp"

#include "lidepth/errors.hpp"
#include "lidepth/kitti_io.hpp"

#include <Eigen/Geometry>
#include <png.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

namespace testsupport {

using lidepth::CalibrationSet;
using lidepth::DepthMap;
using lidepth::IoError;
using lidepth::LidarPoint;
using lidepth::LidarPointCloud;

DepthMap random_depth_map(int width, int height, double fill,
                          std::mt19937& rng) {
  std::bernoulli_distribution is_valid(fill);
  std::uniform_real_distribution<float> depth(0.5f, 80.0f);
  DepthMap map(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (is_valid(rng)) map.set(x, y, depth(rng));
  return map;
}

LidarPointCloud random_cloud(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<float> xy(-60.0f, 60.0f);
  std::uniform_real_distribution<float> z(-3.0f, 5.0f);
  std::uniform_real_distribution<float> refl(0.0f, 1.0f);
  LidarPointCloud cloud;
  cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    cloud.points.push_back({xy(rng), xy(rng), z(rng), refl(rng)});
  return cloud;
}

CalibrationSet random_calibration(int width, int height, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  Eigen::Quaterniond q(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
  if (q.norm() < 1e-9) q = Eigen::Quaterniond::Identity();
  q.normalize();

  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  CalibrationSet calib;
  calib.lidar_to_cam = Eigen::Matrix4d::Identity();
  calib.lidar_to_cam.topLeftCorner<3, 3>() = q.toRotationMatrix();
  calib.lidar_to_cam.topRightCorner<3, 1>() =
      Eigen::Vector3d(shift(rng), shift(rng), shift(rng));

  std::uniform_real_distribution<double> focal(300.0, 800.0);
  std::uniform_real_distribution<double> center_jitter(-10.0, 10.0);
  std::uniform_real_distribution<double> baseline(-50.0, 50.0);
  const double f = focal(rng);
  calib.projection.setZero();
  calib.projection(0, 0) = f;
  calib.projection(1, 1) = f;
  calib.projection(0, 2) = width / 2.0 + center_jitter(rng);
  calib.projection(1, 2) = height / 2.0 + center_jitter(rng);
  calib.projection(2, 2) = 1.0;
  calib.projection(0, 3) = baseline(rng);

  calib.image_width = width;
  calib.image_height = height;
  return calib;
}

CalibrationSet kitti_like_calibration(int width, int height) {
  CalibrationSet calib;
  calib.projection << 718.856, 0.0, 609.5593, 44.85728,  //
      0.0, 718.856, 172.854, 0.2163791,                  //
      0.0, 0.0, 1.0, 0.002745884;
  calib.lidar_to_cam << 0.0, -1.0, 0.0, -0.02,  //
      0.0, 0.0, -1.0, -0.08,                    //
      1.0, 0.0, 0.0, -0.27,                     //
      0.0, 0.0, 0.0, 1.0;
  calib.image_width = width;
  calib.image_height = height;
  return calib;
}

namespace {

constexpr double kMaxRange = 120.0;
constexpr double kMinRange = 1.0;
constexpr double kGroundZ = -1.73;
constexpr double kInf = 1e30;

struct Box {
  double x0, x1, y0, y1, z0, z1;
};

// Unit-direction ray from the origin against an axis-aligned box (slabs).
double ray_box(const double d[3], const Box& box) {
  const double lo[3] = {box.x0, box.y0, box.z0};
  const double hi[3] = {box.x1, box.y1, box.z1};
  double tmin = 0.0;
  double tmax = kMaxRange;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) < 1e-12) {
      if (lo[i] > 0.0 || hi[i] < 0.0) return kInf;
      continue;
    }
    double t0 = lo[i] / d[i];
    double t1 = hi[i] / d[i];
    if (t0 > t1) std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);
    if (tmin > tmax) return kInf;
  }
  return tmin > 0.0 ? tmin : kInf;
}

}  // namespace

LidarPointCloud scanner_scene_scan(std::uint32_t seed) {
  constexpr int kBeams = 64;
  constexpr int kAzimuths = 1900;
  constexpr double kPi = std::numbers::pi;
  const double elev_top = 2.0 * kPi / 180.0;
  const double elev_bottom = -24.8 * kPi / 180.0;
  const double azimuth_step = 2.0 * kPi / kAzimuths;

  // Street-like clutter in front of the sensor (+x): two vehicles, two
  // buildings and a facade crossing the view.
  const Box boxes[] = {
      {8.0, 12.0, -6.0, -2.0, kGroundZ, 0.3},
      {14.0, 17.0, 2.0, 6.0, kGroundZ, 1.2},
      {22.0, 30.0, -14.0, -6.0, kGroundZ, 5.5},
      {26.0, 34.0, 7.0, 15.0, kGroundZ, 7.0},
      {45.0, 47.0, -25.0, 25.0, kGroundZ, 9.0},
  };

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> phase_dist(0.0, azimuth_step);
  std::uniform_real_distribution<double> jitter(-0.01, 0.01);
  std::uniform_real_distribution<float> refl(0.0f, 1.0f);
  const double phase = phase_dist(rng);

  LidarPointCloud cloud;
  cloud.points.reserve(static_cast<std::size_t>(kBeams) * kAzimuths / 2);
  for (int a = 0; a < kAzimuths; ++a) {
    const double azimuth = phase + a * azimuth_step;
    const double cos_az = std::cos(azimuth);
    const double sin_az = std::sin(azimuth);
    for (int b = 0; b < kBeams; ++b) {
      const double elev =
          elev_top + (elev_bottom - elev_top) * b / (kBeams - 1);
      const double d[3] = {std::cos(elev) * cos_az, std::cos(elev) * sin_az,
                           std::sin(elev)};
      double t_hit = kInf;
      if (d[2] < -1e-12) t_hit = kGroundZ / d[2];
      for (const Box& box : boxes) t_hit = std::min(t_hit, ray_box(d, box));
      if (t_hit < kMinRange || t_hit > kMaxRange) continue;
      const double r = t_hit + jitter(rng);
      cloud.points.push_back({static_cast<float>(r * d[0]),
                              static_cast<float>(r * d[1]),
                              static_cast<float>(r * d[2]), refl(rng)});
    }
  }
  return cloud;
}

void write_calib_file(const std::filesystem::path& path,
                      const CalibrationSet& calib) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());

  const auto write_row = [&out](const char* key,
                                const Eigen::Matrix<double, 3, 4>& m) {
    out << key << ":";
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), " %.17g", m(r, c));
        out << buf;
      }
    out << "\n";
  };

  // Grayscale pair without the color cameras' horizontal baseline term.
  Eigen::Matrix<double, 3, 4> gray = calib.projection;
  gray(0, 3) = 0.0;
  write_row("P0", gray);
  write_row("P1", gray);
  write_row("P2", calib.projection);
  write_row("P3", calib.projection);
  write_row("Tr", calib.lidar_to_cam.topRows<3>());
}

void write_synthetic_sequence(const std::filesystem::path& dir,
                              std::size_t frames, std::uint32_t seed,
                              bool with_images) {
  const CalibrationSet calib = kitti_like_calibration();
  std::filesystem::create_directories(dir / "velodyne");
  write_calib_file(dir / "calib.txt", calib);
  if (with_images) std::filesystem::create_directories(dir / "image_2");

  for (std::size_t i = 0; i < frames; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "%06zu", i);
    lidepth::write_velodyne_bin(
        scanner_scene_scan(seed + static_cast<std::uint32_t>(i)),
        dir / "velodyne" / (std::string(name) + ".bin"));
    if (with_images)
      write_gray8_png(dir / "image_2" / (std::string(name) + ".png"),
                      calib.image_width, calib.image_height);
  }
}

void write_gray8_png(const std::filesystem::path& path, int width,
                     int height) {
  std::FILE* file = std::fopen(path.string().c_str(), "wb");
  if (!file) throw IoError("cannot open for writing: " + path.string());
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(file);
    throw IoError("png write failed: " + path.string());
  }
  png_init_io(png, file);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_byte> row(static_cast<std::size_t>(width), 0);
  for (int y = 0; y < height; ++y) png_write_row(png, row.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(file);
}

std::vector<std::uint16_t> read_png16_raw(const std::filesystem::path& path,
                                          int& width, int& height) {
  std::FILE* file = std::fopen(path.string().c_str(), "rb");
  if (!file) throw IoError("cannot open: " + path.string());
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(file);
    throw IoError("png read failed: " + path.string());
  }
  png_init_io(png, file);
  png_read_info(png, info);
  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  if (png_get_bit_depth(png, info) != 16 ||
      png_get_color_type(png, info) != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(file);
    throw IoError("not a 16-bit grayscale png: " + path.string());
  }

  std::vector<std::uint16_t> values(static_cast<std::size_t>(width) * height);
  std::vector<png_byte> row(static_cast<std::size_t>(width) * 2);
  for (int y = 0; y < height; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (int x = 0; x < width; ++x)
      values[static_cast<std::size_t>(y) * width + x] = static_cast<std::uint16_t>(
          (static_cast<unsigned>(row[2 * x]) << 8) | row[2 * x + 1]);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(file);
  return values;
}

std::filesystem::path scratch_dir(const std::string& tag) {
  static std::atomic<unsigned> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("lidepth_" + tag + "_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testsupport
