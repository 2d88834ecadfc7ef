#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "workbench/image.h"

namespace wb::analysis {

// Integer planes shared by raw frames, RGB images and difference images.
struct Image {
  enum class Kind { Raw, Rgb, Diff };
  Kind kind = Kind::Rgb;
  int width = 0;
  int height = 0;
  int bit_depth = 8;
  bool is_signed = false;
  std::optional<CfaPattern> cfa;  // raw only
  std::vector<std::string> channels;
  std::vector<int32_t> data;  // interleaved

  int32_t at(int x, int y, int c) const {
    return data[(static_cast<size_t>(y) * width + x) * channels.size() + c];
  }
};

Image from_rgb(const RgbImage& img);
Image from_raw(const RawImage& raw);
// .ppm, or .pgm with its sidecar. `expect_cfa` is checked for raw input.
Image load_image(const std::string& path, std::optional<CfaPattern> expect_cfa = std::nullopt);

struct ChannelStats {
  double min = 0, max = 0, mean = 0, std = 0;
  bool snr_reported = false;  // only for ROI-cropped input
  std::optional<double> snr;  // empty when reported but std == 0
};

// Bin i counts pixels with value lo + i.
struct Histogram {
  int lo = 0;
  std::vector<uint64_t> counts;
};

std::vector<ChannelStats> stats(const Image& img, const std::optional<RoiRect>& roi = std::nullopt);
std::vector<Histogram> histogram(const Image& img, const std::optional<RoiRect>& roi = std::nullopt);

enum class DiffMode { Absolute, Signed };
// a - b (or |a - b|) per channel. Throws DomainError on shape/type mismatch.
Image diff(const Image& a, const Image& b, DiffMode mode);

struct Entry {
  std::string name;
  std::vector<std::string> channels;
  std::vector<ChannelStats> stats;
  std::vector<Histogram> histograms;
};

Entry analyze(const std::string& name, const Image& img, const std::optional<RoiRect>& roi);

// Entries "a", "b" and "diff" for a two-image comparison.
std::vector<Entry> compare(const Image& a, const Image& b, DiffMode mode,
                           const std::optional<RoiRect>& roi);

// Fixed-point with 6 decimals, independent of the global locale.
std::string fixed6(double v);

// Writes metrics.csv and one hist_<name>.svg per entry.
void export_report(const std::vector<Entry>& entries, const std::string& out_dir);
std::string metrics_csv(const std::vector<Entry>& entries);
std::string histogram_svg(const Entry& e);

}  // namespace wb::analysis
