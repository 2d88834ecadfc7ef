#include "workbench/analysis/analysis.h"

#include <cmath>

#include "workbench/errors.h"
#include "workbench/image_io.h"
#include "workbench/kernels/kernels.h"

namespace wb::analysis {

Image from_rgb(const RgbImage& img) {
  Image out;
  out.kind = Image::Kind::Rgb;
  out.width = img.width;
  out.height = img.height;
  out.channels = {"R", "G", "B"};
  out.data.assign(img.data.begin(), img.data.end());
  return out;
}

Image from_raw(const RawImage& raw) {
  Image out;
  out.kind = Image::Kind::Raw;
  out.width = raw.width;
  out.height = raw.height;
  out.bit_depth = raw.bit_depth;
  out.cfa = raw.cfa;
  out.channels = {"raw"};
  out.data.assign(raw.data.begin(), raw.data.end());
  return out;
}

Image load_image(const std::string& path, std::optional<CfaPattern> expect_cfa) {
  auto ends_with = [&](const char* s) {
    std::string e(s);
    return path.size() >= e.size() && path.compare(path.size() - e.size(), e.size(), e) == 0;
  };
  if (ends_with(".pgm")) return from_raw(read_raw(path, expect_cfa).image);
  if (ends_with(".ppm")) {
    if (expect_cfa) throw DomainError(path + ": RGB image given where a raw frame was requested");
    return from_rgb(read_ppm(path));
  }
  throw DomainError(path + ": expected a .pgm raw frame or a .ppm image");
}

namespace {

// Gather one channel of the ROI into a contiguous buffer.
std::vector<int32_t> gather(const Image& img, const RoiRect& r, size_t c) {
  std::vector<int32_t> v;
  v.reserve(static_cast<size_t>(r.w) * r.h);
  for (int y = r.y; y < r.y + r.h; ++y)
    for (int x = r.x; x < r.x + r.w; ++x) v.push_back(img.at(x, y, c));
  return v;
}

RoiRect resolve(const Image& img, const std::optional<RoiRect>& roi) {
  if (!roi) return {0, 0, img.width, img.height};
  check_roi(*roi, img.width, img.height);
  return *roi;
}

int hist_lo(const Image& img) {
  return img.is_signed ? -((1 << img.bit_depth) - 1) : 0;
}

}  // namespace

std::vector<ChannelStats> stats(const Image& img, const std::optional<RoiRect>& roi) {
  const RoiRect r = resolve(img, roi);
  std::vector<ChannelStats> out;
  for (size_t c = 0; c < img.channels.size(); ++c) {
    std::vector<int32_t> v = gather(img, r, c);
    kernels::Moments m = kernels::active().moments_i32(v.data(), v.size());
    const __int128 n = static_cast<__int128>(v.size());
    // n^2 * variance, exact in integers.
    const __int128 nvar = n * m.sumsq - static_cast<__int128>(m.sum) * m.sum;
    ChannelStats s;
    s.min = static_cast<double>(m.min);
    s.max = static_cast<double>(m.max);
    s.mean = static_cast<double>(m.sum) / static_cast<double>(v.size());
    s.std = std::sqrt(static_cast<double>(nvar)) / static_cast<double>(v.size());
    if (roi) {
      s.snr_reported = true;
      if (nvar > 0) s.snr = s.mean / s.std;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<Histogram> histogram(const Image& img, const std::optional<RoiRect>& roi) {
  const RoiRect r = resolve(img, roi);
  const int lo = hist_lo(img);
  const size_t bins = static_cast<size_t>((1 << img.bit_depth) - lo);
  std::vector<Histogram> out(img.channels.size(), Histogram{lo, std::vector<uint64_t>(bins, 0)});
  for (int y = r.y; y < r.y + r.h; ++y)
    for (int x = r.x; x < r.x + r.w; ++x)
      for (size_t c = 0; c < img.channels.size(); ++c) ++out[c].counts[img.at(x, y, c) - lo];
  return out;
}

Image diff(const Image& a, const Image& b, DiffMode mode) {
  if (a.kind == Image::Kind::Diff || b.kind == Image::Kind::Diff)
    throw DomainError("cannot diff a difference image");
  if (a.kind != b.kind) throw DomainError("cannot diff a raw frame against an RGB image");
  if (a.width != b.width || a.height != b.height)
    throw DomainError("image sizes differ: " + std::to_string(a.width) + "x" +
                      std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                      std::to_string(b.height));
  if (a.bit_depth != b.bit_depth) throw DomainError("bit depths differ");
  if (a.cfa != b.cfa) throw DomainError("CFA patterns differ");
  Image out = a;
  out.kind = Image::Kind::Diff;
  out.is_signed = mode == DiffMode::Signed;
  out.cfa.reset();
  const bool absolute = mode == DiffMode::Absolute;
  if (a.kind == Image::Kind::Rgb) {
    std::vector<uint8_t> a8(a.data.begin(), a.data.end()), b8(b.data.begin(), b.data.end());
    std::vector<int16_t> d(a8.size());
    kernels::active().diff_u8(a8.data(), b8.data(), d.data(), d.size(), absolute);
    out.data.assign(d.begin(), d.end());
  } else {
    for (size_t i = 0; i < a.data.size(); ++i) {
      int32_t d = a.data[i] - b.data[i];
      out.data[i] = absolute ? std::abs(d) : d;
    }
  }
  return out;
}

Entry analyze(const std::string& name, const Image& img, const std::optional<RoiRect>& roi) {
  return {name, img.channels, stats(img, roi), histogram(img, roi)};
}

std::vector<Entry> compare(const Image& a, const Image& b, DiffMode mode,
                           const std::optional<RoiRect>& roi) {
  Image d = diff(a, b, mode);
  return {analyze("a", a, roi), analyze("b", b, roi), analyze("diff", d, roi)};
}

}  // namespace wb::analysis
