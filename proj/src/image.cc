#include "workbench/image.h"

#include <charconv>
#include <cmath>

#include "workbench/errors.h"

namespace wb {

void check_roi(const RoiRect& roi, int width, int height) {
  if (roi.empty()) throw DomainError("roi is empty");
  if (roi.x < 0 || roi.y < 0 || roi.x + roi.w > width || roi.y + roi.h > height) {
    throw DomainError("roi " + std::to_string(roi.x) + "," + std::to_string(roi.y) + "," +
                      std::to_string(roi.w) + "," + std::to_string(roi.h) +
                      " exceeds image " + std::to_string(width) + "x" +
                      std::to_string(height));
  }
}

RoiRect parse_roi(const std::string& text) {
  int v[4];
  const char* p = text.data();
  const char* end = p + text.size();
  for (int i = 0; i < 4; ++i) {
    auto [next, ec] = std::from_chars(p, end, v[i]);
    if (ec != std::errc()) throw ParseError("roi", "expected x,y,w,h but got '" + text + "'");
    p = next;
    if (i < 3) {
      if (p == end || *p != ',') throw ParseError("roi", "expected x,y,w,h but got '" + text + "'");
      ++p;
    }
  }
  if (p != end) throw ParseError("roi", "trailing characters in '" + text + "'");
  return RoiRect{v[0], v[1], v[2], v[3]};
}

std::string to_string(CfaPattern p) {
  switch (p) {
    case CfaPattern::RGGB: return "RGGB";
    case CfaPattern::BGGR: return "BGGR";
    case CfaPattern::GRBG: return "GRBG";
    case CfaPattern::GBRG: return "GBRG";
    case CfaPattern::RCCB: return "RCCB";
    case CfaPattern::RCCC: return "RCCC";
    case CfaPattern::Mono: return "Mono";
  }
  return "?";
}

CfaPattern cfa_from_string(const std::string& s) {
  for (auto p : {CfaPattern::RGGB, CfaPattern::BGGR, CfaPattern::GRBG, CfaPattern::GBRG,
                 CfaPattern::RCCB, CfaPattern::RCCC, CfaPattern::Mono}) {
    if (to_string(p) == s) return p;
  }
  throw ParseError("cfa", "unknown CFA pattern '" + s + "'");
}

CfaChannel cfa_channel(CfaPattern p, int x, int y) {
  using C = CfaChannel;
  const int i = (y & 1) * 2 + (x & 1);
  static constexpr C kRggb[4] = {C::R, C::G, C::G, C::B};
  static constexpr C kBggr[4] = {C::B, C::G, C::G, C::R};
  static constexpr C kGrbg[4] = {C::G, C::R, C::B, C::G};
  static constexpr C kGbrg[4] = {C::G, C::B, C::R, C::G};
  static constexpr C kRccb[4] = {C::R, C::C, C::C, C::B};
  static constexpr C kRccc[4] = {C::R, C::C, C::C, C::C};
  switch (p) {
    case CfaPattern::RGGB: return kRggb[i];
    case CfaPattern::BGGR: return kBggr[i];
    case CfaPattern::GRBG: return kGrbg[i];
    case CfaPattern::GBRG: return kGbrg[i];
    case CfaPattern::RCCB: return kRccb[i];
    case CfaPattern::RCCC: return kRccc[i];
    case CfaPattern::Mono: return C::C;
  }
  return C::C;
}

std::array<float, 3> channel_select(CfaChannel c) {
  switch (c) {
    case CfaChannel::R: return {1.f, 0.f, 0.f};
    case CfaChannel::G: return {0.f, 1.f, 0.f};
    case CfaChannel::B: return {0.f, 0.f, 1.f};
    case CfaChannel::C: return {0.299f, 0.587f, 0.114f};
  }
  return {0.f, 0.f, 0.f};
}

RawImage::RawImage(int w, int h, int bd, CfaPattern p, int bl)
    : width(w), height(h), bit_depth(bd), cfa(p), black_level(bl) {
  if (w <= 0 || h <= 0) throw DomainError("raw image dimensions must be positive");
  if (bd < 1 || bd > 16) throw DomainError("bit_depth " + std::to_string(bd) + " not in [1,16]");
  data.assign(static_cast<size_t>(w) * h, 0);
}

RgbImage::RgbImage(int w, int h, uint8_t fill) : width(w), height(h) {
  if (w <= 0 || h <= 0) throw DomainError("image dimensions must be positive");
  data.assign(static_cast<size_t>(w) * h * 3, fill);
}

LinearImage::LinearImage(int w, int h, float fill) : width(w), height(h) {
  data.assign(static_cast<size_t>(w) * h * 3, fill);
}

int saturation_threshold(int full_scale, int black_level) {
  return black_level + (98 * (full_scale - black_level) + 99) / 100;
}

namespace {

uint16_t site_value(const RgbImage& rgb, int x, int y, CfaChannel ch, double fs) {
  auto sel = channel_select(ch);
  double v = 0;
  for (int c = 0; c < 3; ++c) v += sel[c] * rgb.at(x, y, c);
  return static_cast<uint16_t>(std::lround(v / 255.0 * fs));
}

}  // namespace

RawImage mosaic(const RgbImage& rgb, CfaPattern cfa, int bit_depth) {
  RawImage raw(rgb.width, rgb.height, bit_depth, cfa);
  const double fs = raw.full_scale();
  for (int y = 0; y < rgb.height; ++y)
    for (int x = 0; x < rgb.width; ++x)
      raw.at(x, y) = site_value(rgb, x, y, cfa_channel(cfa, x, y), fs);
  return raw;
}

RawImage mosaic_cells(const RgbImage& rgb, CfaPattern cfa, int bit_depth) {
  RawImage raw(rgb.width * 2, rgb.height * 2, bit_depth, cfa);
  const double fs = raw.full_scale();
  for (int y = 0; y < raw.height; ++y)
    for (int x = 0; x < raw.width; ++x)
      raw.at(x, y) = site_value(rgb, x / 2, y / 2, cfa_channel(cfa, x, y), fs);
  return raw;
}

}  // namespace wb
