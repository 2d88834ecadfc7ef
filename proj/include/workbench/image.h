#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace wb {

struct RoiRect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool empty() const { return w <= 0 || h <= 0; }
  bool contains(int px, int py) const {
    return px >= x && py >= y && px < x + w && py < y + h;
  }
  bool operator==(const RoiRect&) const = default;
};

// Throws DomainError if the ROI is empty or leaves a width x height image.
void check_roi(const RoiRect& roi, int width, int height);
RoiRect parse_roi(const std::string& text);  // "x,y,w,h"

enum class CfaPattern { RGGB, BGGR, GRBG, GBRG, RCCB, RCCC, Mono };

// Colour sampled at a CFA site. 0=R 1=G 2=B 3=C(lear).
enum class CfaChannel : uint8_t { R = 0, G = 1, B = 2, C = 3 };

std::string to_string(CfaPattern p);
CfaPattern cfa_from_string(const std::string& s);
CfaChannel cfa_channel(CfaPattern p, int x, int y);
// Weights applied to scene RGB radiance at a site of the given channel.
std::array<float, 3> channel_select(CfaChannel c);

struct RawImage {
  int width = 0;
  int height = 0;
  int bit_depth = 10;
  CfaPattern cfa = CfaPattern::RGGB;
  int black_level = 0;
  std::vector<uint16_t> data;

  RawImage() = default;
  RawImage(int w, int h, int bd, CfaPattern p, int bl = 0);

  uint16_t full_scale() const { return static_cast<uint16_t>((1u << bit_depth) - 1); }
  uint16_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  uint16_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
};

// Interleaved 8-bit RGB.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h, uint8_t fill = 0);

  uint8_t& at(int x, int y, int c) { return data[(static_cast<size_t>(y) * width + x) * 3 + c]; }
  uint8_t at(int x, int y, int c) const {
    return data[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
  bool operator==(const RgbImage&) const = default;
};

// Interleaved float RGB used between demosaic and the 8-bit reduction.
struct LinearImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  LinearImage() = default;
  LinearImage(int w, int h, float fill = 0.f);

  float& at(int x, int y, int c) { return data[(static_cast<size_t>(y) * width + x) * 3 + c]; }
  float at(int x, int y, int c) const { return data[(static_cast<size_t>(y) * width + x) * 3 + c]; }
};

// Lowest DN counted as saturated: 98% of the range above black level.
int saturation_threshold(int full_scale, int black_level = 0);

// Picks each site's own channel out of an RGB image (same resolution).
RawImage mosaic(const RgbImage& rgb, CfaPattern cfa, int bit_depth);
// Every RGB pixel becomes one 2x2 CFA cell, so the raw is twice the size.
RawImage mosaic_cells(const RgbImage& rgb, CfaPattern cfa, int bit_depth);

}  // namespace wb
