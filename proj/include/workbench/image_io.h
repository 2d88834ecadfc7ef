#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "workbench/image.h"

namespace wb {

// Decoded P5/P6 file. Samples are widened to 16 bits regardless of maxval.
struct Pnm {
  int width = 0;
  int height = 0;
  int channels = 1;  // 1 for P5, 3 for P6
  int maxval = 255;
  std::vector<uint16_t> samples;
};

Pnm decode_pnm(const std::string& bytes);
std::string encode_pnm(const Pnm& pnm);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

std::string encode_ppm(const RgbImage& img);
RgbImage decode_ppm(const std::string& bytes);
RgbImage read_ppm(const std::string& path);
void write_ppm(const std::string& path, const RgbImage& img);

struct RawFile {
  RawImage image;
  nlohmann::json metadata;  // config echo and anything else the writer attached
};

// Raw frames are 16-bit big-endian P5 plus a "<path>.meta.json" sidecar.
void write_raw(const std::string& path, const RawImage& raw,
               const nlohmann::json& metadata = nlohmann::json::object());
RawFile read_raw(const std::string& path, std::optional<CfaPattern> expect_cfa = std::nullopt);
std::string sidecar_path(const std::string& raw_path);

}  // namespace wb
